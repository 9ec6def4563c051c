#include "orrlab/init_data.hpp"

#include <cmath>

#include "orrlab/errors.hpp"

namespace orrlab {

namespace {

void seed_mode(SpectralField& f, int k, double eta, Complex value) {
  const Grid& g = f.grid();
  const int col = g.col_of_eta(eta);
  f.at_k(k, col) += value;
  const int mcol = g.col_of_eta_index(-g.eta_index_of_col(col));
  f.at_k(-k, mcol) += std::conj(value);
}

}  // namespace

SpectralField make_initial_data(const Grid& grid, const InitConfig& init) {
  SpectralField f(grid, 0.0);

  if (init.family == "gevrey-bump") {
    const double w = init.width_eta;
    const double yc = init.center_y < 0.0 ? 0.5 * grid.l_y() : init.center_y;
    for (int j = 0; j < grid.n_y(); ++j) {
      if (j == grid.n_y() / 2) continue;
      const double eta = grid.eta_of_col(j);
      const double env = std::exp(-(eta / w) * (eta / w));
      const Complex value = env * std::exp(Complex{0.0, -eta * yc});
      const int jm = grid.col_of_eta_index(-grid.eta_index_of_col(j));
      f.at_k(1, j) = value;
      f.at_k(-1, jm) = std::conj(value);
      if (init.mean_amplitude != 0.0 && eta != 0.0)
        f.at_k(0, j) = init.mean_amplitude * value;
    }
  } else if (init.family == "two-mode-echo") {
    seed_mode(f, 1, init.eta0, Complex{1.0, 0.0});
    if (init.low_amplitude != 0.0)
      seed_mode(f, 1, init.eta_low, Complex{init.low_amplitude, 0.0});
  } else if (init.family == "custom-modes") {
    for (const ModeSeed& m : init.modes) {
      const Complex v =
          m.amp * std::exp(Complex{0.0, m.phase});
      seed_mode(f, m.k, m.eta, v);
    }
  } else {
    throw ConfigError("init.family unknown: " + init.family);
  }

  f.symmetrize();
  dealias_in_place(f);
  f.at_k(0, 0) = Complex{};  // mean-zero vorticity

  const double norm = f.l2_norm();
  if (norm > 0.0 && init.epsilon > 0.0) {
    f *= init.epsilon / norm;
  } else if (init.epsilon == 0.0) {
    f *= 0.0;
  }
  return f;
}

double nonzero_mode_fraction(const SpectralField& f) {
  const Grid& g = f.grid();
  double total = 0.0;
  double nonzero = 0.0;
  for (int r = 0; r < g.n_k(); ++r) {
    const int k = g.k_of_row(r);
    for (int j = 0; j < g.n_y(); ++j) {
      const double a2 = std::norm(f.at(r, j));
      total += a2;
      if (k != 0) nonzero += a2;
    }
  }
  return total > 0.0 ? nonzero / total : 0.0;
}

}  // namespace orrlab
