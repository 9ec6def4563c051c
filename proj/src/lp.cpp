#include "orrlab/lp.hpp"

#include <cmath>

#include "orrlab/errors.hpp"

namespace orrlab {

namespace {

// C^infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double l1_mod(int k, double eta) { return std::abs(k) + std::abs(eta); }

}  // namespace

double lp_psi(double x) {
  const double ax = std::abs(x);
  if (ax <= 0.5) return 1.0;
  if (ax >= 0.75) return 0.0;
  return 1.0 - smooth_step(4.0 * (ax - 0.5));
}

double lp_rho(double x) { return lp_psi(0.5 * x) - lp_psi(x); }

std::vector<double> lp_shells(const Grid& grid) {
  const double top = grid.k_max() + grid.eta_max();
  std::vector<double> shells{0.5};
  for (double m = 1.0; m <= 2.0 * top; m *= 2.0) shells.push_back(m);
  return shells;
}

SpectralField lp_project(const SpectralField& f, double shell) {
  const Grid& g = f.grid();
  SpectralField out(g, f.frame_time());
  for (int r = 0; r < g.n_k(); ++r) {
    const int k = g.k_of_row(r);
    for (int j = 0; j < g.n_y(); ++j) {
      const double m = l1_mod(k, g.eta_of_col(j));
      const double cut = (shell == 0.5) ? lp_psi(m) : lp_rho(m / shell);
      if (cut != 0.0) out.at(r, j) = cut * f.at(r, j);
    }
  }
  return out;
}

SpectralField lp_project_below(const SpectralField& f, double shell) {
  const Grid& g = f.grid();
  SpectralField out(g, f.frame_time());
  for (int r = 0; r < g.n_k(); ++r) {
    const int k = g.k_of_row(r);
    for (int j = 0; j < g.n_y(); ++j) {
      const double m = l1_mod(k, g.eta_of_col(j));
      const double cut = lp_psi(m / shell);
      if (cut != 0.0) out.at(r, j) = cut * f.at(r, j);
    }
  }
  return out;
}

Paraproduct paraproduct(const SpectralField& f, const SpectralField& g,
                        Transformer& tr) {
  const Grid& grid = f.grid();
  if (!(g.grid() == grid)) throw ConfigError("paraproduct: grid mismatch");
  Paraproduct out(grid);
  out.t_fg.set_frame_time(f.frame_time());
  out.t_gf.set_frame_time(f.frame_time());
  out.r.set_frame_time(f.frame_time());

  const std::vector<double> shells = lp_shells(grid);
  for (double n : shells) {
    if (n >= 8.0) {
      out.t_fg += tr.product(lp_project_below(f, n / 8.0), lp_project(g, n));
      out.t_gf += tr.product(lp_project_below(g, n / 8.0), lp_project(f, n));
    }
    for (double np : shells) {
      if (np >= n / 8.0 && np <= 8.0 * n)
        out.r += tr.product(lp_project(f, n), lp_project(g, np));
    }
  }
  return out;
}

}  // namespace orrlab
