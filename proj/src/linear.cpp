#include "orrlab/linear.hpp"

#include <cmath>

#include "orrlab/errors.hpp"
#include "orrlab/parallel.hpp"

namespace orrlab {

SpectralField linear_evolve(const SpectralField& omega_in, double t) {
  SpectralField out = omega_in;
  out.set_frame_time(t);
  return out;
}

SpectralField orr_streamfunction(const SpectralField& omega_in, double t) {
  const Grid& g = omega_in.grid();
  SpectralField phi(g, t);
  for (int r = 0; r < g.n_k(); ++r) {
    const double k = g.k_of_row(r);
    for (int j = 0; j < g.n_y(); ++j) {
      const double eta = g.eta_of_col(j);
      if (k == 0.0 && eta == 0.0) continue;  // gauge: mean streamfunction 0
      const double em = eta - k * t;
      phi.at(r, j) = -omega_in.at(r, j) / (k * k + em * em);
    }
  }
  return phi;
}

namespace {

// Spectral rows of U^y = d_z psi and d_y U^x = -(d_y - t d_z)^2 psi.
void velocity_rows(const SpectralField& phi, int k, double t,
                   std::vector<Complex>& uy_row,
                   std::vector<Complex>& dyux_row) {
  const Grid& g = phi.grid();
  uy_row.resize(g.n_y());
  dyux_row.resize(g.n_y());
  for (int j = 0; j < g.n_y(); ++j) {
    const double eta = g.eta_of_col(j);
    const double em = eta - k * t;
    const Complex p = phi.at_k(k, j);
    uy_row[j] = Complex{0.0, static_cast<double>(k)} * p;
    dyux_row[j] = em * em * p;
  }
}

}  // namespace

double xavg_feedback(const SpectralField& omega_in, double t) {
  const Grid& g = omega_in.grid();
  const SpectralField phi = orr_streamfunction(omega_in, t);
  const int ny = g.n_y();
  const int half = ny / 2;

  // rows with content (keeps the linear two-row case fast)
  std::vector<int> active;
  for (int k = -g.k_max(); k <= g.k_max(); ++k) {
    if (k == 0) continue;
    for (int j = 0; j < ny; ++j) {
      if (omega_in.at_k(k, j) != Complex{} ||
          omega_in.at_k(-k, j) != Complex{}) {
        active.push_back(k);
        break;
      }
    }
  }

  // per-row exact linear convolution on the eta grid:
  //   partial_k(q) = (deta / 2 pi) sum_m uy_k(eta_m) dyux_{-k}(eta_q - eta_m)
  std::vector<std::vector<Complex>> partial(active.size());
  parallel_for(static_cast<long>(active.size()), [&](long idx) {
    const int k = active[idx];
    std::vector<Complex> uy_row, dyux_row, uy_m, dyux_m;
    velocity_rows(phi, k, t, uy_row, dyux_row);
    velocity_rows(phi, -k, t, uy_m, dyux_m);
    std::vector<Complex>& out = partial[idx];
    out.assign(ny, Complex{});
    for (int jq = 0; jq < ny; ++jq) {
      const int q = g.eta_index_of_col(jq);
      if (q == -half) continue;
      Complex acc{};
      for (int jm = 0; jm < ny; ++jm) {
        const int m = g.eta_index_of_col(jm);
        const int d = q - m;
        if (d <= -half || d >= half) continue;
        const Complex a = uy_row[jm];
        if (a == Complex{}) continue;
        acc += a * dyux_m[g.col_of_eta_index(d)];
      }
      out[jq] = acc;
    }
  });

  // serial reduction in fixed row order: results do not depend on the
  // worker count
  std::vector<Complex> result(ny, Complex{});
  for (const auto& p : partial)
    for (int jq = 0; jq < ny; ++jq) result[jq] += p[jq];

  const double scale = g.delta_eta() / kTwoPi;
  double sum = 0.0;
  for (const Complex& c : result) sum += std::norm(c);
  return std::sqrt(sum * g.delta_eta()) * scale;
}

LinearDiagnostics linear_velocity_series(
    const SpectralField& omega_in, const std::vector<double>& times,
    const std::vector<std::pair<int, double>>& trace_modes) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]) || times[i - 1] < 0.0)
      throw ConfigError("linear_velocity_series: times must be increasing and nonnegative");

  const Grid& g = omega_in.grid();
  LinearDiagnostics out;
  out.times = times;
  out.trace_modes = trace_modes;
  out.mode_traces.assign(trace_modes.size(), {});

  for (const double t : times) {
    const SpectralField phi = orr_streamfunction(omega_in, t);
    double ux2 = 0.0;
    double uy2 = 0.0;
    for (int r = 0; r < g.n_k(); ++r) {
      const double k = g.k_of_row(r);
      for (int j = 0; j < g.n_y(); ++j) {
        const double p2 = std::norm(phi.at(r, j));
        if (p2 == 0.0) continue;
        const double em = g.eta_of_col(j) - k * t;
        if (k != 0.0) ux2 += em * em * p2;  // U^x fluct: -i(eta - kt) phi, k != 0
        uy2 += k * k * p2;                  // U^y: i k phi
      }
    }
    out.ux_fluct_norm.push_back(std::sqrt(ux2 * g.delta_eta()));
    out.uy_norm.push_back(std::sqrt(uy2 * g.delta_eta()));
    out.ux_mean_feedback.push_back(xavg_feedback(omega_in, t));
    for (std::size_t m = 0; m < trace_modes.size(); ++m) {
      const int k = trace_modes[m].first;
      const int col = g.col_of_eta(trace_modes[m].second);
      out.mode_traces[m].push_back(std::abs(phi.at_k(k, col)));
    }
  }
  return out;
}

}  // namespace orrlab
