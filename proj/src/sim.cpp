#include "orrlab/sim.hpp"

#include <algorithm>
#include <cmath>

#include "orrlab/errors.hpp"

namespace orrlab {

Simulator::Simulator(const Grid& grid) : grid_(grid), transformer_(grid_) {}

SpectralField Simulator::streamfunction(const SpectralField& h) const {
  const Grid& g = grid_;
  const double t = h.frame_time();
  SpectralField psi(g, t);
  for (int r = 0; r < g.n_k(); ++r) {
    const double k = g.k_of_row(r);
    for (int j = 0; j < g.n_y(); ++j) {
      const double eta = g.eta_of_col(j);
      if (k == 0.0 && eta == 0.0) continue;
      const double em = eta - k * t;
      psi.at(r, j) = -h.at(r, j) / (k * k + em * em);
    }
  }
  return psi;
}

Simulator::RhsResult Simulator::eval_rhs(const SpectralField& h) {
  const SpectralField psi = streamfunction(h);
  // Advection bracket in plain (z, y) derivatives; the moving-frame cross
  // terms cancel identically.
  RealField u1 = transformer_.to_physical(derivative(psi, Axis::Y));
  RealField u2 = transformer_.to_physical(derivative(psi, Axis::Z));
  const RealField hz = transformer_.to_physical(derivative(h, Axis::Z));
  const RealField hy = transformer_.to_physical(derivative(h, Axis::Y));

  double umax = 0.0;
  for (std::size_t i = 0; i < u1.values.size(); ++i) {
    const double a = -u1.values[i];  // u = (-psi_y, psi_z)
    const double b = u2.values[i];
    umax = std::max(umax, std::max(std::abs(a), std::abs(b)));
    // reuse u1 storage for the bracket
    u1.values[i] = -(a * hz.values[i] + b * hy.values[i]);
  }
  if (!std::isfinite(umax)) throw BlowupError("velocity field lost finiteness");

  SpectralField rhs = transformer_.to_spectral(u1, h.frame_time());
  dealias_in_place(rhs);
  for (const Complex& c : rhs.data())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw BlowupError("rhs lost finiteness");
  return RhsResult{std::move(rhs), umax};
}

std::vector<double> Simulator::mean_ux_profile(const SpectralField& h) const {
  const Grid& g = grid_;
  // <U^x>^ = i h0_hat(eta) / eta  (from <U^x> = -d_y psi0)
  std::vector<Complex> col(g.n_y(), Complex{});
  for (int j = 0; j < g.n_y(); ++j) {
    const double eta = g.eta_of_col(j);
    if (eta == 0.0) continue;
    col[j] = Complex{0.0, 1.0} * h.at_k(0, j) / eta;
  }
  return profile_from_spectral(g, col);
}

std::vector<double> Simulator::mean_omega_profile(
    const SpectralField& h) const {
  const Grid& g = grid_;
  std::vector<Complex> col(g.n_y());
  for (int j = 0; j < g.n_y(); ++j) col[j] = h.at_k(0, j);
  return profile_from_spectral(g, col);
}

SpectralField Simulator::adapted_frame_field(const SimState& state) const {
  // h_adapted(z, y) = h(z + Phi(t, y), y) with Phi = I_ux
  return shift_z_by_profile(state.h, state.i_ux);
}

void Simulator::step_rk4(SimState& state, double dt) {
  const Grid& g = grid_;
  const double t = state.t;
  const double min_cell = std::min(kTwoPi / g.n_z(), g.l_y() / g.n_y());

  SpectralField& h = state.h;
  h.set_frame_time(t);

  RhsResult s1 = eval_rhs(h);
  if (std::abs(dt) * s1.max_velocity > 0.5 * min_cell)
    throw ConfigError("CFL violation: dt * max|u| exceeds half the cell size");

  SpectralField h2 = h;
  {
    SpectralField incr = s1.rhs;
    incr *= 0.5 * dt;
    h2 += incr;
  }
  h2.set_frame_time(t + 0.5 * dt);
  RhsResult s2 = eval_rhs(h2);

  SpectralField h3 = h;
  {
    SpectralField incr = s2.rhs;
    incr *= 0.5 * dt;
    h3 += incr;
  }
  h3.set_frame_time(t + 0.5 * dt);
  RhsResult s3 = eval_rhs(h3);

  SpectralField h4 = h;
  {
    SpectralField incr = s3.rhs;
    incr *= dt;
    h4 += incr;
  }
  h4.set_frame_time(t + dt);
  RhsResult s4 = eval_rhs(h4);

  // stage-consistent quadrature of the accumulator integrands
  const auto ux1 = mean_ux_profile(h);
  const auto ux2 = mean_ux_profile(h2);
  const auto ux3 = mean_ux_profile(h3);
  const auto ux4 = mean_ux_profile(h4);
  const auto om1 = mean_omega_profile(h);
  const auto om2 = mean_omega_profile(h2);
  const auto om3 = mean_omega_profile(h3);
  const auto om4 = mean_omega_profile(h4);
  for (int b = 0; b < g.n_y(); ++b) {
    state.i_ux[b] +=
        dt / 6.0 * (ux1[b] + 2.0 * ux2[b] + 2.0 * ux3[b] + ux4[b]);
    state.i_omega[b] +=
        dt / 6.0 * (om1[b] + 2.0 * om2[b] + 2.0 * om3[b] + om4[b]);
  }

  for (std::size_t i = 0; i < h.data().size(); ++i) {
    h.data()[i] += dt / 6.0 *
                   (s1.rhs.data()[i] + 2.0 * s2.rhs.data()[i] +
                    2.0 * s3.rhs.data()[i] + s4.rhs.data()[i]);
  }
  state.t = t + dt;
  h.set_frame_time(state.t);
  h.symmetrize();
  ++state.step_count;
}

}  // namespace orrlab
