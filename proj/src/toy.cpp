#include "orrlab/toy.hpp"

#include <algorithm>
#include <cmath>

#include "orrlab/errors.hpp"
#include "orrlab/fit.hpp"

namespace orrlab {

namespace {

struct ToyOde {
  double ratio;  // eta / k^2
  double kappa;
  bool self_interaction;

  void deriv(double tau, double fr, double fnr, double& dfr,
             double& dfnr) const {
    dfr = kappa / ratio * fnr;
    dfnr = kappa * ratio / (1.0 + tau * tau) * fr;
    if (self_interaction) dfnr += kappa / ratio * fnr;
  }
};

// Fixed-step RK4 over [-ratio, ratio], keeping about max_samples samples.
ToyTrajectory run_fixed(const ToyOde& ode, double k, double eta, long n_steps,
                        long max_samples) {
  ToyTrajectory out;
  out.k = k;
  out.eta = eta;
  out.kappa = ode.kappa;
  out.self_interaction = ode.self_interaction;

  const double span = 2.0 * ode.ratio;
  const double dt = span / n_steps;
  const long stride = std::max<long>(1, n_steps / max_samples);

  double tau = -ode.ratio;
  double fr = 1.0;
  double fnr = 1.0;
  out.tau.push_back(tau);
  out.f_r.push_back(fr);
  out.f_nr.push_back(fnr);
  for (long i = 0; i < n_steps; ++i) {
    double k1r, k1n, k2r, k2n, k3r, k3n, k4r, k4n;
    ode.deriv(tau, fr, fnr, k1r, k1n);
    ode.deriv(tau + 0.5 * dt, fr + 0.5 * dt * k1r, fnr + 0.5 * dt * k1n, k2r,
              k2n);
    ode.deriv(tau + 0.5 * dt, fr + 0.5 * dt * k2r, fnr + 0.5 * dt * k2n, k3r,
              k3n);
    ode.deriv(tau + dt, fr + dt * k3r, fnr + dt * k3n, k4r, k4n);
    fr += dt / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
    fnr += dt / 6.0 * (k1n + 2.0 * k2n + 2.0 * k3n + k4n);
    tau = -ode.ratio + (i + 1) * dt;
    if ((i + 1) % stride == 0 || i + 1 == n_steps) {
      out.tau.push_back(tau);
      out.f_r.push_back(fr);
      out.f_nr.push_back(fnr);
    }
  }
  return out;
}

}  // namespace

ToyTrajectory integrate_toy(double k, double eta, double kappa, long n_steps,
                            bool self_interaction) {
  const double ratio = std::abs(eta) / (k * k);
  if (!(ratio >= 1.0)) throw ConfigError("toy: eta/k^2 must be >= 1");
  if (!(kappa > 0.0) || !(kappa < 0.5))
    throw ConfigError("toy: kappa must lie in (0, 1/2)");

  ToyOde ode{ratio, kappa, self_interaction};
  constexpr long kMaxSamples = 4000;

  if (n_steps > 0) return run_fixed(ode, k, eta, n_steps, kMaxSamples);

  // The stiff region is the O(1) neighbourhood of tau = 0; resolve it and
  // double until the endpoint values settle.
  long n = static_cast<long>(std::max(20000.0, 8.0 * ratio));
  ToyTrajectory prev = run_fixed(ode, k, eta, n, kMaxSamples);
  for (int it = 0; it < 8; ++it) {
    ToyTrajectory next = run_fixed(ode, k, eta, 2 * n, kMaxSamples);
    const double d1 =
        std::abs(next.f_r.back() - prev.f_r.back()) / next.f_r.back();
    const double d2 =
        std::abs(next.f_nr.back() - prev.f_nr.back()) / next.f_nr.back();
    if (std::max(d1, d2) < 1e-8) return next;
    prev = std::move(next);
    n *= 2;
  }
  return prev;
}

ToyGrowthFit fit_growth_exponents(const ToyTrajectory& traj) {
  if (traj.tau.size() < 8 || traj.tau.front() > -1.0 || traj.tau.back() < 1.0)
    throw ConfigError("toy fit: trajectory does not span the interval");
  const double ratio = std::abs(traj.eta) / (traj.k * traj.k);

  std::vector<double> x_left, y_left, x_right, y_right;
  double ratio_at_zero = 0.0;
  double best_tau = 1e300;
  double c_emp = 0.0;
  const double kap = traj.kappa;
  for (std::size_t i = 0; i < traj.tau.size(); ++i) {
    const double tau = traj.tau[i];
    const double one_tau = 1.0 + std::abs(tau);
    if (tau <= 0.0) {
      x_left.push_back(one_tau);
      y_left.push_back(traj.f_nr[i]);
      // envelope f_NR <= C ((1+|tau|)/ratio)^{-kappa-1}
      c_emp = std::max(c_emp, traj.f_nr[i] *
                                  std::pow(one_tau / ratio, kap + 1.0));
      c_emp =
          std::max(c_emp, traj.f_r[i] * std::pow(one_tau / ratio, kap));
    } else {
      x_right.push_back(one_tau);
      y_right.push_back(traj.f_r[i]);
      c_emp = std::max(c_emp, traj.f_r[i] * std::pow(ratio, -kap) *
                                  std::pow(one_tau, -1.0 - kap));
      c_emp = std::max(c_emp, traj.f_nr[i] * std::pow(ratio, -kap - 1.0) *
                                  std::pow(one_tau, -kap));
    }
    if (std::abs(tau) < best_tau) {
      best_tau = std::abs(tau);
      ratio_at_zero = traj.f_nr[i] / traj.f_r[i];
    }
  }

  // fit inside the power-law regime, away from the resonance core and from
  // the interval ends
  const double lo = 10.0;
  const double hi = ratio;
  ToyGrowthFit out;
  out.alpha_left =
      fit_loglog(x_left, y_left, 1.0 + lo, 1.0 + hi).slope;
  out.alpha_right =
      fit_loglog(x_right, y_right, 1.0 + lo, 1.0 + hi).slope;
  out.c_emp = c_emp;
  out.ratio_at_zero = ratio_at_zero;
  return out;
}

}  // namespace orrlab
