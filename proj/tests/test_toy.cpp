#include <doctest.h>

#include <cmath>
#include <vector>

#include "orrlab/errors.hpp"
#include "orrlab/toy.hpp"

using namespace orrlab;

namespace {

// Independent fine-step oracle: Dormand-Prince RK45 with fixed small steps,
// written directly against the ODE (no shared code with integrate_toy).
void oracle_rk45(double ratio, double kappa, double& fr_end, double& fnr_end,
                 double tau_end) {
  const double h = 2.0e-4 * std::max(1.0, ratio / 1e4);
  double tau = -ratio;
  double fr = 1.0, fnr = 1.0;
  auto f1 = [&](double, double, double b) { return kappa / ratio * b; };
  auto f2 = [&](double t, double a, double) {
    return kappa * ratio / (1.0 + t * t) * a;
  };
  while (tau < tau_end) {
    const double step = std::min(h, tau_end - tau);
    const double k1a = f1(tau, fr, fnr), k1b = f2(tau, fr, fnr);
    const double k2a = f1(tau + step / 2, fr + step / 2 * k1a,
                          fnr + step / 2 * k1b);
    const double k2b = f2(tau + step / 2, fr + step / 2 * k1a,
                          fnr + step / 2 * k1b);
    const double k3a = f1(tau + step / 2, fr + step / 2 * k2a,
                          fnr + step / 2 * k2b);
    const double k3b = f2(tau + step / 2, fr + step / 2 * k2a,
                          fnr + step / 2 * k2b);
    const double k4a = f1(tau + step, fr + step * k3a, fnr + step * k3b);
    const double k4b = f2(tau + step, fr + step * k3a, fnr + step * k3b);
    fr += step / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
    fnr += step / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
    tau += step;
  }
  fr_end = fr;
  fnr_end = fnr;
}

}  // namespace

TEST_CASE("kappa -> 0 freezes the toy model") {
  CHECK_THROWS_AS(integrate_toy(1.0, 100.0, 0.0), ConfigError);
  const ToyTrajectory traj = integrate_toy(1.0, 100.0, 1e-12, 20000);
  for (std::size_t i = 0; i < traj.tau.size(); ++i) {
    CHECK(traj.f_r[i] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(traj.f_nr[i] == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("both components are nondecreasing") {
  const ToyTrajectory traj = integrate_toy(1.0, 400.0, 0.3);
  for (std::size_t i = 1; i < traj.tau.size(); ++i) {
    CHECK(traj.f_r[i] >= traj.f_r[i - 1] - 1e-12);
    CHECK(traj.f_nr[i] >= traj.f_nr[i - 1] - 1e-12);
  }
}

TEST_CASE("midpoint amplification matches the independent oracle") {
  const double ratio = 1.0e4;
  const double kappa = 0.25;
  const ToyTrajectory traj = integrate_toy(1.0, ratio, kappa);
  // value at tau = 0
  double best = 1e300;
  double fnr0 = 0.0;
  for (std::size_t i = 0; i < traj.tau.size(); ++i) {
    if (std::abs(traj.tau[i]) < best) {
      best = std::abs(traj.tau[i]);
      fnr0 = traj.f_nr[i];
    }
  }
  double fr_o = 0.0, fnr_o = 0.0;
  oracle_rk45(ratio, kappa, fr_o, fnr_o, 0.0);
  CHECK(fnr0 == doctest::Approx(fnr_o).epsilon(1e-6));
}

TEST_CASE("growth exponent approaches the frozen-system value") {
  const double kappa = 0.25;
  const double predicted = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa));
  const ToyTrajectory traj = integrate_toy(1.0, 1.0e4, kappa);
  const ToyGrowthFit fit = fit_growth_exponents(traj);
  CHECK(std::abs(fit.alpha_right - predicted) <= 0.05);

  // exponent depends only on eta/k^2: k = 3 with eta = 9e4 gives the same
  const ToyTrajectory traj3 = integrate_toy(3.0, 9.0e4, kappa);
  const ToyGrowthFit fit3 = fit_growth_exponents(traj3);
  CHECK(std::abs(fit3.alpha_right - fit.alpha_right) <= 0.01);
}

TEST_CASE("imbalance at resonance and comparable total amplification") {
  const double ratio = 1.0e3;
  const ToyTrajectory traj = integrate_toy(1.0, ratio, 0.25);
  const ToyGrowthFit fit = fit_growth_exponents(traj);
  // f_NR/f_R ~ eta/k^2 near tau = 0, within a factor 10
  CHECK(fit.ratio_at_zero / ratio < 10.0);
  CHECK(fit.ratio_at_zero / ratio > 0.1);
  // total amplification of f_R and f_NR agree within a fixed factor
  const double amp_r = traj.f_r.back() / traj.f_r.front();
  const double amp_nr = traj.f_nr.back() / traj.f_nr.front();
  CHECK(amp_r / amp_nr < 16.0);
  CHECK(amp_nr / amp_r < 16.0);
}

TEST_CASE("envelope constant is stable across eta/k^2") {
  double prev = 0.0;
  for (double ratio : {1.0e2, 1.0e3, 1.0e4}) {
    const ToyTrajectory traj = integrate_toy(1.0, ratio, 0.25);
    const ToyGrowthFit fit = fit_growth_exponents(traj);
    CHECK(std::isfinite(fit.c_emp));
    if (prev > 0.0) {
      CHECK(fit.c_emp < 2.0 * prev + 2.0);
    }
    prev = fit.c_emp;
  }
}

TEST_CASE("self-interaction variant stays close to the baseline") {
  const ToyTrajectory base = integrate_toy(1.0, 1.0e3, 0.25);
  const ToyTrajectory self = integrate_toy(1.0, 1.0e3, 0.25, 0, true);
  const double amp_base = base.f_nr.back();
  const double amp_self = self.f_nr.back();
  CHECK(amp_self >= amp_base);        // extra nonnegative forcing
  CHECK(amp_self < 10.0 * amp_base);  // but not a different growth class
}
