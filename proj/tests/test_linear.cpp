#include <doctest.h>

#include <cmath>

#include "orrlab/fit.hpp"
#include "orrlab/linear.hpp"
#include "orrlab/rng.hpp"

using namespace orrlab;

namespace {

// Gaussian-in-eta envelope on k = +-1, the standard Gevrey test data.
SpectralField gaussian_data(const Grid& g, double width) {
  SpectralField f(g);
  for (int j = 0; j < g.n_y(); ++j) {
    if (j == g.n_y() / 2) continue;
    const double eta = g.eta_of_col(j);
    const double env = std::exp(-(eta / width) * (eta / width));
    f.at_k(1, j) = Complex{env, 0.0};
    f.at_k(-1, g.col_of_eta_index(-g.eta_index_of_col(j))) = Complex{env, 0.0};
  }
  f.symmetrize();
  return f;
}

}  // namespace

TEST_CASE("linear evolution freezes sheared-frame coefficients") {
  Grid g(16, 64, 8.0 * kPi);
  SpectralField f = gaussian_data(g, 2.0);
  SpectralField ft = linear_evolve(f, 17.5);
  CHECK(ft.frame_time() == 17.5);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(ft.data()[i] == f.data()[i]);
  // physical-frame vorticity norm is constant (unitary shift)
  CHECK(ft.l2_norm() == f.l2_norm());
}

TEST_CASE("orr streamfunction formula") {
  Grid g(16, 256, kTwoPi);  // delta_eta = 1
  SpectralField f(g);
  const int col = g.col_of_eta(40.0);
  f.at_k(1, col) = Complex{1.0, 0.0};
  f.at_k(-1, g.col_of_eta(-40.0)) = Complex{1.0, 0.0};
  f.symmetrize();  // already Hermitian: keeps omega_hat(1,40) = 1 exactly

  // t = 0: phi = -1/(1 + 40^2) = -1/1601
  SpectralField phi0 = orr_streamfunction(f, 0.0);
  CHECK(phi0.at_k(1, col).real() ==
        doctest::Approx(-1.0 / 1601.0).epsilon(1e-14));
  CHECK(phi0.at_k(1, col).imag() == 0.0);

  // amplification at the critical time t = eta/k is (k^2+eta^2)/k^2
  double max_amp = 0.0;
  for (double t = 0.0; t <= 80.0; t += 0.25) {
    const SpectralField phi = orr_streamfunction(f, t);
    max_amp = std::max(max_amp, std::abs(phi.at_k(1, col)));
  }
  const SpectralField phi_c = orr_streamfunction(f, 40.0);
  CHECK(std::abs(phi_c.at_k(1, col)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_amp == doctest::Approx(1.0).epsilon(1e-14));
  const double ratio = std::abs(phi_c.at_k(1, col)) / std::abs(phi0.at_k(1, col));
  CHECK(ratio == doctest::Approx(1601.0).epsilon(1e-12));

  // k = 0 column: psi = -omega/eta^2, zero at eta = 0
  SpectralField f0(g);
  f0.at_k(0, g.col_of_eta(2.0)) = Complex{1.0, 0.0};
  f0.at_k(0, g.col_of_eta(-2.0)) = Complex{1.0, 0.0};
  f0.symmetrize();
  SpectralField psi0 = orr_streamfunction(f0, 3.0);
  CHECK(psi0.at_k(0, g.col_of_eta(2.0)).real() ==
        doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(std::abs(psi0.at_k(0, 0)) == 0.0);
}

TEST_CASE("k=0 data produces no fluctuating velocity") {
  Grid g(16, 64, 8.0 * kPi);
  SpectralField f(g);
  for (int j = 1; j < g.n_y() / 3; ++j)
    f.at_k(0, j) = Complex{std::exp(-0.5 * j), 0.0};
  f.symmetrize();
  const LinearDiagnostics d = linear_velocity_series(f, {1.0, 5.0, 10.0});
  for (double v : d.ux_fluct_norm) CHECK(v == 0.0);
  for (double v : d.uy_norm) CHECK(v == 0.0);
  for (double v : d.ux_mean_feedback) CHECK(v == 0.0);
}

TEST_CASE("linear decay rates: -1, -2 and feedback -3") {
  Grid g(16, 512, 8.0 * kPi);
  SpectralField f = gaussian_data(g, 2.0);
  std::vector<double> times;
  for (double t = 1.0; t <= 100.0; t += 1.0) times.push_back(t);
  const LinearDiagnostics d = linear_velocity_series(f, times);

  const double s_ux = fit_loglog(times, d.ux_fluct_norm, 10.0, 100.0).slope;
  const double s_uy = fit_loglog(times, d.uy_norm, 10.0, 100.0).slope;
  const double s_fb = fit_loglog(times, d.ux_mean_feedback, 10.0, 100.0).slope;
  CHECK(std::abs(s_ux + 1.0) <= 0.15);
  CHECK(std::abs(s_uy + 2.0) <= 0.15);
  CHECK(std::abs(s_fb + 3.0) <= 0.3);
}

TEST_CASE("feedback is bilinear: doubling data quadruples the value") {
  Grid g(16, 128, 8.0 * kPi);
  SpectralField f = gaussian_data(g, 1.5);
  SpectralField f2 = f;
  f2 *= 2.0;
  for (double t : {3.0, 12.0, 40.0}) {
    const double a = xavg_feedback(f, t);
    const double b = xavg_feedback(f2, t);
    CHECK(b == doctest::Approx(4.0 * a).epsilon(1e-12));
  }
}

TEST_CASE("time reversal symmetry for even-in-eta data") {
  Grid g(16, 128, 8.0 * kPi);
  SpectralField f = gaussian_data(g, 2.0);  // real even envelope
  for (double t : {2.5, 7.0, 31.0}) {
    const LinearDiagnostics dp = linear_velocity_series(f, {t});
    // mirror in time corresponds to eta -> -eta on this data
    SpectralField phi_m = orr_streamfunction(f, -t);
    SpectralField phi_p = orr_streamfunction(f, t);
    double m2 = 0.0, p2 = 0.0;
    for (std::size_t i = 0; i < phi_m.size(); ++i) {
      m2 += std::norm(phi_m.data()[i]);
      p2 += std::norm(phi_p.data()[i]);
    }
    CHECK(m2 == doctest::Approx(p2).epsilon(1e-12));
    (void)dp;
  }
}

TEST_CASE("sobolev growth of the advected vorticity is linear in t") {
  Grid g(8, 512, 8.0 * kPi);
  SpectralField f = gaussian_data(g, 2.0);
  std::vector<double> times, norms;
  for (double t = 5.0; t <= 120.0; t += 5.0) {
    times.push_back(t);
    norms.push_back(sobolev_norm_physical(linear_evolve(f, t), 1.0));
  }
  const double slope = fit_loglog(times, norms, 10.0, 120.0).slope;
  CHECK(std::abs(slope - 1.0) < 0.1);
}

TEST_CASE("casimir conservation is exact") {
  Grid g(16, 64, 8.0 * kPi);
  SpectralField f = gaussian_data(g, 2.0);
  double c0 = 0.0, c1 = 0.0;
  SpectralField ft = linear_evolve(f, 55.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    c0 += std::norm(f.data()[i]);
    c1 += std::norm(ft.data()[i]);
  }
  CHECK(c0 == c1);
}
