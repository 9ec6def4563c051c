#include <doctest.h>

#include <cmath>
#include <complex>

#include "orrlab/rng.hpp"
#include "orrlab/spectral_field.hpp"
#include "orrlab/transforms.hpp"

using namespace orrlab;

namespace {

// Band-limited random Hermitian field: the discrete realization of a
// "random real field" for round-trip checks.
SpectralField random_field(const Grid& g, std::uint64_t seed) {
  SpectralField f(g);
  CounterRng rng(seed);
  for (int k = -g.k_max(); k <= g.k_max(); ++k) {
    for (int j = 0; j < g.n_y(); ++j) {
      f.at_k(k, j) = Complex{rng.normal(), rng.normal()};
    }
  }
  f.symmetrize();
  dealias_in_place(f);
  return f;
}

}  // namespace

TEST_CASE("constant field transforms to the mean mode only") {
  Grid g(16, 32, 8.0 * kPi);
  Transformer tr(g);
  RealField one(g);
  for (double& v : one.values) v = 1.0;
  SpectralField f = tr.to_spectral(one);
  for (int k = -g.k_max(); k <= g.k_max(); ++k) {
    for (int j = 0; j < g.n_y(); ++j) {
      if (k == 0 && j == 0) {
        CHECK(std::abs(f.at_k(0, 0)) > 0.0);
      } else {
        CHECK(std::abs(f.at_k(k, j)) < 1e-12 * std::abs(f.at_k(0, 0)));
      }
    }
  }
}

TEST_CASE("cos(z) cos(eta0 y) hits four symmetric coefficients") {
  Grid g(16, 32, 8.0 * kPi);
  Transformer tr(g);
  const double eta0 = 3.0 * g.delta_eta();
  RealField vals(g);
  for (int a = 0; a < g.n_z(); ++a)
    for (int b = 0; b < g.n_y(); ++b)
      vals.at(a, b) = std::cos(g.z_of(a)) * std::cos(eta0 * g.y_of(b));
  SpectralField f = tr.to_spectral(vals);

  const int jp = g.col_of_eta(eta0);
  const int jm = g.col_of_eta(-eta0);
  const double ref = std::abs(f.at_k(1, jp));
  CHECK(ref > 0.0);
  CHECK(std::abs(f.at_k(1, jm)) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(std::abs(f.at_k(-1, jp)) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(std::abs(f.at_k(-1, jm)) == doctest::Approx(ref).epsilon(1e-12));

  double off = 0.0;
  for (int k = -g.k_max(); k <= g.k_max(); ++k)
    for (int j = 0; j < g.n_y(); ++j)
      if (!(std::abs(k) == 1 && (j == jp || j == jm)))
        off = std::max(off, std::abs(f.at_k(k, j)));
  CHECK(off < 1e-12 * ref);
}

TEST_CASE("round trip is the identity for band-limited fields") {
  Grid g(32, 64, 8.0 * kPi);
  Transformer tr(g);
  SpectralField f = random_field(g, 7);
  RealField phys = tr.to_physical(f);
  SpectralField back = tr.to_spectral(phys);
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    err = std::max(err, std::abs(f.data()[i] - back.data()[i]));
    scale = std::max(scale, std::abs(f.data()[i]));
  }
  CHECK(err < 1e-12 * scale);

  // physical-side round trip as well
  RealField phys2 = tr.to_physical(back);
  double perr = 0.0, pscale = 0.0;
  for (std::size_t i = 0; i < phys.values.size(); ++i) {
    perr = std::max(perr, std::abs(phys.values[i] - phys2.values[i]));
    pscale = std::max(pscale, std::abs(phys.values[i]));
  }
  CHECK(perr < 1e-12 * pscale);
}

TEST_CASE("Parseval holds with the 2pi-normalized measure") {
  Grid g(32, 64, 8.0 * kPi);
  Transformer tr(g);
  SpectralField f = random_field(g, 19);
  RealField phys = tr.to_physical(f);
  double grid_l2 = 0.0;
  for (double v : phys.values) grid_l2 += v * v;
  grid_l2 *= kTwoPi * g.l_y() / (g.n_z() * g.n_y());
  const double spec_l2 = f.l2_norm();
  CHECK(std::sqrt(grid_l2) == doctest::Approx(spec_l2).epsilon(1e-10));
}

TEST_CASE("derivative multipliers") {
  Grid g(16, 32, 8.0 * kPi);
  SpectralField f(g);
  f.at_k(1, 0) = Complex{1.0, 0.0};
  f.at_k(-1, 0) = Complex{1.0, 0.0};

  SpectralField dz = derivative(f, Axis::Z);
  CHECK(dz.at_k(1, 0) == Complex{0.0, 1.0});
  CHECK(dz.at_k(-1, 0) == Complex{0.0, -1.0});

  // y_moving at t = 0 coincides with y
  SpectralField fy = derivative(f, Axis::Y);
  SpectralField fm = derivative(f, Axis::YMoving);
  for (std::size_t i = 0; i < fy.size(); ++i)
    CHECK(fy.data()[i] == fm.data()[i]);

  // (k, eta) = (2, 6) at t = 3: moving frequency vanishes
  Grid g2(16, 32, kTwoPi);  // delta_eta = 1
  SpectralField h(g2, 3.0);
  const int col = g2.col_of_eta(6.0);
  h.at_k(2, col) = Complex{1.0, 0.0};
  SpectralField hm = derivative(h, Axis::YMoving);
  CHECK(std::abs(hm.at_k(2, col)) == 0.0);
}

TEST_CASE("dealias: idempotent, kills boundary modes, keeps the box") {
  Grid g(32, 64, 8.0 * kPi);
  SpectralField f(g);
  for (int k = -g.k_max(); k <= g.k_max(); ++k)
    for (int j = 0; j < g.n_y(); ++j) f.at_k(k, j) = Complex{1.0, 0.0};
  f.symmetrize();

  SpectralField d1 = dealias(f);
  CHECK(std::abs(d1.at_k(g.k_max(), 0)) == 0.0);
  CHECK(std::abs(d1.at_k(1, 1)) > 0.0);

  SpectralField d2 = dealias(d1);
  for (std::size_t i = 0; i < d1.size(); ++i)
    CHECK(d1.data()[i] == d2.data()[i]);  // bitwise idempotence

  // fields inside the box are unchanged
  SpectralField inbox(g);
  inbox.at_k(1, 2) = Complex{0.5, 0.25};
  inbox.at_k(-1, g.col_of_eta_index(-2)) = std::conj(inbox.at_k(1, 2));
  SpectralField d3 = dealias(inbox);
  for (std::size_t i = 0; i < inbox.size(); ++i)
    CHECK(inbox.data()[i] == d3.data()[i]);
}

TEST_CASE("sobolev norm: L2 at N=0, single-cell arithmetic, monotone") {
  Grid g(16, 32, 8.0 * kPi);
  SpectralField f(g);
  f.at_k(1, 0) = Complex{1.0, 0.0};
  f.at_k(-1, 0) = Complex{1.0, 0.0};

  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(f.l2_norm()).epsilon(1e-14));

  // single unit cell at (1, 0): norm = <1,0>^N sqrt(deta) per cell
  SpectralField one(g);
  one.at_k(1, 0) = Complex{1.0, 0.0};
  const double expected =
      std::pow(2.0, 1.5 / 2.0) * std::sqrt(g.delta_eta());
  CHECK(sobolev_norm(one, 1.5) == doctest::Approx(expected).epsilon(1e-13));

  SpectralField r(g);
  CounterRng rng(3);
  for (int j = 0; j < g.n_y() / 3; ++j)
    r.at_k(1, j) = Complex{rng.normal(), rng.normal()};
  r.symmetrize();
  double prev = sobolev_norm(r, 0.0);
  for (double n : {0.5, 1.0, 2.0, 3.0}) {
    const double cur = sobolev_norm(r, n);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("every operation preserves Hermitian symmetry") {
  Grid g(32, 64, 8.0 * kPi);
  Transformer tr(g);
  SpectralField f = random_field(g, 23);
  CHECK(f.is_hermitian());
  CHECK(derivative(f, Axis::Z).is_hermitian());
  CHECK(derivative(f, Axis::Y).is_hermitian());
  CHECK(dealias(f).is_hermitian());
  CHECK(tr.product(f, f).is_hermitian());
}

TEST_CASE("derivative commutes with dealias") {
  Grid g(32, 64, 8.0 * kPi);
  SpectralField f = random_field(g, 29);
  SpectralField a = dealias(derivative(f, Axis::Y));
  SpectralField b = derivative(dealias(f), Axis::Y);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a.data()[i] == b.data()[i]);
}
