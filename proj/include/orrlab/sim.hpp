#ifndef ORRLAB_SIM_HPP
#define ORRLAB_SIM_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "orrlab/spectral_field.hpp"
#include "orrlab/transforms.hpp"

namespace orrlab {

// Perturbation vorticity in the plain sheared frame z = x - t y together
// with the running time integrals of <U^x> and <omega> that feed the
// adaptive-coordinate diagnostics.
struct SimState {
  SimState(const Grid& grid)
      : h(grid), i_ux(grid.n_y(), 0.0), i_omega(grid.n_y(), 0.0) {}
  SpectralField h;
  double t = 0.0;
  std::vector<double> i_ux;     // int_0^t <U^x>(s, y) ds on the y grid
  std::vector<double> i_omega;  // int_0^t <omega>(s, y) ds on the y grid
  std::int64_t step_count = 0;
};

// Pseudospectral evolution of  d_t h + grad^perp(psi) . grad(h) = 0  with
// Delta_L psi = h; the full streamfunction including the k = 0 column is
// retained so the sheared-frame system is exactly 2D Euler.
class Simulator {
 public:
  explicit Simulator(const Grid& grid);

  const Grid& grid() const { return grid_; }

  // Streamfunction multiplier: psi_hat = -h_hat / (k^2 + (eta - k t)^2),
  // with -1/eta^2 on the k = 0 column and gauge zero at (0,0).
  SpectralField streamfunction(const SpectralField& h) const;

  struct RhsResult {
    SpectralField rhs;
    double max_velocity = 0.0;
  };
  // -(grad^perp psi . grad h), dealiased.  Throws BlowupError on NaN/Inf.
  RhsResult eval_rhs(const SpectralField& h);

  // Classical RK4 step; the accumulators advance with stage-consistent
  // quadrature of <U^x> and <omega>.  Throws ConfigError on CFL violation.
  void step_rk4(SimState& state, double dt);

  // <U^x>(y) and <omega>(y) profiles of the current vorticity.
  std::vector<double> mean_ux_profile(const SpectralField& h) const;
  std::vector<double> mean_omega_profile(const SpectralField& h) const;

  // The state read in the adaptive frame z = x - t y - Phi(t, y) with
  // Phi = int_0^t <U^x>; this is the field that converges strongly.
  SpectralField adapted_frame_field(const SimState& state) const;

  Transformer& transformer() { return transformer_; }

 private:
  Grid grid_;
  Transformer transformer_;
};

}  // namespace orrlab

#endif
