#ifndef ORRLAB_LINEAR_HPP
#define ORRLAB_LINEAR_HPP

#include <utility>
#include <vector>

#include "orrlab/spectral_field.hpp"

namespace orrlab {

// Velocity-decay diagnostics of the linearized problem.
struct LinearDiagnostics {
  std::vector<double> times;
  std::vector<double> ux_fluct_norm;     // ||U^x - <U^x>||_2
  std::vector<double> uy_norm;           // ||U^y||_2
  std::vector<double> ux_mean_feedback;  // ||<U^y d_y U^x>||_2
  // |phi_hat| traces for requested (k, eta) pairs, one series per pair.
  std::vector<std::pair<int, double>> trace_modes;
  std::vector<std::vector<double>> mode_traces;
};

// Advection by the background shear freezes the sheared-frame coefficients:
// the solution at time t is the initial field with frame_time set to t.
SpectralField linear_evolve(const SpectralField& omega_in, double t);

// phi_hat(t,k,eta) = -omega_hat_in(k,eta) / (k^2 + |eta - k t|^2); the k = 0
// column uses -omega_hat/eta^2 with the (0,0) gauge coefficient set to zero.
SpectralField orr_streamfunction(const SpectralField& omega_in, double t);

// ||<U^y d_y U^x>||_2 for the linear fields at time t, assembled as the
// exact k-sum spectral convolution (no quadrature error within the band).
double xavg_feedback(const SpectralField& omega_in, double t);

LinearDiagnostics linear_velocity_series(
    const SpectralField& omega_in, const std::vector<double>& times,
    const std::vector<std::pair<int, double>>& trace_modes = {});

}  // namespace orrlab

#endif
