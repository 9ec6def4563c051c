#ifndef ORRLAB_TOY_HPP
#define ORRLAB_TOY_HPP

#include <vector>

namespace orrlab {

// Trajectory of the two-mode resonance model
//   d_t f_R  = kappa (k^2/|eta|) f_NR,
//   d_t f_NR = kappa |eta| / (k^2 + |eta - k t|^2) f_R,
// sampled in tau = t - eta/k over [-eta/k^2, eta/k^2].
struct ToyTrajectory {
  std::vector<double> tau;
  std::vector<double> f_r;
  std::vector<double> f_nr;
  double k = 1.0;
  double eta = 0.0;
  double kappa = 0.0;
  bool self_interaction = false;
};

// RK4 integration from f_R = f_NR = 1 at tau = -eta/k^2.  n_steps = 0 picks
// the step count by doubling until self-convergence below 1e-8 relative.
// The optional variant adds the weak self-interaction term
// kappa (k^2/|eta|) f_NR to the f_NR equation.
ToyTrajectory integrate_toy(double k, double eta, double kappa,
                            long n_steps = 0, bool self_interaction = false);

struct ToyGrowthFit {
  double alpha_left = 0.0;   // log f_NR vs log(1+|tau|) slope, tau <= 0
  double alpha_right = 0.0;  // log f_R  vs log(1+tau)  slope, tau >= 0
  double c_emp = 0.0;        // max trajectory/envelope with exponent kappa
  double ratio_at_zero = 0.0;  // f_NR/f_R at tau = 0
};

// Least-squares exponents over the power-law regime 10 <= |tau| <= eta/k^2
// and the empirical envelope constant of the growth proposition.
ToyGrowthFit fit_growth_exponents(const ToyTrajectory& traj);

}  // namespace orrlab

#endif
