#ifndef ORRLAB_WEIGHTS_HPP
#define ORRLAB_WEIGHTS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "orrlab/spectral_field.hpp"

namespace orrlab {

// Parameter pack for the time-dependent norm machinery.  mu is pinned to
// 4(1+2*c_kappa) and delta_lam to the closed-form rule that keeps
// lam(inf) > (lam + lam_prime)/2.
struct MultiplierSpec {
  double s = 0.55;          // Gevrey index, in (1/2, 1]
  double lam = 0.2;         // bulk regularity radius
  double lam_prime = 0.1;   // terminal radius, 0 < lam_prime < lam
  double sigma = 13.0;      // Sobolev correction, > 12
  double c_kappa = 0.5;     // weight exponent; c = 1 + 2 c_kappa in (3/2, 10)
  double q_tilde = 0.506;   // lam(t) decay exponent, in (1/2, s/8 + 7/16]

  double c() const { return 1.0 + 2.0 * c_kappa; }
  double mu() const { return 4.0 * c(); }
  // lam(t) on t <= 1
  double lam_short() const { return 0.75 * lam + 0.25 * lam_prime; }
  double delta_lam() const;

  void validate() const;  // throws ConfigError naming the offending field
};

// Critical times and intervals plus the piecewise weights w_NR, w_R, w_k and
// the multipliers J, A, A~, J^R, A^R built from them.  All weight arithmetic
// is carried in log space; evaluations are O(sqrt(|eta|)) with per-eta
// memoization of the interval ladder.  Immutable after construction; the
// memo tables are internally guarded so const evaluation is thread-safe.
class WeightSystem {
 public:
  explicit WeightSystem(const MultiplierSpec& spec);

  const MultiplierSpec& spec() const { return spec_; }

  // E(sqrt(|eta|)): index of the earliest critical interval.
  static int interval_count(double eta);
  // t_{k,eta} for k >= 1; t_{0,eta} = 2|eta|.
  static double critical_time(int k, double eta);
  // Unique k >= 1 with t in I(k,|eta|) = [t_k, t_{k-1}); none outside the
  // ladder.  Ties at shared endpoints resolve to the larger k.
  static std::optional<int> interval_of(double t, double eta);
  // Restricted resonant interval bold-I: I(k,eta) if 2 sqrt(|eta|) <= t_k.
  static bool resonant_interval_nonempty(int k, double eta);

  double log_w_nr(double t, double eta) const;
  double log_w_r(double t, double eta) const;
  // Full w_k(t,eta): w_R on the mode's own interval when eta*k >= 0, w_NR
  // otherwise; constant before the ladder, 1 after t >= 2|eta|.
  double log_w(double t, int k, double eta) const;

  // Closed-form piecewise d/dt log w; at shared endpoints the left-limit is
  // used (membership is closed-left, derivatives are open-left).
  double dlog_w_nr_dt(double t, double eta) const;
  double dlog_w_r_dt(double t, double eta) const;
  double dlog_w_dt(double t, int k, double eta) const;

  // Bulk Gevrey index lam(t) and its derivative.
  double lambda_of(double t) const;
  double dlambda_dt(double t) const;

  // log of J_k = e^{mu sqrt|eta|}/w_k + e^{mu sqrt|k|} via log-sum-exp.
  double log_J(double t, int k, double eta) const;
  // log of A_k = e^{lam(t)|k,eta|^s} <k,eta>^sigma J_k.
  double log_A(double t, int k, double eta) const;
  // log of A~_k = e^{lam(t)|k,eta|^s} <k,eta>^sigma e^{mu sqrt|eta|}/w_k.
  double log_A_tilde(double t, int k, double eta) const;
  // Resonant-regularity variants of J and A (functions of eta alone).
  double log_J_R(double t, double eta) const;
  double log_A_R(double t, double eta) const;

 private:
  struct Ladder {
    int n = 0;                      // E(sqrt(eta))
    std::vector<double> t_end;      // t_end[k] = t_{k,eta}, k = 0..n
    std::vector<double> log_w_end;  // log w_NR at t_end[k]
  };

  const Ladder& ladder(double eta_abs) const;
  double lambda_integral(double t) const;  // int_1^t <tau>^{-2 q~} dtau

  MultiplierSpec spec_;
  mutable std::unordered_map<std::uint64_t, Ladder> ladder_cache_;
  mutable std::unordered_map<std::uint64_t, double> lam_cache_;
  mutable std::shared_mutex mutex_;
};

// Gevrey norm with Sobolev correction,
//   (sum_k int |f_hat|^2 e^{2 lam (|k|+|eta|)^s} <k,eta>^{2 sigma} deta)^{1/2},
// accumulated in log space.  Throws RangeError naming the offending mode if
// the result overflows double range.
double gevrey_norm(const SpectralField& f, double lam, double sigma, double s);

}  // namespace orrlab

#endif
