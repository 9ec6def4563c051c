#include "orrlab/weights.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>

#include "orrlab/errors.hpp"
#include "orrlab/logspace.hpp"

namespace orrlab {

namespace {

std::uint64_t key_of(double x) {
  std::uint64_t k;
  std::memcpy(&k, &x, sizeof(k));
  return k;
}

double jap(double x) { return std::sqrt(1.0 + x * x); }

double l1_mag(int k, double eta) { return std::abs(k) + std::abs(eta); }

}  // namespace

double MultiplierSpec::delta_lam() const {
  // Chosen so that lam(inf) is the geometric mean of 1+lam(1) and
  // 1+(lam+lam_prime)/2 minus one, which sits strictly above the target
  // floor (lam+lam_prime)/2:
  //   int_1^inf <tau>^{-2q} dtau <= 1/(2q-1).
  const double floor_ratio =
      (1.0 + lam_short()) / (1.0 + 0.5 * (lam + lam_prime));
  return 0.5 * (2.0 * q_tilde - 1.0) * std::log(floor_ratio);
}

void MultiplierSpec::validate() const {
  if (!(s > 0.5) || !(s <= 1.0))
    throw ConfigError("multiplier.s must lie in (1/2, 1]");
  if (!(lam > 0.0) || !(lam_prime > 0.0) || !(lam > lam_prime))
    throw ConfigError("multiplier.lambda must satisfy lambda > lambda_prime > 0");
  if (!(sigma > 12.0)) throw ConfigError("multiplier.sigma must exceed 12");
  const double cc = c();
  if (!(cc > 1.5) || !(cc < 10.0))
    throw ConfigError("multiplier.c_kappa must give 1+2*c_kappa in (3/2, 10)");
  if (!(q_tilde > 0.5) || !(q_tilde <= s / 8.0 + 7.0 / 16.0))
    throw ConfigError("multiplier.q_tilde must lie in (1/2, s/8 + 7/16]");
}

WeightSystem::WeightSystem(const MultiplierSpec& spec) : spec_(spec) {
  spec_.validate();
}

int WeightSystem::interval_count(double eta) {
  const double ea = std::abs(eta);
  if (ea < 1.0) return 0;
  int n = static_cast<int>(std::floor(std::sqrt(ea)));
  while (static_cast<double>(n + 1) * (n + 1) <= ea) ++n;
  while (n > 0 && static_cast<double>(n) * n > ea) --n;
  return n;
}

double WeightSystem::critical_time(int k, double eta) {
  const double ea = std::abs(eta);
  if (k == 0) return 2.0 * ea;
  const double ka = std::abs(static_cast<double>(k));
  return ea / ka - ea / (2.0 * ka * (ka + 1.0));
}

std::optional<int> WeightSystem::interval_of(double t, double eta) {
  const double ea = std::abs(eta);
  const int n = interval_count(ea);
  if (n < 1) return std::nullopt;
  if (t < critical_time(n, ea) || t >= 2.0 * ea) return std::nullopt;
  // t_end is decreasing in k; scan from the earliest interval.
  for (int k = n; k >= 1; --k) {
    if (t < critical_time(k - 1, ea)) return k;
  }
  return std::nullopt;
}

bool WeightSystem::resonant_interval_nonempty(int k, double eta) {
  const double ea = std::abs(eta);
  const int n = interval_count(ea);
  const int ka = std::abs(k);
  if (ka < 1 || ka > n) return false;
  return 2.0 * std::sqrt(ea) <= critical_time(ka, ea);
}

const WeightSystem::Ladder& WeightSystem::ladder(double eta_abs) const {
  const std::uint64_t key = key_of(eta_abs);
  {
    std::shared_lock lock(mutex_);
    auto it = ladder_cache_.find(key);
    if (it != ladder_cache_.end()) return it->second;
  }
  Ladder lad;
  lad.n = interval_count(eta_abs);
  lad.t_end.resize(lad.n + 1);
  lad.log_w_end.resize(lad.n + 1);
  lad.t_end[0] = 2.0 * eta_abs;
  lad.log_w_end[0] = 0.0;  // w = 1 from t_0 = 2 eta onwards
  const double c = spec_.c();
  for (int k = 1; k <= lad.n; ++k) {
    lad.t_end[k] = critical_time(k, eta_abs);
    lad.log_w_end[k] = lad.log_w_end[k - 1] +
                       c * std::log(static_cast<double>(k) * k / eta_abs);
  }
  std::unique_lock lock(mutex_);
  return ladder_cache_.emplace(key, std::move(lad)).first->second;
}

namespace {

struct IntervalGeometry {
  int k = 0;          // interval index
  double tau = 0.0;   // t - eta/k
  double slope = 0.0; // a_k on the left half, b_k on the right half
  bool right = false; // t >= eta/k
};

// a_k and b_k from the endpoint-matching rule.
double slope_b(int k, double eta) {
  if (k == 1) return 1.0 - 1.0 / eta;
  return 2.0 * (k - 1.0) / k * (1.0 - static_cast<double>(k) * k / eta);
}

double slope_a(int k, double eta) {
  return 2.0 * (k + 1.0) / k * (1.0 - static_cast<double>(k) * k / eta);
}

IntervalGeometry geometry(int k, double t, double eta) {
  IntervalGeometry g;
  g.k = k;
  const double tc = eta / k;
  g.tau = t - tc;
  g.right = (t >= tc);
  g.slope = g.right ? slope_b(k, eta) : slope_a(k, eta);
  return g;
}

}  // namespace

double WeightSystem::log_w_nr(double t, double eta) const {
  const double ea = std::abs(eta);
  const Ladder& lad = ladder(ea);
  if (lad.n < 1) return 0.0;
  if (t >= lad.t_end[0]) return 0.0;
  if (t < lad.t_end[lad.n]) return lad.log_w_end[lad.n];
  const int k = *interval_of(t, ea);
  const IntervalGeometry g = geometry(k, t, ea);
  const double ck = spec_.c_kappa;
  if (g.right) {
    // w_NR = ((k^2/eta)(1 + b |tau|))^{c_kappa} w_NR(t_{k-1})
    return ck * (std::log(static_cast<double>(k) * k / ea) +
                 std::log1p(g.slope * g.tau)) +
           lad.log_w_end[k - 1];
  }
  // w_NR = (1 + a |tau|)^{-1-c_kappa} w_NR(eta/k)
  const double log_at_tc =
      ck * std::log(static_cast<double>(k) * k / ea) + lad.log_w_end[k - 1];
  return -(1.0 + ck) * std::log1p(g.slope * (-g.tau)) + log_at_tc;
}

double WeightSystem::log_w_r(double t, double eta) const {
  const double ea = std::abs(eta);
  const Ladder& lad = ladder(ea);
  if (lad.n < 1) return 0.0;
  if (t >= lad.t_end[0]) return 0.0;
  // Before the ladder w_R freezes at its earliest-endpoint value, where it
  // agrees with w_NR.
  if (t < lad.t_end[lad.n]) return lad.log_w_end[lad.n];
  const int k = *interval_of(t, ea);
  const IntervalGeometry g = geometry(k, t, ea);
  return std::log(static_cast<double>(k) * k / ea) +
         std::log1p(g.slope * std::abs(g.tau)) + log_w_nr(t, eta);
}

double WeightSystem::log_w(double t, int k, double eta) const {
  const double ea = std::abs(eta);
  if (interval_count(ea) < 1) return 0.0;
  // Modes tilted with the shear never resonate for t > 0.
  const bool sign_ok = (static_cast<double>(k) * eta >= 0.0);
  if (sign_ok && interval_of(t, ea) == std::optional<int>(std::abs(k)))
    return log_w_r(t, eta);
  return log_w_nr(t, eta);
}

double WeightSystem::dlog_w_nr_dt(double t, double eta) const {
  const double ea = std::abs(eta);
  const Ladder& lad = ladder(ea);
  if (lad.n < 1) return 0.0;
  // left-limit convention: intervals open on the left for derivatives
  if (t <= lad.t_end[lad.n] || t > lad.t_end[0]) return 0.0;
  int k = lad.n;
  while (k >= 1 && t > lad.t_end[k - 1]) --k;
  const double tc = ea / k;
  if (t > tc) {
    const double b = slope_b(k, ea);
    return spec_.c_kappa * b / (1.0 + b * (t - tc));
  }
  const double a = slope_a(k, ea);
  return (1.0 + spec_.c_kappa) * a / (1.0 + a * (tc - t));
}

double WeightSystem::dlog_w_r_dt(double t, double eta) const {
  const double ea = std::abs(eta);
  const Ladder& lad = ladder(ea);
  if (lad.n < 1) return 0.0;
  if (t <= lad.t_end[lad.n] || t > lad.t_end[0]) return 0.0;
  int k = lad.n;
  while (k >= 1 && t > lad.t_end[k - 1]) --k;
  const double tc = ea / k;
  if (t > tc) {
    const double b = slope_b(k, ea);
    return (1.0 + spec_.c_kappa) * b / (1.0 + b * (t - tc));
  }
  const double a = slope_a(k, ea);
  return spec_.c_kappa * a / (1.0 + a * (tc - t));
}

double WeightSystem::dlog_w_dt(double t, int k, double eta) const {
  const double ea = std::abs(eta);
  if (interval_count(ea) < 1) return 0.0;
  const bool sign_ok = (static_cast<double>(k) * eta >= 0.0);
  if (!sign_ok) return dlog_w_nr_dt(t, eta);
  // membership for the derivative uses the left-limit interval
  const Ladder& lad = ladder(ea);
  if (t <= lad.t_end[lad.n] || t > lad.t_end[0]) return 0.0;
  int m = lad.n;
  while (m >= 1 && t > lad.t_end[m - 1]) --m;
  if (m == std::abs(k)) return dlog_w_r_dt(t, eta);
  return dlog_w_nr_dt(t, eta);
}

double WeightSystem::lambda_integral(double t) const {
  // int_1^t (1+tau^2)^{-q~} dtau by adaptive Simpson
  const double q = spec_.q_tilde;
  auto f = [q](double x) { return std::pow(1.0 + x * x, -q); };
  std::function<double(double, double, double, double, double, double, int)>
      rec = [&](double a, double b, double fa, double fb, double fm,
                double whole, int depth) -> double {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 1e-13)
      return left + right;
    return rec(a, m, fa, fm, flm, left, depth - 1) +
           rec(m, b, fm, fb, frm, right, depth - 1);
  };
  const double fa = f(1.0);
  const double fb = f(t);
  const double fm = f(0.5 * (1.0 + t));
  const double whole = (t - 1.0) / 6.0 * (fa + 4.0 * fm + fb);
  return rec(1.0, t, fa, fb, fm, whole, 40);
}

double WeightSystem::lambda_of(double t) const {
  if (t <= 1.0) return spec_.lam_short();
  const std::uint64_t key = key_of(t);
  {
    std::shared_lock lock(mutex_);
    auto it = lam_cache_.find(key);
    if (it != lam_cache_.end()) return it->second;
  }
  const double q = lambda_integral(t);
  const double value =
      (1.0 + spec_.lam_short()) * std::exp(-spec_.delta_lam() * q) - 1.0;
  std::unique_lock lock(mutex_);
  lam_cache_.emplace(key, value);
  return value;
}

double WeightSystem::dlambda_dt(double t) const {
  if (t <= 1.0) return 0.0;
  return -spec_.delta_lam() * (1.0 + lambda_of(t)) *
         std::pow(1.0 + t * t, -spec_.q_tilde);
}

double WeightSystem::log_J(double t, int k, double eta) const {
  const double mu = spec_.mu();
  const double res = mu * std::sqrt(std::abs(eta)) - log_w(t, k, eta);
  const double nonres = mu * std::sqrt(std::abs(static_cast<double>(k)));
  return log_add(res, nonres);
}

double WeightSystem::log_A(double t, int k, double eta) const {
  const double mag = l1_mag(k, eta);
  return lambda_of(t) * std::pow(mag, spec_.s) +
         spec_.sigma * std::log(jap(mag)) + log_J(t, k, eta);
}

double WeightSystem::log_A_tilde(double t, int k, double eta) const {
  const double mag = l1_mag(k, eta);
  return lambda_of(t) * std::pow(mag, spec_.s) +
         spec_.sigma * std::log(jap(mag)) +
         spec_.mu() * std::sqrt(std::abs(eta)) - log_w(t, k, eta);
}

double WeightSystem::log_J_R(double t, double eta) const {
  const double ea = std::abs(eta);
  const double head = spec_.mu() * std::sqrt(ea);
  const Ladder& lad = ladder(ea);
  if (lad.n < 1 || t >= 2.0 * ea) return head;
  if (t < lad.t_end[lad.n]) return head - lad.log_w_end[lad.n];
  return head - log_w_r(t, eta);
}

double WeightSystem::log_A_R(double t, double eta) const {
  const double ea = std::abs(eta);
  return lambda_of(t) * std::pow(ea, spec_.s) +
         spec_.sigma * std::log(jap(ea)) + log_J_R(t, eta);
}

double gevrey_norm(const SpectralField& f, double lam, double sigma,
                   double s) {
  const Grid& g = f.grid();
  LogSumAccumulator acc;
  const double log_deta = std::log(g.delta_eta());
  double best = kLogZero;
  int best_k = 0;
  double best_eta = 0.0;
  for (int r = 0; r < g.n_k(); ++r) {
    const int k = g.k_of_row(r);
    for (int j = 0; j < g.n_y(); ++j) {
      const double a2 = std::norm(f.at(r, j));
      if (a2 == 0.0) continue;
      const double eta = g.eta_of_col(j);
      const double mag = l1_mag(k, eta);
      const double term = std::log(a2) + 2.0 * lam * std::pow(mag, s) +
                          sigma * std::log1p(mag * mag) + log_deta;
      if (term > best) {
        best = term;
        best_k = k;
        best_eta = eta;
      }
      acc.add(term);
    }
  }
  if (acc.empty()) return 0.0;
  const double half = 0.5 * acc.log_sum();
  if (half > std::log(std::numeric_limits<double>::max()) - 1.0) {
    std::ostringstream msg;
    msg << "gevrey_norm overflows double range; dominant mode (k=" << best_k
        << ", eta=" << best_eta << ")";
    throw RangeError(msg.str());
  }
  return std::exp(half);
}

}  // namespace orrlab
