#include "orrlab/lemma_harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "orrlab/errors.hpp"
#include "orrlab/rng.hpp"
#include "orrlab/transforms.hpp"

namespace orrlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_uniform(CounterRng& rng, double lo, double hi) {
  return lo * std::exp(rng.next_double() * std::log(hi / lo));
}

struct Extremes {
  double max_full = 0.0;
  double max_half = 0.0;
  double min_seen = kInf;
  long admissible = 0;

  void add(double value, long index, long half_at) {
    ++admissible;
    max_full = std::max(max_full, value);
    if (index < half_at) max_half = std::max(max_half, value);
    min_seen = std::min(min_seen, value);
  }
};

// Samples (eta, k, t) with t inside I(k, eta); optionally requires
// t > 2 sqrt(eta) so the slope lower bounds are active.
struct IntervalSample {
  double eta = 0.0;
  int k = 0;
  double t = 0.0;
  bool ok = false;
};

IntervalSample sample_interval(CounterRng& rng, double eta_min, double eta_max,
                               bool past_2sqrt) {
  IntervalSample s;
  s.eta = log_uniform(rng, eta_min, eta_max);
  const int n = WeightSystem::interval_count(s.eta);
  if (n < 1) return s;
  if (past_2sqrt) {
    // pick among intervals intersecting (2 sqrt(eta), 2 eta)
    const double floor_t = 2.0 * std::sqrt(s.eta);
    std::vector<int> ks;
    for (int k = 1; k <= n; ++k)
      if (WeightSystem::critical_time(k - 1, s.eta) > floor_t) ks.push_back(k);
    if (ks.empty()) return s;
    s.k = ks[rng.uniform_index(ks.size())];
    const double lo =
        std::max(WeightSystem::critical_time(s.k, s.eta), floor_t);
    const double hi = WeightSystem::critical_time(s.k - 1, s.eta);
    if (!(hi > lo)) return s;
    s.t = rng.uniform(lo, hi);
  } else {
    s.k = 1 + static_cast<int>(rng.uniform_index(n));
    const double lo = WeightSystem::critical_time(s.k, s.eta);
    const double hi = WeightSystem::critical_time(s.k - 1, s.eta);
    s.t = rng.uniform(lo, hi);
  }
  s.ok = (s.t > 0.0);
  return s;
}

}  // namespace

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::Basic: return "basic";
    case LemmaId::WellSep: return "wellsep";
    case LemmaId::Dtw: return "dtw";
    case LemmaId::WtFreqCompare: return "wtfreqcompare";
    case LemmaId::WFreqCompare: return "wfreqcompare";
    case LemmaId::Jswap: return "jswap";
    case LemmaId::JTrans: return "jtrans";
    case LemmaId::ProdAlg: return "prodalg";
    case LemmaId::WUpLow: return "wuplow";
  }
  return "unknown";
}

LemmaId lemma_from_name(const std::string& name) {
  for (LemmaId id : all_lemmas())
    if (name == lemma_name(id)) return id;
  throw ConfigError("lemmas.id unknown: " + name);
}

std::vector<LemmaId> all_lemmas() {
  return {LemmaId::Basic,         LemmaId::WellSep, LemmaId::Dtw,
          LemmaId::WtFreqCompare, LemmaId::WFreqCompare, LemmaId::Jswap,
          LemmaId::JTrans,        LemmaId::ProdAlg, LemmaId::WUpLow};
}

std::string LemmaReport::to_json() const {
  nlohmann::json j;
  j["lemma_id"] = lemma_id;
  j["samples"] = samples;
  j["admissible"] = admissible;
  j["violations"] = violations;
  j["C_emp"] = c_emp;
  j["C_emp_half"] = c_emp_half;
  j["ratio_min"] = ratio_min;
  j["stable"] = stable;
  j["vacuous"] = vacuous;
  if (!note.empty()) j["note"] = note;
  return j.dump();
}

namespace {

LemmaReport finish(LemmaId id, long samples, Extremes& ex, long violations,
                   std::string note = "") {
  LemmaReport rep;
  rep.lemma_id = lemma_name(id);
  rep.samples = samples;
  rep.admissible = ex.admissible;
  rep.violations = violations;
  rep.c_emp = ex.max_full;
  rep.c_emp_half = ex.max_half;
  rep.ratio_min = (ex.min_seen == kInf) ? 0.0 : ex.min_seen;
  rep.vacuous = (ex.admissible == 0);
  rep.stable = !rep.vacuous && std::isfinite(ex.max_full) &&
               ex.max_half > 0.0 && ex.max_full <= 2.0 * ex.max_half;
  rep.note = std::move(note);
  return rep;
}

LemmaReport lemma_basic(const WeightSystem& ws, const LemmaSampleSpec& spec) {
  // r(eta) = w(0,eta)^{-1} eta^{mu/8} e^{-mu sqrt(eta)/2} should flatten;
  // report its spread over a geometric ladder and the 1e4 -> 4e4 change.
  const double mu = ws.spec().mu();
  Extremes ex;
  long count = 0;
  double r_1e4 = 0.0, r_4e4 = 0.0;
  const int rungs = 25;
  for (int i = 0; i <= rungs; ++i) {
    const double eta =
        spec.eta_min *
        std::pow(4.0 * spec.eta_max / spec.eta_min,
                 static_cast<double>(i) / rungs);
    const double log_r = -ws.log_w_nr(0.0, eta) +
                         (mu / 8.0) * std::log(eta) -
                         0.5 * mu * std::sqrt(eta);
    ex.add(std::exp(log_r), i, (rungs + 1) / 2);
    ++count;
  }
  {
    const double lr1 = -ws.log_w_nr(0.0, 1.0e4) + (mu / 8.0) * std::log(1.0e4) -
                       0.5 * mu * 100.0;
    const double lr4 = -ws.log_w_nr(0.0, 4.0e4) + (mu / 8.0) * std::log(4.0e4) -
                       0.5 * mu * 200.0;
    r_1e4 = std::exp(lr1);
    r_4e4 = std::exp(lr4);
  }
  const double rel = std::abs(r_4e4 - r_1e4) / r_1e4;
  LemmaReport rep = finish(LemmaId::Basic, count, ex, 0);
  rep.stable = rel < 0.05;
  rep.note = "rel change r(1e4)->r(4e4) = " + std::to_string(rel);
  return rep;
}

LemmaReport lemma_wellsep(const WeightSystem&, const LemmaSampleSpec& spec) {
  CounterRng rng(spec.seed, 11);
  Extremes ex;
  long violations = 0;
  const long total = 2 * spec.count;
  for (long i = 0; i < total; ++i) {
    IntervalSample a = sample_interval(rng, spec.eta_min, spec.eta_max, false);
    if (!a.ok) continue;
    const double ratio = std::exp(rng.uniform(-std::log(2.0), std::log(2.0)));
    const double xi = a.eta * ratio;
    const auto n_opt = WeightSystem::interval_of(a.t, xi);
    if (!n_opt) continue;
    const int k = a.k;
    const int n = *n_opt;
    const double alpha = std::max(a.eta / xi, xi / a.eta);
    const double t = a.t;

    const bool case_a = (k == n);
    const bool case_b =
        std::abs(t - a.eta / k) >= a.eta / (10.0 * alpha * k * k) &&
        std::abs(t - xi / n) >= xi / (10.0 * alpha * n * n);
    // one-sided gap bounds implied when (a) and (b) both fail
    const double bound_eta =
        a.eta / (2.0 * (n + 1.0)) - xi / (10.0 * alpha * n);
    const double bound_xi =
        xi / (2.0 * (k + 1.0)) - a.eta / (10.0 * alpha * k);
    const double gap_bound = std::max(0.0, std::min(bound_eta, bound_xi));
    const bool case_c = std::abs(a.eta - xi) >= gap_bound;
    if (!case_a && !case_b && !case_c) ++violations;
    if (!case_a && !case_b)
      ex.add(std::abs(a.eta - xi) * n / a.eta, i, spec.count);
    else
      ex.admissible++;
  }
  LemmaReport rep =
      finish(LemmaId::WellSep, total, ex, violations,
             "C_emp is the empirical (c)-gap constant |eta-xi| n / eta");
  rep.stable = (violations == 0);
  return rep;
}

LemmaReport lemma_dtw(const WeightSystem& ws, const LemmaSampleSpec& spec) {
  CounterRng rng(spec.seed, 12);
  Extremes ex;
  const long total = 2 * spec.count;
  for (long i = 0; i < total; ++i) {
    IntervalSample s = sample_interval(rng, 25.0, spec.eta_max, true);
    if (!s.ok) continue;
    const double tau = std::abs(s.t - s.eta / s.k);
    const double x_nr = ws.dlog_w_nr_dt(s.t, s.eta) * (1.0 + tau);
    const double x_r = ws.dlog_w_r_dt(s.t, s.eta) * (1.0 + tau);
    if (x_nr <= 0.0 || x_r <= 0.0) continue;
    ex.add(std::max(x_nr, x_r), i, spec.count);
    ex.min_seen = std::min(ex.min_seen, std::min(x_nr, x_r));
  }
  return finish(LemmaId::Dtw, total, ex, 0,
                "bracket of (d_t w/w)(1+|t - eta/k|) on resonant intervals");
}

LemmaReport lemma_wtfreqcompare(const WeightSystem& ws,
                                const LemmaSampleSpec& spec) {
  CounterRng rng(spec.seed, 13);
  Extremes ex;
  const double s_exp = ws.spec().s;
  const long total = 2 * spec.count;
  for (long i = 0; i < total; ++i) {
    const double eta = log_uniform(rng, spec.eta_min, spec.eta_max);
    const double xi = eta * std::exp(rng.uniform(-std::log(4.0), std::log(4.0)));
    // part (i): max(2 sqrt|xi|, sqrt|eta|) < t < 2 min(|xi|, |eta|)
    {
      const double lo = std::max(2.0 * std::sqrt(xi), std::sqrt(eta));
      const double hi = 2.0 * std::min(xi, eta);
      if (hi > lo) {
        const double t = rng.uniform(lo, hi);
        const double d_eta = ws.dlog_w_nr_dt(t, eta);
        const double d_xi = ws.dlog_w_nr_dt(t, xi);
        if (d_xi > 0.0) {
          const double val =
              (d_eta / d_xi) / std::sqrt(1.0 + (eta - xi) * (eta - xi));
          ex.add(val, i, spec.count);
        }
      }
    }
    // part (ii): any t >= 1
    {
      const double t = rng.uniform(1.0, 2.5 * std::max(eta, xi));
      const double d_eta = ws.dlog_w_nr_dt(t, eta);
      const double d_xi = ws.dlog_w_nr_dt(t, xi);
      const double lhs = std::sqrt(std::max(d_xi, 0.0));
      const double rhs =
          (std::sqrt(std::max(d_eta, 0.0)) +
           std::pow(eta, 0.5 * s_exp) / std::pow(1.0 + t * t, 0.5 * s_exp)) *
          std::sqrt(1.0 + (eta - xi) * (eta - xi));
      if (rhs > 0.0 && lhs > 0.0) ex.add(lhs / rhs, i, spec.count);
    }
  }
  return finish(LemmaId::WtFreqCompare, total, ex, 0);
}

LemmaReport lemma_wfreqcompare(const WeightSystem& ws,
                               const LemmaSampleSpec& spec) {
  CounterRng rng(spec.seed, 14);
  Extremes ex;
  const double mu = ws.spec().mu();
  const long total = 2 * spec.count;
  for (long i = 0; i < total; ++i) {
    const double eta = log_uniform(rng, 1.0, spec.eta_max);
    double xi;
    if (rng.next_double() < 0.5)
      xi = eta * std::exp(rng.uniform(-std::log(4.0), std::log(4.0)));
    else
      xi = log_uniform(rng, 1.0, spec.eta_max);
    const double t = rng.uniform(0.0, 2.2 * std::max(eta, xi));
    const double log_ratio = ws.log_w_nr(t, xi) - ws.log_w_nr(t, eta);
    const double log_bound = mu * std::sqrt(std::abs(eta - xi));
    ex.add(std::exp(log_ratio - log_bound), i, spec.count);
  }
  return finish(LemmaId::WFreqCompare, total, ex, 0);
}

LemmaReport lemma_jswap(const WeightSystem& ws, const LemmaSampleSpec& spec) {
  CounterRng rng(spec.seed, 15);
  Extremes ex;
  const double mu = ws.spec().mu();
  const long total = 2 * spec.count;
  long improved_checked = 0;
  for (long i = 0; i < total; ++i) {
    IntervalSample s = sample_interval(rng, spec.eta_min, spec.eta_max, false);
    if (!s.ok) continue;
    const double xi =
        s.eta * std::exp(rng.uniform(-std::log(2.0), std::log(2.0)));
    const int l = std::max(
        0, s.k + static_cast<int>(rng.uniform_index(5)) - 2);
    const double t = s.t;
    const int k = s.k;
    // resonant-loss bound, proved for t in I(k, eta)
    {
      const double lead =
          std::log(s.eta / (k * k * (1.0 + std::abs(t - s.eta / k))));
      const double dist =
          std::abs(k - l) + std::abs(s.eta - xi);
      const double log_x = ws.log_J(t, k, s.eta) - ws.log_J(t, l, xi) - lead -
                           9.0 * mu * std::sqrt(dist);
      ex.add(std::exp(log_x), i, spec.count);
    }
    // improved bound when the resonant loss cannot occur: k = l, or
    // t in I(k,eta) but not in I(k,xi) with comparable frequencies
    {
      const bool in_k_xi =
          WeightSystem::interval_of(t, xi) == std::optional<int>(k) &&
          xi * k >= 0.0;
      const bool hyp = (l == k) || !in_k_xi;
      if (hyp) {
        const double dist = std::abs(k - l) + std::abs(s.eta - xi);
        const double log_x = ws.log_J(t, k, s.eta) - ws.log_J(t, l, xi) -
                             10.0 * mu * std::sqrt(dist);
        ex.add(std::exp(log_x), i, spec.count);
        ++improved_checked;
      }
    }
  }
  return finish(LemmaId::Jswap, total, ex, 0,
                "general bound on I(k,eta) plus improved bound; improved "
                "tuples = " +
                    std::to_string(improved_checked));
}

LemmaReport lemma_jtrans(const WeightSystem& ws, const LemmaSampleSpec& spec) {
  CounterRng rng(spec.seed, 16);
  Extremes ex;
  const double mu = ws.spec().mu();
  const long total = 2 * spec.count;
  for (long i = 0; i < total; ++i) {
    const double eta = log_uniform(rng, spec.eta_min, spec.eta_max);
    const double xi =
        eta * std::exp(rng.uniform(-std::log(4.0), std::log(4.0)));
    const int k = static_cast<int>(rng.uniform_index(
        static_cast<std::uint64_t>(std::sqrt(eta)) + 2));
    const int l = static_cast<int>(rng.uniform_index(
        static_cast<std::uint64_t>(std::sqrt(xi)) + 2));
    const double tmax = 0.5 * std::min(std::sqrt(eta), std::sqrt(xi));
    if (!(tmax > 0.0)) continue;
    const double t = rng.uniform(0.0, tmax);
    const double ratio =
        std::exp(ws.log_J(t, k, eta) - ws.log_J(t, l, xi));
    const double dist2 = std::abs(eta - xi) + std::abs(k - l);
    const double rhs =
        std::sqrt(1.0 + dist2 * dist2) /
        std::sqrt(static_cast<double>(std::abs(k) + std::abs(l)) + eta + xi) *
        std::exp(11.0 * mu * std::sqrt(dist2));
    ex.add(std::abs(ratio - 1.0) / rhs, i, spec.count);
  }
  return finish(LemmaId::JTrans, total, ex, 0);
}

LemmaReport lemma_prodalg(const WeightSystem& ws,
                          const LemmaSampleSpec& spec) {
  // Algebra property of the A norm on v-only fields.  The decay index and
  // evaluation time run over a deterministic ladder (the ratio scale is set
  // by the multiplier relaxation, which must not be averaged away); only the
  // spectral phases are random.
  CounterRng rng(spec.seed, 17);
  const Grid grid(8, 128, 8.0 * kPi);
  Extremes ex;
  const double thetas[] = {0.5, 0.8, 1.1};
  const double times[] = {0.0, 4.0, 8.0, 16.0, 32.0};
  const long per_cell = std::max<long>(4, spec.count / 1000);
  long index = 0;
  const long half_at = 3 * 5 * per_cell;  // first full sweep

  auto random_profile = [&](double theta) {
    std::vector<Complex> col(grid.n_y(), Complex{});
    for (int j = 1; j < grid.n_y() / 3; ++j) {
      const double eta = grid.eta_of_col(j);
      const double amp = std::exp(-theta * std::pow(eta, 0.7));
      const double ph = rng.uniform(0.0, kTwoPi);
      col[j] = amp * std::exp(Complex{0.0, ph});
      col[grid.col_of_eta_index(-j)] = std::conj(col[j]);
    }
    return profile_from_spectral(grid, col);
  };

  for (int sweep = 0; sweep < 2; ++sweep) {
    for (double theta : thetas) {
      for (double t : times) {
        for (long p = 0; p < per_cell; ++p) {
          const std::vector<double> f = random_profile(theta);
          const std::vector<double> g = random_profile(theta);
          std::vector<double> fg(f.size());
          for (std::size_t q = 0; q < f.size(); ++q) fg[q] = f[q] * g[q];

          auto a_norm = [&](const std::vector<double>& values) {
            const std::vector<Complex> col =
                profile_to_spectral(grid, values);
            double sum = 0.0;
            for (int j = 0; j < grid.n_y(); ++j) {
              const double a2 = std::norm(col[j]);
              if (a2 == 0.0) continue;
              sum += a2 * std::exp(2.0 * ws.log_A(t, 0, grid.eta_of_col(j)));
            }
            return std::sqrt(sum * grid.delta_eta());
          };
          const double lhs = a_norm(fg);
          const double rhs = a_norm(f) * a_norm(g);
          if (rhs > 0.0) ex.add(lhs / rhs, index, half_at);
          ++index;
        }
      }
    }
  }
  return finish(LemmaId::ProdAlg, index, ex, 0,
                "||A(fg)|| / (||Af|| ||Ag||) on random v-only fields");
}

LemmaReport lemma_wuplow(const WeightSystem& ws, const LemmaSampleSpec& spec) {
  CounterRng rng(spec.seed, 18);
  Extremes ex;
  const double ck = ws.spec().c_kappa;
  const long total = 2 * spec.count;
  for (long i = 0; i < total; ++i) {
    IntervalSample s = sample_interval(rng, 25.0, spec.eta_max, true);
    if (!s.ok) continue;
    const double tau = s.t - s.eta / s.k;
    const double k2_over_eta = static_cast<double>(s.k) * s.k / s.eta;
    const double log_wr = ws.log_w_r(s.t, s.eta);
    const double log_wnr = ws.log_w_nr(s.t, s.eta);
    // d_tau w_R ~ kappa (k^2/eta) w_NR
    const double x1 = ws.dlog_w_r_dt(s.t, s.eta) *
                      std::exp(log_wr - log_wnr) / (ck * k2_over_eta);
    // d_tau w_NR ~ kappa eta/(k^2 (1+tau^2)) w_R
    const double x2 = ws.dlog_w_nr_dt(s.t, s.eta) *
                      std::exp(log_wnr - log_wr) * (1.0 + tau * tau) *
                      k2_over_eta / ck;
    if (x1 <= 0.0 || x2 <= 0.0) continue;
    ex.add(std::max(x1, x2), i, spec.count);
    ex.min_seen = std::min(ex.min_seen, std::min(x1, x2));
  }
  return finish(LemmaId::WUpLow, total, ex, 0,
                "toy-model rate brackets for d_t w_R and d_t w_NR");
}

}  // namespace

LemmaReport run_lemma(const WeightSystem& ws, LemmaId id,
                      const LemmaSampleSpec& spec) {
  switch (id) {
    case LemmaId::Basic: return lemma_basic(ws, spec);
    case LemmaId::WellSep: return lemma_wellsep(ws, spec);
    case LemmaId::Dtw: return lemma_dtw(ws, spec);
    case LemmaId::WtFreqCompare: return lemma_wtfreqcompare(ws, spec);
    case LemmaId::WFreqCompare: return lemma_wfreqcompare(ws, spec);
    case LemmaId::Jswap: return lemma_jswap(ws, spec);
    case LemmaId::JTrans: return lemma_jtrans(ws, spec);
    case LemmaId::ProdAlg: return lemma_prodalg(ws, spec);
    case LemmaId::WUpLow: return lemma_wuplow(ws, spec);
  }
  throw ConfigError("unknown lemma id");
}

}  // namespace orrlab
