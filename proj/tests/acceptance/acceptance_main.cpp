// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit code is the number of
// failed criteria.
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "orrlab/checkpoint.hpp"
#include "orrlab/config.hpp"
#include "orrlab/coords.hpp"
#include "orrlab/experiments.hpp"
#include "orrlab/fit.hpp"
#include "orrlab/init_data.hpp"
#include "orrlab/lemma_harness.hpp"
#include "orrlab/linear.hpp"
#include "orrlab/lp.hpp"
#include "orrlab/rng.hpp"
#include "orrlab/sim.hpp"
#include "orrlab/toy.hpp"

using namespace orrlab;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] %-34s %s\n", pass ? "PASS" : "FAIL", id.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

json read_summary(const std::string& dir) {
  std::ifstream in(dir + "/summary.json");
  json j;
  in >> j;
  return j;
}

json find_criter(const json& summary, const std::string& name) {
  for (const auto& c : summary["criteria"])
    if (c["criterion"] == name) return c;
  return json();
}

// --- 1. linear Orr amplification -----------------------------------------

void criterion_1() {
  Grid g(64, 512, kTwoPi);  // delta_eta = 1
  CounterRng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + static_cast<int>(rng.uniform_index(8));
    const double eta = 4.0 + static_cast<double>(rng.uniform_index(120));
    SpectralField f(g);
    f.at_k(k, g.col_of_eta(eta)) = Complex{1.0, 0.0};
    f.symmetrize();
    const int col = g.col_of_eta(eta);
    const SpectralField phi0 = orr_streamfunction(f, 0.0);
    // the maximizer of |phi| is the critical time eta/k
    const SpectralField phic = orr_streamfunction(f, eta / k);
    const double ratio = std::abs(phic.at_k(k, col)) /
                         std::abs(phi0.at_k(k, col));
    const double expected =
        (static_cast<double>(k) * k + eta * eta) / (static_cast<double>(k) * k);
    worst = std::max(worst, std::abs(ratio - expected) / expected);
    // sampled times never exceed the critical amplification
    for (double t = 0.0; t < 2.0 * eta; t += 0.21 * eta / k) {
      const SpectralField phi = orr_streamfunction(f, t);
      if (std::abs(phi.at_k(k, col)) >
          std::abs(phic.at_k(k, col)) * (1.0 + 1e-12))
        worst = 1.0;
    }
  }
  report("1 orr-amplification", worst < 1e-10,
         "max relative deviation from (k^2+eta^2)/k^2 = " + fmt(worst));
}

// --- 2. linear decay rates -------------------------------------------------

void criterion_2() {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::LinearDamping;
  cfg.grid = {128, 512, 8.0 * kPi};
  cfg.init.family = "gevrey-bump";
  cfg.init.epsilon = 1.0;
  cfg.init.width_eta = 2.0;
  cfg.time.t_end = 100.0;
  cfg.time.output_dt = 1.0;
  cfg.output_dir = "acceptance_out/linear";
  cfg.validate();
  run_experiment(cfg);
  const json s = read_summary(cfg.output_dir);
  const json ux = find_criter(s, "ux_fluct_slope");
  const json uy = find_criter(s, "uy_slope");
  const json fb = find_criter(s, "feedback_slope");
  report("2 linear-decay-rates",
         ux["pass"].get<bool>() && uy["pass"].get<bool>() &&
             fb["pass"].get<bool>(),
         "slopes ux=" + fmt(ux["value"].get<double>()) +
             " uy=" + fmt(uy["value"].get<double>()) +
             " feedback=" + fmt(fb["value"].get<double>()));
}

// --- 3/4/5 + 12a. the reference nonlinear run ------------------------------

ExperimentConfig nonlinear_cfg() {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::NonlinearDamping;
  cfg.grid = {128, 512, 8.0 * kPi};
  cfg.init.family = "gevrey-bump";
  cfg.init.epsilon = 0.01;
  cfg.init.width_eta = 2.0;
  cfg.init.mean_amplitude = 1.0;
  cfg.time.dt = 0.01;
  cfg.time.t_end = 100.0;
  cfg.time.output_dt = 1.0;
  cfg.time.checkpoint_times = {10.0, 50.0, 100.0};
  cfg.fit.t_lo = 10.0;
  cfg.fit.t_hi = 100.0;
  cfg.fit.sobolev_t_lo = 10.0;
  cfg.fit.sobolev_t_hi = 60.0;
  cfg.output_dir = "acceptance_out/nonlinear";
  cfg.validate();
  return cfg;
}

void criteria_3_4_5(const json& s) {
  const json ux = find_criter(s, "ux_fluct_slope");
  const json uy = find_criter(s, "uy_slope");
  const json conv = find_criter(s, "h_convergence_rate");
  const json drift = find_criter(s, "enstrophy_drift");
  report("3 nonlinear-damping",
         ux["pass"].get<bool>() && uy["pass"].get<bool>() &&
             conv["pass"].get<bool>() && drift["pass"].get<bool>(),
         "slopes ux=" + fmt(ux["value"].get<double>()) +
             " uy=" + fmt(uy["value"].get<double>()) +
             " conv=" + fmt(conv["value"].get<double>()) +
             " drift=" + fmt(drift["value"].get<double>()));

  const json defect = find_criter(s, "weak_limit_defect");
  report("4 enstrophy-weak-limit", defect["pass"].get<bool>(),
         "||<omega>||/||omega|| at T = " + fmt(defect["value"].get<double>()) +
             " (init k!=0 fraction " +
             fmt(s["init_nonzero_fraction"].get<double>()) + ")");

  const json s1 = find_criter(s, "sobolev_growth_N1");
  const json s2 = find_criter(s, "sobolev_growth_N2");
  report("5 sobolev-growth",
         s1["pass"].get<bool>() && s2["pass"].get<bool>(),
         "exponents N1=" + fmt(s1["value"].get<double>()) +
             " N2=" + fmt(s2["value"].get<double>()));
}

void criterion_12a(const ExperimentConfig& cfg) {
  bool pass = true;
  std::string detail;
  for (double tc : {10.0, 50.0, 100.0}) {
    char name[64];
    std::snprintf(name, sizeof(name), "/ckpt_t%08.2f.orr", tc);
    LoadedCheckpoint ck = load_checkpoint(cfg.output_dir + name);
    Simulator sim(ck.grid);
    const CoordinateState c = build_coordinates(ck.state, sim);
    const CoordinateIdentityReport rep = coordinate_identities(c);
    if (!(rep.barh2_residual < 1e-3) || !(rep.tildeu0_residual < 1e-3))
      pass = false;
    detail += "t=" + fmt(tc) + ": barh2=" + fmt(rep.barh2_residual) +
              " u0=" + fmt(rep.tildeu0_residual) + "  ";
  }
  report("12a coordinate-identities", pass, detail);
}

// --- 6. echo timing ---------------------------------------------------------

void criterion_6() {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::Echo;
  cfg.grid = {32, 1024, 8.0 * kPi};
  cfg.init.family = "two-mode-echo";
  cfg.init.epsilon = 0.04;
  cfg.init.eta0 = 20.0;
  cfg.init.eta_low = 0.0;
  cfg.time.dt = 0.005;
  cfg.time.t_end = 30.0;
  cfg.time.output_dt = 0.05;
  cfg.output_dir = "acceptance_out/echo";
  cfg.validate();
  run_experiment(cfg);
  const json s = read_summary(cfg.output_dir);
  const double target = 10.0;
  const double t_psi2 = s["burst_time_psi2"].get<double>();
  const double t_dh3 = s["burst_time_dh3_resonant"].get<double>();
  const double t_dh2 = s["burst_time_dh2"].get<double>();
  const bool pass = std::abs(t_psi2 - target) <= 0.1 * target &&
                    std::abs(t_dh3 - target) <= 0.1 * target;
  report("6 echo-timing", pass,
         "psi2 surge at t=" + fmt(t_psi2) + ", dh3 burst at t=" + fmt(t_dh3) +
             " (target 10; literal dh2 argmax t=" + fmt(t_dh2) +
             ", see decisions ledger)");
  const json rev = find_criter(s, "time_reversal");
  report("6b echo-reversibility", rev["pass"].get<bool>(),
         "backward-integration error " + fmt(rev["value"].get<double>()));
}

// --- 7. weight construction exactness ---------------------------------------

void criterion_7() {
  const MultiplierSpec spec;
  const WeightSystem ws(spec);
  const double c = spec.c();

  // endpoint ratio identity over every integer eta <= 1e4 and admissible k
  double worst = 0.0;
  for (int eta_i = 2; eta_i <= 10000; ++eta_i) {
    const double eta = eta_i;
    const int n = WeightSystem::interval_count(eta);
    for (int k = 1; k <= n; ++k) {
      const double drop =
          ws.log_w_nr(WeightSystem::critical_time(k, eta), eta) -
          ws.log_w_nr(WeightSystem::critical_time(k - 1, eta), eta);
      const double target = c * std::log(static_cast<double>(k) * k / eta);
      worst = std::max(worst,
                       std::abs(drop - target) /
                           std::max(1.0, std::abs(target)));
    }
  }
  const bool endpoint_ok = worst < 1e-12;

  // w(0,16)^{-1} = (65536/576)^c
  const double log16 = ws.log_w_nr(0.0, 16.0);
  const double expected16 = -c * std::log(65536.0 / 576.0);
  const bool w16_ok = std::abs(log16 - expected16) < 1e-12;

  // asymptotic ratio varies < 5% between 1e4 and 4e4
  const double mu = spec.mu();
  auto log_r = [&](double eta) {
    return -ws.log_w_nr(0.0, eta) + (mu / 8.0) * std::log(eta) -
           0.5 * mu * std::sqrt(eta);
  };
  const double rel =
      std::abs(std::exp(log_r(4.0e4) - log_r(1.0e4)) - 1.0);
  const bool ratio_ok = rel < 0.05;

  report("7 weight-exactness", endpoint_ok && w16_ok && ratio_ok,
         "endpoint dev=" + fmt(worst) +
             " w(0,16) dev=" + fmt(std::abs(log16 - expected16)) +
             " r-variation=" + fmt(rel));
}

// --- 8. lemma harness --------------------------------------------------------

void criterion_8() {
  const WeightSystem ws((MultiplierSpec()));
  LemmaSampleSpec spec;
  spec.count = 10000;
  spec.seed = 314159;

  const LemmaReport wellsep = run_lemma(ws, LemmaId::WellSep, spec);
  const LemmaReport dtw = run_lemma(ws, LemmaId::Dtw, spec);
  const LemmaReport wfreq = run_lemma(ws, LemmaId::WFreqCompare, spec);
  const LemmaReport jswap = run_lemma(ws, LemmaId::Jswap, spec);

  const bool pass = wellsep.violations == 0 && wellsep.admissible >= 10000 &&
                    dtw.stable && std::isfinite(dtw.c_emp) && wfreq.stable &&
                    std::isfinite(wfreq.c_emp) && jswap.stable &&
                    std::isfinite(jswap.c_emp);
  report("8 lemma-harness", pass,
         "wellsep violations=" + std::to_string(wellsep.violations) + "/" +
             std::to_string(wellsep.admissible) +
             " C_dtw=" + fmt(dtw.c_emp) + " C_wfreq=" + fmt(wfreq.c_emp) +
             " C_jswap=" + fmt(jswap.c_emp));
}

// --- 9. toy model -------------------------------------------------------------

void criterion_9() {
  const double kappa = 0.25;
  const ToyTrajectory traj = integrate_toy(1.0, 1.0e4, kappa);
  const ToyGrowthFit fit = fit_growth_exponents(traj);
  const double predicted = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa));
  const double imbalance = fit.ratio_at_zero / 1.0e4;
  const bool pass = std::abs(fit.alpha_right - predicted) <= 0.05 &&
                    imbalance < 10.0 && imbalance > 0.1;
  report("9 toy-model", pass,
         "exponent " + fmt(fit.alpha_right) + " vs " + fmt(predicted) +
             ", f_NR/f_R at resonance = " + fmt(fit.ratio_at_zero));
}

// --- 10. elliptic inversion -----------------------------------------------------

void criterion_10() {
  Grid g(32, 128, 8.0 * kPi);
  Transformer tr(g);
  SpectralField f(g, 4.0);
  for (int k = -g.k_max(); k <= g.k_max(); ++k) {
    if (k == 0) continue;
    for (int j = 0; j < g.n_y(); ++j)
      f.at_k(k, j) =
          std::exp(-0.3 * (std::abs(k) + std::abs(g.eta_of_col(j))));
  }
  f.symmetrize();
  dealias_in_place(f);

  std::vector<double> vp1(g.n_y(), 1.0);
  const EllipticSolveReport r1 =
      solve_delta_t(f, synthetic_coordinates(g, 4.0, vp1), tr, 1e-10, 30);

  std::vector<double> vp2(g.n_y());
  for (int j = 0; j < g.n_y(); ++j)
    vp2[j] = 1.0 + 0.1 * std::cos(kTwoPi * g.y_of(j) / g.l_y());
  const EllipticSolveReport r2 =
      solve_delta_t(f, synthetic_coordinates(g, 4.0, vp2), tr, 1e-10, 30);

  const bool pass = r1.iterations == 1 && r1.residual < 1e-10 &&
                    r2.iterations <= 30 && r2.residual < 1e-10;
  report("10 elliptic-inversion", pass,
         "identity: iters=" + std::to_string(r1.iterations) +
             " res=" + fmt(r1.residual) +
             "; cosine: iters=" + std::to_string(r2.iterations) +
             " res=" + fmt(r2.residual));
}

// --- 11. paraproduct identities --------------------------------------------------

void criterion_11() {
  Grid g(32, 64, 8.0 * kPi);
  Transformer tr(g);
  double worst_recon = 0.0;
  double worst_para = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    CounterRng rng(5000 + trial);
    SpectralField f(g), h(g);
    for (int k = -g.k_max(); k <= g.k_max(); ++k)
      for (int j = 0; j < g.n_y(); ++j) {
        f.at_k(k, j) = Complex{rng.normal(), rng.normal()};
        h.at_k(k, j) = Complex{rng.normal(), rng.normal()};
      }
    f.symmetrize();
    h.symmetrize();
    dealias_in_place(f);
    dealias_in_place(h);

    SpectralField sum(g);
    for (double m : lp_shells(g)) sum += lp_project(f, m);
    double scale = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      scale = std::max(scale, std::abs(f.data()[i]));
    for (std::size_t i = 0; i < f.size(); ++i)
      worst_recon = std::max(
          worst_recon, std::abs(sum.data()[i] - f.data()[i]) / scale);

    const SpectralField direct = tr.product(f, h);
    const Paraproduct p = paraproduct(f, h, tr);
    SpectralField psum = p.t_fg;
    psum += p.t_gf;
    psum += p.r;
    double pscale = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i)
      pscale = std::max(pscale, std::abs(direct.data()[i]));
    for (std::size_t i = 0; i < direct.size(); ++i)
      worst_para =
          std::max(worst_para,
                   std::abs(psum.data()[i] - direct.data()[i]) /
                       std::max(pscale, 1e-30));
  }
  report("11 paraproduct-identities",
         worst_recon < 1e-12 && worst_para < 1e-12,
         "reconstruction dev=" + fmt(worst_recon) +
             " decomposition dev=" + fmt(worst_para));
}

// --- 12b. energy boundedness -------------------------------------------------------

void criterion_12b() {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::EnergyMonitor;
  cfg.grid = {64, 128, 8.0 * kPi};
  cfg.init.family = "gevrey-bump";
  cfg.init.epsilon = 0.005;
  cfg.init.width_eta = 1.0;
  cfg.init.mean_amplitude = 1.0;
  cfg.time.dt = 0.01;
  cfg.time.t_end = 100.0;
  cfg.time.output_dt = 2.0;
  cfg.output_dir = "acceptance_out/energy";
  cfg.validate();
  run_experiment(cfg);
  const json s = read_summary(cfg.output_dir);
  const double ratio = s["energy_max_over_min"].get<double>();
  report("12b energy-bounded", ratio > 0.0 && ratio < 4.0,
         "max/min E over [10,100] = " + fmt(ratio));
}

}  // namespace

int main() {
  std::printf("orrlab acceptance suite\n");
  criterion_1();
  criterion_2();

  const ExperimentConfig nl = nonlinear_cfg();
  run_experiment(nl);
  const json nl_summary = read_summary(nl.output_dir);
  criteria_3_4_5(nl_summary);
  criterion_12a(nl);

  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12b();

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
