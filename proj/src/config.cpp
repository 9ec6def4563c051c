#include "orrlab/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "orrlab/errors.hpp"

namespace orrlab {

using nlohmann::json;

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::LinearDamping: return "linear-damping";
    case ExperimentKind::NonlinearDamping: return "nonlinear-damping";
    case ExperimentKind::Echo: return "echo";
    case ExperimentKind::EnstrophyCascade: return "enstrophy-cascade";
    case ExperimentKind::SobolevGrowth: return "sobolev-growth";
    case ExperimentKind::Lemmas: return "lemmas";
    case ExperimentKind::Toy: return "toy";
    case ExperimentKind::Elliptic: return "elliptic";
    case ExperimentKind::EnergyMonitor: return "energy-monitor";
  }
  return "unknown";
}

ExperimentKind experiment_from_name(const std::string& name) {
  for (ExperimentKind k :
       {ExperimentKind::LinearDamping, ExperimentKind::NonlinearDamping,
        ExperimentKind::Echo, ExperimentKind::EnstrophyCascade,
        ExperimentKind::SobolevGrowth, ExperimentKind::Lemmas,
        ExperimentKind::Toy, ExperimentKind::Elliptic,
        ExperimentKind::EnergyMonitor}) {
    if (name == experiment_name(k)) return k;
  }
  throw ConfigError("experiment: unknown value '" + name + "'");
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key " + path + "." + it.key());
  }
}

double get_num(const json& j, const char* key, double fallback,
               const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ConfigError(path + "." + key + " must be a number");
  return j[key].get<double>();
}

long get_int(const json& j, const char* key, long fallback,
             const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw ConfigError(path + "." + key + " must be an integer");
  return j[key].get<long>();
}

bool get_bool(const json& j, const char* key, bool fallback,
              const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean())
    throw ConfigError(path + "." + key + " must be a boolean");
  return j[key].get<bool>();
}

std::string get_str(const json& j, const char* key, std::string fallback,
                    const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string())
    throw ConfigError(path + "." + key + " must be a string");
  return j[key].get<std::string>();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (grid.n_z < 4 || grid.n_z % 2 != 0)
    throw ConfigError("grid.n_z must be an even integer >= 4");
  const int k_max = grid.n_z / 2 - 1;
  if (k_max < 1) throw ConfigError("grid.k_max must be >= 1");
  if (grid.n_y < 4 || (grid.n_y & (grid.n_y - 1)) != 0)
    throw ConfigError("grid.n_y must be a power of two >= 4");
  if (!(grid.l_y > 0.0)) throw ConfigError("grid.L_y must be positive");

  multiplier.validate();

  if (!(time.dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (!(time.t_end > 0.0)) throw ConfigError("time.t_end must be positive");
  if (!(time.output_dt > 0.0))
    throw ConfigError("time.output_dt must be positive");

  if (!(init.epsilon >= 0.0)) throw ConfigError("init.epsilon must be >= 0");
  if (init.family != "gevrey-bump" && init.family != "two-mode-echo" &&
      init.family != "custom-modes")
    throw ConfigError("init.family must be gevrey-bump, two-mode-echo or custom-modes");
  if (init.family == "gevrey-bump") {
    if (!(init.width_eta > 0.0))
      throw ConfigError("init.width_eta must be positive");
    // physical envelope width sigma_y = 2/width_eta; the periodic window must
    // dominate the data support (L_y > 4 x the 3-sigma half width)
    const double sigma_y = 2.0 / init.width_eta;
    if (grid.l_y <= 12.0 * sigma_y)
      throw ConfigError(
          "grid.L_y must exceed 4x the initial data support width (12 sigma_y)");
  }
  if (init.family == "custom-modes") {
    for (const ModeSeed& m : init.modes) {
      if (m.k == 0 && m.eta == 0.0)
        throw ConfigError("init.modes must not seed the (0,0) mean mode");
      if (std::abs(m.k) > k_max)
        throw ConfigError("init.modes: |k| exceeds grid.k_max");
    }
  }

  if (!(energy.k_v > 0.0)) throw ConfigError("energy.K_v must be positive");
  for (double n : sobolev_orders)
    if (n < 0.0) throw ConfigError("sobolev_orders must be nonnegative");
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  reject_unknown(j,
                 {"experiment", "grid", "time", "init", "multiplier", "energy",
                  "fit", "toy", "elliptic", "lemmas", "sobolev_orders",
                  "output_dir", "seed"},
                 "config");

  ExperimentConfig cfg;
  if (!j.contains("experiment") || !j["experiment"].is_string())
    throw ConfigError("experiment is required and must be a string");
  cfg.experiment = experiment_from_name(j["experiment"].get<std::string>());

  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, {"n_z", "k_max", "n_y", "L_y"}, "grid");
    if (g.contains("k_max")) {
      const long km = get_int(g, "k_max", 0, "grid");
      if (km < 1) throw ConfigError("grid.k_max must be >= 1");
      cfg.grid.n_z = static_cast<int>(2 * (km + 1));
    }
    cfg.grid.n_z = static_cast<int>(get_int(g, "n_z", cfg.grid.n_z, "grid"));
    cfg.grid.n_y = static_cast<int>(get_int(g, "n_y", cfg.grid.n_y, "grid"));
    cfg.grid.l_y = get_num(g, "L_y", cfg.grid.l_y, "grid");
  }

  if (j.contains("time")) {
    const json& t = j["time"];
    reject_unknown(t, {"dt", "t_end", "output_dt", "checkpoint_times"},
                   "time");
    cfg.time.dt = get_num(t, "dt", cfg.time.dt, "time");
    cfg.time.t_end = get_num(t, "t_end", cfg.time.t_end, "time");
    cfg.time.output_dt = get_num(t, "output_dt", cfg.time.output_dt, "time");
    if (t.contains("checkpoint_times")) {
      if (!t["checkpoint_times"].is_array())
        throw ConfigError("time.checkpoint_times must be an array");
      for (const auto& v : t["checkpoint_times"])
        cfg.time.checkpoint_times.push_back(v.get<double>());
    }
  }

  if (j.contains("init")) {
    const json& i = j["init"];
    reject_unknown(i,
                   {"family", "epsilon", "width_eta", "center_y",
                    "mean_amplitude", "eta0", "eta_low", "low_amplitude",
                    "modes"},
                   "init");
    cfg.init.family = get_str(i, "family", cfg.init.family, "init");
    cfg.init.epsilon = get_num(i, "epsilon", cfg.init.epsilon, "init");
    cfg.init.width_eta = get_num(i, "width_eta", cfg.init.width_eta, "init");
    cfg.init.center_y = get_num(i, "center_y", cfg.init.center_y, "init");
    cfg.init.mean_amplitude =
        get_num(i, "mean_amplitude", cfg.init.mean_amplitude, "init");
    cfg.init.eta0 = get_num(i, "eta0", cfg.init.eta0, "init");
    cfg.init.eta_low = get_num(i, "eta_low", cfg.init.eta_low, "init");
    cfg.init.low_amplitude =
        get_num(i, "low_amplitude", cfg.init.low_amplitude, "init");
    if (i.contains("modes")) {
      if (!i["modes"].is_array())
        throw ConfigError("init.modes must be an array");
      for (const auto& m : i["modes"]) {
        reject_unknown(m, {"k", "eta", "amp", "phase"}, "init.modes[]");
        ModeSeed seed;
        seed.k = static_cast<int>(get_int(m, "k", 1, "init.modes[]"));
        seed.eta = get_num(m, "eta", 0.0, "init.modes[]");
        seed.amp = get_num(m, "amp", 1.0, "init.modes[]");
        seed.phase = get_num(m, "phase", 0.0, "init.modes[]");
        cfg.init.modes.push_back(seed);
      }
    }
  }

  if (j.contains("multiplier")) {
    const json& m = j["multiplier"];
    reject_unknown(
        m, {"s", "lambda", "lambda_prime", "sigma", "c_kappa", "q_tilde"},
        "multiplier");
    cfg.multiplier.s = get_num(m, "s", cfg.multiplier.s, "multiplier");
    cfg.multiplier.lam = get_num(m, "lambda", cfg.multiplier.lam, "multiplier");
    cfg.multiplier.lam_prime =
        get_num(m, "lambda_prime", cfg.multiplier.lam_prime, "multiplier");
    cfg.multiplier.sigma =
        get_num(m, "sigma", cfg.multiplier.sigma, "multiplier");
    cfg.multiplier.c_kappa =
        get_num(m, "c_kappa", cfg.multiplier.c_kappa, "multiplier");
    cfg.multiplier.q_tilde =
        get_num(m, "q_tilde", cfg.multiplier.q_tilde, "multiplier");
  }

  if (j.contains("energy")) {
    const json& e = j["energy"];
    reject_unknown(e, {"K_D", "K_v", "gevrey_lambda", "gevrey_sigma"},
                   "energy");
    cfg.energy.k_d = get_num(e, "K_D", cfg.energy.k_d, "energy");
    cfg.energy.k_v = get_num(e, "K_v", cfg.energy.k_v, "energy");
    cfg.energy.gevrey_lambda =
        get_num(e, "gevrey_lambda", cfg.energy.gevrey_lambda, "energy");
    cfg.energy.gevrey_sigma =
        get_num(e, "gevrey_sigma", cfg.energy.gevrey_sigma, "energy");
  }

  if (j.contains("fit")) {
    const json& f = j["fit"];
    reject_unknown(f, {"t_lo", "t_hi", "sobolev_t_lo", "sobolev_t_hi"}, "fit");
    cfg.fit.t_lo = get_num(f, "t_lo", cfg.fit.t_lo, "fit");
    cfg.fit.t_hi = get_num(f, "t_hi", cfg.fit.t_hi, "fit");
    cfg.fit.sobolev_t_lo =
        get_num(f, "sobolev_t_lo", cfg.fit.sobolev_t_lo, "fit");
    cfg.fit.sobolev_t_hi =
        get_num(f, "sobolev_t_hi", cfg.fit.sobolev_t_hi, "fit");
  }

  if (j.contains("toy")) {
    const json& t = j["toy"];
    reject_unknown(t, {"eta_over_k2", "kappa", "n_steps", "self_interaction"},
                   "toy");
    cfg.toy.eta_over_k2 = get_num(t, "eta_over_k2", cfg.toy.eta_over_k2, "toy");
    cfg.toy.kappa = get_num(t, "kappa", cfg.toy.kappa, "toy");
    cfg.toy.n_steps = get_int(t, "n_steps", cfg.toy.n_steps, "toy");
    cfg.toy.self_interaction =
        get_bool(t, "self_interaction", cfg.toy.self_interaction, "toy");
  }

  if (j.contains("elliptic")) {
    const json& e = j["elliptic"];
    reject_unknown(e, {"perturb", "t", "tol", "max_iter"}, "elliptic");
    cfg.elliptic.perturb = get_num(e, "perturb", cfg.elliptic.perturb, "elliptic");
    cfg.elliptic.t = get_num(e, "t", cfg.elliptic.t, "elliptic");
    cfg.elliptic.tol = get_num(e, "tol", cfg.elliptic.tol, "elliptic");
    cfg.elliptic.max_iter = static_cast<int>(
        get_int(e, "max_iter", cfg.elliptic.max_iter, "elliptic"));
  }

  if (j.contains("lemmas")) {
    const json& l = j["lemmas"];
    reject_unknown(l, {"id", "samples", "eta_min", "eta_max"}, "lemmas");
    cfg.lemmas.id = get_str(l, "id", cfg.lemmas.id, "lemmas");
    cfg.lemmas.samples = get_int(l, "samples", cfg.lemmas.samples, "lemmas");
    cfg.lemmas.eta_min = get_num(l, "eta_min", cfg.lemmas.eta_min, "lemmas");
    cfg.lemmas.eta_max = get_num(l, "eta_max", cfg.lemmas.eta_max, "lemmas");
  }

  if (j.contains("sobolev_orders")) {
    if (!j["sobolev_orders"].is_array())
      throw ConfigError("sobolev_orders must be an array");
    cfg.sobolev_orders.clear();
    for (const auto& v : j["sobolev_orders"])
      cfg.sobolev_orders.push_back(v.get<double>());
  }

  cfg.output_dir = get_str(j, "output_dir", cfg.output_dir, "config");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer())
      throw ConfigError("seed must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string ExperimentConfig::canonical_json() const {
  json j;
  j["experiment"] = experiment_name(experiment);
  j["grid"] = {{"n_z", grid.n_z}, {"n_y", grid.n_y}, {"L_y", grid.l_y}};
  j["time"] = {{"dt", time.dt},
               {"t_end", time.t_end},
               {"output_dt", time.output_dt},
               {"checkpoint_times", time.checkpoint_times}};
  j["init"] = {{"family", init.family},
               {"epsilon", init.epsilon},
               {"width_eta", init.width_eta},
               {"center_y", init.center_y},
               {"mean_amplitude", init.mean_amplitude},
               {"eta0", init.eta0},
               {"eta_low", init.eta_low},
               {"low_amplitude", init.low_amplitude}};
  json modes = json::array();
  for (const ModeSeed& m : init.modes)
    modes.push_back({{"k", m.k}, {"eta", m.eta}, {"amp", m.amp},
                     {"phase", m.phase}});
  j["init"]["modes"] = modes;
  j["multiplier"] = {{"s", multiplier.s},
                     {"lambda", multiplier.lam},
                     {"lambda_prime", multiplier.lam_prime},
                     {"sigma", multiplier.sigma},
                     {"c_kappa", multiplier.c_kappa},
                     {"q_tilde", multiplier.q_tilde}};
  j["energy"] = {{"K_D", energy.k_d}, {"K_v", energy.k_v}};
  j["seed"] = seed;
  return j.dump();
}

std::uint64_t ExperimentConfig::config_hash() const {
  // FNV-1a over the canonical serialization
  const std::string s = canonical_json();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace orrlab
