#ifndef ORRLAB_CONFIG_HPP
#define ORRLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "orrlab/grid.hpp"
#include "orrlab/weights.hpp"

namespace orrlab {

enum class ExperimentKind {
  LinearDamping,
  NonlinearDamping,
  Echo,
  EnstrophyCascade,
  SobolevGrowth,
  Lemmas,
  Toy,
  Elliptic,
  EnergyMonitor,
};

const char* experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);

struct GridConfig {
  int n_z = 128;
  int n_y = 512;
  double l_y = 8.0 * kPi;
  Grid make() const { return Grid(n_z, n_y, l_y); }
};

struct TimeConfig {
  double dt = 0.01;
  double t_end = 100.0;
  double output_dt = 1.0;
  std::vector<double> checkpoint_times;
};

struct ModeSeed {
  int k = 1;
  double eta = 0.0;
  double amp = 1.0;
  double phase = 0.0;
};

struct InitConfig {
  std::string family = "gevrey-bump";  // gevrey-bump | two-mode-echo | custom-modes
  double epsilon = 0.01;
  // gevrey-bump
  double width_eta = 1.5;       // Gaussian envelope width in eta
  double center_y = -1.0;       // bump center; -1 means L_y/2
  double mean_amplitude = 0.0;  // relative k = 0 envelope amplitude
  // two-mode-echo
  double eta0 = 20.0;
  double eta_low = 0.0;
  double low_amplitude = 1.0;  // relative amplitude of the low seed
  // custom-modes
  std::vector<ModeSeed> modes;
};

struct EnergyConfig {
  double k_d = 1.0;
  double k_v = 100.0;
  double gevrey_lambda = 0.05;  // reporting norm for the run time series
  double gevrey_sigma = 0.0;
};

struct FitConfig {
  double t_lo = 10.0;
  double t_hi = 100.0;
  double sobolev_t_lo = 10.0;
  double sobolev_t_hi = 60.0;
};

struct ToyConfig {
  double eta_over_k2 = 1.0e4;
  double kappa = 0.25;
  long n_steps = 0;  // 0 = auto
  bool self_interaction = false;
};

struct EllipticConfig {
  double perturb = 0.1;
  double t = 5.0;
  double tol = 1e-10;
  int max_iter = 30;
};

struct LemmaConfig {
  std::string id = "all";
  long samples = 10000;
  double eta_min = 16.0;
  double eta_max = 1.0e4;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Toy;
  GridConfig grid;
  TimeConfig time;
  InitConfig init;
  MultiplierSpec multiplier;
  EnergyConfig energy;
  FitConfig fit;
  ToyConfig toy;
  EllipticConfig elliptic;
  LemmaConfig lemmas;
  std::vector<double> sobolev_orders{1.0, 2.0};
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  void validate() const;  // cross-field constraints; names offending field
  std::string canonical_json() const;
  std::uint64_t config_hash() const;
};

// Parses and validates a JSON config file; unknown keys are rejected and all
// errors carry the field path.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace orrlab

#endif
