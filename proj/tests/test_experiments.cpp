#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orrlab/checkpoint.hpp"
#include "orrlab/experiments.hpp"
#include "orrlab/init_data.hpp"
#include "orrlab/sim.hpp"

using namespace orrlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_run(const std::string& dir) {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::NonlinearDamping;
  cfg.grid = {32, 128, 8.0 * kPi};
  cfg.init.family = "gevrey-bump";
  cfg.init.epsilon = 0.02;
  cfg.init.width_eta = 1.5;
  cfg.init.mean_amplitude = 1.0;
  cfg.time.dt = 0.02;
  cfg.time.t_end = 10.0;
  cfg.time.output_dt = 1.0;
  cfg.fit.t_lo = 2.0;
  cfg.fit.t_hi = 10.0;
  cfg.fit.sobolev_t_lo = 2.0;
  cfg.fit.sobolev_t_hi = 10.0;
  cfg.output_dir = dir;
  cfg.validate();
  return cfg;
}

}  // namespace

TEST_CASE("identical configs reproduce the CSV bit-exactly") {
  ExperimentConfig a = small_run("exp_out_a");
  ExperimentConfig b = small_run("exp_out_b");
  REQUIRE(run_experiment(a) == 0);
  REQUIRE(run_experiment(b) == 0);
  CHECK(slurp("exp_out_a/run.csv") == slurp("exp_out_b/run.csv"));
  CHECK(!slurp("exp_out_a/run.csv").empty());
  fs::remove_all("exp_out_a");
  fs::remove_all("exp_out_b");
}

TEST_CASE("a resumed run matches the unbroken one") {
  ExperimentConfig whole = small_run("exp_whole");
  whole.time.checkpoint_times = {5.0};
  REQUIRE(run_experiment(whole) == 0);

  ExperimentConfig tail = whole;
  tail.output_dir = "exp_tail";
  REQUIRE(resume_experiment("exp_whole/ckpt_t00005.00.orr", tail) == 0);

  const LoadedCheckpoint a = load_checkpoint("exp_whole/final.orr");
  const LoadedCheckpoint b = load_checkpoint("exp_tail/final.orr");
  CHECK(a.state.t == b.state.t);
  SpectralField d = a.state.h;
  d -= b.state.h;
  CHECK(d.l2_norm() <= 1e-12 * a.state.h.l2_norm());
  fs::remove_all("exp_whole");
  fs::remove_all("exp_tail");
}

TEST_CASE("resume rejects a mismatched config") {
  ExperimentConfig whole = small_run("exp_mismatch");
  whole.time.checkpoint_times = {5.0};
  REQUIRE(run_experiment(whole) == 0);
  ExperimentConfig other = whole;
  other.init.epsilon = 0.05;
  CHECK_THROWS_AS(
      resume_experiment("exp_mismatch/ckpt_t00005.00.orr", other),
      ConfigError);
  fs::remove_all("exp_mismatch");
}

TEST_CASE("epsilon = 0 produces the trivial constant run") {
  ExperimentConfig cfg = small_run("exp_trivial");
  cfg.init.epsilon = 0.0;
  cfg.time.t_end = 2.0;
  REQUIRE(run_experiment(cfg) == 0);
  std::ifstream in("exp_trivial/summary.json");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("\"trivial_constant\": true") != std::string::npos);
  fs::remove_all("exp_trivial");
}

TEST_CASE("experiment artifacts are emitted") {
  ExperimentConfig cfg = small_run("exp_files");
  cfg.time.t_end = 2.0;
  cfg.time.output_dt = 0.2;
  cfg.fit.t_lo = 0.5;
  cfg.fit.t_hi = 2.0;
  cfg.fit.sobolev_t_lo = 0.5;
  cfg.fit.sobolev_t_hi = 2.0;
  REQUIRE(run_experiment(cfg) == 0);
  CHECK(fs::exists("exp_files/run.csv"));
  CHECK(fs::exists("exp_files/summary.json"));
  CHECK(fs::exists("exp_files/plot.gnuplot"));
  CHECK(fs::exists("exp_files/final.orr"));
  // header row names columns
  std::ifstream in("exp_files/run.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("t,h_l2,", 0) == 0);
  fs::remove_all("exp_files");
}
