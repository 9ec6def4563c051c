#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "orrlab/config.hpp"
#include "orrlab/experiments.hpp"

// orrlab: spectral experiments for shear-flow mixing and inviscid damping.
//
// Subcommands map onto the experiment families; `run` takes a full JSON
// config, the others accept the most common knobs directly.  ORRLAB_THREADS
// caps worker parallelism (the numerics are deterministic regardless).
int main(int argc, char** argv) {
  CLI::App app{"orrlab -- sheared-frame spectral experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "path to config JSON")->required();

  std::string lemma_id = "all";
  long lemma_samples = 10000;
  std::uint64_t seed = 1;
  std::string out_dir = "out/lemmas";
  auto* lemmas = app.add_subcommand("lemmas", "weight/multiplier lemma harness");
  lemmas->add_option("--id", lemma_id, "lemma id or 'all'");
  lemmas->add_option("--samples", lemma_samples, "sample count");
  lemmas->add_option("--seed", seed, "RNG seed");
  lemmas->add_option("--out", out_dir, "output directory");

  double eta_over_k2 = 1.0e4;
  double kappa = 0.25;
  std::string toy_out = "out/toy";
  auto* toy = app.add_subcommand("toy", "two-mode resonance model");
  toy->add_option("--eta-over-k2", eta_over_k2, "eta/k^2 >= 1");
  toy->add_option("--kappa", kappa, "interaction strength in (0, 1/2)");
  toy->add_option("--out", toy_out, "output directory");

  double perturb = 0.1;
  std::string elliptic_out = "out/elliptic";
  auto* elliptic = app.add_subcommand("elliptic", "standalone Delta_t solver");
  elliptic->add_option("--perturb", perturb, "amplitude of the v' perturbation");
  elliptic->add_option("--out", elliptic_out, "output directory");

  std::string ckpt_path;
  std::string resume_config;
  auto* resume = app.add_subcommand("resume", "continue a checkpointed run");
  resume->add_option("--checkpoint", ckpt_path, "checkpoint file")->required();
  resume->add_option("--config", resume_config, "config JSON of the run")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return orrlab::run_experiment(orrlab::parse_config(config_path));
    }
    if (*lemmas) {
      orrlab::ExperimentConfig cfg;
      cfg.experiment = orrlab::ExperimentKind::Lemmas;
      cfg.lemmas.id = lemma_id;
      cfg.lemmas.samples = lemma_samples;
      cfg.seed = seed;
      cfg.output_dir = out_dir;
      cfg.validate();
      return orrlab::run_experiment(cfg);
    }
    if (*toy) {
      orrlab::ExperimentConfig cfg;
      cfg.experiment = orrlab::ExperimentKind::Toy;
      cfg.toy.eta_over_k2 = eta_over_k2;
      cfg.toy.kappa = kappa;
      cfg.output_dir = toy_out;
      cfg.validate();
      return orrlab::run_experiment(cfg);
    }
    if (*elliptic) {
      orrlab::ExperimentConfig cfg;
      cfg.experiment = orrlab::ExperimentKind::Elliptic;
      cfg.grid.n_z = 32;
      cfg.grid.n_y = 128;
      cfg.elliptic.perturb = perturb;
      cfg.output_dir = elliptic_out;
      cfg.validate();
      return orrlab::run_experiment(cfg);
    }
    if (*resume) {
      return orrlab::resume_experiment(ckpt_path,
                                       orrlab::parse_config(resume_config));
    }
  } catch (...) {
    return orrlab::exit_code_for_current_exception();
  }
  return 0;
}
