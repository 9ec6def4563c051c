#ifndef ORRLAB_EXPERIMENTS_HPP
#define ORRLAB_EXPERIMENTS_HPP

#include <string>

#include "orrlab/config.hpp"

namespace orrlab {

// Runs the configured experiment and writes its artifacts (time-series CSV,
// summary.json, plot script, checkpoints) into config.output_dir.  Returns
// the CLI exit code (0 success; the error taxonomy maps to 1..4).
int run_experiment(const ExperimentConfig& config);

// Continues a checkpointed nonlinear run to config.time.t_end.
int resume_experiment(const std::string& checkpoint_path,
                      const ExperimentConfig& config);

// Maps the library error taxonomy onto the documented CLI exit codes.
int exit_code_for_current_exception();

}  // namespace orrlab

#endif
