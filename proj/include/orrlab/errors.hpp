#ifndef ORRLAB_ERRORS_HPP
#define ORRLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orrlab {

// Error taxonomy mirrored by the CLI exit codes:
//   config 1, blow-up 2, range 3, divergence 4.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BlowupError : std::runtime_error {
  explicit BlowupError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RangeError : std::runtime_error {
  explicit RangeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace orrlab

#endif
