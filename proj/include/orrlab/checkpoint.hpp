#ifndef ORRLAB_CHECKPOINT_HPP
#define ORRLAB_CHECKPOINT_HPP

#include <cstdint>
#include <string>

#include "orrlab/sim.hpp"
#include "orrlab/weights.hpp"

namespace orrlab {

// Self-describing binary snapshot: a length-prefixed JSON text header
// (format version, grid, t, step count, multiplier spec, config hash)
// followed by the little-endian float64 payload -- complex coefficients
// k-major row-major, then the two real accumulator grids.  Save/load round
// trips are bit-exact.
void save_checkpoint(const SimState& state, const MultiplierSpec& spec,
                     std::uint64_t config_hash, const std::string& path);

struct LoadedCheckpoint {
  Grid grid;
  SimState state;
  MultiplierSpec spec;
  std::uint64_t config_hash = 0;
  LoadedCheckpoint(const Grid& g) : grid(g), state(grid) {}
};

// Throws ConfigError on version mismatch, truncation, or checksum mismatch;
// no partial state escapes.
LoadedCheckpoint load_checkpoint(const std::string& path);

}  // namespace orrlab

#endif
