#ifndef ORRLAB_RNG_HPP
#define ORRLAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace orrlab {

// Counter-based generator: output depends only on (seed, stream, counter),
// so parallel consumers draw from disjoint streams without shared state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  CounterRng split(std::uint64_t stream) const {
    return CounterRng(seed_, stream_ * 0x9e3779b97f4a7c15ULL + stream + 1);
  }

  std::uint64_t next_u64() { return mix(counter_++); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Marsaglia polar would need state; Box-Muller from two uniforms keeps the
  // counter semantics exact.
  double normal() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 1e-300) u1 = next_double();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t mix(std::uint64_t counter) const {
    // splitmix64 finalizer over the (seed, stream, counter) triple.
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (counter + 1) +
                      0xbf58476d1ce4e5b9ULL * (stream_ + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace orrlab

#endif
