#ifndef ORRLAB_FIT_HPP
#define ORRLAB_FIT_HPP

#include <vector>

namespace orrlab {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // in log space
  int points = 0;
};

// Least-squares slope of log(value) against log(time) over the window
// [t_lo, t_hi].  Non-positive values and out-of-window samples are skipped;
// throws ConfigError when fewer than three usable points remain.
LogLogFit fit_loglog(const std::vector<double>& times,
                     const std::vector<double>& values, double t_lo,
                     double t_hi);

}  // namespace orrlab

#endif
