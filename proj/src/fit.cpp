#include "orrlab/fit.hpp"

#include <cmath>

#include "orrlab/errors.hpp"

namespace orrlab {

LogLogFit fit_loglog(const std::vector<double>& times,
                     const std::vector<double>& values, double t_lo,
                     double t_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  // tolerant window edges: sample times carry accumulated rounding
  const double lo = t_lo * (1.0 - 1e-12);
  const double hi = t_hi * (1.0 + 1e-12);
  for (std::size_t i = 0; i < times.size() && i < values.size(); ++i) {
    const double t = times[i];
    const double v = values[i];
    if (t < lo || t > hi || !(v > 0.0) || !(t > 0.0)) continue;
    const double x = std::log(t);
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) throw ConfigError("fit_loglog: degenerate fit window");
  const double det = n * sxx - sx * sx;
  if (!(std::abs(det) > 0.0))
    throw ConfigError("fit_loglog: degenerate fit window");
  LogLogFit out;
  out.slope = (n * sxy - sx * sy) / det;
  out.intercept = (sy - out.slope * sx) / n;
  out.points = n;
  return out;
}

}  // namespace orrlab
