#ifndef ORRLAB_TIMESERIES_HPP
#define ORRLAB_TIMESERIES_HPP

#include <string>
#include <vector>

namespace orrlab {

// Named scalar diagnostics sampled at output times.  Floats are written with
// 17 significant digits so the CSV round-trips exactly.
struct TimeSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(const std::vector<double>& row);
  std::vector<double> column(const std::string& name) const;
  void write_csv(const std::string& path) const;
};

}  // namespace orrlab

#endif
