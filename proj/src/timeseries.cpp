#include "orrlab/timeseries.hpp"

#include <cstdio>
#include <fstream>

#include "orrlab/errors.hpp"

namespace orrlab {

void TimeSeries::add_row(const std::vector<double>& row) {
  if (row.size() != columns.size())
    throw ConfigError("TimeSeries row width does not match header");
  rows.push_back(row);
}

std::vector<double> TimeSeries::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == name) {
      std::vector<double> out;
      out.reserve(rows.size());
      for (const auto& r : rows) out.push_back(r[c]);
      return out;
    }
  }
  throw ConfigError("TimeSeries has no column named " + name);
}

void TimeSeries::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c];
  out << "\n";
  char buf[64];
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", r[c]);
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace orrlab
