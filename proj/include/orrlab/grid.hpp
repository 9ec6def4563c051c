#ifndef ORRLAB_GRID_HPP
#define ORRLAB_GRID_HPP

#include <cmath>
#include <cstddef>

#include "orrlab/errors.hpp"

namespace orrlab {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Truncated (k, eta) grid of the sheared frame.  z is 2*pi periodic with
// integer wavenumbers k in [-k_max, k_max]; y lives on a periodic window of
// length L_y so eta = j * (2*pi/L_y) with j in [-n_y/2, n_y/2).
class Grid {
 public:
  Grid(int n_z, int n_y, double l_y) : n_z_(n_z), n_y_(n_y), l_y_(l_y) {
    if (n_z < 4 || n_z % 2 != 0)
      throw ConfigError("grid.n_z must be an even integer >= 4");
    if (n_y < 4 || (n_y & (n_y - 1)) != 0)
      throw ConfigError("grid.n_y must be a power of two >= 4");
    if (!(l_y > 0)) throw ConfigError("grid.L_y must be positive");
    k_max_ = n_z / 2 - 1;
  }

  int n_z() const { return n_z_; }
  int n_y() const { return n_y_; }
  int k_max() const { return k_max_; }
  int n_k() const { return 2 * k_max_ + 1; }
  double l_y() const { return l_y_; }
  double delta_eta() const { return kTwoPi / l_y_; }
  double eta_max() const { return delta_eta() * (n_y_ / 2); }

  // Row r of the coefficient array holds wavenumber k = r - k_max.
  int k_of_row(int r) const { return r - k_max_; }
  int row_of_k(int k) const { return k + k_max_; }

  // Column j holds eta in standard FFT order (0, .., +max, -max, .., -1).
  double eta_of_col(int j) const {
    const int jj = (j < n_y_ / 2) ? j : j - n_y_;
    return delta_eta() * jj;
  }
  // Signed integer index of column j.
  int eta_index_of_col(int j) const {
    return (j < n_y_ / 2) ? j : j - n_y_;
  }
  int col_of_eta_index(int jj) const { return (jj >= 0) ? jj : jj + n_y_; }

  // Grid point eta closest to the requested value; ConfigError when off-grid
  // beyond tol.
  int col_of_eta(double eta, double tol = 1e-9) const {
    const double j_real = eta / delta_eta();
    const int jj = static_cast<int>(std::lround(j_real));
    if (std::abs(j_real - jj) > tol)
      throw ConfigError("requested eta is not on the grid");
    if (jj < -n_y_ / 2 || jj >= n_y_ / 2)
      throw ConfigError("requested eta exceeds the grid band");
    return col_of_eta_index(jj);
  }

  double z_of(int a) const { return kTwoPi * a / n_z_; }
  double y_of(int b) const { return l_y_ * b / n_y_; }

  bool operator==(const Grid& o) const {
    return n_z_ == o.n_z_ && n_y_ == o.n_y_ && l_y_ == o.l_y_;
  }

 private:
  int n_z_;
  int n_y_;
  double l_y_;
  int k_max_;
};

}  // namespace orrlab

#endif
