#ifndef ORRLAB_TRANSFORMS_HPP
#define ORRLAB_TRANSFORMS_HPP

#include <vector>

#include "orrlab/spectral_field.hpp"

namespace orrlab {

// Real samples on the (z, y) collocation grid, row-major: value(a, b) at
// z = 2 pi a / n_z, y = L_y b / n_y.
struct RealField {
  explicit RealField(const Grid& grid)
      : grid(&grid),
        values(static_cast<std::size_t>(grid.n_z()) * grid.n_y(), 0.0) {}
  const Grid* grid;
  std::vector<double> values;

  double& at(int a, int b) {
    return values[static_cast<std::size_t>(a) * grid->n_y() + b];
  }
  double at(int a, int b) const {
    return values[static_cast<std::size_t>(a) * grid->n_y() + b];
  }
};

// FFT-backed transform pair for one grid.  Transforms are plan-cached and
// deterministic; parallel callers should hold one Transformer per thread or
// serialize, the planner itself is guarded internally.
class Transformer {
 public:
  explicit Transformer(const Grid& grid);
  ~Transformer();

  Transformer(const Transformer&) = delete;
  Transformer& operator=(const Transformer&) = delete;

  SpectralField to_spectral(const RealField& values, double frame_time = 0.0);
  RealField to_physical(const SpectralField& field);

  // Physical-space pointwise product of two fields followed by forward
  // transform and dealiasing: the standard pseudospectral bilinear product.
  SpectralField product(const SpectralField& f, const SpectralField& g);

  const Grid& grid() const { return grid_; }

 private:
  struct Impl;
  Grid grid_;
  Impl* impl_;
};

// 1D helpers for the k = 0 column (real profiles of y alone), same
// coefficient normalization restricted to one row.
std::vector<double> profile_from_spectral(const Grid& grid,
                                          const std::vector<Complex>& column);
std::vector<Complex> profile_to_spectral(const Grid& grid,
                                         const std::vector<double>& values);

// Complex-valued row variants (one z wavenumber at a time).
std::vector<Complex> row_to_physical(const Grid& grid,
                                     const std::vector<Complex>& column);
std::vector<Complex> row_to_spectral(const Grid& grid,
                                     const std::vector<Complex>& values);

// f(z, y) -> f(z + shift(y), y), applied as per-k phases e^{i k shift(y)}.
SpectralField shift_z_by_profile(const SpectralField& f,
                                 const std::vector<double>& shift);

}  // namespace orrlab

#endif
