#ifndef ORRLAB_SPECTRAL_FIELD_HPP
#define ORRLAB_SPECTRAL_FIELD_HPP

#include <complex>
#include <vector>

#include "orrlab/grid.hpp"

namespace orrlab {

using Complex = std::complex<double>;

// Fourier coefficients f_hat_k(eta) of a real field on the sheared-frame
// grid, stored k-major: coeff(row_of_k(k), j).  Coefficients follow the
// continuum normalization
//   f(z,y) = (1/2pi) sum_k sum_j e^{i(k z + eta_j y)} f_hat_k(eta_j) deta,
// so Parseval reads  int |f|^2 dz dy = sum_k sum_j |f_hat|^2 deta.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid, double frame_time = 0.0)
      : grid_(&grid),
        frame_time_(frame_time),
        coeffs_(static_cast<std::size_t>(grid.n_k()) * grid.n_y(), Complex{}) {}

  const Grid& grid() const { return *grid_; }
  double frame_time() const { return frame_time_; }
  void set_frame_time(double t) { frame_time_ = t; }

  Complex& at(int row, int col) {
    return coeffs_[static_cast<std::size_t>(row) * grid_->n_y() + col];
  }
  Complex at(int row, int col) const {
    return coeffs_[static_cast<std::size_t>(row) * grid_->n_y() + col];
  }
  Complex& at_k(int k, int col) { return at(grid_->row_of_k(k), col); }
  Complex at_k(int k, int col) const { return at(grid_->row_of_k(k), col); }

  std::vector<Complex>& data() { return coeffs_; }
  const std::vector<Complex>& data() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  // Enforces coeff(-k,-eta) = conj(coeff(k,eta)) and zeroes the eta Nyquist
  // row, which has no Hermitian partner on the grid.
  void symmetrize();

  // True when Hermitian symmetry holds to within tol (absolute).
  bool is_hermitian(double tol = 1e-11) const;

  double l2_norm() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);

 private:
  const Grid* grid_;
  double frame_time_;
  std::vector<Complex> coeffs_;
};

enum class Axis { Z, Y, YMoving };

// Pure multiplier derivative: ik, i eta, or i(eta - k t) with t read from the
// field's frame time.
SpectralField derivative(const SpectralField& f, Axis axis);

// Zeroes every mode outside the 2/3 box (idempotent).
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);

// (sum_k int <k,eta>^{2N} |f_hat|^2 deta)^{1/2} with |k,eta| = |k|+|eta|.
double sobolev_norm(const SpectralField& f, double order);

// Same norm read in the physical frame, i.e. with eta replaced by the moving
// frequency eta - k t.
double sobolev_norm_physical(const SpectralField& f, double order);

}  // namespace orrlab

#endif
