#include "orrlab/spectral_field.hpp"

#include <cmath>

namespace orrlab {

void SpectralField::symmetrize() {
  const Grid& g = *grid_;
  const int ny = g.n_y();
  const int nyq = ny / 2;
  // eta Nyquist row has no partner on the grid; keep it identically zero.
  for (int r = 0; r < g.n_k(); ++r) at(r, nyq) = Complex{};

  for (int k = 0; k <= g.k_max(); ++k) {
    for (int j = 0; j < ny; ++j) {
      if (j == nyq) continue;
      const int jj = g.eta_index_of_col(j);
      if (k == 0 && jj < 0) continue;  // handled by its positive partner
      const int jm = g.col_of_eta_index(-jj);
      Complex a = at_k(k, j);
      Complex b = at_k(-k, jm);
      const Complex avg = 0.5 * (a + std::conj(b));
      at_k(k, j) = avg;
      at_k(-k, jm) = std::conj(avg);
    }
  }
  // mean mode of a real field is real
  const int r0 = g.row_of_k(0);
  at(r0, 0) = Complex{at(r0, 0).real(), 0.0};
}

bool SpectralField::is_hermitian(double tol) const {
  const Grid& g = *grid_;
  for (int k = 0; k <= g.k_max(); ++k) {
    for (int j = 0; j < g.n_y(); ++j) {
      if (j == g.n_y() / 2) {
        if (std::abs(at_k(k, j)) > tol) return false;
        continue;
      }
      const int jm = g.col_of_eta_index(-g.eta_index_of_col(j));
      if (std::abs(at_k(k, j) - std::conj(at_k(-k, jm))) > tol) return false;
    }
  }
  return true;
}

double SpectralField::l2_norm() const {
  double sum = 0.0;
  for (const Complex& c : coeffs_) sum += std::norm(c);
  return std::sqrt(sum * grid_->delta_eta());
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (Complex& c : coeffs_) c *= a;
  return *this;
}

SpectralField derivative(const SpectralField& f, Axis axis) {
  const Grid& g = f.grid();
  SpectralField out(g, f.frame_time());
  const double t = f.frame_time();
  for (int r = 0; r < g.n_k(); ++r) {
    const double k = g.k_of_row(r);
    for (int j = 0; j < g.n_y(); ++j) {
      double m = 0.0;
      switch (axis) {
        case Axis::Z:
          m = k;
          break;
        case Axis::Y:
          m = g.eta_of_col(j);
          break;
        case Axis::YMoving:
          m = g.eta_of_col(j) - k * t;
          break;
      }
      out.at(r, j) = Complex{0.0, m} * f.at(r, j);
    }
  }
  return out;
}

namespace {

// 2/3-rule cutoffs as integer mode indices.
inline int z_cutoff(const Grid& g) { return (2 * g.k_max()) / 3; }
inline int eta_cutoff(const Grid& g) { return g.n_y() / 3; }

}  // namespace

void dealias_in_place(SpectralField& f) {
  const Grid& g = f.grid();
  const int kc = z_cutoff(g);
  const int jc = eta_cutoff(g);
  for (int r = 0; r < g.n_k(); ++r) {
    const bool kill_row = std::abs(g.k_of_row(r)) > kc;
    for (int j = 0; j < g.n_y(); ++j) {
      if (kill_row || std::abs(g.eta_index_of_col(j)) > jc)
        f.at(r, j) = Complex{};
    }
  }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_in_place(out);
  return out;
}

namespace {

double sobolev_sum(const SpectralField& f, double order, bool moving) {
  const Grid& g = f.grid();
  const double t = f.frame_time();
  double sum = 0.0;
  for (int r = 0; r < g.n_k(); ++r) {
    const double k = g.k_of_row(r);
    for (int j = 0; j < g.n_y(); ++j) {
      const double eta = moving ? g.eta_of_col(j) - k * t : g.eta_of_col(j);
      const double mag = std::abs(k) + std::abs(eta);
      const double jap2 = 1.0 + mag * mag;
      sum += std::pow(jap2, order) * std::norm(f.at(r, j));
    }
  }
  return std::sqrt(sum * g.delta_eta());
}

}  // namespace

double sobolev_norm(const SpectralField& f, double order) {
  return sobolev_sum(f, order, false);
}

double sobolev_norm_physical(const SpectralField& f, double order) {
  return sobolev_sum(f, order, true);
}

}  // namespace orrlab
