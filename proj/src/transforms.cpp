#include "orrlab/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "orrlab/errors.hpp"

namespace orrlab {

namespace {
std::mutex planner_mutex;  // FFTW planner is not thread-safe
}

struct Transformer::Impl {
  fftw_complex* buf = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

Transformer::Transformer(const Grid& grid) : grid_(grid), impl_(new Impl) {
  const int nz = grid.n_z();
  const int ny = grid.n_y();
  std::lock_guard<std::mutex> lock(planner_mutex);
  impl_->buf = fftw_alloc_complex(static_cast<std::size_t>(nz) * ny);
  impl_->forward = fftw_plan_dft_2d(nz, ny, impl_->buf, impl_->buf,
                                    FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->backward = fftw_plan_dft_2d(nz, ny, impl_->buf, impl_->buf,
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
}

Transformer::~Transformer() {
  std::lock_guard<std::mutex> lock(planner_mutex);
  fftw_destroy_plan(impl_->forward);
  fftw_destroy_plan(impl_->backward);
  fftw_free(impl_->buf);
  delete impl_;
}

SpectralField Transformer::to_spectral(const RealField& values,
                                       double frame_time) {
  if (!(*values.grid == grid_))
    throw ConfigError("to_spectral: field grid does not match transformer");
  const int nz = grid_.n_z();
  const int ny = grid_.n_y();
  fftw_complex* buf = impl_->buf;
  for (int a = 0; a < nz; ++a) {
    for (int b = 0; b < ny; ++b) {
      const std::size_t p = static_cast<std::size_t>(a) * ny + b;
      buf[p][0] = values.at(a, b);
      buf[p][1] = 0.0;
    }
  }
  fftw_execute(impl_->forward);

  // continuum normalization: f_hat = (2 pi / (deta nz ny)) * DFT
  const double scale = grid_.l_y() / (static_cast<double>(nz) * ny);
  SpectralField out(grid_, frame_time);
  for (int k = -grid_.k_max(); k <= grid_.k_max(); ++k) {
    const int p = (k >= 0) ? k : k + nz;
    for (int j = 0; j < ny; ++j) {
      const std::size_t q = static_cast<std::size_t>(p) * ny + j;
      out.at_k(k, j) = scale * Complex{buf[q][0], buf[q][1]};
    }
  }
  out.symmetrize();
  return out;
}

RealField Transformer::to_physical(const SpectralField& field) {
  if (!(field.grid() == grid_))
    throw ConfigError("to_physical: field grid does not match transformer");
  const int nz = grid_.n_z();
  const int ny = grid_.n_y();
  fftw_complex* buf = impl_->buf;
  for (std::size_t p = 0; p < static_cast<std::size_t>(nz) * ny; ++p) {
    buf[p][0] = 0.0;
    buf[p][1] = 0.0;
  }
  const double scale = 1.0 / grid_.l_y();
  for (int k = -grid_.k_max(); k <= grid_.k_max(); ++k) {
    const int p = (k >= 0) ? k : k + nz;
    for (int j = 0; j < ny; ++j) {
      const Complex c = scale * field.at_k(k, j);
      const std::size_t q = static_cast<std::size_t>(p) * ny + j;
      buf[q][0] = c.real();
      buf[q][1] = c.imag();
    }
  }
  fftw_execute(impl_->backward);
  RealField out(grid_);
  for (int a = 0; a < nz; ++a)
    for (int b = 0; b < ny; ++b)
      out.at(a, b) = buf[static_cast<std::size_t>(a) * ny + b][0];
  return out;
}

SpectralField Transformer::product(const SpectralField& f,
                                   const SpectralField& g) {
  RealField pf = to_physical(f);
  const RealField pg = to_physical(g);
  for (std::size_t i = 0; i < pf.values.size(); ++i)
    pf.values[i] *= pg.values[i];
  SpectralField out = to_spectral(pf, f.frame_time());
  dealias_in_place(out);
  return out;
}

namespace {

struct Plan1d {
  fftw_complex* buf = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

Plan1d& plan_1d(int ny) {
  static std::map<int, Plan1d> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(ny);
  if (it != cache.end()) return it->second;
  Plan1d p;
  {
    std::lock_guard<std::mutex> plock(planner_mutex);
    p.buf = fftw_alloc_complex(ny);
    p.forward =
        fftw_plan_dft_1d(ny, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.backward =
        fftw_plan_dft_1d(ny, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  return cache.emplace(ny, p).first->second;
}

}  // namespace

std::vector<double> profile_from_spectral(const Grid& grid,
                                          const std::vector<Complex>& column) {
  const int ny = grid.n_y();
  Plan1d& p = plan_1d(ny);
  const double scale = 1.0 / grid.l_y();
  for (int j = 0; j < ny; ++j) {
    p.buf[j][0] = scale * column[j].real();
    p.buf[j][1] = scale * column[j].imag();
  }
  fftw_execute(p.backward);
  std::vector<double> out(ny);
  for (int j = 0; j < ny; ++j) out[j] = p.buf[j][0];
  return out;
}

std::vector<Complex> profile_to_spectral(const Grid& grid,
                                         const std::vector<double>& values) {
  const int ny = grid.n_y();
  Plan1d& p = plan_1d(ny);
  for (int j = 0; j < ny; ++j) {
    p.buf[j][0] = values[j];
    p.buf[j][1] = 0.0;
  }
  fftw_execute(p.forward);
  const double scale = grid.l_y() / ny;
  std::vector<Complex> out(ny);
  for (int j = 0; j < ny; ++j)
    out[j] = scale * Complex{p.buf[j][0], p.buf[j][1]};
  out[ny / 2] = Complex{};  // Nyquist kept empty as in the 2D convention
  return out;
}

std::vector<Complex> row_to_physical(const Grid& grid,
                                     const std::vector<Complex>& column) {
  const int ny = grid.n_y();
  Plan1d& p = plan_1d(ny);
  const double scale = 1.0 / grid.l_y();
  for (int j = 0; j < ny; ++j) {
    p.buf[j][0] = scale * column[j].real();
    p.buf[j][1] = scale * column[j].imag();
  }
  fftw_execute(p.backward);
  std::vector<Complex> out(ny);
  for (int j = 0; j < ny; ++j) out[j] = Complex{p.buf[j][0], p.buf[j][1]};
  return out;
}

std::vector<Complex> row_to_spectral(const Grid& grid,
                                     const std::vector<Complex>& values) {
  const int ny = grid.n_y();
  Plan1d& p = plan_1d(ny);
  for (int j = 0; j < ny; ++j) {
    p.buf[j][0] = values[j].real();
    p.buf[j][1] = values[j].imag();
  }
  fftw_execute(p.forward);
  const double scale = grid.l_y() / ny;
  std::vector<Complex> out(ny);
  for (int j = 0; j < ny; ++j)
    out[j] = scale * Complex{p.buf[j][0], p.buf[j][1]};
  out[ny / 2] = Complex{};
  return out;
}

SpectralField shift_z_by_profile(const SpectralField& f,
                                 const std::vector<double>& shift) {
  const Grid& g = f.grid();
  const int ny = g.n_y();
  SpectralField out(g, f.frame_time());
  std::vector<Complex> column(ny);
  for (int k = -g.k_max(); k <= g.k_max(); ++k) {
    for (int j = 0; j < ny; ++j) column[j] = f.at_k(k, j);
    if (k == 0) {
      for (int j = 0; j < ny; ++j) out.at_k(0, j) = column[j];
      continue;
    }
    std::vector<Complex> phys = row_to_physical(g, column);
    for (int b = 0; b < ny; ++b)
      phys[b] *= std::exp(Complex{0.0, k * shift[b]});
    const std::vector<Complex> back = row_to_spectral(g, phys);
    for (int j = 0; j < ny; ++j) out.at_k(k, j) = back[j];
  }
  return out;
}

}  // namespace orrlab
