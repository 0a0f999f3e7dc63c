#include "pfc/spectral.hpp"

#include <fftw3.h>

#include "fftw_support.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace pfc {

namespace detail {

std::mutex &fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

} // namespace detail

namespace {

template <class T> struct FftwDeleter {
  void operator()(T *p) const { fftw_free(p); }
};
template <class T> using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

FftwBuffer<double> alloc_real(std::size_t n) {
  return FftwBuffer<double>(fftw_alloc_real(n));
}
FftwBuffer<fftw_complex> alloc_complex(std::size_t n) {
  return FftwBuffer<fftw_complex>(fftw_alloc_complex(n));
}

} // namespace

/// Forward r2c and backward c2r plans for one grid shape.
class FftPlan {
public:
  FftPlan(int nx, int ny) : nx_(nx), ny_(ny) {
    auto real = alloc_real(real_size());
    auto spec = alloc_complex(complex_size());
    std::lock_guard lock(detail::fftw_planner_mutex());
    forward_ = fftw_plan_dft_r2c_2d(ny, nx, real.get(), spec.get(), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_2d(ny, nx, spec.get(), real.get(), FFTW_ESTIMATE);
    if (!forward_ || !backward_)
      throw std::runtime_error("FFTW plan creation failed");
  }
  ~FftPlan() {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  FftPlan(const FftPlan &) = delete;
  FftPlan &operator=(const FftPlan &) = delete;

  std::size_t real_size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t complex_size() const { return static_cast<std::size_t>(nx_ / 2 + 1) * ny_; }

  void forward(double *in, fftw_complex *out) const { fftw_execute_dft_r2c(forward_, in, out); }
  // Overwrites `in`.
  void backward(fftw_complex *in, double *out) const { fftw_execute_dft_c2r(backward_, in, out); }

private:
  int nx_, ny_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

SpectralOperator SpectralOperator::build(const GridSpec &grid, double eps_gamma, DiffusionMode mode,
                                         DifferenceScheme scheme) {
  grid.validate();
  if (!(eps_gamma > 0.0) || !std::isfinite(eps_gamma))
    throw std::invalid_argument("spectral operator requires eps_gamma > 0");
  if (mode.anisotropic && !std::isfinite(mode.q))
    throw std::invalid_argument("anisotropic wavenumber q must be finite");

  SpectralOperator op;
  op.grid_ = grid;
  op.eps_gamma_ = eps_gamma;
  op.mode_ = mode;
  op.scheme_ = scheme;

  const std::size_t n = static_cast<std::size_t>(op.spectrum_nx()) * op.spectrum_ny();
  op.diag_.resize(n);
  op.coupling_.assign(n, 0.0);
  const double q = mode.anisotropic ? mode.q : 0.0;
  for (int iy = 0; iy < op.spectrum_ny(); ++iy) {
    for (int ix = 0; ix < op.spectrum_nx(); ++ix) {
      const double a = 1.0 + eps_gamma * (q * q + op.lap_symbol(ix, iy));
      const double beta = mode.anisotropic ? 2.0 * eps_gamma * q * op.dx_symbol(ix) : 0.0;
      // Eigenvalues of M(k) are a -+ beta.
      if (a - std::abs(beta) < 1.0 - 1e-12 * a)
        throw std::logic_error("implicit diffusion operator lost its lower bound 1");
      const double det = (a - beta) * (a + beta);
      op.diag_[op.entry(ix, iy)] = a / det;
      op.coupling_[op.entry(ix, iy)] = beta / det;
    }
  }
  op.plan_ = std::make_shared<const FftPlan>(grid.nx, grid.ny);
  return op;
}

double SpectralOperator::kx(int ix) const {
  return 2.0 * std::numbers::pi * ix / grid_.lx;
}

double SpectralOperator::ky(int iy) const {
  const int n = iy <= grid_.ny / 2 ? iy : iy - grid_.ny;
  return 2.0 * std::numbers::pi * n / grid_.ly;
}

double SpectralOperator::lap_symbol(int ix, int iy) const {
  const double kx_ = kx(ix), ky_ = ky(iy);
  if (scheme_ == DifferenceScheme::Spectral)
    return kx_ * kx_ + ky_ * ky_;
  const double h = grid_.h();
  const double sx = std::sin(0.5 * kx_ * h), sy = std::sin(0.5 * ky_ * h);
  return 4.0 / (h * h) * (sx * sx + sy * sy);
}

double SpectralOperator::dx_symbol(int ix) const {
  // An odd derivative at the Nyquist frequency would break the Hermitian
  // symmetry of a real field's spectrum.
  if (grid_.nx % 2 == 0 && ix == grid_.nx / 2)
    return 0.0;
  if (scheme_ == DifferenceScheme::Spectral)
    return kx(ix);
  const double h = grid_.h();
  return std::sin(kx(ix) * h) / h;
}

double SpectralOperator::scalar_multiplier(int ix, int iy) const {
  return diag_.at(entry(ix, iy));
}

SpectralOperator::Matrix2c SpectralOperator::forward_matrix(int ix, int iy) const {
  const double q = mode_.anisotropic ? mode_.q : 0.0;
  const double a = 1.0 + eps_gamma_ * (q * q + lap_symbol(ix, iy));
  const double beta = mode_.anisotropic ? 2.0 * eps_gamma_ * q * dx_symbol(ix) : 0.0;
  const std::complex<double> ib{0.0, beta};
  return {a, -ib, ib, a};
}

SpectralOperator::Matrix2c SpectralOperator::inverse_matrix(int ix, int iy) const {
  const double d = diag_.at(entry(ix, iy));
  const std::complex<double> ic{0.0, coupling_.at(entry(ix, iy))};
  return {d, ic, -ic, d};
}

PhaseField SpectralOperator::solve(const PhaseField &f) const {
  if (f.grid() != grid_)
    throw std::invalid_argument("solve_implicit: field grid does not match the operator");
  const int m = f.components();
  if (mode_.anisotropic && m != 2)
    throw std::invalid_argument("anisotropic diffusion requires a two-component field");

  const std::size_t nr = plan_->real_size(), nc = plan_->complex_size();
  auto real = alloc_real(nr);
  std::vector<FftwBuffer<fftw_complex>> spectra;
  for (int c = 0; c < m; ++c) {
    spectra.push_back(alloc_complex(nc));
    const auto src = f.plane(c);
    std::copy(src.begin(), src.end(), real.get());
    plan_->forward(real.get(), spectra.back().get());
  }

  if (mode_.anisotropic) {
    fftw_complex *s0 = spectra[0].get(), *s1 = spectra[1].get();
    for (std::size_t k = 0; k < nc; ++k) {
      const std::complex<double> v0{s0[k][0], s0[k][1]}, v1{s1[k][0], s1[k][1]};
      const std::complex<double> ic{0.0, coupling_[k]};
      const std::complex<double> w0 = diag_[k] * v0 + ic * v1;
      const std::complex<double> w1 = diag_[k] * v1 - ic * v0;
      s0[k][0] = w0.real();
      s0[k][1] = w0.imag();
      s1[k][0] = w1.real();
      s1[k][1] = w1.imag();
    }
  } else {
    for (auto &s : spectra) {
      for (std::size_t k = 0; k < nc; ++k) {
        s[k][0] *= diag_[k];
        s[k][1] *= diag_[k];
      }
    }
  }

  PhaseField out(grid_, m);
  const double scale = 1.0 / static_cast<double>(nr);
  for (int c = 0; c < m; ++c) {
    plan_->backward(spectra[c].get(), real.get());
    auto dst = out.plane(c);
    for (std::size_t k = 0; k < nr; ++k)
      dst[k] = real[k] * scale;
  }
  return out;
}

} // namespace pfc
