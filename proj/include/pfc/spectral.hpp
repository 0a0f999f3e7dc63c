#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "pfc/grid.hpp"

namespace pfc {

/// Which smoothness term the implicit diffusion step inverts.
///
/// Isotropic: eps/2 |grad u|^2, operator id - eps*gamma*Lap.
/// Anisotropic: eps/2 (|d_x u - q R90 u|^2 + |d_y u|^2), operator
/// (1 + eps*gamma*q^2) id - eps*gamma*Lap + 2 eps*gamma*q R90 d_x (two
/// components only).
struct DiffusionMode {
  bool anisotropic = false;
  double q = 0.0; // preferred x-wavenumber, physical radians per unit length

  static DiffusionMode isotropic() { return {}; }
  static DiffusionMode stripes(double q) { return {true, q}; }
};

/// Symbols used for the derivatives in Fourier space.
///
/// Spectral uses the exact wavenumbers: |k|^2 for -Lap and i k_x for d_x
/// (zeroed at the x-Nyquist frequency). ForwardDifference uses the symbols of
/// the periodic forward-difference discretization: (4/h^2) sin^2(k h / 2) per
/// axis and i sin(k_x h) / h for the first derivative. The latter makes the
/// implicit step the exact proximal map of the forward-difference energy that
/// discrete_energy() evaluates.
enum class DifferenceScheme { Spectral, ForwardDifference };

class FftPlan;

/// Fourier-space inverse of the implicit diffusion operator on a periodic
/// grid. Immutable after construction; solve() is safe to call concurrently.
class SpectralOperator {
public:
  using Matrix2c = std::array<std::complex<double>, 4>; // row-major 2x2

  /// Throws std::invalid_argument for eps_gamma <= 0 or an invalid grid.
  static SpectralOperator build(const GridSpec &grid, double eps_gamma, DiffusionMode mode,
                                DifferenceScheme scheme = DifferenceScheme::ForwardDifference);

  const GridSpec &grid() const { return grid_; }
  const DiffusionMode &mode() const { return mode_; }
  DifferenceScheme scheme() const { return scheme_; }
  double eps_gamma() const { return eps_gamma_; }

  /// Half-spectrum layout: ky index in [0, ny), kx index in [0, nx/2].
  int spectrum_nx() const { return grid_.nx / 2 + 1; }
  int spectrum_ny() const { return grid_.ny; }

  /// Physical wavevector of a half-spectrum entry.
  double kx(int ix) const;
  double ky(int iy) const;

  /// Isotropic inverse factor 1 / (1 + eps*gamma*|k|^2). For the anisotropic
  /// mode this is the diagonal part of the 2x2 inverse.
  double scalar_multiplier(int ix, int iy) const;
  /// M(k) and M(k)^{-1} as 2x2 complex matrices (diagonal when isotropic).
  Matrix2c forward_matrix(int ix, int iy) const;
  Matrix2c inverse_matrix(int ix, int iy) const;

  /// Apply the inverse operator to every component of f.
  PhaseField solve(const PhaseField &f) const;

private:
  SpectralOperator() = default;
  std::size_t entry(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * spectrum_nx() + ix;
  }
  double lap_symbol(int ix, int iy) const;
  double dx_symbol(int ix) const;

  GridSpec grid_;
  double eps_gamma_ = 0.0;
  DiffusionMode mode_;
  DifferenceScheme scheme_ = DifferenceScheme::ForwardDifference;
  // M^{-1} = diag * I - i * coupling * R90 (coupling is zero when isotropic).
  std::vector<double> diag_;
  std::vector<double> coupling_;
  std::shared_ptr<const FftPlan> plan_;
};

/// Free-function form used by the solver.
inline PhaseField solve_implicit(const SpectralOperator &op, const PhaseField &f) {
  return op.solve(f);
}

} // namespace pfc
