#pragma once

#include "pfc/vec2.hpp"

namespace pfc {

enum class ForceVariant { Gradient, Rotated };

/// Concave quadratic potential W(u) = (d_C^2 - |u|^2) / (2 omega) and the
/// reaction force used by the solver.
///
/// The Gradient variant drives with -grad W(u) = u / omega. The Rotated
/// variant replaces it by R_theta u / omega, which is monotone for
/// theta <= 90 degrees but is not the gradient of any scalar potential.
struct PotentialSpec {
  double omega = 0.5;
  double radial_extent = 1.0;
  ForceVariant variant = ForceVariant::Gradient;
  double theta_degrees = 0.0;

  /// Throws std::invalid_argument on omega <= 0, radial_extent <= 0 or a
  /// rotation angle outside [0, 90].
  void validate() const;
  /// As validate(), and also rejects the Rotated variant for scalar fields.
  void validate_for_dimension(int m) const;
};

double eval_W(const PotentialSpec &spec, Vec2 u);

/// -grad W(u) for the Gradient variant, R_theta u / omega for Rotated.
Vec2 force(const PotentialSpec &spec, Vec2 u);

/// Largest component difference between -force(u) (Gradient variant) and a
/// centered finite-difference gradient of eval_W with step h. With `m == 1`
/// only the first component is checked.
double grad_W_check(const PotentialSpec &spec, Vec2 u, double h, int m = 2);

} // namespace pfc
