#include "pfc/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pfc {

void PotentialSpec::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw std::invalid_argument("potential omega must be > 0");
  if (!(radial_extent > 0.0) || !std::isfinite(radial_extent))
    throw std::invalid_argument("potential radial extent d_C must be > 0");
  if (variant == ForceVariant::Rotated && !(theta_degrees >= 0.0 && theta_degrees <= 90.0))
    throw std::invalid_argument("rotated force requires 0 <= theta <= 90 degrees");
}

void PotentialSpec::validate_for_dimension(int m) const {
  validate();
  if (variant == ForceVariant::Rotated && m != 2)
    throw std::invalid_argument("rotated force requires a two-component field");
}

double eval_W(const PotentialSpec &spec, Vec2 u) {
  const double d = spec.radial_extent;
  return (d * d - norm2(u)) / (2.0 * spec.omega);
}

Vec2 force(const PotentialSpec &spec, Vec2 u) {
  if (spec.variant == ForceVariant::Gradient)
    return (1.0 / spec.omega) * u;
  if (spec.theta_degrees == 90.0)
    return (1.0 / spec.omega) * perp(u);
  return (1.0 / spec.omega) * rotate(u, spec.theta_degrees * std::numbers::pi / 180.0);
}

double grad_W_check(const PotentialSpec &spec, Vec2 u, double h, int m) {
  PotentialSpec gradient = spec;
  gradient.variant = ForceVariant::Gradient;
  const Vec2 analytic = -force(gradient, u);

  const Vec2 ex{h, 0.0}, ey{0.0, h};
  const double gx = (eval_W(gradient, u + ex) - eval_W(gradient, u - ex)) / (2.0 * h);
  const double gy = (eval_W(gradient, u + ey) - eval_W(gradient, u - ey)) / (2.0 * h);
  double err = std::abs(gx - analytic.x);
  if (m > 1)
    err = std::max(err, std::abs(gy - analytic.y));
  return err;
}

} // namespace pfc
