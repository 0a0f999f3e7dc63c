#pragma once
// Independent reference computations used only by the tests. None of these
// call into the code paths they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "pfc/vec2.hpp"

namespace oracle {

using pfc::Vec2;

/// Golden-section minimization of a unimodal f on [a, b].
inline double golden_min(const std::function<double(double)> &f, double a, double b,
                         double tol = 1e-14) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - r * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + r * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Nearest point on a circular arc (center, radius, angles [t0, t1]) found by
/// dense sampling followed by golden-section refinement.
inline Vec2 nearest_on_arc(Vec2 p, Vec2 center, double radius, double t0, double t1,
                           int samples = 2000) {
  auto at = [&](double t) { return center + radius * Vec2{std::cos(t), std::sin(t)}; };
  auto dist2 = [&](double t) { return pfc::norm2(p - at(t)); };
  const double dt = (t1 - t0) / samples;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= samples; ++s) {
    const double d = dist2(t0 + s * dt);
    if (d < best_d) { best_d = d; best = s; }
  }
  const double lo = std::max(t0, t0 + (best - 1) * dt), hi = std::min(t1, t0 + (best + 1) * dt);
  return at(golden_min(dist2, lo, hi));
}

/// Nearest boundary point of Lens(c), the intersection of the disks of
/// radius sqrt(1+c^2) centered at (0, +-c): the upper boundary is an arc of
/// the lower disk and vice versa.
inline Vec2 lens_boundary_nearest(Vec2 p, double c) {
  const double r = std::sqrt(1.0 + c * c);
  const double a = std::atan2(c, 1.0);
  const Vec2 upper = nearest_on_arc(p, {0.0, -c}, r, a, std::numbers::pi - a);
  const Vec2 lower = nearest_on_arc(p, {0.0, c}, r, -std::numbers::pi + a, -a);
  return pfc::norm2(p - upper) <= pfc::norm2(p - lower) ? upper : lower;
}

} // namespace oracle

#include "pfc/convex.hpp"
#include "pfc/grid.hpp"

namespace oracle {

/// Minimizer of the minimizing-movement objective
///   sum_cells h^2 [ |u - u_k|^2 / (2 tau) + eps/2 sum_i |D+ u_i|^2 + W(u)/eps ]
/// subject to u in C cell-wise, with W = (d^2 - |u|^2) / (2 omega), by
/// projected gradient descent on the cell-wise gradient assembled from
/// periodic forward differences. Runs until the gradient-mapping residual
/// max|u_new - u| / step drops below `residual`.
inline pfc::PhaseField minimizing_movement_pgd(const pfc::PhaseField &u_k, const pfc::ConstraintSet &set,
                                               double tau, double eps, double omega,
                                               double residual = 1e-10, int max_iter = 10000000) {
  const auto &g = u_k.grid();
  const double h = g.h();
  const double L = 1.0 / tau + 8.0 * eps / (h * h);
  const double step = 1.0 / L;
  pfc::PhaseField u = u_k, next = u_k;
  const int m = u_k.components();
  for (int it = 0; it < max_iter; ++it) {
    double change = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const Vec2 c = u.at(i, j);
        const Vec2 lap = u.at((i + 1) % g.nx, j) + u.at((i + g.nx - 1) % g.nx, j) +
                         u.at(i, (j + 1) % g.ny) + u.at(i, (j + g.ny - 1) % g.ny) - 4.0 * c;
        const Vec2 grad = (1.0 / tau) * (c - u_k.at(i, j)) - (eps / (h * h)) * lap -
                          (1.0 / (eps * omega)) * c;
        Vec2 trial = c - step * grad;
        if (m == 1)
          trial.y = 0.0;
        const Vec2 q = set.project(trial);
        change = std::max({change, std::abs(q.x - c.x), std::abs(q.y - c.y)});
        next.set(i, j, q);
      }
    std::swap(u, next);
    if (change / step < residual)
      break;
  }
  return u;
}

} // namespace oracle
