#include "pfc/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pfc {

namespace {

// Points within this (scaled) distance outside a boundary count as members.
// It absorbs the rounding of a projected point so that re-projecting it is
// the identity.
constexpr double kMemberSlack = 1e-14;

Vec2 project_disk(Vec2 p, Vec2 center, double r) {
  const Vec2 d = p - center;
  const double len = norm(d);
  if (len <= r * (1.0 + kMemberSlack))
    return p;
  return center + (r / len) * d;
}

bool in_disk(Vec2 p, Vec2 center, double r) {
  return norm(p - center) <= r * (1.0 + kMemberSlack);
}

} // namespace

std::string_view to_string(SetKind kind) {
  switch (kind) {
  case SetKind::Interval: return "interval";
  case SetKind::Disk: return "disk";
  case SetKind::Triangle: return "triangle";
  case SetKind::Lens: return "lens";
  }
  return "unknown";
}

ConstraintSet ConstraintSet::interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw std::invalid_argument("interval requires finite lo < hi");
  ConstraintSet s;
  s.kind_ = SetKind::Interval;
  s.lo_ = lo;
  s.hi_ = hi;
  return s;
}

ConstraintSet ConstraintSet::disk(double radius) {
  if (!std::isfinite(radius) || !(radius > 0.0))
    throw std::invalid_argument("disk requires a positive radius");
  ConstraintSet s;
  s.kind_ = SetKind::Disk;
  s.radius_ = radius;
  return s;
}

ConstraintSet ConstraintSet::triangle(Vec2 a, Vec2 b, Vec2 c) {
  for (Vec2 v : {a, b, c})
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw std::invalid_argument("triangle vertices must be finite");
  const double area2 = cross(b - a, c - a);
  const double scale = std::max({norm2(b - a), norm2(c - a), norm2(c - b)});
  if (!(std::abs(area2) > 1e-12 * scale))
    throw std::invalid_argument("triangle vertices are collinear");
  ConstraintSet s;
  s.kind_ = SetKind::Triangle;
  s.vertices_ = area2 > 0 ? std::array{a, b, c} : std::array{a, c, b};
  return s;
}

ConstraintSet ConstraintSet::unit_triangle() {
  const double h = std::sqrt(3.0) / 2.0;
  return triangle({0.0, 1.0}, {-h, -0.5}, {h, -0.5});
}

ConstraintSet ConstraintSet::lens(double half_separation) {
  // Disks of radius sqrt(1 + c^2) centered at (0, +-c) always overlap in a
  // region containing (+-1, 0); c must still be finite and non-negative.
  if (!std::isfinite(half_separation) || !(half_separation > 0.0))
    throw std::invalid_argument("lens requires a positive half-separation");
  ConstraintSet s;
  s.kind_ = SetKind::Lens;
  s.half_sep_ = half_separation;
  s.radius_ = std::sqrt(1.0 + half_separation * half_separation);
  return s;
}

Vec2 ConstraintSet::project(Vec2 p) const {
  switch (kind_) {
  case SetKind::Interval: return {std::clamp(p.x, lo_, hi_), 0.0};
  case SetKind::Disk: return project_disk(p, {0.0, 0.0}, radius_);
  case SetKind::Triangle: return project_triangle(p);
  case SetKind::Lens: return project_lens(p);
  }
  return p;
}

// Region classification over the interior, the three edge slabs and the
// three vertex cones.
Vec2 ConstraintSet::project_triangle(Vec2 p) const {
  const auto &[a, b, c] = vertices_;
  const Vec2 ab = b - a, ac = c - a, bc = c - b;

  const double slack = kMemberSlack * std::max(1.0, std::sqrt(norm2(ab)));
  if (cross(ab, p - a) >= -slack * norm(ab) && cross(bc, p - b) >= -slack * norm(bc) &&
      cross(a - c, p - c) >= -slack * norm(a - c))
    return p;

  const Vec2 ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0)
    return a;

  const Vec2 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3)
    return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0)
    return a + (d1 / (d1 - d3)) * ab;

  const Vec2 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6)
    return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0)
    return a + (d2 / (d2 - d6)) * ac;

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && d4 - d3 >= 0.0 && d5 - d6 >= 0.0)
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * bc;

  // Only reachable through rounding right at the boundary.
  return p;
}

Vec2 ConstraintSet::project_lens(Vec2 p) const {
  const Vec2 center_a{0.0, half_sep_}, center_b{0.0, -half_sep_};
  const bool in_a = in_disk(p, center_a, radius_);
  const bool in_b = in_disk(p, center_b, radius_);
  if (in_a && in_b)
    return p;

  // Candidates in fixed order: disk A, disk B, tip (+1, 0), tip (-1, 0).
  Vec2 best{};
  double best_d2 = std::numeric_limits<double>::infinity();
  auto consider = [&](Vec2 q) {
    const double d2 = norm2(p - q);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  };
  if (!in_a) {
    const Vec2 q = project_disk(p, center_a, radius_);
    if (in_disk(q, center_b, radius_))
      consider(q);
  }
  if (!in_b) {
    const Vec2 q = project_disk(p, center_b, radius_);
    if (in_disk(q, center_a, radius_))
      consider(q);
  }
  consider({1.0, 0.0});
  consider({-1.0, 0.0});
  return best;
}

bool ConstraintSet::contains(Vec2 p, double tol) const {
  const Vec2 q = project(p);
  if (kind_ == SetKind::Interval)
    return std::abs(p.x - q.x) <= tol;
  return norm(p - q) <= tol;
}

std::vector<Vec2> ConstraintSet::phase_points() const {
  switch (kind_) {
  case SetKind::Interval: return {{lo_, 0.0}, {hi_, 0.0}};
  case SetKind::Disk: return {};
  case SetKind::Triangle: return {vertices_.begin(), vertices_.end()};
  case SetKind::Lens: return {{-1.0, 0.0}, {1.0, 0.0}};
  }
  return {};
}

double ConstraintSet::radial_extent() const {
  switch (kind_) {
  case SetKind::Interval: return std::max(std::abs(lo_), std::abs(hi_));
  case SetKind::Disk: return radius_;
  case SetKind::Triangle:
    return std::sqrt(std::max({norm2(vertices_[0]), norm2(vertices_[1]), norm2(vertices_[2])}));
  case SetKind::Lens: return 1.0;
  }
  return 0.0;
}

} // namespace pfc
