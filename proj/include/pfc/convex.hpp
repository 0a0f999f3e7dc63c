#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "pfc/vec2.hpp"

namespace pfc {

enum class SetKind { Interval, Disk, Triangle, Lens };

std::string_view to_string(SetKind kind);

/// A closed, bounded, convex constraint set in R^1 or R^2 with an exact
/// projection. Construction validates the parameters, so every instance is a
/// valid nonempty convex set.
///
/// Lens(c) is the intersection of the disks centered at (0, c) and (0, -c)
/// with radius sqrt(1 + c^2); its tips sit at (+-1, 0).
class ConstraintSet {
public:
  static ConstraintSet interval(double lo, double hi);
  static ConstraintSet disk(double radius);
  /// Vertices may be given in either orientation.
  static ConstraintSet triangle(Vec2 a, Vec2 b, Vec2 c);
  /// Equilateral triangle inscribed in the unit circle, first vertex (0, 1).
  static ConstraintSet unit_triangle();
  static ConstraintSet lens(double half_separation = 1.0);

  SetKind kind() const { return kind_; }
  /// 1 for Interval, 2 otherwise.
  int dimension() const { return kind_ == SetKind::Interval ? 1 : 2; }

  /// Nearest point of the set. Points already in the set are returned
  /// unchanged, so projection is exactly idempotent.
  Vec2 project(Vec2 p) const;

  /// True iff the distance from `p` to the set is at most `tol`.
  bool contains(Vec2 p, double tol) const;

  /// Isolated maximizers of |p| over the set, i.e. the isolated minima of
  /// the radial potential. Empty for the disk.
  std::vector<Vec2> phase_points() const;

  /// max |p| over the set.
  double radial_extent() const;

  // Parameter accessors.
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double radius() const { return radius_; }
  double half_separation() const { return half_sep_; }
  const std::array<Vec2, 3> &vertices() const { return vertices_; }

private:
  ConstraintSet() = default;

  Vec2 project_triangle(Vec2 p) const;
  Vec2 project_lens(Vec2 p) const;

  SetKind kind_ = SetKind::Disk;
  double lo_ = 0.0, hi_ = 0.0;
  double radius_ = 0.0;
  double half_sep_ = 0.0;
  std::array<Vec2, 3> vertices_{}; // counterclockwise
};

} // namespace pfc
