#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pfc/vec2.hpp"

namespace pfc {

/// Uniform periodic grid with square cells on [-lx/2, lx/2] x [-ly/2, ly/2].
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;

  /// Throws std::invalid_argument unless nx, ny >= 1, the extents are
  /// positive and lx / nx == ly / ny (relative tolerance 1e-12).
  void validate() const;

  double h() const { return lx / nx; }
  std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
  double cell_x(int i) const { return -0.5 * lx + (i + 0.5) * h(); }
  double cell_y(int j) const { return -0.5 * ly + (j + 0.5) * h(); }

  friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

/// An m-component field (m in {1, 2}) on a periodic grid, stored as m planes
/// of nx * ny values, row-major (x fastest).
class PhaseField {
public:
  PhaseField() = default;
  PhaseField(GridSpec grid, int components);

  const GridSpec &grid() const { return grid_; }
  int components() const { return m_; }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * grid_.nx + i;
  }

  std::span<double> plane(int c);
  std::span<const double> plane(int c) const;
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Cell value by flat cell index; y is zero for scalar fields.
  Vec2 at(std::size_t cell) const {
    return {data_[cell], m_ > 1 ? data_[cell + grid_.cells()] : 0.0};
  }
  Vec2 at(int i, int j) const { return at(index(i, j)); }

  void set(std::size_t cell, Vec2 v) {
    data_[cell] = v.x;
    if (m_ > 1)
      data_[cell + grid_.cells()] = v.y;
  }
  void set(int i, int j, Vec2 v) { set(index(i, j), v); }

  void fill(Vec2 v);

  friend bool operator==(const PhaseField &, const PhaseField &) = default;

private:
  GridSpec grid_;
  int m_ = 0;
  std::vector<double> data_;
};

/// Grid-scaled L2 norm h * ||a - b||_2 over all components.
double l2_distance(const PhaseField &a, const PhaseField &b);

} // namespace pfc
