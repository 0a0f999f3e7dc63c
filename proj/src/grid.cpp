#include "pfc/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace pfc {

void GridSpec::validate() const {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("grid requires nx, ny >= 1");
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
    throw std::invalid_argument("grid extents must be positive");
  const double hx = lx / nx, hy = ly / ny;
  if (std::abs(hx - hy) > 1e-12 * hx)
    throw std::invalid_argument("grid cells must be square (lx/nx == ly/ny)");
}

PhaseField::PhaseField(GridSpec grid, int components) : grid_(grid), m_(components) {
  grid_.validate();
  if (components < 1 || components > 2)
    throw std::invalid_argument("phase field must have 1 or 2 components");
  data_.assign(grid_.cells() * m_, 0.0);
}

std::span<double> PhaseField::plane(int c) {
  return std::span<double>(data_).subspan(c * grid_.cells(), grid_.cells());
}

std::span<const double> PhaseField::plane(int c) const {
  return std::span<const double>(data_).subspan(c * grid_.cells(), grid_.cells());
}

void PhaseField::fill(Vec2 v) {
  for (std::size_t k = 0; k < grid_.cells(); ++k)
    set(k, v);
}

double l2_distance(const PhaseField &a, const PhaseField &b) {
  if (a.grid() != b.grid() || a.components() != b.components())
    throw std::invalid_argument("l2_distance: field shapes differ");
  const auto da = a.data(), db = b.data();
  double sum = 0.0;
  for (std::size_t k = 0; k < da.size(); ++k) {
    const double d = da[k] - db[k];
    sum += d * d;
  }
  return a.grid().h() * std::sqrt(sum);
}

} // namespace pfc
