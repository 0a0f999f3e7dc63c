#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "pfc/convex.hpp"
#include "pfc/grid.hpp"

namespace pfc {

using Rgb = std::array<double, 3>; // channels in [0, 1]

/// Color of a single cell value under the set's color map:
///   interval  grayscale (u - lo) / (hi - lo)
///   disk      hue = arg(u) / 2pi, full saturation, value = |u| / r
///   triangle  barycentric blend of cyan, yellow, magenta at V1, V2, V3
///   lens      black (-1,0) to yellow (+1,0) by u_x, tinted red above the
///             tip axis and blue below, by |u_y| relative to the lens height
Rgb cell_color(const ConstraintSet &set, Vec2 u);

/// Binary P6 image, one pixel per cell, top row = largest y.
std::vector<std::uint8_t> render_ppm(const PhaseField &u, const ConstraintSet &set);

/// Throws IoError on failure.
void write_image(const std::filesystem::path &path, const PhaseField &u,
                 const ConstraintSet &set);

} // namespace pfc
