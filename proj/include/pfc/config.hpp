#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "pfc/convex.hpp"
#include "pfc/errors.hpp"
#include "pfc/grid.hpp"
#include "pfc/potential.hpp"
#include "pfc/solver.hpp"
#include "pfc/spectral.hpp"

namespace pfc {

struct ConstraintConfig {
  SetKind type = SetKind::Interval;
  double lo = -1.0;
  double hi = 1.0;
  double radius = 1.0;
  double c = 1.0; // lens half-separation
  std::array<Vec2, 3> vertices = ConstraintSet::unit_triangle().vertices();

  ConstraintSet make() const;
  friend bool operator==(const ConstraintConfig &, const ConstraintConfig &) = default;
};

struct OutputConfig {
  std::string dir = "out";
  int save_every = 10;
  bool ppm = true;
  bool field = true;
  bool csv = true;
  friend bool operator==(const OutputConfig &, const OutputConfig &) = default;
};

/// Everything needed to reproduce one run.
struct RunConfig {
  GridSpec grid{512, 512, 2.0, 2.0};
  ConstraintConfig constraint;
  double omega = 0.5;
  ForceVariant force = ForceVariant::Gradient;
  double theta = 30.0; // degrees, used by the rotated force only
  bool anisotropic = false;
  double q = 0.0; // resolved to 40*pi/lx when not given
  SolverParams solver = SolverParams::grid_scaled(2.0 / 512);
  std::uint64_t seed = 0;
  OutputConfig output;

  PotentialSpec potential() const;
  DiffusionMode diffusion() const;
  Solver make_solver() const;

  friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

/// Parses `section.key = value` lines ('#' starts a comment). Numeric values
/// accept products and quotients of numbers and the symbols h, pi, lx, ly,
/// e.g. `solver.gamma = h/20` or `variant.q = 10*pi/lx`. Unknown keys,
/// malformed values and any violated invariant raise ConfigError.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file; unreadable files raise IoError.
RunConfig load_config(const std::filesystem::path &path);

/// Text that parse_config() maps back to an equal RunConfig.
std::string serialize_config(const RunConfig &config);

/// Constraint set by CLI name (interval, disk, triangle, lens) with default
/// parameters; unknown names raise ConfigError.
ConstraintSet named_set(std::string_view name);

} // namespace pfc
