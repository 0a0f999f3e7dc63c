#pragma once

#include <span>
#include <vector>

#include "pfc/convex.hpp"
#include "pfc/grid.hpp"
#include "pfc/potential.hpp"

namespace pfc {

struct Vortex {
  Vec2 position; // physical coordinates
  int polarity = 0;
};

/// Point defects of a two-component field. Defects of unit charge are
/// vortices; every other low-amplitude cluster (net charge 0 or |q| > 1) is
/// reported as a composite.
struct VortexList {
  std::vector<Vortex> vortices;
  std::vector<Vortex> composites;

  int total_polarity() const;
  std::size_t count() const { return vortices.size(); } // unit vortices only
};

/// Low-amplitude cells (|u| < amp_threshold) are grouped into 4-connected
/// clusters with periodic wrap. Each cluster's polarity is the winding number
/// of arg(u) around the loop enclosing it, evaluated by summing the integer
/// plaquette charges inside the loop; every angle increment is wrapped to
/// (-pi, pi] and shared by the two plaquettes touching its edge, so the
/// charges of all entries sum to exactly zero on the torus. Charged
/// plaquettes without a low-amplitude corner become their own entries;
/// clusters of zero net charge are not defects and are dropped.
VortexList detect_vortices(const PhaseField &u, double amp_threshold);

struct InterfaceProfile {
  std::vector<double> positions; // arc-length coordinate of each sample
  std::vector<Vec2> values;
};

/// Values of row j (or column i) of a field.
std::vector<Vec2> scan_row(const PhaseField &u, int j);
std::vector<Vec2> scan_column(const PhaseField &u, int i);

/// Compact interface width h * (number of samples farther than tol_phase from
/// every phase point). Returns 0 when no such sample exists; otherwise the
/// samples must cross exactly one interface (one change of phase label),
/// else std::invalid_argument naming the count is thrown.
double interface_width(std::span<const Vec2> line, const ConstraintSet &set, double tol_phase,
                       double h);

/// Path quadrature of sqrt(2 W) along the sampled values (midpoint rule on
/// each chord).
double interfacial_energy_1d(const InterfaceProfile &profile, const PotentialSpec &potential);

/// Fraction of cells within tol_phase of each phase point, followed by the
/// residual interface fraction.
std::vector<double> phase_fractions(const PhaseField &u, const ConstraintSet &set,
                                    double tol_phase);

/// Interface cells of a lens field split by the sign of u_y ("red" above the
/// tip axis, "blue" below), as fractions of all cells.
struct LensSplit {
  double red = 0.0;
  double blue = 0.0;
};
LensSplit lens_interface_split(const PhaseField &u, const ConstraintSet &set, double tol_phase);

/// Row-averaged power spectrum |F_x(k)|^2 of one component, for
/// k_x = 2 pi n / lx, n = 0 .. nx/2.
std::vector<double> row_power_spectrum_x(const PhaseField &u, int component);

/// k_x of the strongest non-zero bin of row_power_spectrum_x.
double dominant_wavenumber_x(const PhaseField &u, int component);

} // namespace pfc
