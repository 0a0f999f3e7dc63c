#include "pfc/diagnostics.hpp"

#include <fftw3.h>

#include "fftw_support.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pfc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  // (-pi, pi]
  a = std::remainder(a, kTwoPi);
  if (a <= -std::numbers::pi)
    a += kTwoPi;
  return a;
}

// Index of the first phase point within tol, or -1.
int phase_label(Vec2 v, const std::vector<Vec2> &phases, bool scalar, double tol) {
  for (std::size_t p = 0; p < phases.size(); ++p) {
    const double d = scalar ? std::abs(v.x - phases[p].x) : norm(v - phases[p]);
    if (d <= tol)
      return static_cast<int>(p);
  }
  return -1;
}

} // namespace

int VortexList::total_polarity() const {
  int sum = 0;
  for (const auto &v : vortices)
    sum += v.polarity;
  for (const auto &v : composites)
    sum += v.polarity;
  return sum;
}

VortexList detect_vortices(const PhaseField &u, double amp_threshold) {
  if (u.components() != 2)
    throw std::invalid_argument("detect_vortices requires a two-component field");
  const GridSpec &g = u.grid();
  const int nx = g.nx, ny = g.ny;
  const std::size_t n = g.cells();

  std::vector<double> angle(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 v = u.at(k);
    angle[k] = std::atan2(v.y, v.x);
  }
  // Wrapped increments along +x and +y, computed once per edge.
  std::vector<double> ex(n), ey(n);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = u.index(i, j);
      ex[k] = wrap_angle(angle[u.index((i + 1) % nx, j)] - angle[k]);
      ey[k] = wrap_angle(angle[u.index(i, (j + 1) % ny)] - angle[k]);
    }

  // 4-connected clusters of low-amplitude cells.
  std::vector<int> label(n, -1);
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (label[seed] >= 0 || !(norm(u.at(seed)) < amp_threshold))
      continue;
    const int id = static_cast<int>(clusters.size());
    clusters.emplace_back();
    label[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      clusters[id].push_back(k);
      const int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
      const std::size_t nb[4] = {u.index((i + 1) % nx, j), u.index((i + nx - 1) % nx, j),
                                 u.index(i, (j + 1) % ny), u.index(i, (j + ny - 1) % ny)};
      for (std::size_t m : nb)
        if (label[m] < 0 && norm(u.at(m)) < amp_threshold) {
          label[m] = id;
          stack.push_back(m);
        }
    }
  }

  std::vector<int> charge(clusters.size(), 0);
  VortexList out;
  auto classify = [&out](Vortex v) {
    (std::abs(v.polarity) == 1 ? out.vortices : out.composites).push_back(v);
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int ip = (i + 1) % nx, jp = (j + 1) % ny;
      const double circulation = ex[u.index(i, j)] + ey[u.index(ip, j)] - ex[u.index(i, jp)] -
                                 ey[u.index(i, j)];
      const int q = static_cast<int>(std::lround(circulation / kTwoPi));
      if (q == 0)
        continue;
      int owner = -1;
      for (std::size_t corner : {u.index(i, j), u.index(ip, j), u.index(ip, jp), u.index(i, jp)})
        if (label[corner] >= 0) {
          owner = label[corner];
          break;
        }
      if (owner >= 0)
        charge[owner] += q;
      else
        classify({{g.cell_x(i) + 0.5 * g.h(), g.cell_y(j) + 0.5 * g.h()}, q});
    }
  }

  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (charge[c] == 0)
      continue;
    // Centroid with offsets unwrapped relative to the first cell.
    const std::size_t k0 = clusters[c].front();
    const int i0 = static_cast<int>(k0 % nx), j0 = static_cast<int>(k0 / nx);
    double sx = 0.0, sy = 0.0;
    for (std::size_t k : clusters[c]) {
      int di = static_cast<int>(k % nx) - i0, dj = static_cast<int>(k / nx) - j0;
      if (di > nx / 2) di -= nx;
      if (di < -nx / 2) di += nx;
      if (dj > ny / 2) dj -= ny;
      if (dj < -ny / 2) dj += ny;
      sx += di;
      sy += dj;
    }
    const double count = static_cast<double>(clusters[c].size());
    const double ci = std::fmod(i0 + sx / count + nx, static_cast<double>(nx));
    const double cj = std::fmod(j0 + sy / count + ny, static_cast<double>(ny));
    classify({{-0.5 * g.lx + (ci + 0.5) * g.h(), -0.5 * g.ly + (cj + 0.5) * g.h()}, charge[c]});
  }
  return out;
}

std::vector<Vec2> scan_row(const PhaseField &u, int j) {
  std::vector<Vec2> line(u.grid().nx);
  for (int i = 0; i < u.grid().nx; ++i)
    line[i] = u.at(i, j);
  return line;
}

std::vector<Vec2> scan_column(const PhaseField &u, int i) {
  std::vector<Vec2> line(u.grid().ny);
  for (int j = 0; j < u.grid().ny; ++j)
    line[j] = u.at(i, j);
  return line;
}

double interface_width(std::span<const Vec2> line, const ConstraintSet &set, double tol_phase,
                       double h) {
  const auto phases = set.phase_points();
  if (phases.empty())
    throw std::invalid_argument("interface_width requires isolated phase points");
  const bool scalar = set.dimension() == 1;
  int interior = 0, crossings = 0, last = -1;
  for (Vec2 v : line) {
    const int l = phase_label(v, phases, scalar, tol_phase);
    if (l < 0) {
      ++interior;
      continue;
    }
    if (last >= 0 && l != last)
      ++crossings;
    last = l;
  }
  if (interior == 0)
    return 0.0;
  if (crossings != 1)
    throw std::invalid_argument("interface_width: scan line crosses " + std::to_string(crossings) +
                                " interfaces, expected exactly 1");
  return h * interior;
}

double interfacial_energy_1d(const InterfaceProfile &profile, const PotentialSpec &potential) {
  const auto &v = profile.values;
  double e = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double w = eval_W(potential, 0.5 * (v[k - 1] + v[k]));
    e += norm(v[k] - v[k - 1]) * std::sqrt(2.0 * std::max(w, 0.0));
  }
  return e;
}

std::vector<double> phase_fractions(const PhaseField &u, const ConstraintSet &set,
                                    double tol_phase) {
  const auto phases = set.phase_points();
  const bool scalar = set.dimension() == 1;
  std::vector<std::size_t> counts(phases.size(), 0);
  const std::size_t n = u.grid().cells();
  for (std::size_t k = 0; k < n; ++k) {
    const int l = phase_label(u.at(k), phases, scalar, tol_phase);
    if (l >= 0)
      ++counts[l];
  }
  std::vector<double> out;
  std::size_t assigned = 0;
  for (std::size_t c : counts) {
    out.push_back(static_cast<double>(c) / n);
    assigned += c;
  }
  out.push_back(static_cast<double>(n - assigned) / n);
  return out;
}

LensSplit lens_interface_split(const PhaseField &u, const ConstraintSet &set, double tol_phase) {
  if (set.kind() != SetKind::Lens || u.components() != 2)
    throw std::invalid_argument("lens_interface_split requires a lens-constrained field");
  const auto phases = set.phase_points();
  const std::size_t n = u.grid().cells();
  std::size_t red = 0, blue = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 v = u.at(k);
    if (phase_label(v, phases, false, tol_phase) >= 0)
      continue;
    if (v.y > 0.0)
      ++red;
    else if (v.y < 0.0)
      ++blue;
  }
  return {static_cast<double>(red) / n, static_cast<double>(blue) / n};
}

std::vector<double> row_power_spectrum_x(const PhaseField &u, int component) {
  if (component < 0 || component >= u.components())
    throw std::invalid_argument("row_power_spectrum_x: component out of range");
  const GridSpec &g = u.grid();
  const int nk = g.nx / 2 + 1;

  std::unique_ptr<double[], decltype(&fftw_free)> in(fftw_alloc_real(g.nx), &fftw_free);
  std::unique_ptr<fftw_complex[], decltype(&fftw_free)> out(fftw_alloc_complex(nk), &fftw_free);
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(g.nx, in.get(), out.get(), FFTW_ESTIMATE);
  }

  std::vector<double> power(nk, 0.0);
  const auto values = u.plane(component);
  for (int j = 0; j < g.ny; ++j) {
    std::copy_n(values.begin() + u.index(0, j), g.nx, in.get());
    fftw_execute(plan);
    for (int k = 0; k < nk; ++k)
      power[k] += out[k][0] * out[k][0] + out[k][1] * out[k][1];
  }
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  for (double &p : power)
    p /= g.ny;
  return power;
}

double dominant_wavenumber_x(const PhaseField &u, int component) {
  const auto power = row_power_spectrum_x(u, component);
  const auto best = std::max_element(power.begin() + 1, power.end());
  return kTwoPi * static_cast<double>(best - power.begin()) / u.grid().lx;
}

} // namespace pfc
