#include "pfc/image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pfc/field_io.hpp"

namespace pfc {

namespace {

constexpr Rgb kCyan{0.0, 1.0, 1.0};
constexpr Rgb kYellow{1.0, 1.0, 0.0};
constexpr Rgb kMagenta{1.0, 0.0, 1.0};
constexpr Rgb kRed{1.0, 0.0, 0.0};
constexpr Rgb kBlue{0.0, 0.0, 1.0};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

Rgb mix(const Rgb &a, const Rgb &b, double t) {
  return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])};
}

Rgb hsv(double hue, double value) {
  const double h6 = 6.0 * (hue - std::floor(hue));
  const int sector = static_cast<int>(h6) % 6;
  const double f = h6 - std::floor(h6);
  const double v = value, p = 0.0, q = value * (1.0 - f), t = value * f;
  switch (sector) {
  case 0: return {v, t, p};
  case 1: return {q, v, p};
  case 2: return {p, v, t};
  case 3: return {p, q, v};
  case 4: return {t, p, v};
  default: return {v, p, q};
  }
}

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::lround(clamp01(v) * 255.0)); }

} // namespace

Rgb cell_color(const ConstraintSet &set, Vec2 u) {
  switch (set.kind()) {
  case SetKind::Interval: {
    const double g = clamp01((u.x - set.lo()) / (set.hi() - set.lo()));
    return {g, g, g};
  }
  case SetKind::Disk: {
    double hue = std::atan2(u.y, u.x) / (2.0 * std::numbers::pi);
    if (hue < 0.0)
      hue += 1.0;
    return hsv(hue, clamp01(norm(u) / set.radius()));
  }
  case SetKind::Triangle: {
    const auto &[a, b, c] = set.vertices();
    const double area = cross(b - a, c - a);
    std::array<double, 3> w{cross(b - u, c - u) / area, cross(c - u, a - u) / area,
                            cross(a - u, b - u) / area};
    double sum = 0.0;
    for (double &x : w)
      sum += (x = std::max(x, 0.0));
    Rgb out{0.0, 0.0, 0.0};
    if (sum <= 0.0)
      return out;
    for (int ch = 0; ch < 3; ++ch)
      out[ch] = (w[0] * kCyan[ch] + w[1] * kYellow[ch] + w[2] * kMagenta[ch]) / sum;
    return out;
  }
  case SetKind::Lens: {
    const Rgb base = mix({0.0, 0.0, 0.0}, kYellow, clamp01(0.5 * (u.x + 1.0)));
    const double height = set.radius() - set.half_separation();
    const double tint = clamp01(std::abs(u.y) / height);
    return mix(base, u.y >= 0.0 ? kRed : kBlue, tint);
  }
  }
  return {0.0, 0.0, 0.0};
}

std::vector<std::uint8_t> render_ppm(const PhaseField &u, const ConstraintSet &set) {
  const GridSpec &g = u.grid();
  const std::string header = "P6\n" + std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + 3 * g.cells());
  for (int j = g.ny - 1; j >= 0; --j)
    for (int i = 0; i < g.nx; ++i) {
      const Rgb c = cell_color(set, u.at(i, j));
      for (double ch : c)
        out.push_back(to_byte(ch));
    }
  return out;
}

void write_image(const std::filesystem::path &path, const PhaseField &u,
                 const ConstraintSet &set) {
  write_bytes(path, render_ppm(u, set));
}

} // namespace pfc
