#include <doctest.h>

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pfc/spectral.hpp"

using pfc::DifferenceScheme;
using pfc::DiffusionMode;
using pfc::GridSpec;
using pfc::PhaseField;
using pfc::SpectralOperator;

namespace {

constexpr double kPi = std::numbers::pi;

PhaseField random_field(const GridSpec &g, int m, unsigned seed) {
  PhaseField u(g, m);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (double &v : u.data())
    v = d(rng);
  return u;
}

// Forward-difference smoothness seminorm sum_i ||D+ u_i||^2.
double gradient_seminorm(const PhaseField &u) {
  const auto &g = u.grid();
  double s = 0.0;
  for (int c = 0; c < u.components(); ++c) {
    const auto p = u.plane(c);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double v = p[u.index(i, j)];
        const double dx = p[u.index((i + 1) % g.nx, j)] - v;
        const double dy = p[u.index(i, (j + 1) % g.ny)] - v;
        s += (dx * dx + dy * dy) / (g.h() * g.h());
      }
  }
  return s;
}

// Unnormalized r2c spectrum of one plane.
std::vector<std::complex<double>> spectrum(const PhaseField &u, int c) {
  const auto &g = u.grid();
  const int nk = g.nx / 2 + 1;
  std::vector<double> in(u.plane(c).begin(), u.plane(c).end());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(nk) * g.ny);
  fftw_plan p = fftw_plan_dft_r2c_2d(g.ny, g.nx, in.data(),
                                     reinterpret_cast<fftw_complex *>(out.data()), FFTW_ESTIMATE);
  fftw_execute(p);
  fftw_destroy_plan(p);
  return out;
}

} // namespace

TEST_CASE("isotropic multipliers") {
  const GridSpec g{8, 8, 2 * kPi, 2 * kPi};
  const auto op = SpectralOperator::build(g, 1.0, DiffusionMode::isotropic(),
                                          DifferenceScheme::Spectral);
  CHECK(op.scalar_multiplier(0, 0) == 1.0);
  CHECK(op.kx(1) == doctest::Approx(1.0));
  CHECK(op.scalar_multiplier(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(op.scalar_multiplier(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(op.ky(7) == doctest::Approx(-1.0));

  for (auto scheme : {DifferenceScheme::Spectral, DifferenceScheme::ForwardDifference}) {
    const auto o = SpectralOperator::build({16, 8, 2.0, 1.0}, 0.3, DiffusionMode::isotropic(), scheme);
    for (int iy = 0; iy < o.spectrum_ny(); ++iy)
      for (int ix = 0; ix < o.spectrum_nx(); ++ix) {
        CHECK(o.scalar_multiplier(ix, iy) > 0.0);
        CHECK(o.scalar_multiplier(ix, iy) <= 1.0);
      }
  }
}

TEST_CASE("forward-difference symbol") {
  const GridSpec g{8, 8, 2 * kPi, 2 * kPi};
  const auto op = SpectralOperator::build(g, 1.0, DiffusionMode::isotropic());
  const double h = g.h();
  const double lam = 4.0 / (h * h) * std::pow(std::sin(0.5 * h), 2);
  CHECK(op.scalar_multiplier(1, 0) == doctest::Approx(1.0 / (1.0 + lam)).epsilon(1e-14));
}

TEST_CASE("anisotropic operator eigenvalues") {
  const GridSpec g{8, 8, 2 * kPi, 2 * kPi};
  const auto op = SpectralOperator::build(g, 1.0, DiffusionMode::stripes(1.0),
                                          DifferenceScheme::Spectral);
  // M(k) = [[a, -ib], [ib, a]] has eigenvalues a -+ b.
  const auto m = op.forward_matrix(1, 0);
  const double a = m[0].real(), b = m[2].imag();
  CHECK(m[0] == m[3]);
  CHECK(m[1] == -m[2]);
  CHECK(a - b == doctest::Approx(1.0));
  CHECK(a + b == doctest::Approx(5.0));
  const auto inv = op.inverse_matrix(1, 0);
  const double ia = inv[0].real(), ib = inv[1].imag();
  CHECK(std::min(ia - ib, ia + ib) == doctest::Approx(0.2));
  CHECK(std::max(ia - ib, ia + ib) == doctest::Approx(1.0));

  // Lower bound 1 everywhere, for both schemes and several q.
  for (auto scheme : {DifferenceScheme::Spectral, DifferenceScheme::ForwardDifference})
    for (double q : {0.5, 3.0, 20.0}) {
      const auto o = SpectralOperator::build({32, 16, 2.0, 1.0}, 0.01, DiffusionMode::stripes(q), scheme);
      for (int iy = 0; iy < o.spectrum_ny(); ++iy)
        for (int ix = 0; ix < o.spectrum_nx(); ++ix) {
          const auto f = o.forward_matrix(ix, iy);
          CHECK(f[0].real() - std::abs(f[2].imag()) >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("round trip of forward and inverse multipliers") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> d;
  for (bool aniso : {false, true}) {
    const auto op = SpectralOperator::build({16, 16, 2.0, 2.0}, 0.7,
                                            aniso ? DiffusionMode::stripes(5.0) : DiffusionMode::isotropic());
    for (int iy = 0; iy < op.spectrum_ny(); ++iy)
      for (int ix = 0; ix < op.spectrum_nx(); ++ix) {
        const std::complex<double> v0{d(rng), d(rng)}, v1{d(rng), d(rng)};
        const auto f = op.forward_matrix(ix, iy), inv = op.inverse_matrix(ix, iy);
        const auto w0 = f[0] * v0 + f[1] * v1, w1 = f[2] * v0 + f[3] * v1;
        const auto r0 = inv[0] * w0 + inv[1] * w1, r1 = inv[2] * w0 + inv[3] * w1;
        CHECK(std::abs(r0 - v0) < 1e-10);
        CHECK(std::abs(r1 - v1) < 1e-10);
      }
  }
}

TEST_CASE("solve multiplies every Fourier coefficient by its tabulated factor") {
  const GridSpec g{16, 8, 2.0, 1.0};
  const PhaseField f = random_field(g, 2, 1);
  for (bool aniso : {false, true}) {
    const auto op = SpectralOperator::build(g, 0.05, aniso ? DiffusionMode::stripes(7.0)
                                                           : DiffusionMode::isotropic());
    const PhaseField y = op.solve(f);
    const auto f0 = spectrum(f, 0), f1 = spectrum(f, 1), y0 = spectrum(y, 0), y1 = spectrum(y, 1);
    for (int iy = 0; iy < op.spectrum_ny(); ++iy)
      for (int ix = 0; ix < op.spectrum_nx(); ++ix) {
        const std::size_t k = static_cast<std::size_t>(iy) * op.spectrum_nx() + ix;
        const auto inv = op.inverse_matrix(ix, iy);
        CHECK(std::abs(y0[k] - (inv[0] * f0[k] + inv[1] * f1[k])) < 1e-12);
        CHECK(std::abs(y1[k] - (inv[2] * f0[k] + inv[3] * f1[k])) < 1e-12);
      }
  }
}

TEST_CASE("constant fields") {
  const GridSpec g{8, 16, 1.0, 2.0};
  PhaseField u(g, 2);
  u.fill({0.3, -0.7});

  // Isotropic: k = 0 multiplier is 1, constants are fixed points.
  const PhaseField y = SpectralOperator::build(g, 2.0, DiffusionMode::isotropic()).solve(u);
  for (std::size_t k = 0; k < g.cells(); ++k) {
    CHECK(y.at(k).x == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(y.at(k).y == doctest::Approx(-0.7).epsilon(1e-14));
  }

  // Anisotropic: the q^2 term penalizes constants, scaling them by
  // 1 / (1 + eps_gamma q^2).
  const double eg = 2.0, q = 3.0, s = 1.0 / (1.0 + eg * q * q);
  const PhaseField ya = SpectralOperator::build(g, eg, DiffusionMode::stripes(q)).solve(u);
  for (std::size_t k = 0; k < g.cells(); ++k) {
    CHECK(ya.at(k).x == doctest::Approx(0.3 * s).epsilon(1e-13));
    CHECK(ya.at(k).y == doctest::Approx(-0.7 * s).epsilon(1e-13));
  }
}

TEST_CASE("single cosine mode is halved, checked by finite differences") {
  // eps_gamma |k|^2 = 1 for k = 2 pi / lx. Applying id - eps_gamma*Lap with
  // second-order differences to the output must give back the input up to
  // O(h^2).
  double previous_error = 0.0;
  for (int n : {32, 64, 128}) {
    const GridSpec g{n, n, 1.0, 1.0};
    const double k = 2 * kPi / g.lx, eg = 1.0 / (k * k);
    const auto op = SpectralOperator::build(g, eg, DiffusionMode::isotropic(), DifferenceScheme::Spectral);
    PhaseField u(g, 1);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        u.set(i, j, {std::cos(k * g.cell_x(i)), 0.0});
    const PhaseField y = op.solve(u);
    double err_half = 0.0, err_fd = 0.0;
    const double h = g.h();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        err_half = std::max(err_half, std::abs(y.at(i, j).x - 0.5 * u.at(i, j).x));
        const double lap = (y.at((i + 1) % n, j).x + y.at((i + n - 1) % n, j).x +
                            y.at(i, (j + 1) % n).x + y.at(i, (j + n - 1) % n).x - 4 * y.at(i, j).x) /
                           (h * h);
        err_fd = std::max(err_fd, std::abs(y.at(i, j).x - eg * lap - u.at(i, j).x));
      }
    CHECK(err_half < 1e-12);
    if (previous_error > 0.0)
      CHECK(err_fd < 0.3 * previous_error); // second order: ratio ~ 1/4
    previous_error = err_fd;
  }
}

TEST_CASE("linearity and prox dissipation") {
  const GridSpec g{16, 16, 2.0, 2.0};
  const auto op = SpectralOperator::build(g, 0.01, DiffusionMode::isotropic());
  const auto aniso = SpectralOperator::build(g, 0.01, DiffusionMode::stripes(4.0));
  for (unsigned s = 0; s < 10; ++s) {
    const PhaseField f = random_field(g, 2, s), h = random_field(g, 2, 100 + s);
    PhaseField comb(g, 2);
    for (std::size_t k = 0; k < comb.data().size(); ++k)
      comb.data()[k] = 0.7 * f.data()[k] - 1.3 * h.data()[k];
    for (const auto *o : {&op, &aniso}) {
      const PhaseField a = o->solve(f), b = o->solve(h), c = o->solve(comb);
      for (std::size_t k = 0; k < c.data().size(); ++k)
        CHECK(std::abs(c.data()[k] - (0.7 * a.data()[k] - 1.3 * b.data()[k])) < 1e-12);
    }
    CHECK(gradient_seminorm(op.solve(f)) <= gradient_seminorm(f) + 1e-9);
  }
}

TEST_CASE("errors") {
  const GridSpec g{8, 8, 1.0, 1.0};
  CHECK_THROWS_AS(SpectralOperator::build(g, 0.0, DiffusionMode::isotropic()), std::invalid_argument);
  CHECK_THROWS_AS(SpectralOperator::build(g, -1.0, DiffusionMode::isotropic()), std::invalid_argument);
  const auto op = SpectralOperator::build(g, 1.0, DiffusionMode::isotropic());
  CHECK_THROWS_AS(op.solve(PhaseField({16, 16, 2.0, 2.0}, 1)), std::invalid_argument);
  const auto aniso = SpectralOperator::build(g, 1.0, DiffusionMode::stripes(2.0));
  CHECK_THROWS_AS(aniso.solve(PhaseField(g, 1)), std::invalid_argument);
}
