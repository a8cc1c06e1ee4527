#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jsnl/fft.hpp"
#include "jsnl/grid.hpp"
#include "jsnl/manybody.hpp"
#include "jsnl/spectral.hpp"

using namespace jsnl;

namespace {

constexpr double pi = std::numbers::pi;

// S with dS/dx equal to the (zero-mean) input, via division by ik.
void fft_like_antiderivative(std::vector<cplx>& zero_mean, const Grid& g,
                             std::vector<double>& out) {
  fft::forward(zero_mean, zero_mean);
  const std::vector<double> k = wavenumbers(g);
  for (int j = 0; j < g.n; ++j)
    zero_mean[j] = (j == 0 || j == g.n / 2) ? cplx(0.0)
                                            : zero_mean[j] / cplx(0.0, k[j]);
  std::vector<cplx> s(g.n);
  fft::inverse(zero_mean, s);
  out.resize(g.n);
  for (int j = 0; j < g.n; ++j) out[j] = s[j].real();
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("make_grid spacing") {
    const Grid g = make_grid(10.0, 10, -5.0);
    CHECK(g.spacing == doctest::Approx(1.0).epsilon(1e-15));
    const Grid g2 = make_grid(2.0 * pi, 64, 0.0);
    CHECK(g2.spacing == doctest::Approx(pi / 32.0).epsilon(1e-15));
  }

  TEST_CASE("make_grid rejects bad shapes") {
    CHECK_THROWS_AS(make_grid(1.0, 7, 0.0), Error);
    CHECK_THROWS_AS(make_grid(1.0, 4, 0.0), Error);
    CHECK_THROWS_AS(make_grid(-1.0, 16, 0.0), Error);
    try {
      make_grid(1.0, 7, 0.0);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::odd_point_count);
    }
  }

  TEST_CASE("integrate constants and periodic sines") {
    const Grid g = make_grid(4.0, 64, 0.0);
    std::vector<double> c(64, 2.5);
    CHECK(integrate(c, g) == doctest::Approx(10.0).epsilon(1e-14));
    std::vector<double> s(64);
    for (int j = 0; j < 64; ++j) s[j] = std::sin(2.0 * pi * g.x(j) / g.length);
    CHECK(std::abs(integrate(s, g)) < 1e-14);
  }

  TEST_CASE("integrate normalized gaussian") {
    const Grid g = make_grid(20.0, 512, -10.0);
    const double sigma = 0.8;
    std::vector<double> rho(512);
    for (int j = 0; j < 512; ++j) {
      const double x = g.x(j);
      rho[j] = std::exp(-x * x / (2.0 * sigma * sigma)) /
               (sigma * std::sqrt(2.0 * pi));
    }
    CHECK(integrate(rho, g) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("integrate is linear and positive") {
    const Grid g = make_grid(3.0, 32, 0.0);
    std::vector<double> a(32), b(32);
    for (int j = 0; j < 32; ++j) {
      a[j] = std::cos(2.0 * pi * g.x(j) / g.length) + 2.0;
      b[j] = 0.5 * j;
    }
    std::vector<double> combo(32);
    for (int j = 0; j < 32; ++j) combo[j] = 2.0 * a[j] + 3.0 * b[j];
    CHECK(integrate(combo, g) ==
          doctest::Approx(2.0 * integrate(a, g) + 3.0 * integrate(b, g)).epsilon(1e-13));
    CHECK(integrate(a, g) > 0.0);
  }

  TEST_CASE("madelung maps: zero and constant phase") {
    const Grid g = make_grid(16.0, 128, -8.0);
    DensityField rho = density_of(gaussian_wave(g, 0.0, 1.0));
    std::vector<double> zero(128, 0.0);
    const WaveField psi = wave_from_madelung(rho, zero, 1.0);
    for (int j = 0; j < g.n; ++j) {
      CHECK(psi.values[j].imag() == 0.0);
      CHECK(psi.values[j].real() == doctest::Approx(std::sqrt(rho.values[j])));
    }

    std::vector<double> constant(128, 0.7);
    const WaveField psi2 = wave_from_madelung(rho, constant, 2.0);
    const cplx phase = std::polar(1.0, 0.7 / 2.0);
    for (int j = 0; j < g.n; ++j)
      CHECK(std::abs(psi2.values[j] - phase * psi.values[j]) < 1e-14);
  }

  TEST_CASE("madelung maps: plane wave momentum") {
    const Grid g = make_grid(8.0, 64, 0.0);
    const double hbar = 0.7;
    const double k = 2.0 * pi * 3.0 / g.length;
    WaveField psi{g, std::vector<cplx>(64)};
    for (int j = 0; j < 64; ++j) psi.values[j] = std::polar(1.0, k * g.x(j));
    normalize(psi);
    const MadelungPair mp = madelung_from_wave(psi, hbar);
    for (int j = 0; j < 64; ++j) {
      CHECK(mp.rho.values[j] == doctest::Approx(1.0 / g.length).epsilon(1e-12));
      CHECK(mp.grad_s[j] == doctest::Approx(hbar * k).epsilon(1e-10));
    }
  }

  TEST_CASE("madelung round trip on a smooth state") {
    // exactly periodic, strictly positive state: the class the spectral
    // round trip is stated for
    const Grid g = make_grid(12.0, 256, -6.0);
    const double hbar = 0.8;
    DensityField rho{g, std::vector<double>(256)};
    std::vector<double> s(256);
    for (int j = 0; j < g.n; ++j) {
      const double x = g.x(j);
      const double w = 2.0 * pi / g.length;
      rho.values[j] = 1.0 + 0.6 * std::cos(w * x) + 0.25 * std::sin(3.0 * w * x);
      s[j] = 0.4 * std::sin(w * x) + 0.1 * std::cos(2.0 * w * x);
    }
    normalize(rho);
    const WaveField psi = wave_from_madelung(rho, s, hbar);
    const MadelungPair mp = madelung_from_wave(psi, hbar);

    // rho reproduced exactly
    const DensityField direct = density_of(psi);
    for (int j = 0; j < g.n; ++j)
      CHECK(mp.rho.values[j] == doctest::Approx(direct.values[j]).epsilon(1e-14));

    // grad_s matches the spectral derivative of the phase
    const std::vector<double> ds = spectral_derivative(s, g, 1);
    for (int j = 0; j < g.n; ++j)
      CHECK(mp.grad_s[j] == doctest::Approx(ds[j]).epsilon(1e-10));

    // rebuild psi from (rho, grad_s) via the spectral antiderivative and
    // compare up to one global phase
    std::vector<double> s_back(g.n);
    {
      double mean = 0.0;
      for (double v : mp.grad_s) mean += v;
      mean /= g.n;
      std::vector<cplx> hat(g.n);
      for (int j = 0; j < g.n; ++j) hat[j] = mp.grad_s[j] - mean;
      fft_like_antiderivative(hat, g, s_back);
      for (int j = 0; j < g.n; ++j) s_back[j] += mean * g.x(j);
    }
    const WaveField back = wave_from_madelung(mp.rho, s_back, hbar);
    const cplx align = psi.values[g.n / 2] / back.values[g.n / 2];
    for (int j = 0; j < g.n; ++j)
      CHECK(std::abs(align * back.values[j] - psi.values[j]) /
                std::abs(psi.values[j]) <
            1e-8);
  }

  TEST_CASE("norm and normalization") {
    const Grid g = make_grid(10.0, 64, 0.0);
    WaveField psi{g, std::vector<cplx>(64, cplx(0.3, -0.4))};
    normalize(psi);
    CHECK(norm_squared(psi) == doctest::Approx(1.0).epsilon(1e-14));
  }
}
