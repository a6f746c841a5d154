#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "core/errors.hpp"
#include "core/free_laplacian.hpp"

using namespace specsmooth;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("band parameters") {
  const auto b1 = band_params(1);
  CHECK(b1.half_width == doctest::Approx(0.2071067811865476).epsilon(1e-14));
  CHECK(b1.centre == doctest::Approx(1.2071067811865476).epsilon(1e-14));
  for (std::int64_t n : {1, 7, 100, 10000, 1000000}) {
    const auto b = band_params(n);
    CHECK(b.half_width * b.centre == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(b.centre - b.half_width == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-14));
  }
  CHECK(band_params(10000).half_width == doctest::Approx(0.0025).epsilon(1e-4));
  CHECK_THROWS_AS(band_params(0), InvalidArgument);
  CHECK_THROWS_AS(band_params(-3), InvalidArgument);
}

TEST_CASE("kernel at the origin is the band width over pi") {
  // F_1(0) = (sqrt 2 - 1) / pi = 0.131848272...
  CHECK(kernel_F(1, 0.0) == doctest::Approx(0.13184827).epsilon(1e-8));
  for (std::int64_t n : {1, 3, 50, 10000}) {
    const double expected = (std::sqrt(n + 1.0) - std::sqrt(static_cast<double>(n))) / kPi;
    CHECK(kernel_F(n, 0.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(kernel_F(n, 0.0, KernelMethod::quadrature) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(kernel_F(n, 1e-9) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("kernel is even and vanishes at pi / (2 D)") {
  for (double u : {0.3, 1.7, 12.5}) CHECK(kernel_F(5, u) == kernel_F(5, -u));
  const double zero = kPi / (2.0 * band_params(1).centre);
  CHECK(zero == doctest::Approx(1.3012903).epsilon(1e-7));
  CHECK(std::abs(kernel_F(1, zero)) <= 1e-15);
  CHECK(kernel_F(1, zero - 1e-3) > 0.0);
  CHECK(kernel_F(1, zero + 1e-3) < 0.0);
  CHECK(kernel_F(1, zero - 1e-3, KernelMethod::quadrature) > 0.0);
  CHECK(kernel_F(1, zero + 1e-3, KernelMethod::quadrature) < 0.0);
}

TEST_CASE("closed form agrees with quadrature") {
  for (std::int64_t n : {1, 5, 50}) {
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double u = -20.0 + 0.1 * i;
      worst = std::max(worst, std::abs(kernel_F(n, u) - kernel_F(n, u, KernelMethod::quadrature)));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("kernel Plancherel mass") {
  // int F_N^2 du = F_N(0) because the band projector is idempotent.
  for (std::int64_t n : {1, 5, 50}) {
    const double du = 0.01;
    double s = 0.0;
    for (int i = -400000; i <= 400000; ++i) {
      const double f = kernel_F(n, du * i);
      s += f * f;
    }
    CHECK(s * du == doctest::Approx(kernel_F(n, 0.0)).epsilon(1e-2));
  }
}

TEST_CASE("TT* kernel examples and symmetry") {
  const double psi = 0.8;
  for (std::int64_t n : {1, 10, 100}) {
    const auto b = band_params(n);
    const double diag = ttstar_kernel(n, 0.4, 0.4, psi, psi);
    CHECK(diag == doctest::Approx(std::sqrt(static_cast<double>(n)) * (2.0 / kPi) * b.half_width * psi * psi)
                      .epsilon(1e-13));
    CHECK(diag <= psi * psi / kPi);
    CHECK(ttstar_kernel(n, 0.4, -1.1, psi, 0.3) == doctest::Approx(ttstar_kernel(n, -1.1, 0.4, 0.3, psi)).epsilon(1e-15));
  }
  CHECK(ttstar_kernel(3, 0.0, 1.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("TT* kernel matches a direct composition of band projections") {
  // For g in the band, (T T^* g)(x) = N^{1/2} psi(x) int F_N(x-z) psi(z) g(z) dz.
  // Compare the kernel form against projecting psi g in Fourier space.
  const std::int64_t n = 4;
  const auto b = band_params(n);
  const double lo = std::sqrt(static_cast<double>(n));
  const double hi = std::sqrt(static_cast<double>(n + 1));
  const double dz = 0.02;
  const int half = 1500;

  auto psi = [](double z) { return std::exp(-z * z / 2.0); };
  const std::vector<double (*)(double)> tests{
      [](double z) { return 1.0; },
      [](double z) { return z; },
      [](double z) { return std::cos(2.0 * z); },
      [](double z) { return std::exp(-z * z); },
      [](double z) { return 1.0 / (1.0 + z * z); },
  };

  for (auto g : tests) {
    // phi = psi * g sampled on the quadrature grid
    std::vector<double> zs, phi;
    for (int i = -half; i <= half; ++i) {
      zs.push_back(dz * i);
      phi.push_back(psi(dz * i) * g(dz * i));
    }
    // band-limited Fourier transform of phi on [lo, hi] and [-hi, -lo]
    const int xi_steps = 400;
    const double dxi = (hi - lo) / xi_steps;
    for (double x : {-1.0, 0.0, 0.7}) {
      double kernel_side = 0.0;
      for (std::size_t i = 0; i < zs.size(); ++i) kernel_side += kernel_F(n, x - zs[i]) * phi[i];
      kernel_side *= dz;

      double fourier_side = 0.0;
      for (int k = 0; k <= xi_steps; ++k) {
        const double xi = lo + dxi * k;
        const double w = (k == 0 || k == xi_steps) ? 0.5 : 1.0;
        double re = 0.0;
        for (std::size_t i = 0; i < zs.size(); ++i) re += std::cos(xi * (x - zs[i])) * phi[i];
        fourier_side += w * 2.0 * re * dz;  // +xi and -xi contributions
      }
      fourier_side *= dxi / (2.0 * kPi);
      CHECK(kernel_side == doctest::Approx(fourier_side).epsilon(1e-6).scale(1e-6));
    }
    (void)b;
  }
}

TEST_CASE("uniform bound check") {
  const Grid g = build_grid(3.0, 299);
  const auto psi = sample_weight(WeightSpec::indicator(-1.0, 1.0), g);
  const std::vector<std::int64_t> bands{1, 10, 100, 10000};
  const auto r = uniform_bound_check(bands, g, psi);
  REQUIRE(r.per_band_sup.size() == 4);
  for (std::size_t k = 0; k < bands.size(); ++k) {
    const auto b = band_params(bands[k]);
    CHECK(r.per_band_sup[k] == doctest::Approx(std::sqrt(static_cast<double>(bands[k])) * (2.0 / kPi) * b.half_width)
                                   .epsilon(1e-12));
    CHECK(r.per_band_sup[k] <= 1.0 / kPi);
  }
  CHECK(r.sup <= 1.0 / kPi);
  CHECK(r.support_points > 0);
  CHECK(r.variation == doctest::Approx((r.per_band_sup[3] - r.per_band_sup[0]) / r.per_band_sup[3]).epsilon(1e-12));

  const std::vector<double> zero(g.size(), 0.0);
  CHECK_THROWS_AS(uniform_bound_check(bands, g, zero), InvalidArgument);
}

TEST_CASE("sqrt(N) C_N increases towards 1/2") {
  double previous = 0.0;
  for (std::int64_t n : {1, 2, 5, 10, 100, 10000, 1000000}) {
    const double v = std::sqrt(static_cast<double>(n)) * band_params(n).half_width;
    CHECK(v > previous);
    CHECK(v < 0.5);
    previous = v;
  }
}

TEST_CASE("theta exponent branches") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(theta_exponent(6.0, 2.0) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  CHECK_THROWS_AS(theta_exponent(4.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(theta_exponent(4.0, 2.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(theta_exponent(1.5, 2.0), InvalidArgument);
  CHECK_THROWS_AS(theta_exponent(6.0, 0.0), InvalidArgument);
  CHECK(std::isfinite(theta_exponent(inf, 2.0)));
  CHECK(std::isfinite(theta_exponent(4.0, 2.0, 0.1)));
  CHECK(std::isfinite(theta_exponent(2.0, 3.0)));
}

TEST_CASE("theta exponent values and continuity") {
  const double inf = std::numeric_limits<double>::infinity();
  for (double k : {1.0, 2.0, 3.0, 4.0, 7.5}) CHECK(theta_exponent(2.0, k) == 0.0);
  CHECK(theta_exponent(inf, 4.0) == 0.0);
  for (double k : {1.0, 2.0, 3.0, 6.0}) {
    const double at_four = 1.0 / (2.0 * k);
    CHECK(std::abs(theta_exponent(4.0 - 1e-9, k) - at_four) <= 1e-6);
    CHECK(std::abs(theta_exponent(4.0 + 1e-9, k) - at_four) <= 1e-6);
    CHECK(std::abs(theta_exponent(1e9, k) - theta_exponent(inf, k)) <= 1e-6);
    CHECK(theta_exponent(4.0, k, 0.01) == doctest::Approx(at_four - 0.01).epsilon(1e-14));
  }
}
