#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/operator_builder.hpp"

using namespace specsmooth;

TEST_CASE("build_grid spacing and points") {
  const Grid g = build_grid(1.0, 3);
  CHECK(g.spacing() == 0.5);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == -0.5);
  CHECK(g[1] == 0.0);
  CHECK(g[2] == 0.5);

  CHECK(build_grid(12.0, 2399).spacing() == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("build_grid rejects bad input") {
  CHECK_THROWS_AS(build_grid(0.0, 10), InvalidArgument);
  CHECK_THROWS_AS(build_grid(-1.0, 10), InvalidArgument);
  CHECK_THROWS_AS(build_grid(1.0, 2), InvalidArgument);
}

TEST_CASE("grid invariants: increasing, symmetric for odd sizes") {
  for (std::size_t n : {3u, 4u, 101u, 2399u}) {
    const Grid g = build_grid(7.3, n);
    CHECK(g.spacing() > 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    if (n % 2 == 1) {
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == -g[g.size() - 1 - i]);
    }
    CHECK(g[0] == doctest::Approx(-7.3 + g.spacing()));
  }
}

TEST_CASE("sample_potential examples") {
  const Grid g = build_grid(4.0, 7);  // points -3..3, h = 1
  const auto harm = sample_potential(PotentialSpec::harmonic(), g);
  CHECK(harm[5] == 4.0);  // x = 2
  const auto quartic = sample_potential(PotentialSpec::bracket_power(4.0, 4.0), g);
  CHECK(quartic[3] == 1.0);    // x = 0
  CHECK(quartic[6] == 100.0);  // x = 3: (1 + 9)^2
  CHECK_THROWS_AS(sample_potential(PotentialSpec::custom({1.0, 2.0}), g), InvalidArgument);
  CHECK_THROWS_AS(PotentialSpec::custom({1.0, -2.0}), InvalidArgument);
  CHECK_THROWS_AS(PotentialSpec::bracket_power(0.0, 3.0), InvalidArgument);
}

TEST_CASE("sample_potential matches the analytic formula at every grid point") {
  const Grid g = build_grid(9.0, 1201);
  for (double k : {2.5, 3.0, 4.0, 6.0}) {
    const auto v = sample_potential(PotentialSpec::bracket_power(k, 2.5), g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g[i];
      const double expected = std::exp(0.5 * k * std::log1p(x * x));
      CHECK(v[i] == doctest::Approx(expected).epsilon(1e-14));
    }
  }
  const auto harm = sample_potential(PotentialSpec::harmonic(), g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(harm[i] == g[i] * g[i]);
}

TEST_CASE("sample_weight examples") {
  const Grid g = build_grid(4.0, 7);
  CHECK(sample_weight(WeightSpec::constant_one(), g)[2] == 1.0);
  const auto ind = sample_weight(WeightSpec::indicator(-1.0, 1.0), g);
  CHECK(ind[5] == 0.0);  // x = 2
  CHECK(ind[2] == 1.0);  // x = -1, endpoint included
  CHECK(ind[4] == 1.0);  // x = 1
  CHECK(sample_weight(WeightSpec::inverse_power(0.5), g)[3] == 1.0);
  CHECK(sample_weight(WeightSpec::inverse_power(1.5), g)[6] == doctest::Approx(0.1));  // (1+9)^{-1/2}
  CHECK_THROWS_AS(WeightSpec::indicator(1.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(WeightSpec::inverse_power(0.0), InvalidArgument);
  CHECK_THROWS_AS(sample_weight(WeightSpec::custom({1.0}), g), InvalidArgument);
}

TEST_CASE("check_assumption on the quartic bracket") {
  const Grid g = build_grid(10.0, 39);  // h = 0.5, x = 3 is a grid point
  const auto spec = PotentialSpec::bracket_power(4.0, 3.5);
  const auto r = check_assumption(spec, 3.0, g);
  CHECK(r.inf_log_derivative_ratio == doctest::Approx(3.6).epsilon(1e-14));
  CHECK(r.min_second_derivative > 0.0);
  CHECK(r.passes);

  const auto strict = check_assumption(PotentialSpec::bracket_power(4.0, 3.7), 3.0, g);
  CHECK_FALSE(strict.growth_condition);
  CHECK_FALSE(strict.passes);

  CHECK(r.min_sandwich_ratio == doctest::Approx(1.0));
  CHECK(r.max_sandwich_ratio == doctest::Approx(1.0));
  CHECK(std::isfinite(r.max_first_symbol_ratio));
  CHECK(std::isfinite(r.max_second_symbol_ratio));
}

TEST_CASE("check_assumption: harmonic has xV'/V = 2 and fails any m > 2") {
  const Grid g = build_grid(10.0, 399);
  const auto r = check_assumption(PotentialSpec::harmonic(2.5), 1.0, g);
  CHECK(r.inf_log_derivative_ratio == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.convexity_condition);
  CHECK_FALSE(r.passes);
  CHECK_FALSE(check_assumption(PotentialSpec::harmonic(2.0), 1.0, g).passes);
}

TEST_CASE("check_assumption rejects x0 outside the grid") {
  const Grid g = build_grid(5.0, 99);
  CHECK_THROWS_AS(check_assumption(PotentialSpec::bracket_power(4.0, 3.0), 10.0, g), InvalidArgument);
  CHECK_THROWS_AS(check_assumption(PotentialSpec::bracket_power(4.0, 3.0), 0.0, g), InvalidArgument);
  CHECK_THROWS_AS(check_assumption(PotentialSpec::zero(), 1.0, g), InvalidArgument);
}

TEST_CASE("check_assumption: inf ratio is non-decreasing in x0 and tends to k") {
  const Grid g = build_grid(40.0, 7999);
  const auto spec = PotentialSpec::bracket_power(4.0, 3.0);
  double previous = 0.0;
  for (double x0 : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const double r = check_assumption(spec, x0, g).inf_log_derivative_ratio;
    CHECK(r >= previous);
    previous = r;
  }
  CHECK(previous == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("check_assumption on custom samples uses central differences") {
  const Grid g = build_grid(10.0, 1999);
  const auto analytic = PotentialSpec::bracket_power(4.0, 3.5);
  const auto custom = PotentialSpec::custom(sample_potential(analytic, g), 4.0, 3.5);
  const auto a = check_assumption(analytic, 3.0, g);
  const auto c = check_assumption(custom, 3.0, g);
  CHECK_FALSE(c.analytic_derivatives);
  CHECK(c.inf_log_derivative_ratio == doctest::Approx(a.inf_log_derivative_ratio).epsilon(1e-4));
  CHECK(c.min_second_derivative == doctest::Approx(a.min_second_derivative).epsilon(1e-4));
  CHECK(c.passes == a.passes);
}

TEST_CASE("assemble_hamiltonian entries and Gershgorin bound") {
  const Grid g = build_grid(1.0, 3);  // h = 0.5
  const auto h = assemble_hamiltonian(PotentialSpec::harmonic(), g);
  CHECK(h.matrix.diagonal[1] == 8.0);
  CHECK(h.matrix.diagonal[0] == 8.25);
  REQUIRE(h.matrix.off_diagonal.size() == 2);
  CHECK(h.matrix.off_diagonal[0] == -4.0);
  CHECK(h.matrix.off_diagonal[1] == -4.0);

  const Grid fine = build_grid(6.0, 599);
  const auto quartic = assemble_hamiltonian(PotentialSpec::bracket_power(4.0, 4.0), fine);
  const double vmin = *std::min_element(quartic.potential.begin(), quartic.potential.end());
  CHECK(quartic.matrix.gershgorin_bounds().first >= vmin - 1e-9);
  CHECK(vmin >= 0.0);
}
