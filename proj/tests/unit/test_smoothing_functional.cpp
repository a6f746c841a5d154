#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "core/errors.hpp"
#include "core/smoothing_functional.hpp"
#include "core/tridiag_eig.hpp"
#include "test_support.hpp"

using namespace specsmooth;
using specsmooth::testing::random_coefficients;
using specsmooth::testing::unit_mode;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Setup {
  EigenSystem eig;
  std::vector<double> psi;
};

Setup quartic(std::size_t count, WeightSpec weight = WeightSpec::indicator(-1.0, 1.0)) {
  const Grid g = build_grid(8.0, 1599);
  auto eig = eigen_lowest(assemble_hamiltonian(PotentialSpec::bracket_power(4.0, 4.0), g), count);
  return {std::move(eig), sample_weight(weight, g)};
}

Setup oscillator(std::size_t count, WeightSpec weight = WeightSpec::indicator(-1.0, 1.0)) {
  const Grid g = build_grid(10.0, 1999);
  auto eig = eigen_lowest(assemble_hamiltonian(PotentialSpec::harmonic(), g), count);
  return {std::move(eig), sample_weight(weight, g)};
}

// Composite Simpson rule for int_0^{2pi} e^{-i t mu} dt.
Complex simpson_time_integral(double mu, int panels) {
  const double dt = kTwoPi / panels;
  Complex s = 0.0;
  for (int j = 0; j <= panels; ++j) {
    const double weight = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    s += weight * std::polar(1.0, -mu * dt * j);
  }
  return s * dt / 3.0;
}

double weighted_mode_norm(const EigenSystem& e, std::span<const double> psi, std::size_t n) {
  double s = 0.0;
  const auto v = e.vector(n);
  for (std::size_t i = 0; i < v.size(); ++i) s += psi[i] * psi[i] * v[i] * v[i];
  return std::sqrt(s * e.grid().spacing());
}

}  // namespace

TEST_CASE("time integral examples") {
  CHECK(time_integral(0.0) == Complex(kTwoPi, 0.0));
  CHECK(time_integral(1.0) == Complex(0.0, 0.0));
  CHECK(time_integral(-3.0) == Complex(0.0, 0.0));
  const Complex half = time_integral(0.5);
  CHECK(half.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(half.imag() == doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("time integral agrees with Simpson quadrature") {
  for (double mu : {0.5, -0.5, 0.3, 2.7, -7.25, 1e-3, 1e-5, 3e-7}) {
    const Complex exact = time_integral(mu);
    const Complex approx = simpson_time_integral(mu, 20000);
    CHECK(std::abs(exact - approx) <= 1e-9);
  }
}

TEST_CASE("time integral is continuous across the Taylor switch") {
  const double below = std::nextafter(kTaylorThreshold, 0.0);
  const double above = std::nextafter(kTaylorThreshold, 1.0);
  CHECK(std::abs(time_integral(below) - time_integral(above)) <= 1e-9);
  CHECK(std::abs(time_integral(1e-12) - Complex(kTwoPi, 0.0)) <= 1e-10);
}

TEST_CASE("evolution is unitary and periodic for the entire-part dynamics") {
  const auto s = quartic(20);
  const auto f = random_coefficients(20, 3);
  CHECK(evolve(s.eig, f, 0.0, Dynamics::H) == f);
  CHECK(coefficient_norm(evolve(s.eig, f, 1.234, Dynamics::H)) == doctest::Approx(coefficient_norm(f)).epsilon(1e-14));
  const auto back = evolve(s.eig, f, kTwoPi, Dynamics::A);
  for (std::size_t n = 0; n < f.size(); ++n) CHECK(std::abs(back[n] - f[n]) <= 1e-12 * std::abs(f[n]) * 100);
}

TEST_CASE("free weight with gamma = 0 gives sqrt(2 pi) ||f||") {
  const auto s = oscillator(12, WeightSpec::constant_one());
  const auto f = random_coefficients(12, 5);
  const double expected = std::sqrt(kTwoPi) * coefficient_norm(f);
  CHECK(smoothing_closed_form(s.eig, s.psi, 0.0, f, Dynamics::H) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(smoothing_quadrature(s.eig, s.psi, 0.0, f, Dynamics::H, 64) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("single mode has a constant integrand") {
  const auto s = quartic(10);
  const double gamma = 0.4;
  for (std::size_t n : {0u, 4u, 9u}) {
    const auto f = unit_mode(10, n);
    const double expected = std::sqrt(kTwoPi) * std::pow(japanese_bracket(s.eig.lambda_sq(n)), gamma / 2.0) *
                            weighted_mode_norm(s.eig, s.psi, n);
    CHECK(smoothing_closed_form(s.eig, s.psi, gamma, f, Dynamics::H) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(smoothing_quadrature(s.eig, s.psi, gamma, f, Dynamics::H, 8) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("quadrature converges to the closed form") {
  const auto s = oscillator(6);
  Coefficients f(6, 0.0);
  f[0] = 1.0;
  f[1] = 1.0;
  const double closed = smoothing_closed_form(s.eig, s.psi, 0.5, f, Dynamics::H);
  CHECK(smoothing_quadrature(s.eig, s.psi, 0.5, f, Dynamics::H, 512) == doctest::Approx(closed).epsilon(1e-6));

  const auto g = random_coefficients(6, 9);
  const double closed_g = smoothing_closed_form(s.eig, s.psi, 0.5, g, Dynamics::H);
  CHECK(smoothing_quadrature(s.eig, s.psi, 0.5, g, Dynamics::H, 4096) == doctest::Approx(closed_g).epsilon(1e-5));
}

TEST_CASE("quadrature error is second order in the panel width") {
  const auto s = quartic(4);
  const auto f = random_coefficients(4, 21);
  const double closed = smoothing_closed_form(s.eig, s.psi, 0.5, f, Dynamics::H);
  std::vector<double> errors;
  for (std::size_t m : {128u, 256u, 512u}) {
    errors.push_back(std::abs(smoothing_quadrature(s.eig, s.psi, 0.5, f, Dynamics::H, m) - closed));
  }
  CHECK(std::abs(std::log2(errors[0] / errors[1]) - 2.0) <= 0.2);
  CHECK(std::abs(std::log2(errors[1] / errors[2]) - 2.0) <= 0.2);
}

TEST_CASE("entire-part dynamics: trapezoid rule is exact") {
  const auto s = quartic(8);
  const auto f = random_coefficients(8, 31);
  const double closed = smoothing_closed_form(s.eig, s.psi, 0.5, f, Dynamics::A);
  CHECK(smoothing_quadrature(s.eig, s.psi, 0.5, f, Dynamics::A, 256) == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("quadrature input validation") {
  const auto s = quartic(4);
  const auto f = random_coefficients(4, 1);
  CHECK_THROWS_AS(smoothing_quadrature(s.eig, s.psi, 0.5, f, Dynamics::H, 7), InvalidArgument);
  CHECK_THROWS_AS(smoothing_closed_form(s.eig, s.psi, 0.5, random_coefficients(3, 1), Dynamics::H), InvalidArgument);
}

TEST_CASE("smoothing functional scales with |alpha|") {
  const auto s = quartic(15);
  const auto f = random_coefficients(15, 41);
  const Complex alpha(-1.5, 2.0);
  Coefficients g(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) g[n] = alpha * f[n];
  const double sf = smoothing_closed_form(s.eig, s.psi, 0.3, f, Dynamics::H);
  CHECK(smoothing_closed_form(s.eig, s.psi, 0.3, g, Dynamics::H) == doctest::Approx(std::abs(alpha) * sf).epsilon(1e-12));
}

TEST_CASE("smoothing form is Hermitian PSD and its top eigenvalue matches an independent build") {
  const auto s = quartic(20);
  const double gamma = 0.5;
  const auto gram = weighted_gram(s.eig, s.psi);
  const auto q = smoothing_form(s.eig, gram, gamma, Dynamics::H, Bracket::H);

  // Independent assembly with Eigen from the eigenvectors.
  const std::size_t count = s.eig.count();
  const std::size_t n = s.eig.grid_size();
  Eigen::MatrixXd phi(n, count);
  for (std::size_t m = 0; m < count; ++m)
    for (std::size_t i = 0; i < n; ++i) phi(i, m) = s.eig.vector(m)[i] * s.psi[i];
  const Eigen::MatrixXd g = s.eig.grid().spacing() * phi.transpose() * phi;
  Eigen::MatrixXcd oracle(count, count);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      const double wa = std::pow(1.0 + s.eig.lambda_sq(a) * s.eig.lambda_sq(a), gamma / 4.0);
      const double wb = std::pow(1.0 + s.eig.lambda_sq(b) * s.eig.lambda_sq(b), gamma / 4.0);
      const double mu = s.eig.lambda_sq(b) - s.eig.lambda_sq(a);
      const Complex i_mu = a == b ? Complex(kTwoPi, 0.0) : (std::polar(1.0, -kTwoPi * mu) - 1.0) / Complex(0.0, -mu);
      oracle(a, b) = wa * wb * g(a, b) * i_mu;
    }
  }
  double max_diff = 0.0;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      max_diff = std::max(max_diff, std::abs(q(a, b) - oracle(a, b)));
      CHECK(std::abs(q(a, b) - std::conj(q(b, a))) <= 1e-12 * std::abs(q(a, b)) + 1e-14);
    }
  }
  CHECK(max_diff <= 1e-10 * oracle.norm());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(oracle);
  CHECK(solver.eigenvalues().minCoeff() >= -1e-10 * solver.eigenvalues().maxCoeff());
  const auto c = smoothing_constant(s.eig, gram, gamma, Dynamics::H, Bracket::H);
  CHECK(c.top_eigenvalue == doctest::Approx(solver.eigenvalues().maxCoeff()).epsilon(1e-10));
  CHECK(c.c1 == doctest::Approx(std::sqrt(solver.eigenvalues().maxCoeff())).epsilon(1e-10));
}

TEST_CASE("C1 dominates every ratio and is attained by the maximizer") {
  const auto s = quartic(25);
  const auto gram = weighted_gram(s.eig, s.psi);
  for (double gamma : {0.0, 0.25, 0.5}) {
    const auto c = smoothing_constant(s.eig, gram, gamma, Dynamics::H, Bracket::H);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto f = random_coefficients(25, 1000 + seed);
      const double ratio = smoothing_closed_form(s.eig, gram, gamma, f, Dynamics::H) / coefficient_norm(f);
      CHECK(ratio <= c.c1 * (1.0 + 1e-12));
    }
    CHECK(smoothing_closed_form(s.eig, gram, gamma, c.maximizer, Dynamics::H) ==
          doctest::Approx(c.c1).epsilon(1e-9));
    for (double rq : c.rayleigh_history) CHECK(rq <= c.top_eigenvalue * (1.0 + 1e-10));
  }
}

TEST_CASE("C1 grows with gamma for a localized weight") {
  const auto s = quartic(30);
  const auto gram = weighted_gram(s.eig, s.psi);
  const double c0 = smoothing_constant(s.eig, gram, 0.0, Dynamics::A, Bracket::A).c1;
  const double c1 = smoothing_constant(s.eig, gram, 0.25, Dynamics::A, Bracket::A).c1;
  const double c2 = smoothing_constant(s.eig, gram, 0.5, Dynamics::A, Bracket::A).c1;
  CHECK(c0 < c1);
  CHECK(c1 < c2);
}

TEST_CASE("entire-part C1 equals sqrt(2 pi) times the largest weighted bin norm") {
  for (const auto& s : {quartic(40), oscillator(40)}) {
    const auto gram = weighted_gram(s.eig, s.psi);
    const auto idx = bin_spectrum(s.eig);
    const auto report = weighted_decay(s.eig, s.psi, idx);
    for (double gamma : {0.25, 0.5}) {
      double best = 0.0;
      for (const auto& b : report.bins) {
        best = std::max(best, std::pow(japanese_bracket(static_cast<double>(b.bin)), gamma / 2.0) * b.operator_norm);
      }
      const auto c = smoothing_constant(s.eig, gram, gamma, Dynamics::A, Bracket::A);
      CHECK(c.c1 == doctest::Approx(std::sqrt(kTwoPi) * best).epsilon(1e-9));
    }
  }
}

TEST_CASE("Parseval identity for the entire-part dynamics") {
  const auto s = quartic(30);
  const auto idx = bin_spectrum(s.eig);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = random_coefficients(30, seed);
    const auto p = parseval_identity_A(s.eig, s.psi, 0.5, f, idx);
    CHECK(std::abs(p.lhs - p.rhs) <= 1e-10 * p.rhs);
  }
  const auto zero = parseval_identity_A(s.eig, s.psi, 0.5, Coefficients(30, 0.0), idx);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  const auto o = oscillator(6, WeightSpec::constant_one());
  Coefficients f(6, 0.0);
  f[0] = 1.0;
  f[1] = 1.0;
  const auto p = parseval_identity_A(o.eig, o.psi, 0.0, f, bin_spectrum(o.eig));
  CHECK(p.lhs == doctest::Approx(2.0 * kTwoPi).epsilon(1e-9));
  CHECK(p.rhs == doctest::Approx(2.0 * kTwoPi).epsilon(1e-9));
}

TEST_CASE("Duhamel comparison") {
  const Grid g = build_grid(10.0, 1999);
  const auto ref = harmonic_reference(g, 20);
  const auto psi = sample_weight(WeightSpec::indicator(-1.0, 1.0), g);
  const auto f = random_coefficients(20, 77);
  const auto exact = duhamel_discrepancy(ref, psi, 0.5, f);
  CHECK(exact.discrepancy == 0.0);
  CHECK(exact.bound == 0.0);

  const auto s = quartic(30);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = duhamel_discrepancy(s.eig, s.psi, 0.5, random_coefficients(30, 500 + seed));
    CHECK(d.discrepancy <= d.bound);
    CHECK(d.bound > 0.0);
  }
}

TEST_CASE("bracket ratio is bounded by 2^{gamma/2}") {
  const auto s = quartic(60);
  for (double gamma : {0.0, 0.5, 1.0, 2.0}) {
    const double r = bracket_ratio_max(s.eig, gamma);
    CHECK(r >= 1.0);
    CHECK(r <= std::pow(2.0, gamma / 2.0));
  }
}

TEST_CASE("smoothing_constant needs at least two modes") {
  const auto s = quartic(1);
  CHECK_THROWS_AS(smoothing_constant(s.eig, s.psi, 0.5, Dynamics::H, Bracket::H), InvalidArgument);
}
