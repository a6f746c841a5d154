#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "core/sym_tridiagonal.hpp"

namespace specsmooth {

/// Japanese bracket <s> = (1 + s^2)^{1/2}.
double japanese_bracket(double s);

/// Uniform interior grid on (-L, L): x_i = -L + i*h, i = 1..n, h = 2L/(n+1).
/// The endpoints carry homogeneous Dirichlet conditions and are not stored.
class Grid {
 public:
  Grid(double half_width, std::size_t n_points);

  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return points_.size(); }
  double spacing() const noexcept { return spacing_; }
  double operator[](std::size_t i) const { return points_[i]; }
  std::span<const double> points() const noexcept { return points_; }

  bool operator==(const Grid& other) const = default;

 private:
  double half_width_;
  double spacing_;
  std::vector<double> points_;
};

Grid build_grid(double half_width, std::size_t n_points);

enum class PotentialKind { harmonic, bracket_power, zero, custom_samples };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::harmonic;
  double growth_exponent = 2.0;     // k
  double convexity_exponent = 2.0;  // m, only used by the assumption and gap checks
  std::vector<double> samples;      // custom_samples only, one per grid point

  static PotentialSpec harmonic(double m = 2.0);
  static PotentialSpec bracket_power(double k, double m);
  static PotentialSpec zero();
  static PotentialSpec custom(std::vector<double> samples, double k = 2.0, double m = 2.0);

  bool is_analytic() const noexcept {
    return kind != PotentialKind::custom_samples;
  }
  // Analytic kinds only.
  double value(double x) const;
  double first_derivative(double x) const;
  double second_derivative(double x) const;

  void validate() const;
};

enum class WeightKind { constant_one, indicator, inverse_power, custom_samples };

struct WeightSpec {
  WeightKind kind = WeightKind::constant_one;
  double a = -1.0;
  double b = 1.0;
  double nu = 0.5;
  std::vector<double> samples;

  static WeightSpec constant_one();
  static WeightSpec indicator(double a, double b);
  static WeightSpec inverse_power(double nu);
  static WeightSpec custom(std::vector<double> samples);

  double value(double x) const;
  void validate() const;
};

std::vector<double> sample_potential(const PotentialSpec& spec, const Grid& grid);
std::vector<double> sample_weight(const WeightSpec& spec, const Grid& grid);

/// Numerical check of the confinement/convexity hypotheses on |x| >= x0.
/// Each condition is reported separately; `passes` combines the growth-ratio
/// and convexity conditions only.
struct AssumptionReport {
  double x0 = 0.0;
  std::size_t points_checked = 0;
  double inf_log_derivative_ratio = 0.0;  // inf x V'(x) / V(x)
  double min_second_derivative = 0.0;     // min V''(x)
  double min_sandwich_ratio = 0.0;        // min V(x) / <x>^k
  double max_sandwich_ratio = 0.0;        // max V(x) / <x>^k
  double max_first_symbol_ratio = 0.0;    // max |V'(x)| / <x>^{k-1}
  double max_second_symbol_ratio = 0.0;   // max |V''(x)| / <x>^{k-2}
  bool analytic_derivatives = true;
  bool growth_condition = false;     // inf ratio >= m and m > 2
  bool convexity_condition = false;  // min V'' > 0
  bool passes = false;
};

AssumptionReport check_assumption(const PotentialSpec& spec, double x0, const Grid& grid);

/// Three-point finite-difference H = -d^2/dx^2 + V with Dirichlet ends.
struct TridiagonalHamiltonian {
  Grid grid;
  std::vector<double> potential;
  SymTridiagonal matrix;
};

TridiagonalHamiltonian assemble_hamiltonian(const PotentialSpec& spec, const Grid& grid);

}  // namespace specsmooth
