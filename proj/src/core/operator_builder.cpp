#include "core/operator_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace specsmooth {

double japanese_bracket(double s) { return std::sqrt(1.0 + s * s); }

Grid::Grid(double half_width, std::size_t n_points) : half_width_(half_width), spacing_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("grid half-width must be positive, got " + std::to_string(half_width));
  }
  if (n_points < 3) {
    throw InvalidArgument("grid needs at least 3 interior points, got " + std::to_string(n_points));
  }
  spacing_ = 2.0 * half_width / static_cast<double>(n_points + 1);
  points_.resize(n_points);
  // i + 1 - (n + 1)/2 is exact in floating point, so odd grids are exactly symmetric
  const double centre = 0.5 * static_cast<double>(n_points + 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    points_[i] = (static_cast<double>(i + 1) - centre) * spacing_;
  }
}

Grid build_grid(double half_width, std::size_t n_points) { return Grid(half_width, n_points); }

// ---------------------------------------------------------------------------
// Potentials

PotentialSpec PotentialSpec::harmonic(double m) {
  PotentialSpec s;
  s.kind = PotentialKind::harmonic;
  s.growth_exponent = 2.0;
  s.convexity_exponent = m;
  return s;
}

PotentialSpec PotentialSpec::bracket_power(double k, double m) {
  PotentialSpec s;
  s.kind = PotentialKind::bracket_power;
  s.growth_exponent = k;
  s.convexity_exponent = m;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::zero() {
  PotentialSpec s;
  s.kind = PotentialKind::zero;
  s.growth_exponent = 0.0;
  return s;
}

PotentialSpec PotentialSpec::custom(std::vector<double> samples, double k, double m) {
  PotentialSpec s;
  s.kind = PotentialKind::custom_samples;
  s.growth_exponent = k;
  s.convexity_exponent = m;
  s.samples = std::move(samples);
  s.validate();
  return s;
}

void PotentialSpec::validate() const {
  switch (kind) {
    case PotentialKind::bracket_power:
      if (!(growth_exponent > 0.0) || !std::isfinite(growth_exponent)) {
        throw InvalidArgument("bracket_power growth exponent k must be positive");
      }
      break;
    case PotentialKind::custom_samples:
      for (double v : samples) {
        if (!std::isfinite(v) || v < 0.0) {
          throw InvalidArgument("custom potential samples must be finite and non-negative");
        }
      }
      break;
    default:
      break;
  }
}

double PotentialSpec::value(double x) const {
  switch (kind) {
    case PotentialKind::harmonic:
      return x * x;
    case PotentialKind::bracket_power:
      return std::pow(1.0 + x * x, 0.5 * growth_exponent);
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::custom_samples:
      break;
  }
  throw InvalidArgument("custom potential has no analytic formula");
}

double PotentialSpec::first_derivative(double x) const {
  switch (kind) {
    case PotentialKind::harmonic:
      return 2.0 * x;
    case PotentialKind::bracket_power: {
      const double k = growth_exponent;
      return k * x * std::pow(1.0 + x * x, 0.5 * k - 1.0);
    }
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::custom_samples:
      break;
  }
  throw InvalidArgument("custom potential has no analytic derivative");
}

double PotentialSpec::second_derivative(double x) const {
  switch (kind) {
    case PotentialKind::harmonic:
      return 2.0;
    case PotentialKind::bracket_power: {
      const double k = growth_exponent;
      const double s = 1.0 + x * x;
      return k * std::pow(s, 0.5 * k - 1.0) + k * (k - 2.0) * x * x * std::pow(s, 0.5 * k - 2.0);
    }
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::custom_samples:
      break;
  }
  throw InvalidArgument("custom potential has no analytic derivative");
}

std::vector<double> sample_potential(const PotentialSpec& spec, const Grid& grid) {
  spec.validate();
  if (spec.kind == PotentialKind::custom_samples) {
    if (spec.samples.size() != grid.size()) {
      throw InvalidArgument("custom potential has " + std::to_string(spec.samples.size()) +
                            " samples for a grid of " + std::to_string(grid.size()) + " points");
    }
    return spec.samples;
  }
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = spec.value(grid[i]);
  return v;
}

// ---------------------------------------------------------------------------
// Weights

WeightSpec WeightSpec::constant_one() { return WeightSpec{}; }

WeightSpec WeightSpec::indicator(double a, double b) {
  WeightSpec w;
  w.kind = WeightKind::indicator;
  w.a = a;
  w.b = b;
  w.validate();
  return w;
}

WeightSpec WeightSpec::inverse_power(double nu) {
  WeightSpec w;
  w.kind = WeightKind::inverse_power;
  w.nu = nu;
  w.validate();
  return w;
}

WeightSpec WeightSpec::custom(std::vector<double> samples) {
  WeightSpec w;
  w.kind = WeightKind::custom_samples;
  w.samples = std::move(samples);
  w.validate();
  return w;
}

void WeightSpec::validate() const {
  switch (kind) {
    case WeightKind::indicator:
      if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidArgument("indicator weight needs finite a < b");
      }
      break;
    case WeightKind::inverse_power:
      if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw InvalidArgument("inverse_power weight needs nu > 0");
      }
      break;
    case WeightKind::custom_samples:
      for (double v : samples) {
        if (!std::isfinite(v)) throw InvalidArgument("custom weight samples must be finite");
      }
      break;
    case WeightKind::constant_one:
      break;
  }
}

double WeightSpec::value(double x) const {
  switch (kind) {
    case WeightKind::constant_one:
      return 1.0;
    case WeightKind::indicator:
      return (x >= a && x <= b) ? 1.0 : 0.0;  // closed interval
    case WeightKind::inverse_power:
      return std::pow(1.0 + x * x, -0.5 * (0.5 + nu));
    case WeightKind::custom_samples:
      break;
  }
  throw InvalidArgument("custom weight has no analytic formula");
}

std::vector<double> sample_weight(const WeightSpec& spec, const Grid& grid) {
  spec.validate();
  if (spec.kind == WeightKind::custom_samples) {
    if (spec.samples.size() != grid.size()) {
      throw InvalidArgument("custom weight has " + std::to_string(spec.samples.size()) +
                            " samples for a grid of " + std::to_string(grid.size()) + " points");
    }
    return spec.samples;
  }
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) w[i] = spec.value(grid[i]);
  return w;
}

// ---------------------------------------------------------------------------
// Assumption check

AssumptionReport check_assumption(const PotentialSpec& spec, double x0, const Grid& grid) {
  spec.validate();
  if (spec.kind == PotentialKind::zero) {
    throw InvalidArgument("the zero potential is not confining; nothing to check");
  }
  if (!(x0 > 0.0)) throw InvalidArgument("x0 must be positive");
  const std::vector<double> v = sample_potential(spec, grid);
  const double h = grid.spacing();
  const double k = spec.growth_exponent;
  const double m = spec.convexity_exponent;
  const bool analytic = spec.is_analytic();

  AssumptionReport r;
  r.x0 = x0;
  r.analytic_derivatives = analytic;
  r.inf_log_derivative_ratio = std::numeric_limits<double>::infinity();
  r.min_second_derivative = std::numeric_limits<double>::infinity();
  r.min_sandwich_ratio = std::numeric_limits<double>::infinity();
  r.max_sandwich_ratio = 0.0;

  // central differences need both neighbours
  const std::size_t first = analytic ? 0 : 1;
  const std::size_t last = analytic ? grid.size() : grid.size() - 1;
  for (std::size_t i = first; i < last; ++i) {
    const double x = grid[i];
    if (std::abs(x) < x0) continue;
    double d1, d2;
    if (analytic) {
      d1 = spec.first_derivative(x);
      d2 = spec.second_derivative(x);
    } else {
      d1 = (v[i + 1] - v[i - 1]) / (2.0 * h);
      d2 = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
    }
    const double bracket = japanese_bracket(x);
    const double ratio = v[i] > 0.0 ? x * d1 / v[i] : -std::numeric_limits<double>::infinity();
    const double sandwich = v[i] / std::pow(bracket, k);
    r.inf_log_derivative_ratio = std::min(r.inf_log_derivative_ratio, ratio);
    r.min_second_derivative = std::min(r.min_second_derivative, d2);
    r.min_sandwich_ratio = std::min(r.min_sandwich_ratio, sandwich);
    r.max_sandwich_ratio = std::max(r.max_sandwich_ratio, sandwich);
    r.max_first_symbol_ratio = std::max(r.max_first_symbol_ratio, std::abs(d1) / std::pow(bracket, k - 1.0));
    r.max_second_symbol_ratio = std::max(r.max_second_symbol_ratio, std::abs(d2) / std::pow(bracket, k - 2.0));
    ++r.points_checked;
  }
  if (r.points_checked == 0) {
    throw InvalidArgument("x0 = " + std::to_string(x0) + " leaves no grid points with |x| >= x0");
  }
  r.growth_condition = m > 2.0 && r.inf_log_derivative_ratio >= m;
  r.convexity_condition = r.min_second_derivative > 0.0;
  r.passes = r.growth_condition && r.convexity_condition;
  return r;
}

TridiagonalHamiltonian assemble_hamiltonian(const PotentialSpec& spec, const Grid& grid) {
  TridiagonalHamiltonian h{grid, sample_potential(spec, grid), {}};
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  h.matrix.diagonal.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) h.matrix.diagonal[i] = 2.0 * inv_h2 + h.potential[i];
  h.matrix.off_diagonal.assign(grid.size() - 1, -inv_h2);
  return h;
}

}  // namespace specsmooth
