#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "core/operator_builder.hpp"
#include "core/sym_tridiagonal.hpp"

namespace specsmooth {

// Solver constants for eigen_lowest.
inline constexpr double kBisectionAbsTol = 1e-12;
inline constexpr double kBisectionRelTol = 1e-12;
// Consecutive eigenvalues closer than this (relative) are solved as a cluster
// with explicit Gram-Schmidt.
inline constexpr double kClusterRelGap = 1e-8;

enum class EigenSource { finite_difference, analytic };

/// Lowest eigenpairs on a grid. Eigenvalues ascend; eigenvectors are
/// orthonormal in <f, g> = h * sum_i f_i g_i and sign-fixed so the first
/// component with |v| > 1e-8 is positive.
class EigenSystem {
 public:
  EigenSystem(Grid grid, std::vector<double> lambdas_sq, std::vector<double> vectors,
              std::vector<double> residuals, EigenSource source);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t count() const noexcept { return lambdas_sq_.size(); }
  std::size_t grid_size() const noexcept { return grid_.size(); }
  EigenSource source() const noexcept { return source_; }

  std::span<const double> lambdas_sq() const noexcept { return lambdas_sq_; }
  double lambda_sq(std::size_t n) const { return lambdas_sq_[n]; }
  /// n is 0-based here; mode n is the (n + 1)-th eigenfunction.
  std::span<const double> vector(std::size_t n) const {
    return {vectors_.data() + n * grid_.size(), grid_.size()};
  }
  std::span<const double> residuals() const noexcept { return residuals_; }

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  /// Eigensystem restricted to the first `count` modes.
  EigenSystem truncated(std::size_t count) const;

 private:
  Grid grid_;
  std::vector<double> lambdas_sq_;
  std::vector<double> vectors_;  // row-major, count x grid size
  std::vector<double> residuals_;
  std::vector<std::string> warnings_;
  EigenSource source_;
};

/// The `count` smallest eigenpairs: Sturm bisection for the eigenvalues,
/// inverse iteration (clustered where needed) for the vectors. Emits a
/// warning when V at the boundary is below 4x the largest eigenvalue.
EigenSystem eigen_lowest(const TridiagonalHamiltonian& h, std::size_t count);

/// Sampled Hermite functions with the exact spectrum 2n - 1 of -d^2/dx^2 + x^2.
EigenSystem harmonic_reference(const Grid& grid, std::size_t count);

/// Discrete L2 norm of H phi_n - lambda_n^2 phi_n, maximized over n.
double residual_check(const TridiagonalHamiltonian& h, const EigenSystem& eig);

struct ConvergenceTable {
  std::vector<double> spacings;
  std::vector<std::vector<double>> lambdas_sq;  // [spacing][mode]
  /// Richardson order estimate per mode from the three finest spacings:
  /// p = log(|l1 - l2| / |l2 - l3|) / log(h1 / h2). Requires h1/h2 = h2/h3.
  std::vector<double> observed_order;
};

ConvergenceTable convergence_table(const PotentialSpec& spec, double half_width,
                                   std::span<const double> spacings, std::size_t count);

/// Number of interior points giving spacing h on (-L, L).
std::size_t points_for_spacing(double half_width, double spacing);

}  // namespace specsmooth
