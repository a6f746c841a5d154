#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace specsmooth {

/// Real symmetric tridiagonal matrix; off_diagonal[i] couples rows i and i+1.
struct SymTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }

  /// Number of eigenvalues strictly below sigma (Sturm sequence / LDL^T inertia).
  std::size_t count_below(double sigma) const;

  /// Gershgorin enclosure [lower, upper] of the spectrum.
  std::pair<double, double> gershgorin_bounds() const;

  /// Max-row-sum norm; bounds the spectral radius.
  double norm_inf() const;

  void multiply(std::span<const double> x, std::span<double> y) const;
};

/// Bisection stopping rule: width <= absolute + relative * |lambda|.
struct BisectionTolerance {
  double absolute = 1e-12;
  double relative = 1e-12;
};

/// index-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const SymTridiagonal& t, std::size_t index,
                         BisectionTolerance tol = {});

struct InverseIterationOptions {
  int max_iterations = 8;
  int max_restarts = 3;
  double residual_tolerance = 1e-10;  // relative to norm_inf()
};

/// Eigenvector for a converged eigenvalue estimate by inverse iteration with a
/// pivoted tridiagonal LU. The result has unit Euclidean norm and is kept
/// orthogonal to every vector in `deflate` (assumed orthonormal). `seed`
/// fixes the deterministic start vector. Throws NumericalFailure carrying
/// `index` when no restart converges.
std::vector<double> inverse_iteration(const SymTridiagonal& t, double lambda,
                                      std::span<const std::vector<double>> deflate,
                                      std::uint64_t seed, std::size_t index,
                                      InverseIterationOptions options = {});

}  // namespace specsmooth
