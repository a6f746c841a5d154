#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace specsmooth {

using Complex = std::complex<double>;

/// Dense square matrix, row-major.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using HermitianMatrix = DenseMatrix<Complex>;

struct TopEigenpair {
  double value = 0.0;
  std::vector<Complex> vector;  // unit Euclidean norm
};

/// Largest eigenvalue and an eigenvector of a Hermitian matrix. Householder
/// reduction to real symmetric tridiagonal form, bisection on the Sturm count
/// for the top eigenvalue, inverse iteration and back-transformation for the
/// vector. Only the lower triangle is read.
TopEigenpair hermitian_top_eigenpair(const HermitianMatrix& a);

TopEigenpair symmetric_top_eigenpair(const RealMatrix& a);

struct PowerIterationTrace {
  std::vector<double> rayleigh_quotients;
  bool converged = false;
};

/// Plain power iteration from the normalized all-ones start vector. Stops
/// when successive Rayleigh quotients agree to `tolerance` (relative) or
/// after `max_iterations`.
PowerIterationTrace power_iteration(const HermitianMatrix& a, double tolerance, std::size_t max_iterations);

}  // namespace specsmooth
