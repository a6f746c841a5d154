#include "core/sym_tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace specsmooth {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const SymTridiagonal& t) {
  return std::max(kEps * t.norm_inf(), std::numeric_limits<double>::min());
}

// splitmix64; a fixed, platform-independent stream for start vectors
std::uint64_t next_random(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void orthogonalize(std::vector<double>& x, std::span<const std::vector<double>> basis) {
  // classical Gram-Schmidt, applied twice
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const double c = dot(q, x);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * q[i];
    }
  }
}

// Pivoted LU of (T - sigma I), LAPACK dgttrf layout.
class ShiftedFactorization {
 public:
  ShiftedFactorization(const SymTridiagonal& t, double sigma)
      : n_(t.size()),
        dl_(t.off_diagonal),
        d_(t.diagonal),
        du_(t.off_diagonal),
        du2_(n_ > 2 ? n_ - 2 : 0, 0.0),
        swapped_(n_ > 1 ? n_ - 1 : 0, false) {
    for (double& v : d_) v -= sigma;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] != 0.0) {
          const double fact = dl_[i] / d_[i];
          dl_[i] = fact;
          d_[i + 1] -= fact * du_[i];
        } else {
          dl_[i] = 0.0;
        }
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    const double floor = pivot_floor(t);
    for (double& v : d_) {
      if (std::abs(v) < floor) v = std::signbit(v) ? -floor : floor;
    }
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    if (n_ > 2) {
      for (std::size_t k = n_ - 2; k-- > 0;) {
        b[k] = (b[k] - du_[k] * b[k + 1] - du2_[k] * b[k + 2]) / d_[k];
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

}  // namespace

std::size_t SymTridiagonal::count_below(double sigma) const {
  const std::size_t n = size();
  if (n == 0) return 0;
  const double floor = pivot_floor(*this);
  std::size_t count = 0;
  double q = diagonal[0] - sigma;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(q) < floor) q = -floor;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    const double e = off_diagonal[i];
    q = diagonal[i + 1] - sigma - e * e / q;
  }
  return count;
}

std::pair<double, double> SymTridiagonal::gershgorin_bounds() const {
  const std::size_t n = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(off_diagonal[i]);
    lo = std::min(lo, diagonal[i] - radius);
    hi = std::max(hi, diagonal[i] + radius);
  }
  return {lo, hi};
}

double SymTridiagonal::norm_inf() const {
  const std::size_t n = size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(off_diagonal[i - 1]);
    if (i + 1 < n) row += std::abs(off_diagonal[i]);
    best = std::max(best, row);
  }
  return best;
}

void SymTridiagonal::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = diagonal[i] * x[i];
    if (i > 0) s += off_diagonal[i - 1] * x[i - 1];
    if (i + 1 < n) s += off_diagonal[i] * x[i + 1];
    y[i] = s;
  }
}

double bisect_eigenvalue(const SymTridiagonal& t, std::size_t index, BisectionTolerance tol) {
  if (index >= t.size()) throw InvalidArgument("eigenvalue index out of range");
  auto [lo, hi] = t.gershgorin_bounds();
  const double pad = kEps * std::max({1.0, std::abs(lo), std::abs(hi)}) * 4.0;
  lo -= pad;
  hi += pad;
  for (int iter = 0; iter < 2000; ++iter) {
    const double width = hi - lo;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (width <= tol.absolute + tol.relative * scale) break;
    const double mid = lo + 0.5 * width;
    if (mid <= lo || mid >= hi) break;
    if (t.count_below(mid) >= index + 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

std::vector<double> inverse_iteration(const SymTridiagonal& t, double lambda,
                                      std::span<const std::vector<double>> deflate,
                                      std::uint64_t seed, std::size_t index,
                                      InverseIterationOptions options) {
  const std::size_t n = t.size();
  const double tnorm = std::max(t.norm_inf(), std::numeric_limits<double>::min());
  const ShiftedFactorization lu(t, lambda);

  std::vector<double> x(n), tx(n);
  double last_residual = std::numeric_limits<double>::infinity();
  std::uint64_t state = seed * 0x100000001B3ull + index;

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    for (double& v : x) {
      v = static_cast<double>(next_random(state) >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    }
    orthogonalize(x, deflate);
    double nx = norm2(x);
    if (nx == 0.0) continue;
    for (double& v : x) v /= nx;

    bool converged = false;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
      lu.solve(x);
      orthogonalize(x, deflate);
      nx = norm2(x);
      if (!(nx > 0.0) || !std::isfinite(nx)) break;
      for (double& v : x) v /= nx;

      t.multiply(x, tx);
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = tx[i] - lambda * x[i];
        r2 += r * r;
      }
      last_residual = std::sqrt(r2);
      if (converged) return x;  // one polishing step after convergence
      converged = last_residual <= options.residual_tolerance * tnorm;
    }
    if (converged) return x;
  }
  throw NumericalFailure("inverse iteration did not converge for eigenpair " +
                             std::to_string(index + 1) + " (last residual " +
                             std::to_string(last_residual) + ")",
                         index);
}

}  // namespace specsmooth
