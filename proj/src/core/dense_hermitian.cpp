#include "core/dense_hermitian.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/sym_tridiagonal.hpp"

namespace specsmooth {

namespace {

struct Reflector {
  std::size_t offset;  // acts on indices offset..n-1
  std::vector<Complex> v;
};

}  // namespace

TopEigenpair hermitian_top_eigenpair(const HermitianMatrix& input) {
  const std::size_t n = input.size();
  if (n == 0) throw InvalidArgument("empty matrix");
  if (n == 1) return {input(0, 0).real(), {Complex(1.0, 0.0)}};

  // work on a full Hermitian copy built from the lower triangle
  HermitianMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      a(i, j) = input(i, j);
      a(j, i) = std::conj(input(i, j));
    }
    a(i, i) = Complex(input(i, i).real(), 0.0);
  }

  std::vector<Reflector> reflectors;
  std::vector<Complex> sub(n - 1);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    std::vector<Complex> v(m);
    double alpha = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = a(k + 1 + i, k);
      alpha += std::norm(v[i]);
    }
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) {
      sub[k] = 0.0;
      continue;
    }
    const Complex phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : Complex(1.0, 0.0);
    v[0] += phase * alpha;
    double vnorm = 0.0;
    for (const auto& c : v) vnorm += std::norm(c);
    vnorm = std::sqrt(vnorm);
    for (auto& c : v) c /= vnorm;

    // trailing block B <- (I - 2vv*) B (I - 2vv*)
    std::vector<Complex> p(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += a(k + 1 + i, k + 1 + j) * v[j];
      p[i] = s;
    }
    Complex kappa = 0.0;
    for (std::size_t i = 0; i < m; ++i) kappa += std::conj(v[i]) * p[i];
    std::vector<Complex> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kappa.real() * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        a(k + 1 + i, k + 1 + j) -= 2.0 * (v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]));
      }
    }
    sub[k] = -phase * alpha;
    reflectors.push_back({k + 1, std::move(v)});
  }
  sub[n - 2] = a(n - 1, n - 2);

  // unitary diagonal scaling makes the off-diagonal real and non-negative
  SymTridiagonal t;
  t.diagonal.resize(n);
  t.off_diagonal.resize(n - 1);
  std::vector<Complex> tau(n, Complex(1.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) t.diagonal[i] = a(i, i).real();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double mag = std::abs(sub[k]);
    t.off_diagonal[k] = mag;
    tau[k + 1] = mag > 0.0 ? tau[k] * sub[k] / mag : tau[k];
  }

  const double top = bisect_eigenvalue(t, n - 1, {0.0, 0.0});
  const std::vector<double> y = inverse_iteration(t, top, {}, 0x70b, n - 1);

  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = tau[i] * y[i];
  for (auto it = reflectors.rbegin(); it != reflectors.rend(); ++it) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < it->v.size(); ++i) s += std::conj(it->v[i]) * x[it->offset + i];
    for (std::size_t i = 0; i < it->v.size(); ++i) x[it->offset + i] -= 2.0 * s * it->v[i];
  }
  return {top, std::move(x)};
}

TopEigenpair symmetric_top_eigenpair(const RealMatrix& a) {
  HermitianMatrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = a(i, j);
  }
  return hermitian_top_eigenpair(c);
}

PowerIterationTrace power_iteration(const HermitianMatrix& a, double tolerance, std::size_t max_iterations) {
  const std::size_t n = a.size();
  PowerIterationTrace trace;
  if (n == 0) return trace;
  std::vector<Complex> x(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  std::vector<Complex> y(n);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
      y[i] = s;
    }
    Complex rq = 0.0;
    double ny = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rq += std::conj(x[i]) * y[i];
      ny += std::norm(y[i]);
    }
    trace.rayleigh_quotients.push_back(rq.real());
    const std::size_t len = trace.rayleigh_quotients.size();
    if (len > 1) {
      const double prev = trace.rayleigh_quotients[len - 2];
      if (std::abs(rq.real() - prev) <= tolerance * std::abs(rq.real())) {
        trace.converged = true;
        break;
      }
    }
    ny = std::sqrt(ny);
    if (ny == 0.0) {
      trace.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  return trace;
}

}  // namespace specsmooth
