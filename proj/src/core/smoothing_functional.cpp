#include "core/smoothing_functional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/errors.hpp"
#include "core/operator_builder.hpp"
#include "core/parallel.hpp"

namespace specsmooth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_size(const EigenSystem& eig, const Coefficients& f) {
  if (f.size() != eig.count()) {
    throw InvalidArgument("coefficient vector has " + std::to_string(f.size()) + " entries, eigensystem has " +
                          std::to_string(eig.count()));
  }
}

}  // namespace

Complex time_integral(double mu) {
  if (mu == 0.0) return {kTwoPi, 0.0};
  if (mu == std::round(mu)) return {0.0, 0.0};
  const double x = kTwoPi * mu;
  if (std::abs(mu) < kTaylorThreshold) {
    // (1 - e^{-ix}) / (i mu) = 2 pi (1 - ix/2 - x^2/6 + ...)
    return kTwoPi * Complex(1.0 - x * x / 6.0, -x / 2.0);
  }
  const Complex num(1.0 - std::cos(x), std::sin(x));
  return num / Complex(0.0, mu);
}

std::vector<double> frequencies(const EigenSystem& eig, Dynamics dynamics) {
  std::vector<double> mu(eig.lambdas_sq().begin(), eig.lambdas_sq().end());
  if (dynamics == Dynamics::A) {
    for (double& m : mu) m = std::floor(m);
  }
  return mu;
}

std::vector<double> bracket_weights(const EigenSystem& eig, double gamma, Bracket bracket) {
  std::vector<double> w(eig.count());
  for (std::size_t n = 0; n < eig.count(); ++n) {
    const double s = bracket == Bracket::H ? eig.lambda_sq(n) : std::floor(eig.lambda_sq(n));
    w[n] = std::pow(japanese_bracket(s), 0.5 * gamma);
  }
  return w;
}

Coefficients evolve(const EigenSystem& eig, const Coefficients& f, double t, Dynamics dynamics) {
  require_size(eig, f);
  const auto mu = frequencies(eig, dynamics);
  Coefficients out(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) out[n] = std::polar(1.0, -t * mu[n]) * f[n];
  return out;
}

double coefficient_norm(const Coefficients& f) {
  double s = 0.0;
  for (const auto& c : f) s += std::norm(c);
  return std::sqrt(s);
}

double smoothing_quadrature(const EigenSystem& eig, std::span<const double> psi, double gamma,
                            const Coefficients& f, Dynamics dynamics, std::size_t panels, Bracket bracket) {
  require_size(eig, f);
  if (panels < 8) throw InvalidArgument("smoothing_quadrature needs at least 8 panels");
  if (psi.size() != eig.grid_size()) throw InvalidArgument("weight/grid size mismatch");
  const auto mu = frequencies(eig, dynamics);
  const auto w = bracket_weights(eig, gamma, bracket);
  const std::size_t n = eig.grid_size();
  const double h = eig.grid().spacing();
  const double dt = kTwoPi / static_cast<double>(panels);

  std::vector<double> values(panels + 1);
  parallel_for(panels + 1, [&](std::size_t j) {
    const double t = dt * static_cast<double>(j);
    std::vector<double> re(n, 0.0), im(n, 0.0);
    for (std::size_t m = 0; m < eig.count(); ++m) {
      const Complex c = w[m] * std::polar(1.0, -t * mu[m]) * f[m];
      if (c == Complex(0.0, 0.0)) continue;
      const auto v = eig.vector(m);
      for (std::size_t i = 0; i < n; ++i) {
        re[i] += c.real() * v[i];
        im[i] += c.imag() * v[i];
      }
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += psi[i] * psi[i] * (re[i] * re[i] + im[i] * im[i]);
    values[j] = h * s;
  });

  double total = 0.5 * (values.front() + values.back());
  for (std::size_t j = 1; j < panels; ++j) total += values[j];
  return std::sqrt(total * dt);
}

HermitianMatrix smoothing_form(const EigenSystem& eig, const RealMatrix& gram, double gamma, Dynamics dynamics,
                               Bracket bracket) {
  if (gram.size() != eig.count()) throw InvalidArgument("Gram matrix does not match the eigensystem");
  const auto mu = frequencies(eig, dynamics);
  const auto w = bracket_weights(eig, gamma, bracket);
  const std::size_t count = eig.count();
  HermitianMatrix q(count);
  parallel_for(count, [&](std::size_t a) {
    for (std::size_t b = 0; b < count; ++b) {
      q(a, b) = w[a] * w[b] * gram(a, b) * time_integral(mu[b] - mu[a]);
    }
  });
  return q;
}

double smoothing_closed_form(const EigenSystem& eig, const RealMatrix& gram, double gamma, const Coefficients& f,
                             Dynamics dynamics, Bracket bracket) {
  require_size(eig, f);
  const auto q = smoothing_form(eig, gram, gamma, dynamics, bracket);
  Complex s = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a] == Complex(0.0, 0.0)) continue;
    Complex row = 0.0;
    for (std::size_t b = 0; b < f.size(); ++b) row += q(a, b) * f[b];
    s += std::conj(f[a]) * row;
  }
  const double scale = std::max(1.0, std::abs(s));
  if (std::abs(s.imag()) > 1e-10 * scale || s.real() < -1e-10 * scale) {
    throw NumericalFailure("smoothing quadratic form is not real non-negative");
  }
  return std::sqrt(std::max(0.0, s.real()));
}

double smoothing_closed_form(const EigenSystem& eig, std::span<const double> psi, double gamma,
                             const Coefficients& f, Dynamics dynamics, Bracket bracket) {
  return smoothing_closed_form(eig, weighted_gram(eig, psi), gamma, f, dynamics, bracket);
}

ParsevalCheck parseval_identity_A(const EigenSystem& eig, std::span<const double> psi, double gamma,
                                  const Coefficients& f, const ProjectorIndex& index) {
  require_size(eig, f);
  if (index.mode_count() != eig.count()) throw InvalidArgument("projector index does not match eigensystem");
  ParsevalCheck out;
  const double s = smoothing_closed_form(eig, psi, gamma, f, Dynamics::A, Bracket::A);
  out.lhs = s * s;

  // right side synthesizes each P_N f on the grid
  const std::size_t n = eig.grid_size();
  const double h = eig.grid().spacing();
  double rhs = 0.0;
  for (const auto& [bin, members] : index.bins) {
    std::vector<double> re(n, 0.0), im(n, 0.0);
    for (std::size_t m : members) {
      const auto v = eig.vector(m);
      for (std::size_t i = 0; i < n; ++i) {
        re[i] += f[m].real() * v[i];
        im[i] += f[m].imag() * v[i];
      }
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += psi[i] * psi[i] * (re[i] * re[i] + im[i] * im[i]);
    rhs += std::pow(japanese_bracket(static_cast<double>(bin)), gamma) * h * norm2;
  }
  out.rhs = kTwoPi * rhs;
  return out;
}

SmoothingConstant smoothing_constant(const EigenSystem& eig, const RealMatrix& gram, double gamma,
                                     Dynamics dynamics, Bracket bracket) {
  if (eig.count() < 2) throw InvalidArgument("smoothing_constant needs a truncation of at least 2 modes");
  const auto q = smoothing_form(eig, gram, gamma, dynamics, bracket);
  const auto top = hermitian_top_eigenpair(q);
  auto trace = power_iteration(q, kPowerTolerance, kPowerMaxIterations);

  // Rayleigh quotients never exceed the top eigenvalue
  const double slack = 1e-10 * std::max(1.0, std::abs(top.value));
  for (double rq : trace.rayleigh_quotients) {
    if (rq > top.value + slack) {
      throw NumericalFailure("power iteration Rayleigh quotient " + std::to_string(rq) +
                             " exceeds the computed top eigenvalue " + std::to_string(top.value));
    }
  }

  SmoothingConstant out;
  out.top_eigenvalue = top.value;
  out.c1 = std::sqrt(std::max(0.0, top.value));
  out.maximizer = top.vector;
  out.rayleigh_history = std::move(trace.rayleigh_quotients);
  out.power_converged = trace.converged;
  return out;
}

SmoothingConstant smoothing_constant(const EigenSystem& eig, std::span<const double> psi, double gamma,
                                     Dynamics dynamics, Bracket bracket) {
  return smoothing_constant(eig, weighted_gram(eig, psi), gamma, dynamics, bracket);
}

DuhamelCheck duhamel_discrepancy(const EigenSystem& eig, std::span<const double> psi, double gamma,
                                 const Coefficients& f) {
  require_size(eig, f);
  const auto gram = weighted_gram(eig, psi);
  const double s_h = smoothing_closed_form(eig, gram, gamma, f, Dynamics::H, Bracket::H);
  const double s_a = smoothing_closed_form(eig, gram, gamma, f, Dynamics::A, Bracket::H);

  double defect = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double frac = eig.lambda_sq(n) - std::floor(eig.lambda_sq(n));
    defect += frac * frac * std::norm(f[n]);
  }
  DuhamelCheck out;
  out.discrepancy = std::abs(s_h - s_a);
  if (defect == 0.0) return out;
  const double c1_a = smoothing_constant(eig, gram, gamma, Dynamics::A, Bracket::H).c1;
  out.bound = c1_a * kTwoPi * std::sqrt(defect);
  return out;
}

double bracket_ratio_max(const EigenSystem& eig, double gamma) {
  double worst = 1.0;
  for (double l : eig.lambdas_sq()) {
    const double floor_l = std::floor(l);
    if (floor_l < 1.0) continue;
    worst = std::max(worst, std::pow(japanese_bracket(l) / japanese_bracket(floor_l), 0.5 * gamma));
  }
  return worst;
}

}  // namespace specsmooth
