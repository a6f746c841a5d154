#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/dense_hermitian.hpp"
#include "core/spectral_projectors.hpp"
#include "core/tridiag_eig.hpp"

namespace specsmooth {

/// Which propagator drives the evolution: e^{-itH} (frequencies lambda_n^2)
/// or e^{-itA}, A = [H] (frequencies [lambda_n^2]).
enum class Dynamics { H, A };

/// Which operator carries the regularity weight <.>^{gamma/2}.
enum class Bracket { H, A };

/// Integration window [0, 2 pi] for every time integral here.
inline constexpr double kTimeHorizon = 6.283185307179586476925286766559;
/// Below this |mu| the time integral uses its Taylor expansion.
inline constexpr double kTaylorThreshold = 1e-6;

/// I(mu) = int_0^{2 pi} e^{-i t mu} dt. Exact 0 for nonzero integer mu.
Complex time_integral(double mu);

/// Evolution frequencies mu_n for the given dynamics.
std::vector<double> frequencies(const EigenSystem& eig, Dynamics dynamics);
/// Spectral weights w_n = <s_n>^{gamma/2}, s_n = lambda_n^2 or [lambda_n^2].
std::vector<double> bracket_weights(const EigenSystem& eig, double gamma, Bracket bracket);

Coefficients evolve(const EigenSystem& eig, const Coefficients& f, double t, Dynamics dynamics);

double coefficient_norm(const Coefficients& f);

/// Composite trapezoid rule with `panels` panels (panels + 1 nodes) over
/// [0, 2 pi] of ||psi <.>^{gamma/2} e^{-it.} f||^2, with the integrand
/// synthesized on the grid at each node. Returns the square root.
double smoothing_quadrature(const EigenSystem& eig, std::span<const double> psi, double gamma,
                            const Coefficients& f, Dynamics dynamics, std::size_t panels,
                            Bracket bracket = Bracket::H);

/// Exact time integral via the weighted Gram matrix:
/// S^2 = sum_{a,b} conj(c_a) c_b w_a w_b G_ab I(mu_b - mu_a).
double smoothing_closed_form(const EigenSystem& eig, std::span<const double> psi, double gamma,
                             const Coefficients& f, Dynamics dynamics, Bracket bracket = Bracket::H);
double smoothing_closed_form(const EigenSystem& eig, const RealMatrix& gram, double gamma,
                             const Coefficients& f, Dynamics dynamics, Bracket bracket = Bracket::H);

/// Hermitian PSD form Q with S(f)^2 = c^* Q c.
HermitianMatrix smoothing_form(const EigenSystem& eig, const RealMatrix& gram, double gamma,
                               Dynamics dynamics, Bracket bracket);

struct ParsevalCheck {
  double lhs = 0.0;  // closed-form S_A^2 with <A> weights
  double rhs = 0.0;  // 2 pi sum_N <N>^gamma ||psi P_N f||^2
};

ParsevalCheck parseval_identity_A(const EigenSystem& eig, std::span<const double> psi, double gamma,
                                  const Coefficients& f, const ProjectorIndex& index);

struct SmoothingConstant {
  double c1 = 0.0;
  Coefficients maximizer;
  std::vector<double> rayleigh_history;  // power-iteration Rayleigh quotients of Q
  bool power_converged = false;
  double top_eigenvalue = 0.0;
};

inline constexpr double kPowerTolerance = 1e-10;
inline constexpr std::size_t kPowerMaxIterations = 500;

/// Best constant C1 on the computed span: sqrt of the top eigenvalue of Q.
SmoothingConstant smoothing_constant(const EigenSystem& eig, std::span<const double> psi, double gamma,
                                     Dynamics dynamics, Bracket bracket);
SmoothingConstant smoothing_constant(const EigenSystem& eig, const RealMatrix& gram, double gamma,
                                     Dynamics dynamics, Bracket bracket);

struct DuhamelCheck {
  double discrepancy = 0.0;  // |S_H(f) - S_A(f)|, both with <H> weights
  double bound = 0.0;        // C1_A * 2 pi * ||(H - A) f||
};

DuhamelCheck duhamel_discrepancy(const EigenSystem& eig, std::span<const double> psi, double gamma,
                                 const Coefficients& f);

/// max over modes with [lambda^2] >= 1 of (<lambda^2> / <[lambda^2]>)^{gamma/2}.
double bracket_ratio_max(const EigenSystem& eig, double gamma);

}  // namespace specsmooth
