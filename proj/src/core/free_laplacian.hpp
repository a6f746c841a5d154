#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core/operator_builder.hpp"

namespace specsmooth {

/// Frequency band |xi| in [sqrt(N), sqrt(N+1)) of the free projector
/// 1_{[N,N+1)}(-d^2/dx^2). half_width = (sqrt(N+1) - sqrt(N)) / 2 and
/// centre = (sqrt(N+1) + sqrt(N)) / 2, so half_width * centre = 1/4.
struct BandParams {
  std::int64_t n = 1;
  double half_width = 0.0;  // C_N
  double centre = 0.0;      // D_N
};

BandParams band_params(std::int64_t n);

enum class KernelMethod { closed_form, quadrature };

/// Convolution kernel of the free projector,
/// F_N(u) = (1/2 pi) int e^{iu xi} 1_band(|xi|) d xi = (2/pi) cos(D u) sin(C u) / u.
double kernel_F(std::int64_t n, double u, KernelMethod method = KernelMethod::closed_form);

/// Kernel of T T^* for T f = N^{1/4} psi 1_{[N,N+1)}(-Delta) f. Because the
/// projector is idempotent, the y-integral of F_N(x-y) F_N(z-y) is F_N(x-z):
/// Lambda(x, z) = N^{1/2} psi(x) psi(z) F_N(x - z).
double ttstar_kernel(std::int64_t n, double x, double z, double psi_x, double psi_z);

struct UniformBound {
  std::vector<std::int64_t> bands;
  std::vector<double> per_band_sup;  // sup |Lambda| / (|psi(x)| |psi(z)|) for each N
  double sup = 0.0;
  double variation = 0.0;  // (max - min) / max over per_band_sup
  std::size_t support_points = 0;
};

/// Support is { x_i : |psi_i| > 1e-12 max |psi| }.
UniformBound uniform_bound_check(std::span<const std::int64_t> bands, const Grid& grid,
                                 std::span<const double> psi);

/// Exponent theta(q, k); q = +infinity selects the last branch. eta is
/// required (and must be positive) exactly when q == 4.
double theta_exponent(double q, double k, std::optional<double> eta = std::nullopt);

}  // namespace specsmooth
