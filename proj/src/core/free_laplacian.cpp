#include "core/free_laplacian.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace specsmooth {

namespace {

constexpr double kPi = std::numbers::pi;

double band_integral(double lo, double hi, double u, std::size_t panels) {
  using boost::math::quadrature::gauss;
  const double width = (hi - lo) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    const double b = p + 1 == panels ? hi : a + width;
    total += gauss<double, 10>::integrate([u](double xi) { return std::cos(u * xi); }, a, b);
  }
  return total;
}

double kernel_quadrature(const BandParams& band, double u) {
  const double lo = std::sqrt(static_cast<double>(band.n));
  const double hi = std::sqrt(static_cast<double>(band.n) + 1.0);
  // panels no wider than a quarter period of cos(u xi), nor pi / (4 D_N)
  const double max_width = std::min(kPi / (4.0 * band.centre), kPi / (4.0 * std::max(std::abs(u), 1.0)));
  auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / max_width));
  panels = std::max<std::size_t>(panels, 1);
  // symmetric band: (1/2pi) * 2 * int_lo^hi cos(u xi) d xi
  double previous = band_integral(lo, hi, u, panels) / kPi;
  for (int refine = 0; refine < 12; ++refine) {
    panels *= 2;
    const double current = band_integral(lo, hi, u, panels) / kPi;
    if (std::abs(current - previous) <= 1e-14 * std::max(1.0, std::abs(current))) return current;
    previous = current;
  }
  throw NumericalFailure("kernel_F quadrature did not converge at u = " + std::to_string(u));
}

}  // namespace

BandParams band_params(std::int64_t n) {
  if (n < 1) throw InvalidArgument("band index N must be >= 1, got " + std::to_string(n));
  BandParams b;
  b.n = n;
  b.centre = 0.5 * (std::sqrt(static_cast<double>(n) + 1.0) + std::sqrt(static_cast<double>(n)));
  // sqrt(N+1) - sqrt(N) = 1 / (sqrt(N+1) + sqrt(N)), free of cancellation
  b.half_width = 0.25 / b.centre;
  return b;
}

double kernel_F(std::int64_t n, double u, KernelMethod method) {
  const BandParams band = band_params(n);
  if (method == KernelMethod::quadrature) return kernel_quadrature(band, u);
  const double cu = band.half_width * u;
  double sinc_part;  // sin(C u) / u
  if (std::abs(cu) < 1e-4) {
    const double c2 = cu * cu;
    sinc_part = band.half_width * (1.0 - c2 / 6.0 + c2 * c2 / 120.0);
  } else {
    sinc_part = std::sin(cu) / u;
  }
  return (2.0 / kPi) * std::cos(band.centre * u) * sinc_part;
}

double ttstar_kernel(std::int64_t n, double x, double z, double psi_x, double psi_z) {
  if (psi_x == 0.0 || psi_z == 0.0) return 0.0;
  return std::sqrt(static_cast<double>(n)) * psi_x * psi_z * kernel_F(n, x - z);
}

UniformBound uniform_bound_check(std::span<const std::int64_t> bands, const Grid& grid,
                                 std::span<const double> psi) {
  if (psi.size() != grid.size()) throw InvalidArgument("weight/grid size mismatch");
  if (bands.empty()) throw InvalidArgument("uniform_bound_check needs at least one band");
  for (auto n : bands) band_params(n);

  double peak = 0.0;
  for (double p : psi) peak = std::max(peak, std::abs(p));
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (peak > 0.0 && std::abs(psi[i]) > 1e-12 * peak) support.push_back(i);
  }
  if (support.empty()) throw InvalidArgument("weight vanishes on the whole grid");

  UniformBound out;
  out.bands.assign(bands.begin(), bands.end());
  out.support_points = support.size();
  out.per_band_sup.resize(bands.size());
  parallel_for(bands.size(), [&](std::size_t b) {
    double best = 0.0;
    for (std::size_t i : support) {
      for (std::size_t j : support) {
        const double lam = ttstar_kernel(bands[b], grid[i], grid[j], psi[i], psi[j]);
        best = std::max(best, std::abs(lam) / (std::abs(psi[i]) * std::abs(psi[j])));
      }
    }
    out.per_band_sup[b] = best;
  });
  const auto [lo, hi] = std::minmax_element(out.per_band_sup.begin(), out.per_band_sup.end());
  out.sup = *hi;
  out.variation = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
  return out;
}

double theta_exponent(double q, double k, std::optional<double> eta) {
  if (std::isnan(q) || q < 2.0) throw InvalidArgument("theta: q must be in [2, inf]");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("theta: k must be positive");
  if (std::isinf(q)) return (4.0 - k) / (6.0 * k);
  if (q < 4.0) return (2.0 / k) * (0.5 - 1.0 / q);
  if (q == 4.0) {
    if (!eta) throw InvalidArgument("theta: q = 4 requires eta > 0");
    if (!(*eta > 0.0)) throw InvalidArgument("theta: eta must be positive");
    return 1.0 / (2.0 * k) - *eta;
  }
  return 0.5 - (2.0 / 3.0) * (1.0 - 1.0 / q) * (1.0 - 1.0 / k);
}

}  // namespace specsmooth
