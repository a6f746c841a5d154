#include "core/tridiag_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace specsmooth {

EigenSystem::EigenSystem(Grid grid, std::vector<double> lambdas_sq, std::vector<double> vectors,
                         std::vector<double> residuals, EigenSource source)
    : grid_(std::move(grid)),
      lambdas_sq_(std::move(lambdas_sq)),
      vectors_(std::move(vectors)),
      residuals_(std::move(residuals)),
      source_(source) {
  if (vectors_.size() != lambdas_sq_.size() * grid_.size() || residuals_.size() != lambdas_sq_.size()) {
    throw InvalidArgument("eigensystem storage does not match count x grid size");
  }
}

EigenSystem EigenSystem::truncated(std::size_t count) const {
  if (count > this->count()) throw InvalidArgument("truncation larger than the eigensystem");
  const std::size_t n = grid_.size();
  EigenSystem out(grid_, {lambdas_sq_.begin(), lambdas_sq_.begin() + count},
                  {vectors_.begin(), vectors_.begin() + count * n},
                  {residuals_.begin(), residuals_.begin() + count}, source_);
  out.warnings_ = warnings_;
  return out;
}

namespace {

void fix_sign_and_scale(std::span<double> v, double h) {
  double s = 0.0;
  for (double x : v) s += x * x;
  const double scale = 1.0 / std::sqrt(h * s);
  double sign = 1.0;
  for (double x : v) {
    if (std::abs(x * scale) > 1e-8) {
      sign = x < 0.0 ? -1.0 : 1.0;
      break;
    }
  }
  for (double& x : v) x *= sign * scale;
}

double discrete_residual(const SymTridiagonal& t, std::span<const double> v, double lambda, double h) {
  std::vector<double> tv(v.size());
  t.multiply(v, tv);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = tv[i] - lambda * v[i];
    s += r * r;
  }
  return std::sqrt(h * s);
}

}  // namespace

EigenSystem eigen_lowest(const TridiagonalHamiltonian& h, std::size_t count) {
  const std::size_t n = h.grid.size();
  if (count < 1 || count > n) {
    throw InvalidArgument("eigen_lowest: count must be in [1, " + std::to_string(n) + "], got " +
                          std::to_string(count));
  }
  const SymTridiagonal& t = h.matrix;

  std::vector<double> lambdas(count);
  parallel_for(count, [&](std::size_t k) {
    lambdas[k] = bisect_eigenvalue(t, k, {kBisectionAbsTol, kBisectionRelTol});
  });

  // clusters of near-degenerate eigenvalues: [begin, end)
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  for (std::size_t k = 0; k < count;) {
    std::size_t end = k + 1;
    while (end < count &&
           lambdas[end] - lambdas[end - 1] < kClusterRelGap * std::max(1.0, std::abs(lambdas[end]))) {
      ++end;
    }
    clusters.emplace_back(k, end);
    k = end;
  }

  std::vector<double> vectors(count * n);
  parallel_for(clusters.size(), [&](std::size_t c) {
    const auto [begin, end] = clusters[c];
    std::vector<std::vector<double>> basis;
    for (std::size_t k = begin; k < end; ++k) {
      basis.push_back(inverse_iteration(t, lambdas[k], basis, 0x5eed, k));
    }
    for (std::size_t k = begin; k < end; ++k) {
      std::copy(basis[k - begin].begin(), basis[k - begin].end(), vectors.begin() + k * n);
    }
  });

  const double spacing = h.grid.spacing();
  std::vector<double> residuals(count);
  parallel_for(count, [&](std::size_t k) {
    std::span<double> v(vectors.data() + k * n, n);
    fix_sign_and_scale(v, spacing);
    residuals[k] = discrete_residual(t, v, lambdas[k], spacing);
  });

  EigenSystem eig(h.grid, std::move(lambdas), std::move(vectors), std::move(residuals),
                  EigenSource::finite_difference);

  const double wall = std::min(h.potential.front(), h.potential.back());
  const double top = eig.lambda_sq(count - 1);
  if (wall < 4.0 * top) {
    std::ostringstream os;
    os << "domain truncation: V at the boundary (" << wall << ") is below 4x the largest eigenvalue ("
       << top << "); eigenfunctions may feel the Dirichlet wall";
    eig.add_warning(os.str());
  }
  return eig;
}

EigenSystem harmonic_reference(const Grid& grid, std::size_t count) {
  const std::size_t n = grid.size();
  if (count < 1 || count > n) throw InvalidArgument("harmonic_reference: count out of range");
  std::vector<double> vectors(count * n);
  const double c0 = std::pow(std::numbers::pi, -0.25);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    // normalized Hermite-function recurrence
    double prev = 0.0;
    double cur = c0 * std::exp(-0.5 * x * x);
    for (std::size_t j = 0; j < count; ++j) {
      vectors[j * n + i] = cur;
      const double jd = static_cast<double>(j);
      const double next = std::sqrt(2.0 / (jd + 1.0)) * x * cur - std::sqrt(jd / (jd + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
  }
  std::vector<double> lambdas(count);
  for (std::size_t j = 0; j < count; ++j) {
    lambdas[j] = 2.0 * static_cast<double>(j) + 1.0;
    fix_sign_and_scale({vectors.data() + j * n, n}, grid.spacing());
  }
  return EigenSystem(grid, std::move(lambdas), std::move(vectors), std::vector<double>(count, 0.0),
                     EigenSource::analytic);
}

double residual_check(const TridiagonalHamiltonian& h, const EigenSystem& eig) {
  if (!(h.grid == eig.grid())) {
    throw InvalidArgument("residual_check: Hamiltonian and eigensystem live on different grids");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < eig.count(); ++k) {
    worst = std::max(worst, discrete_residual(h.matrix, eig.vector(k), eig.lambda_sq(k), h.grid.spacing()));
  }
  return worst;
}

std::size_t points_for_spacing(double half_width, double spacing) {
  if (!(spacing > 0.0) || !(half_width > 0.0)) {
    throw InvalidArgument("spacing and half-width must be positive");
  }
  const double intervals = 2.0 * half_width / spacing;
  const double rounded = std::round(intervals);
  if (std::abs(intervals - rounded) > 1e-6 * rounded) {
    throw InvalidArgument("spacing does not divide the domain 2L evenly");
  }
  if (rounded < 4.0) throw InvalidArgument("spacing too coarse for the domain");
  return static_cast<std::size_t>(rounded) - 1;
}

ConvergenceTable convergence_table(const PotentialSpec& spec, double half_width,
                                   std::span<const double> spacings, std::size_t count) {
  if (spacings.size() < 3) throw InvalidArgument("convergence_table needs at least 3 spacings");
  for (std::size_t i = 1; i < spacings.size(); ++i) {
    if (!(spacings[i] < spacings[i - 1])) throw InvalidArgument("spacings must be strictly decreasing");
  }
  ConvergenceTable table;
  table.spacings.assign(spacings.begin(), spacings.end());
  for (double h : spacings) {
    const Grid grid(half_width, points_for_spacing(half_width, h));
    const auto eig = eigen_lowest(assemble_hamiltonian(spec, grid), count);
    table.lambdas_sq.emplace_back(eig.lambdas_sq().begin(), eig.lambdas_sq().end());
  }
  const std::size_t s = spacings.size();
  const double ratio = spacings[s - 3] / spacings[s - 2];
  table.observed_order.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double d12 = table.lambdas_sq[s - 3][k] - table.lambdas_sq[s - 2][k];
    const double d23 = table.lambdas_sq[s - 2][k] - table.lambdas_sq[s - 1][k];
    table.observed_order[k] = std::log(std::abs(d12 / d23)) / std::log(ratio);
  }
  return table;
}

}  // namespace specsmooth
