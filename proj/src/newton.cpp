#include "pullin/newton.hpp"

#include <algorithm>
#include <cmath>

#include "pullin/errors.hpp"

namespace pullin {

namespace {

// Potential at the center of a unit cube carrying unit density, times 4 pi:
// the exact self-cell weight of the d = 3 lattice quadrature is this
// constant over 4 pi, scaled by h^2.
constexpr double kCubeSelfIntegral = 2.380077363979553;

// Cache the dense apply matrix up to this many cells (14000^2 doubles is
// ~1.5 GB); beyond it every apply falls back to the O(N^2) on-the-fly sum.
constexpr std::size_t kDenseCellLimit = 14000;

// Integral of eps_d(max(rt, s)) over the spherical shell a <= s <= b,
// split at rt (shell theorem: the spherical average of eps_d at radius s
// seen from radius rt is eps_d(max(rt, s))).
double shell_weight(int d, double rt, double a, double b) {
  double w = 0;
  const double m = std::clamp(rt, a, b);
  if (m > a)
    w += (std::pow(m, d) - std::pow(a, d)) /
         (d * (d - 2) * std::pow(rt, d - 2));
  if (b > m) w += (b * b - m * m) / (2 * (d - 2));
  return w;
}

double sup(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double fundamental_solution(int dim, double r) {
  if (dim < 3)
    throw ConfigError("fundamental_solution: requires dim >= 3");
  if (!(r > 0)) throw ConfigError("fundamental_solution: requires r > 0");
  return 1.0 / ((dim - 2) * unit_sphere_area(dim) * std::pow(r, dim - 2));
}

KernelQuadrature::KernelQuadrature(DomainPtr support)
    : support_(std::move(support)) {
  if (!support_) throw ConfigError("KernelQuadrature: null support");
  dim_ = support_->dim();
  if (dim_ < 3)
    throw ConfigError("KernelQuadrature: Newtonian potential needs dim >= 3");
  ball_ = support_->kind() == DomainKind::Ball;
  if (!ball_ && support_->kind() != DomainKind::Mask)
    throw ConfigError("KernelQuadrature: support must be a Mask or Ball");

  const std::size_t n = support_->size();
  if (ball_) {
    // Shells cover the whole ball: the outermost one extends to R so no
    // rim mass is lost (the integral problem has no boundary condition).
    dense_ = true;
    matrix_.resize(n * n);
    const auto& r = support_->radii();
    const double h = support_->spacing();
    const double radius = support_->radius();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double a = (j == 0) ? 0.0 : (double(j) - 0.5) * h;
        const double b = (j + 1 < n) ? (double(j) + 0.5) * h : radius;
        matrix_[i * n + j] = shell_weight(dim_, r[i], a, b);
      }
    return;
  }

  if (dim_ != 3)
    throw ConfigError("KernelQuadrature: mask supports are 3d");
  const double h = support_->spacing();
  self_weight_ = kCubeSelfIntegral / (4.0 * M_PI) * h * h;
  pos_.resize(n);
  for (std::size_t i = 0; i < n; ++i) pos_[i] = support_->position(i);
  dense_ = n < kDenseCellLimit;
  if (dense_) {
    matrix_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      matrix_[i * n + i] = self_weight_;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double w = mask_pair(i, j);
        matrix_[i * n + j] = w;
        matrix_[j * n + i] = w;
      }
    }
  }
}

double KernelQuadrature::mask_pair(std::size_t i, std::size_t j) const {
  const double dx = pos_[i][0] - pos_[j][0];
  const double dy = pos_[i][1] - pos_[j][1];
  const double dz = pos_[i][2] - pos_[j][2];
  const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
  const double h = support_->spacing();
  return h * h * h / (4.0 * M_PI * dist);
}

double KernelQuadrature::kernel_factor(std::size_t i, std::size_t j) const {
  if (ball_) {
    if (i == j) return matrix_[i * size() + i];
    const auto& r = support_->radii();
    return fundamental_solution(dim_, std::max(r[i], r[j]));
  }
  if (i == j) return self_weight_;
  return mask_pair(i, j);
}

std::vector<double> KernelQuadrature::apply(
    std::span<const double> density) const {
  const std::size_t n = size();
  if (density.size() != n)
    throw ConfigError("KernelQuadrature::apply: density size mismatch");
  std::vector<double> out(n, 0.0);
  if (dense_) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = &matrix_[i * n];
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * density[j];
      out[i] = s;
    }
    return out;
  }
  // Matrix-free symmetric pair sweep; O(N^2) by design.
  const double h = support_->spacing();
  const double scale = h * h * h / (4.0 * M_PI);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] += self_weight_ * density[i];
    const double xi = pos_[i][0], yi = pos_[i][1], zi = pos_[i][2];
    const double di = density[i];
    double acc = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = pos_[j][0] - xi;
      const double dy = pos_[j][1] - yi;
      const double dz = pos_[j][2] - zi;
      const double w = scale / std::sqrt(dx * dx + dy * dy + dz * dz);
      acc += w * density[j];
      out[j] += w * di;
    }
    out[i] += acc;
  }
  return out;
}

GridFunction KernelQuadrature::potential(const GridFunction& density) const {
  if (density.domain_ptr().get() != support_.get())
    throw ConfigError("potential: density lives on a different domain");
  return GridFunction(support_, apply(density.values()));
}

GridFunction newton_potential(const KernelQuadrature& kernel,
                              const GridFunction& density) {
  return kernel.potential(density);
}

PotentialEigenResult newton_mu1(const KernelQuadrature& kernel,
                                const EigenConfig& cfg) {
  if (!(cfg.eigen_tol > 0) || cfg.max_iter < 1)
    throw ConfigError("newton_mu1: invalid eigen configuration");
  const std::size_t n = kernel.size();
  std::vector<double> v(n, 1.0);
  PotentialEigenResult out;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const std::vector<double> w = kernel.apply(v);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      num += w[i] * v[i];
      den += v[i] * v[i];
    }
    const double nu = num / den;  // largest eigenvalue of K
    double res = 0;
    for (std::size_t i = 0; i < n; ++i)
      res = std::max(res, std::abs(v[i] - w[i] / nu));
    if (res <= cfg.eigen_tol) {
      out.mu1 = 1.0 / nu;
      out.phi1 = GridFunction(kernel.support(), std::move(v));
      out.residual = res;
      out.iterations = it;
      return out;
    }
    const double s = sup(w);
    if (!(s > 0))
      throw SolverError("newton_mu1: power iteration collapsed to zero");
    v = w;
    for (double& x : v) x /= s;
  }
  throw SolverError("newton_mu1: power iteration hit max_iter");
}

IterationOutcome newton_minimal_solution(const KernelQuadrature& kernel,
                                         double lambda, const GridFunction& f,
                                         const Nonlinearity& g,
                                         const IterationConfig& cfg) {
  if (!(lambda > 0))
    throw ConfigError("newton_minimal_solution: lambda must be positive");
  if (f.domain_ptr().get() != kernel.support().get())
    throw ConfigError("newton_minimal_solution: forcing profile lives on a "
                      "different domain");
  if (f.min() < 0)
    throw ConfigError("newton_minimal_solution: forcing must be nonnegative");
  if (cfg.max_picard < 1 || !(cfg.picard_tol > 0) ||
      !(cfg.touchdown_margin > 0))
    throw ConfigError("newton_minimal_solution: invalid configuration");

  const std::size_t n = kernel.size();
  std::vector<double> u(n, 0.0), density(n);
  IterationOutcome out;
  for (int m = 1; m <= cfg.max_picard; ++m) {
    for (std::size_t i = 0; i < n; ++i) density[i] = lambda * f[i] * g(u[i]);
    std::vector<double> next = kernel.apply(density);
    out.iterations = m;
    out.final_max = *std::max_element(next.begin(), next.end());
    if (out.final_max >= 1.0 - cfg.touchdown_margin) {
      out.status = IterationStatus::Touchdown;
      return out;
    }
    double delta = 0;
    for (std::size_t i = 0; i < n; ++i)
      delta = std::max(delta, std::abs(next[i] - u[i]));
    u = std::move(next);
    if (delta <= cfg.picard_tol) {
      out.status = IterationStatus::Converged;
      out.solution = GridFunction(kernel.support(), std::move(u));
      return out;
    }
  }
  out.status = IterationStatus::IterationLimit;
  return out;
}

PullInResult newton_pull_in(const KernelQuadrature& kernel,
                            const GridFunction& f, const Nonlinearity& g,
                            const PullInConfig& cfg) {
  return pull_in_search(
      [&](double lambda) {
        return newton_minimal_solution(kernel, lambda, f, g, cfg.iteration);
      },
      cfg);
}

double newton_pullin_bound(double mu1, double inf_f) {
  if (!(mu1 > 0)) throw ConfigError("newton_pullin_bound: mu1 must be > 0");
  if (!(inf_f > 0))
    throw ConfigError("newton_pullin_bound: requires inf f > 0");
  return 4.0 * mu1 / (27.0 * inf_f);
}

double newton_weighted_bound(const PotentialEigenResult& eig,
                             const GridFunction& f) {
  const double inf_f = f.min();
  if (!(inf_f > 0))
    throw ConfigError("newton_weighted_bound: requires f > 0 on the support");
  return std::min(eig.mu1, newton_pullin_bound(eig.mu1, inf_f));
}

}  // namespace pullin
