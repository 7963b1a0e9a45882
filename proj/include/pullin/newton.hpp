#pragma once

#include <span>

#include "pullin/domain.hpp"
#include "pullin/mems.hpp"
#include "pullin/spectral.hpp"

namespace pullin {

// Fundamental solution of -Laplace in R^d, d >= 3:
// eps_d(r) = 1 / ((d-2) sigma_d r^{d-2}).
double fundamental_solution(int dim, double r);

// Midpoint quadrature of the Newtonian potential over the support cells,
// with exact self-cell and (on balls) exact spherical-shell weights. The
// product stays a plain O(N^2) sum; no fast summation is attempted.
class KernelQuadrature {
public:
  explicit KernelQuadrature(DomainPtr support);

  const DomainPtr& support() const { return support_; }
  int dim() const { return dim_; }
  std::size_t size() const { return support_->size(); }
  // True when the dense matrix is cached (small cell counts).
  bool dense() const { return dense_; }

  // Symmetric positive kernel factor of a cell pair. Off-diagonal mask
  // entries are eps_d(|x_i - x_j|) h^d, ball entries eps_d(max(r_i, r_j));
  // the diagonal carries the integrated self weight.
  double kernel_factor(std::size_t i, std::size_t j) const;

  // Newtonian potential values of the given cell densities.
  std::vector<double> apply(std::span<const double> density) const;
  GridFunction potential(const GridFunction& density) const;

private:
  double mask_pair(std::size_t i, std::size_t j) const;

  DomainPtr support_;
  int dim_ = 3;
  bool ball_ = false;
  bool dense_ = false;
  double self_weight_ = 0;
  std::vector<std::array<double, 3>> pos_;
  std::vector<double> matrix_;  // row-major dense apply matrix when cached
};

GridFunction newton_potential(const KernelQuadrature& kernel,
                              const GridFunction& density);

struct PotentialEigenResult {
  double mu1 = 0;  // smallest mu with phi = mu * K phi, i.e. 1/rho(K)
  GridFunction phi1;
  double residual = 0;  // |phi - mu1 K phi|_inf at sup-normalized phi
  int iterations = 0;
};

PotentialEigenResult newton_mu1(const KernelQuadrature& kernel,
                                const EigenConfig& cfg = {});

// Integral-equation counterpart of the membrane iteration:
// u_next = lambda K(f g(u)), monotone from zero.
IterationOutcome newton_minimal_solution(const KernelQuadrature& kernel,
                                         double lambda, const GridFunction& f,
                                         const Nonlinearity& g,
                                         const IterationConfig& cfg = {});

PullInResult newton_pull_in(const KernelQuadrature& kernel,
                            const GridFunction& f, const Nonlinearity& g,
                            const PullInConfig& cfg = {});

// Pull-in upper bound 4 mu1 / (27 inf f); requires inf f > 0.
double newton_pullin_bound(double mu1, double inf_f);

// Sharper computable majorant min(mu1, 4 mu1 / (27 inf f)): the weighted
// eigenfunction estimate caps the pull-in value by mu1 itself, and the
// refined bound improves on that whenever inf f > 4/27. Requires f > 0.
double newton_weighted_bound(const PotentialEigenResult& eig,
                             const GridFunction& f);

}  // namespace pullin
