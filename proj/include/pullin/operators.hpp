#pragma once

#include <memory>

#include "pullin/domain.hpp"

namespace pullin {

enum class OperatorKind { Laplace, PLaplace, Elliptic };

// Per-cell symmetric coefficient matrix of -div(a(x) grad u). a11 is required;
// a22 (dim >= 2) and a33 (dim 3) default to a11 when empty; a12 (dim 2 only)
// defaults to zero. Mixed entries in 3d are not supported.
struct CoeffField {
  std::vector<double> a11;
  std::vector<double> a22;
  std::vector<double> a33;
  std::vector<double> a12;
};

class EllipticOperator {
public:
  static EllipticOperator laplace();
  static EllipticOperator plaplace(double p);
  // ellipticity_floor <= 0 means: use the smallest coefficient eigenvalue
  // over all cells. An explicit floor must be a valid lower bound.
  static EllipticOperator elliptic(CoeffField coeff,
                                   double ellipticity_floor = 0);

  OperatorKind kind() const { return kind_; }
  double p() const { return p_; }
  const CoeffField& coeff() const { return coeff_; }
  // Uniform lower bound on the coefficient eigenvalues (1 for Laplace,
  // defined only for p = 2 semantics of the comparison construction).
  double ellipticity_floor() const { return floor_; }
  bool linear() const {
    return kind_ != OperatorKind::PLaplace || p_ == 2.0;
  }

private:
  OperatorKind kind_ = OperatorKind::Laplace;
  double p_ = 2.0;
  double floor_ = 1.0;
  CoeffField coeff_;
};

struct SolverConfig {
  double tol = 1e-8;               // nonlinear residual, relative to max(1,|f|)
  int max_iter = 10000;            // frozen-coefficient iterations
  double regularization_eps = 1e-10;  // gradient regularization in |grad u|^2
  double relaxation = 0;           // 0 = auto (1 linear, 0.7 for p != 2)
};

// Reusable Dirichlet solve context for one (operator, domain) pair. Linear
// operators are factorized once; the p-Laplacian reuses the sparsity pattern
// and warm-starts from the provided initial guess.
class DirichletSolver {
public:
  DirichletSolver(EllipticOperator op, DomainPtr domain, SolverConfig config = {});
  ~DirichletSolver();
  DirichletSolver(DirichletSolver&&) noexcept;
  DirichletSolver& operator=(DirichletSolver&&) noexcept;

  const DomainPtr& domain() const;
  const EllipticOperator& op() const;
  const SolverConfig& config() const;

  // Solves A(u) = rhs with homogeneous Dirichlet data. Postconditions:
  // residual(u, rhs) <= tol * max(1, |rhs|_inf); if rhs >= 0 then u >= 0.
  GridFunction solve(const GridFunction& rhs, const GridFunction* init = nullptr);
  // |A(u) - rhs|_inf with zero extension outside the domain.
  double residual(const GridFunction& u, const GridFunction& rhs) const;
  // A(u) itself (the discrete operator applied to u).
  GridFunction apply(const GridFunction& u) const;

  struct Impl;

private:
  std::unique_ptr<Impl> impl_;
};

GridFunction solve(const EllipticOperator& op, DomainPtr domain,
                   const GridFunction& rhs, SolverConfig config = {},
                   const GridFunction* init = nullptr);
double residual(const EllipticOperator& op, const GridFunction& u,
                const GridFunction& rhs);

// Solves with f1 and f2 and reports whether 0 <= f1 <= f2 led to u1 <= u2
// (up to solver tolerance). Rejects inputs violating 0 <= f1 <= f2.
bool comparison_check(const EllipticOperator& op, DomainPtr domain,
                      const GridFunction& f1, const GridFunction& f2,
                      SolverConfig config = {});

}  // namespace pullin
