#include "pullin/spectral.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "pullin/errors.hpp"
#include "system_detail.hpp"

namespace pullin {

namespace {

void sup_normalize(std::vector<double>& x) {
  double s = 0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > s) {
      s = std::abs(x[i]);
      arg = i;
    }
  if (!(s > 0)) throw SolverError("eigen iteration collapsed to zero");
  const double scale = 1.0 / x[arg];  // largest entry becomes +1
  for (double& v : x) v *= scale;
}

DirichletEigenResult lattice_eig1(DomainPtr domain, const EigenConfig& cfg) {
  const Eigen::SparseMatrix<double> A = detail::laplace_matrix(*domain);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(A);
  if (ldlt.info() != Eigen::Success)
    throw SolverError("dirichlet_eig1: factorization failed");

  const std::size_t n = domain->size();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(Eigen::Index(n));
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Eigen::VectorXd y = ldlt.solve(x);
    const double lambda = y.dot(x) / y.dot(y);
    std::vector<double> xn(y.data(), y.data() + y.size());
    sup_normalize(xn);
    const Eigen::Map<const Eigen::VectorXd> xv(xn.data(), y.size());
    const double res = (A * xv - lambda * xv).lpNorm<Eigen::Infinity>();
    x = xv;
    if (res <= cfg.eigen_tol * lambda) {
      DirichletEigenResult out;
      out.lambda1 = lambda;
      out.phi1 = GridFunction(std::move(domain), std::move(xn));
      out.residual = res;
      out.iterations = it;
      return out;
    }
  }
  throw SolverError("dirichlet_eig1: inverse iteration hit max_iter");
}

DirichletEigenResult radial_eig1(DomainPtr domain, const EigenConfig& cfg) {
  const detail::RadialLaplace sys = detail::radial_laplace(*domain);
  const std::size_t n = sys.diag.size();
  const auto apply_S = [&sys, n](const std::vector<double>& v) {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
      double s = sys.diag[j] * v[j];
      if (j > 0) s += sys.sub[j] * v[j - 1];
      if (j + 1 < n) s += sys.sub[j + 1] * v[j + 1];
      out[j] = s;
    }
    return out;
  };

  std::vector<double> x(n, 1.0);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    std::vector<double> rhs(n);
    for (std::size_t j = 0; j < n; ++j) rhs[j] = sys.vols[j] * x[j];
    std::vector<double> y = detail::thomas(sys.diag, sys.sub, std::move(rhs));
    double num = 0, den = 0;
    for (std::size_t j = 0; j < n; ++j) {
      num += y[j] * sys.vols[j] * x[j];
      den += y[j] * sys.vols[j] * y[j];
    }
    const double lambda = num / den;
    sup_normalize(y);
    const std::vector<double> sy = apply_S(y);
    double res = 0;
    for (std::size_t j = 0; j < n; ++j)
      res = std::max(res, std::abs(sy[j] / sys.vols[j] - lambda * y[j]));
    x = y;
    if (res <= cfg.eigen_tol * lambda) {
      DirichletEigenResult out;
      out.lambda1 = lambda;
      out.phi1 = GridFunction(std::move(domain), std::move(x));
      out.residual = res;
      out.iterations = it;
      return out;
    }
  }
  throw SolverError("dirichlet_eig1: inverse iteration hit max_iter");
}

}  // namespace

DirichletEigenResult dirichlet_eig1(DomainPtr domain, const EigenConfig& cfg) {
  if (!domain) throw ConfigError("dirichlet_eig1: null domain");
  if (!(cfg.eigen_tol > 0) || cfg.max_iter < 1)
    throw ConfigError("dirichlet_eig1: invalid eigen configuration");
  if (domain->kind() == DomainKind::Ball)
    return radial_eig1(std::move(domain), cfg);
  return lattice_eig1(std::move(domain), cfg);
}

double dirichlet_pullin_bound(const DirichletEigenResult& eig,
                              const GridFunction& f) {
  if (f.domain_ptr().get() != eig.phi1.domain_ptr().get())
    throw ConfigError("dirichlet_pullin_bound: profile domain mismatch");
  if (f.min() < 0)
    throw ConfigError("dirichlet_pullin_bound: f must be nonnegative");
  const auto& vols = f.domain().cell_volumes();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += eig.phi1[i] * vols[i];
    den += eig.phi1[i] * f[i] * vols[i];
  }
  if (!(den > 0))
    throw ConfigError("dirichlet_pullin_bound: integral of phi1 * f vanishes");
  return 4.0 * eig.lambda1 / 3.0 * num / den;
}

FaberKrahnReport faber_krahn_check(DomainPtr domain, double slack,
                                   int n_radial, const EigenConfig& cfg) {
  if (!domain) throw ConfigError("faber_krahn_check: null domain");
  FaberKrahnReport rep;
  rep.slack = slack;
  rep.ball = symmetrize_domain(*domain, n_radial);
  rep.lambda_domain = dirichlet_eig1(domain, cfg).lambda1;
  rep.lambda_ball = dirichlet_eig1(rep.ball, cfg).lambda1;
  rep.ordered = rep.lambda_ball <= rep.lambda_domain * (1.0 + slack);
  return rep;
}

}  // namespace pullin
