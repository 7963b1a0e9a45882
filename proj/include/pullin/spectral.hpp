#pragma once

#include "pullin/domain.hpp"

namespace pullin {

struct EigenConfig {
  double eigen_tol = 1e-8;  // residual, relative to the eigenvalue
  int max_iter = 10000;
};

struct DirichletEigenResult {
  double lambda1 = 0;
  GridFunction phi1;  // positive, sup-normalized to 1
  double residual = 0;
  int iterations = 0;
};

// Smallest Dirichlet eigenvalue of -Laplace by inverse power iteration
// (generalized flux-form problem on radial domains).
DirichletEigenResult dirichlet_eig1(DomainPtr domain,
                                    const EigenConfig& cfg = {});

// Pull-in upper bound (4 lambda1 / 3) * integral(phi1) / integral(phi1 * f)
// for the Dirichlet problem with forcing profile f >= 0, not a.e. zero.
double dirichlet_pullin_bound(const DirichletEigenResult& eig,
                              const GridFunction& f);

// lambda1(ball of equal measure) <= lambda1(domain) * (1 + slack).
struct FaberKrahnReport {
  DomainPtr ball;
  double lambda_domain = 0;
  double lambda_ball = 0;
  double slack = 0;
  bool ordered = false;
};

FaberKrahnReport faber_krahn_check(DomainPtr domain, double slack = 0.02,
                                   int n_radial = 0,
                                   const EigenConfig& cfg = {});

}  // namespace pullin
