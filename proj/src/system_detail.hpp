#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "pullin/domain.hpp"

namespace pullin::detail {

// Operator-row Laplace matrix of a lattice domain (symmetric M-matrix).
Eigen::SparseMatrix<double> laplace_matrix(const DomainSpec& dom);

// Flux-form radial Laplace pencil S phi = lambda D phi; S is the symmetric
// tridiagonal flux matrix, D the diagonal of shell volumes.
struct RadialLaplace {
  std::vector<double> diag;  // S diagonal
  std::vector<double> sub;   // S subdiagonal, sub[j] = S(j, j-1), sub[0] = 0
  std::vector<double> vols;  // D diagonal
};
RadialLaplace radial_laplace(const DomainSpec& dom);

// Direct solve of the symmetric tridiagonal system (no pivoting; intended
// for diagonally dominant M-matrices).
std::vector<double> thomas(const std::vector<double>& diag,
                           const std::vector<double>& sub,
                           std::vector<double> rhs);

}  // namespace pullin::detail
