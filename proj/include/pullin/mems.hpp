#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pullin/domain.hpp"
#include "pullin/nonlinearity.hpp"
#include "pullin/operators.hpp"

namespace pullin {

struct IterationConfig {
  double picard_tol = 1e-6;       // sup-norm change between outer iterates
  int max_picard = 2000;
  double touchdown_margin = 1e-3; // treat max(u) >= 1 - margin as touchdown
  SolverConfig solver;
};

enum class IterationStatus { Converged, Touchdown, IterationLimit };
const char* to_string(IterationStatus s);

struct IterationOutcome {
  IterationStatus status = IterationStatus::IterationLimit;
  std::optional<GridFunction> solution;  // present iff Converged
  int iterations = 0;
  double final_max = 0;  // max of the last accepted iterate
};

// One monotone step: solve op(u_next) = lambda * f * g(u_prev).
GridFunction picard_step(DirichletSolver& solver, double lambda,
                         const GridFunction& f, const Nonlinearity& g,
                         const GridFunction& u_prev);

// Monotone iteration from u = 0. Converged iterates approximate the minimal
// solution; Touchdown and IterationLimit both count as "no solution found".
IterationOutcome minimal_solution(const EllipticOperator& op, DomainPtr domain,
                                  double lambda, const GridFunction& f,
                                  const Nonlinearity& g,
                                  const IterationConfig& cfg = {});
// Same, reusing an existing solve context.
IterationOutcome minimal_solution(DirichletSolver& solver, double lambda,
                                  const GridFunction& f, const Nonlinearity& g,
                                  const IterationConfig& cfg = {});

struct PullInConfig {
  IterationConfig iteration;
  double lambda_seed = 0.1;
  double bisection_rtol = 1e-3;  // stop when hi - lo <= rtol * lo
  int max_doublings = 60;
  int max_seed_shrinks = 20;
};

struct ProbeRecord {
  double lambda = 0;
  IterationStatus status = IterationStatus::IterationLimit;
  int iterations = 0;
};

// Bracket [lambda_lo, lambda_hi]: solvable at lo, not solvable at hi. The
// reported iteration-limited probes bias the estimate downward, never up.
struct PullInResult {
  double lambda_lo = 0;
  double lambda_hi = 0;
  std::optional<GridFunction> solution_lo;  // minimal solution at lambda_lo
  std::vector<ProbeRecord> trace;
};

PullInResult pull_in_voltage(const EllipticOperator& op, DomainPtr domain,
                             const GridFunction& f, const Nonlinearity& g,
                             const PullInConfig& cfg = {});

// Bracket search over an abstract solvability probe: shrink the seed to a
// solvable lambda, double up to the first unsolvable one, then bisect.
PullInResult pull_in_search(
    const std::function<IterationOutcome(double)>& probe,
    const PullInConfig& cfg);

// Symmetrized linear comparison: solves op(u) = f on the domain and the
// radial problem with data f* on the measure-equivalent ball, then checks
// u* <= v up to the O(h) resampling tolerance grid_slack * h * |v|_inf.
struct TalentiReport {
  DomainPtr ball;
  std::vector<double> ustar;  // rearranged domain solution at the ball nodes
  std::vector<double> v;      // radial comparison solution
  double max_deficit = 0;     // max(ustar - v); <= tolerance means passed
  double tolerance = 0;
  bool passed = false;
};

TalentiReport talenti_check(const EllipticOperator& op, DomainPtr domain,
                            const GridFunction& f, double grid_slack = 5.0,
                            int n_radial = 0, SolverConfig solver = {});

// Pull-in ordering lambda*(ball, f*) <= lambda*(domain, f) * (1 + slack).
// Elliptic operators compare against -c Laplace on the ball (c = ellipticity
// floor), realized by scaling the radial Laplace pull-in value by c.
struct OrderingReport {
  PullInResult domain_result;
  PullInResult ball_result;  // raw radial result (unscaled)
  DomainPtr ball;
  double lambda_domain = 0;
  double lambda_ball = 0;  // scaled by the ellipticity floor where applicable
  double slack = 0;
  bool ordered = false;
};

OrderingReport pullin_compare(const EllipticOperator& op, DomainPtr domain,
                              const GridFunction& f, const Nonlinearity& g,
                              const PullInConfig& cfg = {},
                              double ordering_slack = 0.05, int n_radial = 0);

}  // namespace pullin
