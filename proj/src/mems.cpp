#include "pullin/mems.hpp"

#include <algorithm>
#include <cmath>

#include "pullin/errors.hpp"
#include "pullin/rearrange.hpp"

namespace pullin {

const char* to_string(IterationStatus s) {
  switch (s) {
    case IterationStatus::Converged: return "converged";
    case IterationStatus::Touchdown: return "touchdown";
    case IterationStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

void validate_forcing(const GridFunction& f, const DomainSpec& dom) {
  if (&f.domain() != &dom)
    throw ConfigError("forcing profile lives on a different domain");
  if (f.min() < 0) throw ConfigError("forcing profile must be nonnegative");
}

std::vector<double> forcing_rhs(double lambda, const GridFunction& f,
                                const Nonlinearity& g,
                                std::span<const double> u) {
  std::vector<double> rhs(u.size());
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] = lambda * f[i] * g(u[i]);
  return rhs;
}

}  // namespace

GridFunction picard_step(DirichletSolver& solver, double lambda,
                         const GridFunction& f, const Nonlinearity& g,
                         const GridFunction& u_prev) {
  if (!(lambda > 0)) throw ConfigError("picard_step: lambda must be positive");
  validate_forcing(f, *solver.domain());
  GridFunction rhs(solver.domain(),
                   forcing_rhs(lambda, f, g, u_prev.values()));
  return solver.solve(rhs, &u_prev);
}

IterationOutcome minimal_solution(DirichletSolver& solver, double lambda,
                                  const GridFunction& f, const Nonlinearity& g,
                                  const IterationConfig& cfg) {
  if (!(lambda > 0))
    throw ConfigError("minimal_solution: lambda must be positive");
  validate_forcing(f, *solver.domain());
  if (cfg.max_picard < 1 || !(cfg.picard_tol > 0) ||
      !(cfg.touchdown_margin > 0))
    throw ConfigError("minimal_solution: invalid iteration configuration");

  GridFunction u = GridFunction::constant(solver.domain(), 0.0);
  IterationOutcome out;
  for (int m = 1; m <= cfg.max_picard; ++m) {
    GridFunction rhs(solver.domain(), forcing_rhs(lambda, f, g, u.values()));
    // The first step cold-starts the nonlinear solver (zeros carry no
    // gradient information); later steps warm-start from the previous iterate.
    GridFunction next = solver.solve(rhs, (m == 1) ? nullptr : &u);
    out.iterations = m;
    out.final_max = next.max();
    if (out.final_max >= 1.0 - cfg.touchdown_margin) {
      out.status = IterationStatus::Touchdown;
      return out;
    }
    double delta = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      delta = std::max(delta, std::abs(next[i] - u[i]));
    u = std::move(next);
    if (delta <= cfg.picard_tol) {
      out.status = IterationStatus::Converged;
      out.solution = std::move(u);
      return out;
    }
  }
  out.status = IterationStatus::IterationLimit;
  return out;
}

IterationOutcome minimal_solution(const EllipticOperator& op, DomainPtr domain,
                                  double lambda, const GridFunction& f,
                                  const Nonlinearity& g,
                                  const IterationConfig& cfg) {
  DirichletSolver solver(op, std::move(domain), cfg.solver);
  return minimal_solution(solver, lambda, f, g, cfg);
}

PullInResult pull_in_search(
    const std::function<IterationOutcome(double)>& probe,
    const PullInConfig& cfg) {
  if (!(cfg.lambda_seed > 0))
    throw ConfigError("pull_in_search: lambda_seed must be positive");
  if (!(cfg.bisection_rtol > 0))
    throw ConfigError("pull_in_search: bisection_rtol must be positive");

  PullInResult result;
  const auto run = [&](double lambda) {
    IterationOutcome o = probe(lambda);
    result.trace.push_back({lambda, o.status, o.iterations});
    return o;
  };

  // Shrink the seed until the problem is solvable there.
  double lo = cfg.lambda_seed;
  IterationOutcome at_lo = run(lo);
  int shrinks = 0;
  while (at_lo.status != IterationStatus::Converged) {
    if (++shrinks > cfg.max_seed_shrinks)
      throw BracketError(
          "pull_in_search: no solvable lambda found while shrinking the "
          "seed; the problem may be degenerate");
    lo /= 2;
    at_lo = run(lo);
  }

  // Geometric up-scan to the first non-solvable lambda.
  double hi = 0;
  GridFunction u_lo = *at_lo.solution;
  bool bracketed = false;
  for (int k = 0; k < cfg.max_doublings; ++k) {
    const double next = lo * 2;
    IterationOutcome o = run(next);
    if (o.status == IterationStatus::Converged) {
      lo = next;
      u_lo = std::move(*o.solution);
    } else {
      hi = next;
      bracketed = true;
      break;
    }
  }
  if (!bracketed)
    throw BracketError(
        "pull_in_search: still solvable after the doubling budget; no "
        "pull-in value in range");

  while (hi - lo > cfg.bisection_rtol * lo) {
    const double mid = 0.5 * (lo + hi);
    IterationOutcome o = run(mid);
    if (o.status == IterationStatus::Converged) {
      lo = mid;
      u_lo = std::move(*o.solution);
    } else {
      hi = mid;
    }
  }

  result.lambda_lo = lo;
  result.lambda_hi = hi;
  result.solution_lo = std::move(u_lo);
  return result;
}

PullInResult pull_in_voltage(const EllipticOperator& op, DomainPtr domain,
                             const GridFunction& f, const Nonlinearity& g,
                             const PullInConfig& cfg) {
  DirichletSolver solver(op, std::move(domain), cfg.iteration.solver);
  validate_forcing(f, *solver.domain());
  return pull_in_search(
      [&](double lambda) {
        return minimal_solution(solver, lambda, f, g, cfg.iteration);
      },
      cfg);
}

namespace {

// Radial solve of the ball comparison problem. Elliptic operators on the
// domain compare against -c Laplace; dividing the data by c realizes that
// with a plain radial Laplace solve.
GridFunction ball_comparison_solve(const EllipticOperator& op, DomainPtr ball,
                                   std::vector<double> fstar,
                                   SolverConfig solver_cfg) {
  EllipticOperator radial_op = EllipticOperator::laplace();
  if (op.kind() == OperatorKind::PLaplace)
    radial_op = EllipticOperator::plaplace(op.p());
  else if (op.kind() == OperatorKind::Elliptic) {
    const double c = op.ellipticity_floor();
    for (double& v : fstar) v /= c;
  }
  GridFunction rhs(ball, std::move(fstar));
  return solve(radial_op, std::move(ball), rhs, solver_cfg);
}

}  // namespace

TalentiReport talenti_check(const EllipticOperator& op, DomainPtr domain,
                            const GridFunction& f, double grid_slack,
                            int n_radial, SolverConfig solver_cfg) {
  if (!domain) throw ConfigError("talenti_check: null domain");
  validate_forcing(f, *domain);

  const GridFunction u = solve(op, domain, f, solver_cfg);
  const RearrangedFunction fstar = rearrange(f, n_radial);
  const RearrangedFunction ustar = rearrange(u, n_radial);

  TalentiReport rep;
  rep.ball = ustar.ball();
  rep.ustar = ustar.profile();
  const GridFunction v = ball_comparison_solve(op, rep.ball, fstar.profile(),
                                               solver_cfg);
  rep.v.assign(v.values().begin(), v.values().end());

  double deficit = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rep.ustar.size(); ++j)
    deficit = std::max(deficit, rep.ustar[j] - rep.v[j]);
  rep.max_deficit = deficit;
  const double h = std::max(domain->spacing(), rep.ball->spacing());
  rep.tolerance = grid_slack * h * v.sup_norm();
  rep.passed = deficit <= rep.tolerance;
  return rep;
}

OrderingReport pullin_compare(const EllipticOperator& op, DomainPtr domain,
                              const GridFunction& f, const Nonlinearity& g,
                              const PullInConfig& cfg, double ordering_slack,
                              int n_radial) {
  if (!domain) throw ConfigError("pullin_compare: null domain");
  validate_forcing(f, *domain);

  OrderingReport rep;
  rep.slack = ordering_slack;
  rep.domain_result = pull_in_voltage(op, domain, f, g, cfg);
  rep.lambda_domain = rep.domain_result.lambda_lo;

  const RearrangedFunction fstar = rearrange(f, n_radial);
  rep.ball = fstar.ball();
  EllipticOperator ball_op = (op.kind() == OperatorKind::PLaplace)
                                 ? EllipticOperator::plaplace(op.p())
                                 : EllipticOperator::laplace();
  GridFunction fstar_fn(rep.ball, fstar.profile());
  rep.ball_result = pull_in_voltage(ball_op, rep.ball, fstar_fn, g, cfg);
  const double scale =
      (op.kind() == OperatorKind::Elliptic) ? op.ellipticity_floor() : 1.0;
  rep.lambda_ball = scale * rep.ball_result.lambda_lo;
  rep.ordered = rep.lambda_ball <= rep.lambda_domain * (1.0 + ordering_slack);
  return rep;
}

}  // namespace pullin
