#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pullin/domain.hpp"
#include "pullin/mems.hpp"
#include "pullin/nonlinearity.hpp"
#include "pullin/operators.hpp"
#include "pullin/spectral.hpp"

namespace pullin {

// Resolved run configuration: every knob a result can depend on lives here,
// so reports can echo the complete effective configuration. Values are set
// by documented defaults, then a key = value config file, then flags (flags
// win). Unknown keys are rejected.
struct RunConfig {
  // problem selection
  std::string domain;             // grammar below, or file:<mask path>
  std::string op = "laplace";     // laplace | plaplace:<p> | elliptic:<csv>
  std::string g = "power:2";      // power:<m> | casimir:<sigma>
  std::string f = "one";          // one | const:<v> | linear:<a>:<b> | file:<csv>
  std::string eig_operator = "dirichlet-laplace";  // eigen subcommand only

  // solver knobs
  double tol = 1e-8;
  double eps = 1e-10;             // gradient regularization
  double relaxation = 0;          // 0 = automatic
  int max_iter = 10000;

  // membrane iteration knobs
  double picard_tol = 1e-6;
  double touchdown_margin = 1e-3;
  int max_picard = 2000;

  // pull-in search knobs
  double lambda_seed = 0.1;
  double bisection_rtol = 1e-3;
  int max_doublings = 60;
  int max_seed_shrinks = 20;

  // comparison / eigenvalue knobs
  double ordering_slack = 0.05;
  double fk_slack = 0.02;
  double grid_slack = 5.0;
  double eigen_tol = 1e-8;
  int eigen_max_iter = 10000;
  int n_radial = 0;               // 0 = derive from the domain spacing

  // randomized property suites
  int random = 0;                 // number of random cases (0 = single run)
  std::uint64_t seed = 12345;

  // sweep controls
  std::string over;               // knob to sweep: p | m | sigma | <double knob>
  std::string values;             // comma-separated sweep values

  // outputs
  std::string out = "result.json";  // JSON result path (always written)
  std::string csv;                  // optional CSV profile path
};

// Views of the run configuration as the per-module option structs.
SolverConfig make_solver_config(const RunConfig& cfg);
IterationConfig make_iteration_config(const RunConfig& cfg);
PullInConfig make_pullin_config(const RunConfig& cfg);
EigenConfig make_eigen_config(const RunConfig& cfg);

// Sets one knob from its textual value; throws ConfigError naming the key
// when it is unknown or the value does not parse.
void set_config_key(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// Reads a plain-text "key = value" file ('#' comments, blank lines ok) into
// cfg. Later flag application overrides these values.
void load_run_config(RunConfig& cfg, const std::string& path);

// Knob names by kind, in echo order (used by reporting and by the CLI to
// register one flag per knob).
const std::vector<std::string>& double_knob_names();
const std::vector<std::string>& int_knob_names();
const std::vector<std::string>& string_knob_names();
double get_double_knob(const RunConfig& cfg, const std::string& key);
long long get_int_knob(const RunConfig& cfg, const std::string& key);
std::string get_string_knob(const RunConfig& cfg, const std::string& key);

// Domain grammar (counts are cells across the full extent):
//   interval:<L>:<n>   n interior nodes on (0, L)
//   square:<S>:<n>     n x n cells, spacing S/n
//   disk:<R>:<n>       n x n cells covering [0, 2R]^2, centers inside the disk
//   ellipse:<A>:<B>:<n> semi-axes A >= B, n cells across 2A
//   lshape:<S>:<n>     square minus its upper-right quadrant
//   cube:<S>:<n>       n^3 cells
//   ball:<d>:<R>:<n>   radial domain, n nodes
//   file:<path>        mask bitmap file
DomainPtr parse_domain(const std::string& spec);

EllipticOperator parse_operator(const std::string& spec,
                                const DomainSpec& domain);
Nonlinearity parse_nonlinearity(const std::string& spec);
GridFunction parse_forcing(const std::string& spec, DomainPtr domain);

// Coefficient CSV: header "index,a11[,a22[,a12]]", one row per cell in cell
// order. Missing columns fall back to the coefficient defaults.
CoeffField load_coeff_field(const std::string& path, std::size_t cells);
void save_coeff_field(const CoeffField& coeff, const std::string& path);

}  // namespace pullin
