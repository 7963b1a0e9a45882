// pullinlab: pull-in thresholds, rearrangement, and comparison-principle
// checks for membrane problems on intervals, lattice masks, and balls.
//
// Exit status: 0 success; 1 reserved exclusively for violated mathematical
// orderings (comparison, Faber-Krahn, upper bounds); 2 solver or output
// failure; 3 configuration error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pullin/cases.hpp"
#include "pullin/config.hpp"
#include "pullin/errors.hpp"
#include "pullin/mems.hpp"
#include "pullin/newton.hpp"
#include "pullin/rearrange.hpp"
#include "pullin/report.hpp"
#include "pullin/spectral.hpp"

namespace {

using namespace pullin;

constexpr int kExitOk = 0;
constexpr int kExitOrderingViolated = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitConfig = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// All knobs are registered as text options and funneled through the same
// key = value setter as the config file, so diagnostics and precedence are
// uniform: defaults, then --config file, then flags (flags win).
struct FlagStore {
  std::string config_path;
  std::map<std::string, std::string> raw;
  std::vector<std::pair<std::string, CLI::Option*>> options;
};

void register_knobs(CLI::App* sub, FlagStore& store) {
  sub->add_option("--config", store.config_path,
                  "plain-text key = value run-config file");
  auto reg = [sub, &store](const std::string& name, const char* desc) {
    CLI::Option* opt = sub->add_option("--" + name, store.raw[name], desc);
    store.options.emplace_back(name, opt);
  };
  reg("domain",
      "interval:L:n | square:S:n | disk:R:n | ellipse:A:B:n | lshape:S:n | "
      "cube:S:n | ball:d:R:n | file:<mask>");
  reg("op", "laplace | plaplace:p | elliptic:<coeff csv>");
  reg("g", "power:m | casimir:sigma");
  reg("f", "one | const:v | linear:a:b | file:<csv>");
  reg("operator", "eigen problem selector (dirichlet-laplace)");
  reg("out", "JSON result path (always written)");
  reg("csv", "CSV profile path (optional)");
  reg("over", "sweep knob: p | m | sigma | any numeric knob");
  reg("values", "comma-separated sweep values");
  reg("seed", "seed for randomized suites");
  reg("random", "number of random cases (0 = single run)");
  for (const auto& name : double_knob_names())
    if (!store.raw.count(name)) reg(name, "");
  for (const auto& name : int_knob_names())
    if (!store.raw.count(name)) reg(name, "");
}

RunConfig build_config(const FlagStore& store) {
  RunConfig cfg;
  if (!store.config_path.empty()) load_run_config(cfg, store.config_path);
  for (const auto& [name, opt] : store.options)
    if (opt->count() > 0) set_config_key(cfg, name, store.raw.at(name));
  return cfg;
}

Json domain_summary(const DomainSpec& d) {
  Json j;
  j["cells"] = d.size();
  j["dim"] = d.dim();
  switch (d.kind()) {
    case DomainKind::Interval: j["kind"] = "interval"; break;
    case DomainKind::Mask: j["kind"] = "mask"; break;
    case DomainKind::Ball: j["kind"] = "ball"; break;
  }
  j["measure"] = d.measure();
  j["spacing"] = d.spacing();
  return j;
}

Json bracket_json(const PullInResult& r) {
  Json j;
  j["lambda_lo"] = r.lambda_lo;
  j["lambda_hi"] = r.lambda_hi;
  j["probes"] = r.trace.size();
  Json trace = Json::array();
  for (const auto& p : r.trace)
    trace.push_back({{"iterations", p.iterations},
                     {"lambda", p.lambda},
                     {"status", to_string(p.status)}});
  j["trace"] = trace;
  if (r.solution_lo) {
    j["solution"] = {{"integral", r.solution_lo->integral()},
                     {"max", r.solution_lo->max()},
                     {"min", r.solution_lo->min()}};
  } else {
    j["solution"] = nullptr;
  }
  return j;
}

void require_newton_dim(const DomainSpec& d) {
  if (d.dim() < 3 || d.dim() > 4)
    throw ConfigError("newton commands support dimensions 3 and 4 only");
}

double parse_sweep_value(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size())
    throw ConfigError("sweep: bad value '" + text + "'");
  return v;
}

// ---------------------------------------------------------------------------

int run_pullin(const RunConfig& cfg) {
  auto dom = parse_domain(cfg.domain);
  auto op = parse_operator(cfg.op, *dom);
  auto g = parse_nonlinearity(cfg.g);
  auto f = parse_forcing(cfg.f, dom);
  const auto start = Clock::now();
  auto r = pull_in_voltage(op, dom, f, g, make_pullin_config(cfg));
  Json res = bracket_json(r);
  res["domain"] = domain_summary(*dom);
  if (!cfg.csv.empty() && r.solution_lo)
    save_grid_function(*r.solution_lo, cfg.csv);
  write_result(cfg, "pullin", res, seconds_since(start));
  return kExitOk;
}

DomainPtr require_mask_lattice(const DomainPtr& dom, const char* who) {
  if (dom->kind() != DomainKind::Mask || dom->dim() != 2)
    throw ConfigError(std::string(who) +
                      ": --random draws masks from a 2d lattice domain");
  return dom;
}

int run_compare(const RunConfig& cfg) {
  auto dom = parse_domain(cfg.domain);
  auto op = parse_operator(cfg.op, *dom);
  auto g = parse_nonlinearity(cfg.g);
  const auto pcfg = make_pullin_config(cfg);
  const auto start = Clock::now();
  Json res;
  bool ordered = true;
  if (cfg.random > 0) {
    require_mask_lattice(dom, "compare");
    if (op.kind() == OperatorKind::Elliptic)
      throw ConfigError("compare: --random supports laplace and plaplace");
    CaseEngine rng(cfg.seed);
    const auto shape = dom->shape();
    Json cases = Json::array();
    for (int k = 0; k < cfg.random; ++k) {
      auto mask = random_mask(rng, shape[0], shape[1], dom->spacing());
      auto f = random_forcing(rng, mask);
      auto rep = pullin_compare(op, mask, f, g, pcfg, cfg.ordering_slack,
                                cfg.n_radial);
      ordered = ordered && rep.ordered;
      cases.push_back({{"cells", mask->size()},
                       {"index", k},
                       {"lambda_ball", rep.lambda_ball},
                       {"lambda_domain", rep.lambda_domain},
                       {"ordered", rep.ordered}});
    }
    res["cases"] = cases;
    res["ordered"] = ordered;
    res["slack"] = cfg.ordering_slack;
  } else {
    auto f = parse_forcing(cfg.f, dom);
    auto rep =
        pullin_compare(op, dom, f, g, pcfg, cfg.ordering_slack, cfg.n_radial);
    ordered = rep.ordered;
    res["ball"] = {{"nodes", rep.ball->size()}, {"radius", rep.ball->radius()}};
    res["brackets"] = {
        {"ball",
         {{"lambda_hi", rep.ball_result.lambda_hi},
          {"lambda_lo", rep.ball_result.lambda_lo}}},
        {"domain",
         {{"lambda_hi", rep.domain_result.lambda_hi},
          {"lambda_lo", rep.domain_result.lambda_lo}}}};
    res["domain"] = domain_summary(*dom);
    res["lambda_ball"] = rep.lambda_ball;
    res["lambda_domain"] = rep.lambda_domain;
    res["ordered"] = rep.ordered;
    res["slack"] = rep.slack;
  }
  write_result(cfg, "compare", res, seconds_since(start));
  return ordered ? kExitOk : kExitOrderingViolated;
}

int run_talenti(const RunConfig& cfg) {
  auto dom = parse_domain(cfg.domain);
  auto op = parse_operator(cfg.op, *dom);
  const auto scfg = make_solver_config(cfg);
  const auto start = Clock::now();
  Json res;
  bool passed = true;
  if (cfg.random > 0) {
    require_mask_lattice(dom, "talenti");
    if (op.kind() == OperatorKind::Elliptic)
      throw ConfigError("talenti: --random supports laplace and plaplace");
    CaseEngine rng(cfg.seed);
    const auto shape = dom->shape();
    Json cases = Json::array();
    for (int k = 0; k < cfg.random; ++k) {
      auto mask = random_mask(rng, shape[0], shape[1], dom->spacing());
      auto f = random_nonnegative(rng, mask);
      auto rep =
          talenti_check(op, mask, f, cfg.grid_slack, cfg.n_radial, scfg);
      passed = passed && rep.passed;
      cases.push_back({{"cells", mask->size()},
                       {"index", k},
                       {"max_deficit", rep.max_deficit},
                       {"passed", rep.passed},
                       {"tolerance", rep.tolerance}});
    }
    res["cases"] = cases;
    res["passed"] = passed;
  } else {
    auto f = parse_forcing(cfg.f, dom);
    auto rep = talenti_check(op, dom, f, cfg.grid_slack, cfg.n_radial, scfg);
    passed = rep.passed;
    res["ball"] = {{"nodes", rep.ball->size()}, {"radius", rep.ball->radius()}};
    res["domain"] = domain_summary(*dom);
    res["max_deficit"] = rep.max_deficit;
    res["passed"] = rep.passed;
    res["tolerance"] = rep.tolerance;
    if (!cfg.csv.empty()) {
      const auto& radii = rep.ball->radii();
      std::vector<std::vector<std::string>> rows;
      rows.reserve(radii.size());
      for (std::size_t j = 0; j < radii.size(); ++j)
        rows.push_back({std::to_string(j), format_double(radii[j]),
                        format_double(rep.ustar[j]), format_double(rep.v[j])});
      write_csv(cfg.csv, {"index", "r", "ustar", "v"}, rows);
    }
  }
  write_result(cfg, "talenti", res, seconds_since(start));
  return passed ? kExitOk : kExitOrderingViolated;
}

int run_rearrange(const RunConfig& cfg) {
  auto dom = parse_domain(cfg.domain);
  auto u = parse_forcing(cfg.f, dom);
  const auto start = Clock::now();
  auto star = rearrange(u, cfg.n_radial);
  Json res;
  res["ball"] = {{"nodes", star.ball()->size()},
                 {"radius", star.ball()->radius()}};
  res["domain"] = domain_summary(*dom);
  res["input"] = {{"integral", u.integral()}, {"max", u.max()}};
  res["integral"] = star.integral();
  res["max"] = star.max_value();
  if (!cfg.csv.empty()) save_grid_function(star.as_grid_function(), cfg.csv);
  write_result(cfg, "rearrange", res, seconds_since(start));
  return kExitOk;
}

int run_eigen(const RunConfig& cfg) {
  if (cfg.eig_operator != "dirichlet-laplace")
    throw ConfigError("eigen: unknown operator '" + cfg.eig_operator +
                      "' (supported: dirichlet-laplace)");
  auto dom = parse_domain(cfg.domain);
  const auto start = Clock::now();
  auto eig = dirichlet_eig1(dom, make_eigen_config(cfg));
  Json res;
  res["domain"] = domain_summary(*dom);
  res["iterations"] = eig.iterations;
  res["lambda1"] = eig.lambda1;
  res["residual"] = eig.residual;
  if (!cfg.csv.empty()) save_grid_function(eig.phi1, cfg.csv);
  write_result(cfg, "eigen", res, seconds_since(start));
  return kExitOk;
}

int run_fk_check(const RunConfig& cfg) {
  auto dom = parse_domain(cfg.domain);
  const auto start = Clock::now();
  auto rep =
      faber_krahn_check(dom, cfg.fk_slack, cfg.n_radial, make_eigen_config(cfg));
  Json res;
  res["ball"] = {{"nodes", rep.ball->size()}, {"radius", rep.ball->radius()}};
  res["domain"] = domain_summary(*dom);
  res["lambda_ball"] = rep.lambda_ball;
  res["lambda_domain"] = rep.lambda_domain;
  res["ordered"] = rep.ordered;
  res["slack"] = rep.slack;
  write_result(cfg, "fk-check", res, seconds_since(start));
  return rep.ordered ? kExitOk : kExitOrderingViolated;
}

int run_newton_pullin(const RunConfig& cfg) {
  auto dom = parse_domain(cfg.domain);
  require_newton_dim(*dom);
  auto g = parse_nonlinearity(cfg.g);
  auto f = parse_forcing(cfg.f, dom);
  const auto start = Clock::now();
  KernelQuadrature kernel(dom);
  auto r = newton_pull_in(kernel, f, g, make_pullin_config(cfg));
  Json res = bracket_json(r);
  res["dense"] = kernel.dense();
  res["domain"] = domain_summary(*dom);
  if (!cfg.csv.empty() && r.solution_lo)
    save_grid_function(*r.solution_lo, cfg.csv);
  write_result(cfg, "newton-pullin", res, seconds_since(start));
  return kExitOk;
}

int run_newton_eigen(const RunConfig& cfg) {
  auto dom = parse_domain(cfg.domain);
  require_newton_dim(*dom);
  const auto start = Clock::now();
  KernelQuadrature kernel(dom);
  auto eig = newton_mu1(kernel, make_eigen_config(cfg));
  Json res;
  res["dense"] = kernel.dense();
  res["domain"] = domain_summary(*dom);
  res["iterations"] = eig.iterations;
  res["mu1"] = eig.mu1;
  res["residual"] = eig.residual;
  if (!cfg.csv.empty()) save_grid_function(eig.phi1, cfg.csv);
  write_result(cfg, "newton-eigen", res, seconds_since(start));
  return kExitOk;
}

int run_newton_bound(const RunConfig& cfg) {
  auto dom = parse_domain(cfg.domain);
  require_newton_dim(*dom);
  auto g = parse_nonlinearity(cfg.g);
  auto f = parse_forcing(cfg.f, dom);
  const auto start = Clock::now();
  KernelQuadrature kernel(dom);
  auto eig = newton_mu1(kernel, make_eigen_config(cfg));
  const double basic = newton_pullin_bound(eig.mu1, f.min());
  const double weighted = newton_weighted_bound(eig, f);
  auto r = newton_pull_in(kernel, f, g, make_pullin_config(cfg));
  // The genuinely solvable end of the bracket must respect both bounds; the
  // unsolvable end may exceed them only by the bracket width.
  const double width = r.lambda_hi - r.lambda_lo;
  const bool basic_holds = r.lambda_lo <= basic * (1 + 1e-12);
  const bool weighted_holds = r.lambda_lo <= weighted * (1 + 1e-12);
  Json res;
  res["bound"] = basic;
  res["bound_holds"] = basic_holds;
  res["bracket"] = {{"lambda_hi", r.lambda_hi}, {"lambda_lo", r.lambda_lo}};
  res["bracket_width"] = width;
  res["domain"] = domain_summary(*dom);
  res["inf_f"] = f.min();
  res["mu1"] = eig.mu1;
  res["weighted_bound"] = weighted;
  res["weighted_bound_holds"] = weighted_holds;
  write_result(cfg, "newton-bound", res, seconds_since(start));
  return (basic_holds && weighted_holds) ? kExitOk : kExitOrderingViolated;
}

int run_sweep(const RunConfig& cfg) {
  if (cfg.over.empty() || cfg.values.empty())
    throw ConfigError("sweep: --over and --values are required");
  std::vector<std::string> value_list;
  {
    std::string item;
    std::istringstream stream(cfg.values);
    while (std::getline(stream, item, ',')) value_list.push_back(item);
  }
  if (value_list.empty()) throw ConfigError("sweep: --values is empty");

  const auto start = Clock::now();
  Json cases = Json::array();
  for (std::size_t k = 0; k < value_list.size(); ++k) {
    RunConfig probe = cfg;
    if (cfg.over == "p") {
      probe.op = "plaplace:" + value_list[k];
    } else if (cfg.over == "m") {
      probe.g = "power:" + value_list[k];
    } else if (cfg.over == "sigma") {
      probe.g = "casimir:" + value_list[k];
    } else {
      // Any numeric knob can be swept; unknown keys are rejected here.
      get_double_knob(cfg, cfg.over);
      set_config_key(probe, cfg.over, value_list[k]);
    }
    auto dom = parse_domain(probe.domain);
    auto op = parse_operator(probe.op, *dom);
    auto g = parse_nonlinearity(probe.g);
    auto f = parse_forcing(probe.f, dom);
    auto r = pull_in_voltage(op, dom, f, g, make_pullin_config(probe));
    cases.push_back({{"index", k},
                     {"lambda_hi", r.lambda_hi},
                     {"lambda_lo", r.lambda_lo},
                     {"value", parse_sweep_value(value_list[k])}});
  }
  Json res;
  res["cases"] = cases;
  res["over"] = cfg.over;
  if (!cfg.csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : cases)
      rows.push_back({c["index"].dump(), c["value"].dump(),
                      c["lambda_lo"].dump(), c["lambda_hi"].dump()});
    write_csv(cfg.csv, {"index", "value", "lambda_lo", "lambda_hi"}, rows);
  }
  write_result(cfg, "sweep", res, seconds_since(start));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pull-in thresholds, symmetric decreasing rearrangement, and "
      "comparison-principle checks on intervals, lattice masks, and balls"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* desc;
    int (*run)(const RunConfig&);
  };
  const Entry entries[] = {
      {"pullin", "bracket the pull-in value on a domain", run_pullin},
      {"compare", "pull-in ordering against the symmetrized ball",
       run_compare},
      {"talenti", "rearranged solution vs the symmetrized problem",
       run_talenti},
      {"rearrange", "symmetric decreasing rearrangement of grid values",
       run_rearrange},
      {"eigen", "first Dirichlet eigenpair", run_eigen},
      {"fk-check", "first-eigenvalue ordering against the ball", run_fk_check},
      {"newton-pullin", "pull-in bracket for the potential-kernel problem",
       run_newton_pullin},
      {"newton-eigen", "smallest potential-kernel eigenvalue", run_newton_eigen},
      {"newton-bound", "potential pull-in bounds and their verification",
       run_newton_bound},
      {"sweep", "pull-in brackets over a swept parameter", run_sweep},
  };

  std::vector<std::unique_ptr<FlagStore>> stores;
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& entry : entries) {
    CLI::App* sub = app.add_subcommand(entry.name, entry.desc);
    stores.push_back(std::make_unique<FlagStore>());
    register_knobs(sub, *stores.back());
    subs.emplace_back(sub, &entry);
  }

  try {
    app.parse(argc, argv);
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (!subs[k].first->parsed()) continue;
      const RunConfig cfg = build_config(*stores[k]);
      return subs[k].second->run(cfg);
    }
    throw ConfigError("no subcommand selected");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ReportError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
