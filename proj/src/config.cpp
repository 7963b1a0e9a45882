#include "pullin/config.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pullin/errors.hpp"

namespace pullin {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream stream(s);
  while (std::getline(stream, item, delim)) parts.push_back(item);
  if (!s.empty() && s.back() == delim) parts.emplace_back();
  return parts;
}

double parse_double_value(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw ConfigError("config: bad numeric value for '" + key + "': " + text);
  return v;
}

int parse_int_value(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || v < INT_MIN || v > INT_MAX)
    throw ConfigError("config: bad integer value for '" + key + "': " + text);
  return static_cast<int>(v);
}

std::uint64_t parse_seed_value(const std::string& key,
                               const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || t.front() == '-')
    throw ConfigError("config: bad seed value for '" + key + "': " + text);
  return v;
}

struct DoubleKnob {
  const char* name;
  double RunConfig::* member;
};
struct IntKnob {
  const char* name;
  int RunConfig::* member;
};
struct StringKnob {
  const char* name;
  std::string RunConfig::* member;
};

const std::vector<DoubleKnob>& double_table() {
  static const std::vector<DoubleKnob> table = {
      {"tol", &RunConfig::tol},
      {"eps", &RunConfig::eps},
      {"relaxation", &RunConfig::relaxation},
      {"picard_tol", &RunConfig::picard_tol},
      {"touchdown_margin", &RunConfig::touchdown_margin},
      {"lambda_seed", &RunConfig::lambda_seed},
      {"bisection_rtol", &RunConfig::bisection_rtol},
      {"ordering_slack", &RunConfig::ordering_slack},
      {"fk_slack", &RunConfig::fk_slack},
      {"grid_slack", &RunConfig::grid_slack},
      {"eigen_tol", &RunConfig::eigen_tol},
  };
  return table;
}

const std::vector<IntKnob>& int_table() {
  static const std::vector<IntKnob> table = {
      {"max_iter", &RunConfig::max_iter},
      {"max_picard", &RunConfig::max_picard},
      {"max_doublings", &RunConfig::max_doublings},
      {"max_seed_shrinks", &RunConfig::max_seed_shrinks},
      {"eigen_max_iter", &RunConfig::eigen_max_iter},
      {"n_radial", &RunConfig::n_radial},
      {"random", &RunConfig::random},
  };
  return table;
}

const std::vector<StringKnob>& string_table() {
  static const std::vector<StringKnob> table = {
      {"domain", &RunConfig::domain},
      {"op", &RunConfig::op},
      {"g", &RunConfig::g},
      {"f", &RunConfig::f},
      {"operator", &RunConfig::eig_operator},
      {"over", &RunConfig::over},
      {"values", &RunConfig::values},
      {"out", &RunConfig::out},
      {"csv", &RunConfig::csv},
  };
  return table;
}

// Grammar helpers ------------------------------------------------------------

double spec_double(const std::string& spec, const std::string& part) {
  return parse_double_value(spec, part);
}

int spec_count(const std::string& spec, const std::string& part) {
  const int n = parse_int_value(spec, part);
  if (n < 1) throw ConfigError("domain: cell count must be positive in '" +
                               spec + "'");
  return n;
}

DomainPtr full_mask(int dim, std::array<int, 3> shape, double spacing) {
  std::size_t cells = 1;
  for (int a = 0; a < dim; ++a) cells *= static_cast<std::size_t>(shape[a]);
  return DomainSpec::mask(dim, shape, std::vector<std::uint8_t>(cells, 1),
                          spacing);
}

}  // namespace

SolverConfig make_solver_config(const RunConfig& cfg) {
  SolverConfig s;
  s.tol = cfg.tol;
  s.max_iter = cfg.max_iter;
  s.regularization_eps = cfg.eps;
  s.relaxation = cfg.relaxation;
  return s;
}

IterationConfig make_iteration_config(const RunConfig& cfg) {
  IterationConfig it;
  it.picard_tol = cfg.picard_tol;
  it.max_picard = cfg.max_picard;
  it.touchdown_margin = cfg.touchdown_margin;
  it.solver = make_solver_config(cfg);
  return it;
}

PullInConfig make_pullin_config(const RunConfig& cfg) {
  PullInConfig p;
  p.iteration = make_iteration_config(cfg);
  p.lambda_seed = cfg.lambda_seed;
  p.bisection_rtol = cfg.bisection_rtol;
  p.max_doublings = cfg.max_doublings;
  p.max_seed_shrinks = cfg.max_seed_shrinks;
  return p;
}

EigenConfig make_eigen_config(const RunConfig& cfg) {
  EigenConfig e;
  e.eigen_tol = cfg.eigen_tol;
  e.max_iter = cfg.eigen_max_iter;
  return e;
}

void set_config_key(RunConfig& cfg, const std::string& raw_key,
                    const std::string& value) {
  const std::string key = trim(raw_key);
  for (const auto& knob : double_table())
    if (key == knob.name) {
      cfg.*(knob.member) = parse_double_value(key, value);
      return;
    }
  for (const auto& knob : int_table())
    if (key == knob.name) {
      cfg.*(knob.member) = parse_int_value(key, value);
      return;
    }
  if (key == "seed") {
    cfg.seed = parse_seed_value(key, value);
    return;
  }
  for (const auto& knob : string_table())
    if (key == knob.name) {
      cfg.*(knob.member) = trim(value);
      return;
    }
  throw ConfigError("config: unknown key '" + key + "'");
}

void load_run_config(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    set_config_key(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

const std::vector<std::string>& double_knob_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& knob : double_table()) v.emplace_back(knob.name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& int_knob_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& knob : int_table()) v.emplace_back(knob.name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& string_knob_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& knob : string_table()) v.emplace_back(knob.name);
    return v;
  }();
  return names;
}

double get_double_knob(const RunConfig& cfg, const std::string& key) {
  for (const auto& knob : double_table())
    if (key == knob.name) return cfg.*(knob.member);
  throw ConfigError("config: unknown double knob '" + key + "'");
}

long long get_int_knob(const RunConfig& cfg, const std::string& key) {
  for (const auto& knob : int_table())
    if (key == knob.name) return cfg.*(knob.member);
  throw ConfigError("config: unknown integer knob '" + key + "'");
}

std::string get_string_knob(const RunConfig& cfg, const std::string& key) {
  for (const auto& knob : string_table())
    if (key == knob.name) return cfg.*(knob.member);
  throw ConfigError("config: unknown string knob '" + key + "'");
}

DomainPtr parse_domain(const std::string& spec) {
  if (spec.empty()) throw ConfigError("domain: missing specification");
  if (spec.rfind("file:", 0) == 0) return load_mask(spec.substr(5));
  const auto parts = split(spec, ':');
  const std::string& kind = parts.front();
  const auto need = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw ConfigError("domain: '" + kind + "' takes " + std::to_string(n) +
                        " parameters in '" + spec + "'");
  };
  if (kind == "interval") {
    need(2);
    return DomainSpec::interval(spec_double(spec, parts[1]),
                                spec_count(spec, parts[2]));
  }
  if (kind == "square") {
    need(2);
    const double side = spec_double(spec, parts[1]);
    const int n = spec_count(spec, parts[2]);
    return full_mask(2, {n, n, 1}, side / n);
  }
  if (kind == "disk") {
    need(2);
    const double radius = spec_double(spec, parts[1]);
    const int n = spec_count(spec, parts[2]);
    if (!(radius > 0)) throw ConfigError("domain: radius must be positive");
    const double h = 2 * radius / n;
    return mask_from_predicate(2, {n, n, 1}, h,
                               [radius](std::array<double, 3> x) {
                                 const double dx = x[0] - radius;
                                 const double dy = x[1] - radius;
                                 return dx * dx + dy * dy < radius * radius;
                               });
  }
  if (kind == "ellipse") {
    need(3);
    const double a = spec_double(spec, parts[1]);
    const double b = spec_double(spec, parts[2]);
    const int n = spec_count(spec, parts[3]);
    if (!(a >= b && b > 0))
      throw ConfigError("domain: ellipse needs semi-axes a >= b > 0");
    const double h = 2 * a / n;
    const int ny = std::max(1, static_cast<int>(std::lround(2 * b / h)));
    return mask_from_predicate(2, {n, ny, 1}, h,
                               [a, b](std::array<double, 3> x) {
                                 const double dx = (x[0] - a) / a;
                                 const double dy = (x[1] - b) / b;
                                 return dx * dx + dy * dy < 1.0;
                               });
  }
  if (kind == "lshape") {
    need(2);
    const double side = spec_double(spec, parts[1]);
    const int n = spec_count(spec, parts[2]);
    const double h = side / n;
    const double half = side / 2;
    return mask_from_predicate(2, {n, n, 1}, h,
                               [half](std::array<double, 3> x) {
                                 return !(x[0] > half && x[1] > half);
                               });
  }
  if (kind == "cube") {
    need(2);
    const double side = spec_double(spec, parts[1]);
    const int n = spec_count(spec, parts[2]);
    return full_mask(3, {n, n, n}, side / n);
  }
  if (kind == "ball") {
    need(3);
    const int d = parse_int_value(spec, parts[1]);
    return DomainSpec::ball(d, spec_double(spec, parts[2]),
                            spec_count(spec, parts[3]));
  }
  throw ConfigError("domain: unknown kind '" + kind + "' in '" + spec + "'");
}

EllipticOperator parse_operator(const std::string& spec,
                                const DomainSpec& domain) {
  if (spec == "laplace") return EllipticOperator::laplace();
  if (spec.rfind("plaplace:", 0) == 0)
    return EllipticOperator::plaplace(parse_double_value(spec, spec.substr(9)));
  if (spec.rfind("elliptic:", 0) == 0)
    return EllipticOperator::elliptic(
        load_coeff_field(spec.substr(9), domain.size()));
  throw ConfigError("op: unknown operator '" + spec + "'");
}

Nonlinearity parse_nonlinearity(const std::string& spec) {
  try {
    if (spec.rfind("power:", 0) == 0)
      return Nonlinearity::power(parse_double_value(spec, spec.substr(6)));
    if (spec.rfind("casimir:", 0) == 0)
      return Nonlinearity::casimir(parse_double_value(spec, spec.substr(8)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("g: ") + e.what());
  }
  throw ConfigError("g: unknown profile '" + spec + "'");
}

GridFunction parse_forcing(const std::string& spec, DomainPtr domain) {
  if (spec == "one") return GridFunction::constant(domain, 1.0);
  if (spec.rfind("const:", 0) == 0)
    return GridFunction::constant(domain,
                                  parse_double_value(spec, spec.substr(6)));
  if (spec.rfind("linear:", 0) == 0) {
    const auto parts = split(spec.substr(7), ':');
    if (parts.size() != 2)
      throw ConfigError("f: linear takes two parameters in '" + spec + "'");
    const double a = parse_double_value(spec, parts[0]);
    const double b = parse_double_value(spec, parts[1]);
    return GridFunction::from_function(
        domain, [a, b](std::array<double, 3> x) { return a + b * x[0]; });
  }
  if (spec.rfind("file:", 0) == 0)
    return load_grid_function(domain, spec.substr(5));
  throw ConfigError("f: unknown forcing '" + spec + "'");
}

CoeffField load_coeff_field(const std::string& path, std::size_t cells) {
  std::ifstream in(path);
  if (!in) throw ConfigError("coeff: cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header))
    throw ConfigError("coeff: empty file '" + path + "'");
  auto cols = split(trim(header), ',');
  for (auto& c : cols) c = trim(c);
  if (cols.empty() || cols[0] != "index")
    throw ConfigError("coeff: header must start with 'index' in '" + path +
                      "'");
  std::vector<int> which;  // 0 = a11, 1 = a22, 2 = a12
  for (std::size_t c = 1; c < cols.size(); ++c) {
    if (cols[c] == "a11") which.push_back(0);
    else if (cols[c] == "a22") which.push_back(1);
    else if (cols[c] == "a12") which.push_back(2);
    else
      throw ConfigError("coeff: unknown column '" + cols[c] + "' in '" + path +
                        "'");
  }
  if (which.empty() || which[0] != 0)
    throw ConfigError("coeff: column 'a11' is required in '" + path + "'");

  CoeffField coeff;
  coeff.a11.reserve(cells);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), ',');
    if (fields.size() != cols.size())
      throw ConfigError("coeff: row " + std::to_string(row) +
                        " has wrong column count in '" + path + "'");
    const std::size_t idx =
        static_cast<std::size_t>(parse_int_value("index", fields[0]));
    if (idx != row)
      throw ConfigError("coeff: rows must appear in cell order; got index " +
                        fields[0] + " at row " + std::to_string(row));
    for (std::size_t c = 0; c < which.size(); ++c) {
      const double v = parse_double_value(cols[c + 1], fields[c + 1]);
      (which[c] == 0 ? coeff.a11 : which[c] == 1 ? coeff.a22 : coeff.a12)
          .push_back(v);
    }
    ++row;
  }
  if (row != cells)
    throw ConfigError("coeff: expected " + std::to_string(cells) +
                      " rows, got " + std::to_string(row) + " in '" + path +
                      "'");
  return coeff;
}

void save_coeff_field(const CoeffField& coeff, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("coeff: cannot write '" + path + "'");
  out << "index,a11";
  if (!coeff.a22.empty()) out << ",a22";
  if (!coeff.a12.empty()) out << ",a12";
  out << "\n";
  out.precision(17);
  for (std::size_t i = 0; i < coeff.a11.size(); ++i) {
    out << i << ',' << coeff.a11[i];
    if (!coeff.a22.empty()) out << ',' << coeff.a22[i];
    if (!coeff.a12.empty()) out << ',' << coeff.a12[i];
    out << "\n";
  }
  if (!out) throw ConfigError("coeff: write failed for '" + path + "'");
}

}  // namespace pullin
