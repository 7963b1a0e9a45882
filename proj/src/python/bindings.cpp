// Python bindings for the main operations: domain construction, Dirichlet
// solves, rearrangement, pull-in brackets, comparison checks, eigenpairs,
// and the potential-kernel counterparts. Thin wrappers: values cross the
// boundary as plain lists, reports as dicts mirroring the CLI JSON keys.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pullin/cases.hpp"
#include "pullin/config.hpp"
#include "pullin/errors.hpp"
#include "pullin/mems.hpp"
#include "pullin/newton.hpp"
#include "pullin/rearrange.hpp"
#include "pullin/report.hpp"
#include "pullin/spectral.hpp"

namespace py = pybind11;
using namespace pullin;

namespace {

// Domains are immutable shared objects (DomainPtr = shared_ptr<const ...>),
// which pybind11 cannot use as a holder directly; this handle owns the
// pointer on the python side.
struct PyDomain {
  DomainPtr ptr;
  const DomainSpec& get() const { return *ptr; }
};

GridFunction to_grid(const PyDomain& dom, std::vector<double> values) {
  return GridFunction(dom.ptr, std::move(values));
}

std::vector<double> to_list(const GridFunction& u) {
  return std::vector<double>(u.values().begin(), u.values().end());
}

const char* kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::Interval: return "interval";
    case DomainKind::Mask: return "mask";
    case DomainKind::Ball: return "ball";
  }
  return "unknown";
}

PullInConfig pull_config(double bisection_rtol, double picard_tol,
                         int max_picard, double tol, int max_iter,
                         double lambda_seed) {
  PullInConfig cfg;
  cfg.bisection_rtol = bisection_rtol;
  cfg.iteration.picard_tol = picard_tol;
  cfg.iteration.max_picard = max_picard;
  cfg.iteration.solver.tol = tol;
  cfg.iteration.solver.max_iter = max_iter;
  cfg.lambda_seed = lambda_seed;
  return cfg;
}

py::dict bracket_dict(const PullInResult& r) {
  py::dict out;
  out["lambda_lo"] = r.lambda_lo;
  out["lambda_hi"] = r.lambda_hi;
  out["probes"] = r.trace.size();
  if (r.solution_lo) out["solution"] = to_list(*r.solution_lo);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Pull-in thresholds, symmetric decreasing rearrangement, and "
      "comparison-principle checks on intervals, lattice masks, and balls";

  py::class_<PyDomain>(m, "Domain")
      .def_property_readonly(
          "kind", [](const PyDomain& d) { return kind_name(d.get().kind()); })
      .def_property_readonly("dim",
                             [](const PyDomain& d) { return d.get().dim(); })
      .def_property_readonly("size",
                             [](const PyDomain& d) { return d.get().size(); })
      .def_property_readonly(
          "spacing", [](const PyDomain& d) { return d.get().spacing(); })
      .def_property_readonly(
          "measure", [](const PyDomain& d) { return d.get().measure(); })
      .def_property_readonly(
          "connected", [](const PyDomain& d) { return d.get().connected(); })
      .def_property_readonly(
          "cell_volumes",
          [](const PyDomain& d) { return d.get().cell_volumes(); })
      .def("position",
           [](const PyDomain& d, std::size_t cell) {
             const auto p = d.get().position(cell);
             return py::make_tuple(p[0], p[1], p[2]);
           },
           py::arg("cell"))
      .def("__repr__", [](const PyDomain& d) {
        return std::string("Domain(") + kind_name(d.get().kind()) +
               ", dim=" + std::to_string(d.get().dim()) +
               ", size=" + std::to_string(d.get().size()) + ")";
      });

  m.def(
      "domain",
      [](const std::string& spec) { return PyDomain{parse_domain(spec)}; },
      py::arg("spec"),
      "Build a domain from the grammar: interval:L:n | square:S:n | "
      "disk:R:n | ellipse:A:B:n | lshape:S:n | cube:S:n | ball:d:R:n | "
      "file:<mask path>");
  m.def(
      "load_mask",
      [](const std::string& path) { return PyDomain{load_mask(path)}; },
      py::arg("path"));
  m.def(
      "save_mask",
      [](const PyDomain& d, const std::string& path) {
        save_mask(d.get(), path);
      },
      py::arg("domain"), py::arg("path"));
  m.def(
      "symmetrize",
      [](const PyDomain& d, int n_radial) {
        return PyDomain{symmetrize_domain(d.get(), n_radial)};
      },
      py::arg("domain"), py::arg("n_radial") = 0,
      "Origin-centered ball of the same measure as the domain");

  m.def(
      "solve",
      [](const std::string& op, const PyDomain& dom, std::vector<double> f,
         double tol, int max_iter) {
        const auto el = parse_operator(op, dom.get());
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        auto u = solve(el, dom.ptr, to_grid(dom, std::move(f)), cfg);
        return to_list(u);
      },
      py::arg("op"), py::arg("domain"), py::arg("f"), py::arg("tol") = 1e-8,
      py::arg("max_iter") = 10000,
      "Homogeneous-Dirichlet solve of op(u) = f; op is laplace | "
      "plaplace:p | elliptic:<coeff csv>");

  m.def(
      "rearrange",
      [](const PyDomain& dom, std::vector<double> values, int n_radial) {
        auto star = rearrange(to_grid(dom, std::move(values)), n_radial);
        py::dict out;
        out["radius"] = star.ball()->radius();
        out["radii"] = star.ball()->radii();
        out["profile"] = star.profile();
        out["max"] = star.max_value();
        out["integral"] = star.integral();
        return out;
      },
      py::arg("domain"), py::arg("values"), py::arg("n_radial") = 0,
      "Symmetric decreasing rearrangement, sampled at the radial nodes of "
      "the measure-equivalent ball");

  m.def(
      "pull_in",
      [](const std::string& op, const PyDomain& dom, std::vector<double> f,
         const std::string& g, double bisection_rtol, double picard_tol,
         int max_picard, double tol, int max_iter, double lambda_seed) {
        const auto el = parse_operator(op, dom.get());
        const auto gg = parse_nonlinearity(g);
        auto r = pull_in_voltage(
            el, dom.ptr, to_grid(dom, std::move(f)), gg,
            pull_config(bisection_rtol, picard_tol, max_picard, tol, max_iter,
                        lambda_seed));
        return bracket_dict(r);
      },
      py::arg("op"), py::arg("domain"), py::arg("f"), py::arg("g") = "power:2",
      py::arg("bisection_rtol") = 1e-3, py::arg("picard_tol") = 1e-6,
      py::arg("max_picard") = 2000, py::arg("tol") = 1e-8,
      py::arg("max_iter") = 10000, py::arg("lambda_seed") = 0.1,
      "Bracket [lambda_lo, lambda_hi] of the pull-in value");

  m.def(
      "compare",
      [](const std::string& op, const PyDomain& dom, std::vector<double> f,
         const std::string& g, double slack, double bisection_rtol,
         double picard_tol, int max_picard, int n_radial) {
        const auto el = parse_operator(op, dom.get());
        const auto gg = parse_nonlinearity(g);
        auto rep = pullin_compare(
            el, dom.ptr, to_grid(dom, std::move(f)), gg,
            pull_config(bisection_rtol, picard_tol, max_picard, 1e-8, 10000,
                        0.1),
            slack, n_radial);
        py::dict out;
        out["lambda_domain"] = rep.lambda_domain;
        out["lambda_ball"] = rep.lambda_ball;
        out["ordered"] = rep.ordered;
        out["slack"] = rep.slack;
        out["ball_radius"] = rep.ball->radius();
        return out;
      },
      py::arg("op"), py::arg("domain"), py::arg("f"), py::arg("g") = "power:2",
      py::arg("slack") = 0.05, py::arg("bisection_rtol") = 1e-3,
      py::arg("picard_tol") = 1e-6, py::arg("max_picard") = 2000,
      py::arg("n_radial") = 0,
      "Pull-in ordering lambda*(ball, f*) <= lambda*(domain, f)*(1+slack)");

  m.def(
      "talenti",
      [](const std::string& op, const PyDomain& dom, std::vector<double> f,
         double grid_slack, int n_radial, double tol, int max_iter) {
        const auto el = parse_operator(op, dom.get());
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        auto rep = talenti_check(el, dom.ptr, to_grid(dom, std::move(f)),
                                 grid_slack, n_radial, cfg);
        py::dict out;
        out["max_deficit"] = rep.max_deficit;
        out["tolerance"] = rep.tolerance;
        out["passed"] = rep.passed;
        out["ustar"] = rep.ustar;
        out["v"] = rep.v;
        out["ball_radius"] = rep.ball->radius();
        return out;
      },
      py::arg("op"), py::arg("domain"), py::arg("f"),
      py::arg("grid_slack") = 5.0, py::arg("n_radial") = 0,
      py::arg("tol") = 1e-8, py::arg("max_iter") = 10000,
      "Rearranged solution vs the symmetrized radial problem");

  m.def(
      "eig1",
      [](const PyDomain& dom, double eigen_tol, int max_iter) {
        EigenConfig cfg;
        cfg.eigen_tol = eigen_tol;
        cfg.max_iter = max_iter;
        auto e = dirichlet_eig1(dom.ptr, cfg);
        py::dict out;
        out["lambda1"] = e.lambda1;
        out["residual"] = e.residual;
        out["iterations"] = e.iterations;
        out["phi1"] = to_list(e.phi1);
        return out;
      },
      py::arg("domain"), py::arg("eigen_tol") = 1e-8,
      py::arg("max_iter") = 10000, "First Dirichlet eigenpair of -Laplace");

  m.def(
      "dirichlet_bound",
      [](const PyDomain& dom, std::vector<double> f, double eigen_tol,
         int max_iter) {
        EigenConfig cfg;
        cfg.eigen_tol = eigen_tol;
        cfg.max_iter = max_iter;
        const auto e = dirichlet_eig1(dom.ptr, cfg);
        return dirichlet_pullin_bound(e, to_grid(dom, std::move(f)));
      },
      py::arg("domain"), py::arg("f"), py::arg("eigen_tol") = 1e-8,
      py::arg("max_iter") = 10000,
      "Pull-in upper bound (4 lambda1/3) * integral(phi1)/integral(phi1 f)");

  m.def(
      "faber_krahn",
      [](const PyDomain& dom, double slack, int n_radial) {
        auto rep = faber_krahn_check(dom.ptr, slack, n_radial);
        py::dict out;
        out["lambda_domain"] = rep.lambda_domain;
        out["lambda_ball"] = rep.lambda_ball;
        out["ordered"] = rep.ordered;
        out["slack"] = rep.slack;
        return out;
      },
      py::arg("domain"), py::arg("slack") = 0.02, py::arg("n_radial") = 0,
      "First-eigenvalue ordering against the equal-measure ball");

  m.def(
      "newton_mu1",
      [](const PyDomain& dom, double eigen_tol, int max_iter) {
        KernelQuadrature kernel(dom.ptr);
        EigenConfig cfg;
        cfg.eigen_tol = eigen_tol;
        cfg.max_iter = max_iter;
        auto e = newton_mu1(kernel, cfg);
        py::dict out;
        out["mu1"] = e.mu1;
        out["residual"] = e.residual;
        out["iterations"] = e.iterations;
        out["phi1"] = to_list(e.phi1);
        out["dense"] = kernel.dense();
        return out;
      },
      py::arg("domain"), py::arg("eigen_tol") = 1e-8,
      py::arg("max_iter") = 10000,
      "Smallest eigenvalue of the potential-kernel problem phi = mu K phi");

  m.def(
      "newton_pull_in",
      [](const PyDomain& dom, std::vector<double> f, const std::string& g,
         double bisection_rtol, double picard_tol, int max_picard,
         double lambda_seed) {
        KernelQuadrature kernel(dom.ptr);
        const auto gg = parse_nonlinearity(g);
        auto r = newton_pull_in(
            kernel, to_grid(dom, std::move(f)), gg,
            pull_config(bisection_rtol, picard_tol, max_picard, 1e-8, 10000,
                        lambda_seed));
        return bracket_dict(r);
      },
      py::arg("domain"), py::arg("f"), py::arg("g") = "power:2",
      py::arg("bisection_rtol") = 1e-3, py::arg("picard_tol") = 1e-6,
      py::arg("max_picard") = 2000, py::arg("lambda_seed") = 0.1,
      "Pull-in bracket for the potential-kernel membrane problem");

  m.def("newton_bound", &newton_pullin_bound, py::arg("mu1"), py::arg("inf_f"),
        "Pull-in upper bound 4 mu1 / (27 inf f)");
}
