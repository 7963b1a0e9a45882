#include "pullin/operators.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pullin/errors.hpp"
#include "system_detail.hpp"

namespace pullin {

namespace {

double harmonic(double a, double b) {
  if (a <= 0 || b <= 0) return 0;
  return 2 * a * b / (a + b);
}

// Coefficient eigenvalue floor and M-compatibility of a 2x2 block.
double coeff_lambda_min(double a11, double a22, double a12) {
  if (a12 == 0) return std::min(a11, a22);
  const double tr = a11 + a22;
  const double disc = std::sqrt((a11 - a22) * (a11 - a22) + 4 * a12 * a12);
  return 0.5 * (tr - disc);
}

}  // namespace

EllipticOperator EllipticOperator::laplace() { return EllipticOperator(); }

EllipticOperator EllipticOperator::plaplace(double p) {
  if (!(p > 1))
    throw ConfigError("plaplace: exponent must satisfy p > 1");
  EllipticOperator op;
  op.kind_ = OperatorKind::PLaplace;
  op.p_ = p;
  return op;
}

EllipticOperator EllipticOperator::elliptic(CoeffField coeff,
                                            double ellipticity_floor) {
  const std::size_t n = coeff.a11.size();
  if (n == 0) throw ConfigError("elliptic: a11 must be nonempty");
  for (const auto* arr : {&coeff.a22, &coeff.a33, &coeff.a12})
    if (!arr->empty() && arr->size() != n)
      throw ConfigError("elliptic: coefficient arrays differ in length");
  if (!coeff.a12.empty() && !coeff.a33.empty())
    throw ConfigError("elliptic: mixed coefficients are 2d only");

  double lambda_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double a11 = coeff.a11[i];
    const double a22 = coeff.a22.empty() ? a11 : coeff.a22[i];
    const double a33 = coeff.a33.empty() ? a11 : coeff.a33[i];
    const double a12 = coeff.a12.empty() ? 0.0 : coeff.a12[i];
    if (a12 != 0 && std::min(a11, a22) < std::abs(a12))
      throw ConfigError(
          "elliptic: cell coefficients violate min(a11,a22) >= |a12|, the "
          "monotone stencil condition");
    lambda_min = std::min(lambda_min, coeff_lambda_min(a11, a22, a12));
    lambda_min = std::min(lambda_min, a33);
  }
  if (!(lambda_min > 0))
    throw ConfigError("elliptic: coefficient field is not uniformly elliptic");
  if (ellipticity_floor > 0 && ellipticity_floor > lambda_min + 1e-12)
    throw ConfigError(
        "elliptic: stated ellipticity floor exceeds the smallest coefficient "
        "eigenvalue");

  EllipticOperator op;
  op.kind_ = OperatorKind::Elliptic;
  op.coeff_ = std::move(coeff);
  op.floor_ = (ellipticity_floor > 0) ? ellipticity_floor : lambda_min;
  return op;
}

namespace {

// Face kinds on lattice domains. Axis faces carry the flux between the two
// adjacent nodes (or node and boundary); diagonal faces realize the mixed
// coefficient of an anisotropic operator.
struct Face {
  std::int32_t a;
  std::int32_t b;          // -1 for a homogeneous Dirichlet face
  std::int8_t axis;        // 0..2 axis, 3 = (+x,+y) diagonal, 4 = (-x,+y)
  double mult;             // coupling = conductivity * mult
};

struct LatticeSystem {
  std::vector<Face> faces;
  std::size_t n = 0;
  int dim = 1;
  double h = 0;
  bool diagonals = false;
};

bool has_mixed(const EllipticOperator& op) {
  if (op.kind() != OperatorKind::Elliptic) return false;
  for (double v : op.coeff().a12)
    if (v != 0) return true;
  return false;
}

LatticeSystem build_lattice(const EllipticOperator& op, const DomainSpec& dom) {
  LatticeSystem sys;
  sys.n = dom.size();
  sys.dim = dom.dim();
  sys.h = dom.spacing();
  sys.diagonals = has_mixed(op);
  const double h2 = sys.h * sys.h;
  const double inv_h2 = 1.0 / h2;
  // Interval nodes sit a full spacing from the boundary; mask cells half.
  const double bdry_mult =
      (dom.kind() == DomainKind::Interval) ? inv_h2 : 2.0 * inv_h2;

  if (sys.diagonals && sys.dim != 2)
    throw ConfigError("mixed coefficients require a 2d mask");

  for (std::size_t c = 0; c < sys.n; ++c) {
    const auto& nb = dom.neighbors(c);
    for (int axis = 0; axis < sys.dim; ++axis) {
      const std::int64_t plus = nb[2 * axis + 1];
      if (plus >= 0)
        sys.faces.push_back({std::int32_t(c), std::int32_t(plus),
                             std::int8_t(axis), inv_h2});
      else
        sys.faces.push_back({std::int32_t(c), -1, std::int8_t(axis), bdry_mult});
      if (nb[2 * axis] < 0)
        sys.faces.push_back({std::int32_t(c), -1, std::int8_t(axis), bdry_mult});
    }
    if (sys.diagonals) {
      const auto p = dom.lattice_coords(c);
      const auto at = [&dom](int ix, int iy) {
        return dom.cell_at(ix, iy, 0);
      };
      // (+x,+y) and (-x,+y) neighbors have larger cell index, so each
      // interior diagonal face is created exactly once.
      const std::int64_t ne = at(p[0] + 1, p[1] + 1);
      if (ne >= 0)
        sys.faces.push_back({std::int32_t(c), std::int32_t(ne), 3, inv_h2});
      else
        sys.faces.push_back({std::int32_t(c), -1, 3, inv_h2});
      if (at(p[0] - 1, p[1] - 1) < 0)
        sys.faces.push_back({std::int32_t(c), -1, 3, inv_h2});
      const std::int64_t nw = at(p[0] - 1, p[1] + 1);
      if (nw >= 0)
        sys.faces.push_back({std::int32_t(c), std::int32_t(nw), 4, inv_h2});
      else
        sys.faces.push_back({std::int32_t(c), -1, 4, inv_h2});
      if (at(p[0] + 1, p[1] - 1) < 0)
        sys.faces.push_back({std::int32_t(c), -1, 4, inv_h2});
    }
  }
  return sys;
}

// Directional conductivity of one cell for a face class.
double cell_conductivity(const EllipticOperator& op, std::size_t cell,
                         int axis) {
  if (op.kind() != OperatorKind::Elliptic) return axis < 3 ? 1.0 : 0.0;
  const auto& cf = op.coeff();
  const double a11 = cf.a11[cell];
  const double a22 = cf.a22.empty() ? a11 : cf.a22[cell];
  const double a33 = cf.a33.empty() ? a11 : cf.a33[cell];
  const double a12 = cf.a12.empty() ? 0.0 : cf.a12[cell];
  switch (axis) {
    case 0: return a11 - std::abs(a12);
    case 1: return a22 - std::abs(a12);
    case 2: return a33;
    case 3: return std::max(a12, 0.0);
    default: return std::max(-a12, 0.0);
  }
}

std::vector<double> linear_conductivities(const EllipticOperator& op,
                                          const LatticeSystem& sys) {
  std::vector<double> c(sys.faces.size());
  for (std::size_t k = 0; k < sys.faces.size(); ++k) {
    const Face& f = sys.faces[k];
    const double ca = cell_conductivity(op, std::size_t(f.a), f.axis);
    c[k] = (f.b >= 0)
               ? harmonic(ca, cell_conductivity(op, std::size_t(f.b), f.axis))
               : ca;
  }
  return c;
}

// Gradient magnitude squared at a face of the current iterate, with zero
// extension across Dirichlet faces. Tangential components are averaged
// central differences of the adjacent cells.
std::vector<double> plaplace_conductivities(const EllipticOperator& op,
                                            const DomainSpec& dom,
                                            const LatticeSystem& sys,
                                            std::span<const double> u,
                                            double eps) {
  const double h = sys.h;
  const auto value = [&u](std::int64_t c) {
    return c >= 0 ? u[std::size_t(c)] : 0.0;
  };
  const auto central = [&](std::size_t c, int axis) {
    const auto& nb = dom.neighbors(c);
    return (value(nb[2 * axis + 1]) - value(nb[2 * axis])) / (2 * h);
  };
  const bool mask_bdry = dom.kind() != DomainKind::Interval;
  std::vector<double> cond(sys.faces.size());
  const double expo = 0.5 * (op.p() - 2.0);
  for (std::size_t k = 0; k < sys.faces.size(); ++k) {
    const Face& f = sys.faces[k];
    double normal;
    if (f.b >= 0)
      normal = (u[std::size_t(f.b)] - u[std::size_t(f.a)]) / h;
    else
      normal = -u[std::size_t(f.a)] / (mask_bdry ? 0.5 * h : h);
    double g2 = normal * normal;
    for (int axis = 0; axis < sys.dim; ++axis) {
      if (axis == f.axis) continue;
      const double ta = central(std::size_t(f.a), axis);
      const double t =
          (f.b >= 0) ? 0.5 * (ta + central(std::size_t(f.b), axis)) : ta;
      g2 += t * t;
    }
    cond[k] = std::pow(g2 + eps * eps, expo);
  }
  return cond;
}

void apply_faces(const LatticeSystem& sys, std::span<const double> cond,
                 std::span<const double> u, std::vector<double>& out) {
  out.assign(sys.n, 0.0);
  for (std::size_t k = 0; k < sys.faces.size(); ++k) {
    const Face& f = sys.faces[k];
    const double w = cond[k] * f.mult;
    if (f.b >= 0) {
      const double flux = w * (u[std::size_t(f.a)] - u[std::size_t(f.b)]);
      out[std::size_t(f.a)] += flux;
      out[std::size_t(f.b)] -= flux;
    } else {
      out[std::size_t(f.a)] += w * u[std::size_t(f.a)];
    }
  }
}

Eigen::SparseMatrix<double> assemble(const LatticeSystem& sys,
                                     std::span<const double> cond) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * sys.faces.size());
  for (std::size_t k = 0; k < sys.faces.size(); ++k) {
    const Face& f = sys.faces[k];
    const double w = cond[k] * f.mult;
    if (w == 0) continue;
    trip.emplace_back(f.a, f.a, w);
    if (f.b >= 0) {
      trip.emplace_back(f.b, f.b, w);
      trip.emplace_back(f.a, f.b, -w);
      trip.emplace_back(f.b, f.a, -w);
    }
  }
  Eigen::SparseMatrix<double> A(int(sys.n), int(sys.n));
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

// Radial finite-volume system on a ball: nodes r_j = j*h, flux faces at
// (j+1/2)*h, exact on radial quadratics for the Laplacian in every dimension.
struct RadialSystem {
  std::size_t n = 0;
  int dim = 1;
  double h = 0;
  std::vector<double> tgeom;  // sigma * r_face^{d-1} / h, face j between j,j+1
  std::vector<double> vols;
};

RadialSystem build_radial(const DomainSpec& dom) {
  RadialSystem sys;
  sys.n = dom.size();
  sys.dim = dom.dim();
  sys.h = dom.spacing();
  sys.vols = dom.cell_volumes();
  const double sigma = unit_sphere_area(sys.dim);
  sys.tgeom.resize(sys.n);
  for (std::size_t j = 0; j < sys.n; ++j) {
    const double rf = (double(j) + 0.5) * sys.h;
    sys.tgeom[j] = sigma * std::pow(rf, sys.dim - 1) / sys.h;
  }
  return sys;
}

std::vector<double> radial_conductivities(const EllipticOperator& op,
                                          const RadialSystem& sys,
                                          std::span<const double> u,
                                          double eps) {
  std::vector<double> cond(sys.n, 1.0);
  if (op.kind() != OperatorKind::PLaplace || op.p() == 2.0) return cond;
  const double expo = 0.5 * (op.p() - 2.0);
  for (std::size_t j = 0; j < sys.n; ++j) {
    const double up = (j + 1 < sys.n) ? u[j + 1] : 0.0;
    const double g = (up - u[j]) / sys.h;
    cond[j] = std::pow(g * g + eps * eps, expo);
  }
  return cond;
}

// Flux-form matrix-vector product divided by shell volumes: the operator rows.
void radial_apply(const RadialSystem& sys, std::span<const double> cond,
                  std::span<const double> u, std::vector<double>& out) {
  out.assign(sys.n, 0.0);
  for (std::size_t j = 0; j < sys.n; ++j) {
    const double unext = (j + 1 < sys.n) ? u[j + 1] : 0.0;
    const double flux = sys.tgeom[j] * cond[j] * (u[j] - unext);
    out[j] += flux;
    if (j + 1 < sys.n) out[j + 1] -= flux;
  }
  for (std::size_t j = 0; j < sys.n; ++j) out[j] /= sys.vols[j];
}

// Thomas solve of the symmetric flux-form tridiagonal system S u = vols * rhs.
std::vector<double> radial_solve_linear(const RadialSystem& sys,
                                        std::span<const double> cond,
                                        std::span<const double> rhs) {
  const std::size_t n = sys.n;
  std::vector<double> diag(n), sub(n, 0.0), b(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = sys.tgeom[j] * cond[j];
    diag[j] = t + ((j > 0) ? sys.tgeom[j - 1] * cond[j - 1] : 0.0);
    if (j + 1 < n) sub[j + 1] = -t;
    b[j] = rhs[j] * sys.vols[j];
  }
  return detail::thomas(diag, sub, std::move(b));
}

double sup_diff_scale(std::span<const double> rhs) {
  double m = 1.0;
  for (double v : rhs) m = std::max(m, std::abs(v));
  return m;
}

// NaN-poisoning sup so a corrupted iterate can never look converged.
double sup_norm(std::span<const double> v) {
  double m = 0;
  for (double x : v) {
    if (std::isnan(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace

struct DirichletSolver::Impl {
  EllipticOperator op;
  DomainPtr dom;
  SolverConfig cfg;
  bool radial = false;

  LatticeSystem lattice;
  RadialSystem rad;
  std::vector<double> lin_cond;  // conductivities of a linear operator

  Eigen::SparseMatrix<double> A;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool pattern_ready = false;
  bool factored = false;

  double relax() const {
    if (cfg.relaxation > 0) return cfg.relaxation;
    return op.linear() ? 1.0 : 0.7;
  }

  void factorize(const Eigen::SparseMatrix<double>& M) {
    if (!pattern_ready) {
      ldlt.analyzePattern(M);
      pattern_ready = true;
    }
    ldlt.factorize(M);
    if (ldlt.info() != Eigen::Success)
      throw SolverError("sparse factorization failed");
  }

  std::vector<double> conductivities(std::span<const double> u) const {
    if (radial)
      return radial_conductivities(op, rad, u, cfg.regularization_eps);
    if (op.kind() == OperatorKind::PLaplace && op.p() != 2.0)
      return plaplace_conductivities(op, *dom, lattice, u,
                                     cfg.regularization_eps);
    return lin_cond;
  }

  void apply_op(std::span<const double> cond, std::span<const double> u,
                std::vector<double>& out) const {
    if (radial)
      radial_apply(rad, cond, u, out);
    else
      apply_faces(lattice, cond, u, out);
  }

  double residual_with(std::span<const double> cond, std::span<const double> u,
                       std::span<const double> rhs) const {
    std::vector<double> au;
    apply_op(cond, u, au);
    double r = 0;
    for (std::size_t i = 0; i < au.size(); ++i) {
      const double d = std::abs(au[i] - rhs[i]);
      if (std::isnan(d)) return std::numeric_limits<double>::infinity();
      r = std::max(r, d);
    }
    return r;
  }

  // Direct solve with the given conductivities plus iterative refinement.
  std::vector<double> solve_with(std::span<const double> cond,
                                 std::span<const double> rhs) {
    if (radial) return radial_solve_linear(rad, cond, rhs);
    if (!op.linear() || !factored) {
      A = assemble(lattice, cond);
      factorize(A);
      if (op.linear()) factored = true;
    }
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), Eigen::Index(rhs.size()));
    Eigen::VectorXd x = ldlt.solve(b);
    for (int pass = 0; pass < 3; ++pass) {
      Eigen::VectorXd r = b - A * x;
      if (r.lpNorm<Eigen::Infinity>() <=
          0.1 * cfg.tol * sup_diff_scale(rhs))
        break;
      x += ldlt.solve(r);
    }
    return std::vector<double>(x.data(), x.data() + x.size());
  }

  // Snap roundoff-scale negative values to zero when the data sign makes the
  // exact discrete solution nonnegative, keeping the residual contract.
  void snap_nonnegative(std::vector<double>& u, std::span<const double> rhs,
                        double budget) {
    for (double v : rhs)
      if (v < 0) return;
    const double floor = -1e-12 * (1.0 + sup_norm(u));
    std::vector<double> snapped = u;
    bool any = false;
    for (double& v : snapped)
      if (v < 0 && v >= floor) {
        v = 0;
        any = true;
      }
    if (!any) return;
    const auto cond = conductivities(snapped);
    if (residual_with(cond, snapped, rhs) <= budget) u = std::move(snapped);
  }
};

DirichletSolver::DirichletSolver(EllipticOperator op, DomainPtr domain,
                                 SolverConfig config)
    : impl_(std::make_unique<Impl>()) {
  if (!domain) throw ConfigError("DirichletSolver: null domain");
  impl_->op = std::move(op);
  impl_->dom = std::move(domain);
  impl_->cfg = config;
  if (!(config.tol > 0) || config.max_iter < 1)
    throw ConfigError("DirichletSolver: invalid solver configuration");
  impl_->radial = impl_->dom->kind() == DomainKind::Ball;

  const auto& theop = impl_->op;
  if (theop.kind() == OperatorKind::Elliptic) {
    if (impl_->radial)
      throw ConfigError("elliptic coefficient fields are lattice-based; "
                        "radial domains support Laplace and p-Laplace");
    if (theop.coeff().a11.size() != impl_->dom->size())
      throw ConfigError("elliptic: coefficient arrays do not match the "
                        "domain cell count");
    if (!theop.coeff().a12.empty() && impl_->dom->dim() != 2)
      throw ConfigError("elliptic: mixed coefficients are 2d only");
  }

  if (impl_->radial)
    impl_->rad = build_radial(*impl_->dom);
  else
    impl_->lattice = build_lattice(theop, *impl_->dom);
  if (theop.linear() && !impl_->radial)
    impl_->lin_cond = linear_conductivities(theop, impl_->lattice);
}

DirichletSolver::~DirichletSolver() = default;
DirichletSolver::DirichletSolver(DirichletSolver&&) noexcept = default;
DirichletSolver& DirichletSolver::operator=(DirichletSolver&&) noexcept =
    default;

const DomainPtr& DirichletSolver::domain() const { return impl_->dom; }
const EllipticOperator& DirichletSolver::op() const { return impl_->op; }
const SolverConfig& DirichletSolver::config() const { return impl_->cfg; }

GridFunction DirichletSolver::solve(const GridFunction& rhs,
                                    const GridFunction* init) {
  auto& im = *impl_;
  if (rhs.domain_ptr().get() != im.dom.get())
    throw ConfigError("solve: rhs lives on a different domain");
  const double budget = im.cfg.tol * sup_diff_scale(rhs.values());

  if (im.op.linear()) {
    std::vector<double> ones;
    std::span<const double> cond;
    if (im.radial) {
      ones.assign(im.rad.n, 1.0);
      cond = ones;
    } else {
      cond = im.lin_cond;
    }
    auto u = im.solve_with(cond, rhs.values());
    if (im.residual_with(cond, u, rhs.values()) > budget)
      throw SolverError("linear solve missed its residual tolerance");
    im.snap_nonnegative(u, rhs.values(), budget);
    return GridFunction(im.dom, std::move(u));
  }

  std::vector<double> u;
  if (init) {
    if (init->domain_ptr().get() != im.dom.get())
      throw ConfigError("solve: initial guess lives on a different domain");
    u.assign(init->values().begin(), init->values().end());
  } else {
    // Cold start from the Laplace solution of the same data. Conductivities
    // are per face on lattices, per node on radial systems.
    std::vector<double> ones(im.radial ? im.rad.n : im.lattice.faces.size(),
                             1.0);
    u = im.solve_with(ones, rhs.values());
  }

  const double omega = im.relax();
  for (int it = 0; it < im.cfg.max_iter; ++it) {
    const auto cond = im.conductivities(u);
    if (im.residual_with(cond, u, rhs.values()) <= budget) {
      im.snap_nonnegative(u, rhs.values(), budget);
      return GridFunction(im.dom, std::move(u));
    }
    const auto w = im.solve_with(cond, rhs.values());
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] += omega * (w[i] - u[i]);
  }
  throw SolverError("frozen-coefficient iteration hit max_iter without "
                    "meeting the residual tolerance");
}

double DirichletSolver::residual(const GridFunction& u,
                                 const GridFunction& rhs) const {
  const auto cond = impl_->conductivities(u.values());
  return impl_->residual_with(cond, u.values(), rhs.values());
}

GridFunction DirichletSolver::apply(const GridFunction& u) const {
  const auto cond = impl_->conductivities(u.values());
  std::vector<double> out;
  impl_->apply_op(cond, u.values(), out);
  return GridFunction(impl_->dom, std::move(out));
}

GridFunction solve(const EllipticOperator& op, DomainPtr domain,
                   const GridFunction& rhs, SolverConfig config,
                   const GridFunction* init) {
  DirichletSolver solver(op, std::move(domain), config);
  return solver.solve(rhs, init);
}

double residual(const EllipticOperator& op, const GridFunction& u,
                const GridFunction& rhs) {
  DirichletSolver solver(op, u.domain_ptr());
  return solver.residual(u, rhs);
}

namespace detail {

Eigen::SparseMatrix<double> laplace_matrix(const DomainSpec& dom) {
  if (dom.kind() == DomainKind::Ball)
    throw ConfigError("laplace_matrix requires a lattice domain");
  const EllipticOperator op = EllipticOperator::laplace();
  const LatticeSystem sys = build_lattice(op, dom);
  return assemble(sys, linear_conductivities(op, sys));
}

RadialLaplace radial_laplace(const DomainSpec& dom) {
  if (dom.kind() != DomainKind::Ball)
    throw ConfigError("radial_laplace requires a Ball domain");
  const RadialSystem sys = build_radial(dom);
  RadialLaplace out;
  out.vols = sys.vols;
  out.diag.resize(sys.n);
  out.sub.assign(sys.n, 0.0);
  for (std::size_t j = 0; j < sys.n; ++j) {
    out.diag[j] = sys.tgeom[j] + ((j > 0) ? sys.tgeom[j - 1] : 0.0);
    if (j + 1 < sys.n) out.sub[j + 1] = -sys.tgeom[j];
  }
  return out;
}

std::vector<double> thomas(const std::vector<double>& diag,
                           const std::vector<double>& sub,
                           std::vector<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> cfac(n);
  cfac[0] = diag[0];
  for (std::size_t j = 1; j < n; ++j) {
    const double m = sub[j] / cfac[j - 1];
    cfac[j] = diag[j] - m * sub[j];
    rhs[j] -= m * rhs[j - 1];
  }
  std::vector<double> u(n);
  u[n - 1] = rhs[n - 1] / cfac[n - 1];
  for (std::size_t j = n - 1; j-- > 0;)
    u[j] = (rhs[j] - sub[j + 1] * u[j + 1]) / cfac[j];
  return u;
}

}  // namespace detail

bool comparison_check(const EllipticOperator& op, DomainPtr domain,
                      const GridFunction& f1, const GridFunction& f2,
                      SolverConfig config) {
  for (std::size_t i = 0; i < f1.size(); ++i) {
    if (f1[i] < 0) throw ConfigError("comparison_check: f1 must be >= 0");
    if (f1[i] > f2[i])
      throw ConfigError("comparison_check: need f1 <= f2 pointwise");
  }
  DirichletSolver solver(op, std::move(domain), config);
  const GridFunction u1 = solver.solve(f1);
  const GridFunction u2 = solver.solve(f2);
  const double slack = 10 * config.tol * std::max(1.0, u2.sup_norm());
  for (std::size_t i = 0; i < u1.size(); ++i)
    if (u1[i] > u2[i] + slack) return false;
  return true;
}

}  // namespace pullin
