#include "pullin/cases.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pullin/errors.hpp"

namespace pullin {

namespace {

struct Ellipse {
  double cx, cy, rx, ry;
  bool contains(double x, double y) const {
    const double dx = (x - cx) / rx;
    const double dy = (y - cy) / ry;
    return dx * dx + dy * dy < 1.0;
  }
};

}  // namespace

DomainPtr random_mask(CaseEngine& rng, int nx, int ny, double spacing) {
  if (nx < 4 || ny < 4)
    throw ConfigError("random_mask: lattice must be at least 4x4");
  const double w = nx * spacing;
  const double h = ny * spacing;
  std::uniform_int_distribution<int> count_dist(2, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Retrying on a fresh draw keeps the engine state advancing, so distinct
  // cases stay distinct even when a retry occurs.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int blobs = count_dist(rng);
    std::vector<Ellipse> shapes;
    // Anchor: a generous central ellipse every other blob overlaps.
    const Ellipse core{(0.3 + 0.4 * unit(rng)) * w,
                       (0.3 + 0.4 * unit(rng)) * h,
                       (0.12 + 0.18 * unit(rng)) * w,
                       (0.12 + 0.18 * unit(rng)) * h};
    shapes.push_back(core);
    for (int b = 1; b < blobs; ++b) {
      // Center inside the core so the union stays connected.
      const double t = 2 * 3.14159265358979323846 * unit(rng);
      const double s = unit(rng);
      shapes.push_back({core.cx + s * core.rx * std::cos(t),
                        core.cy + s * core.ry * std::sin(t),
                        (0.08 + 0.22 * unit(rng)) * w,
                        (0.08 + 0.22 * unit(rng)) * h});
    }
    auto mask = mask_from_predicate(
        2, {nx, ny, 1}, spacing, [&](std::array<double, 3> p) {
          return std::any_of(shapes.begin(), shapes.end(), [&](const Ellipse& e) {
            return e.contains(p[0], p[1]);
          });
        });
    if (mask->size() >= 16 && mask->connected()) return mask;
  }
  throw SolverError("random_mask: failed to draw a usable mask");
}

GridFunction random_nonnegative(CaseEngine& rng, DomainPtr domain) {
  std::uniform_int_distribution<int> count_dist(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Bounding box of the cell centers, to place the bumps inside the domain.
  std::array<double, 3> lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (std::size_t c = 0; c < domain->size(); ++c) {
    const auto p = domain->position(c);
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  const int bumps = count_dist(rng);
  struct Bump {
    std::array<double, 3> c;
    double inv2s2, amp;
  };
  std::vector<Bump> bs;
  const double diam = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2],
                                domain->spacing()});
  for (int b = 0; b < bumps; ++b) {
    Bump bump;
    for (int a = 0; a < 3; ++a)
      bump.c[a] = lo[a] + unit(rng) * (hi[a] - lo[a]);
    const double s = (0.1 + 0.4 * unit(rng)) * diam;
    bump.inv2s2 = 1.0 / (2 * s * s);
    bump.amp = 0.2 + 0.8 * unit(rng);
    bs.push_back(bump);
  }
  // A random fraction of cases is clipped at a positive level to exercise
  // plateau handling (ties) in the rearrangement.
  const bool clip = unit(rng) < 0.3;
  const double clip_level = 0.3 + 0.5 * unit(rng);
  auto u = GridFunction::from_function(domain, [&](std::array<double, 3> x) {
    double v = 0;
    for (const auto& b : bs) {
      double r2 = 0;
      for (int a = 0; a < 3; ++a) {
        const double d = x[a] - b.c[a];
        r2 += d * d;
      }
      v += b.amp * std::exp(-r2 * b.inv2s2);
    }
    return clip ? std::min(v, clip_level) : v;
  });
  return u;
}

GridFunction random_forcing(CaseEngine& rng, DomainPtr domain) {
  GridFunction bumps = random_nonnegative(rng, domain);
  const double top = std::max(bumps.max(), 1e-12);
  std::vector<double> values(bumps.values().begin(), bumps.values().end());
  // 0.5 baseline plus a perturbation capped at 0.45 keeps min >= 0.05.
  for (double& v : values) v = 0.5 + 0.45 * (2 * v / top - 1.0);
  return GridFunction(std::move(domain), std::move(values));
}

double random_level(CaseEngine& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

}  // namespace pullin
