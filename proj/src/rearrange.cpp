#include "pullin/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pullin/errors.hpp"

namespace pullin {

RearrangedFunction::RearrangedFunction(DomainPtr ball,
                                       std::vector<double> profile,
                                       std::vector<double> sorted_values,
                                       std::vector<double> cumulative_measures,
                                       double uniform_volume)
    : ball_(std::move(ball)),
      profile_(std::move(profile)),
      sorted_(std::move(sorted_values)),
      cumulative_(std::move(cumulative_measures)),
      uniform_volume_(uniform_volume) {}

GridFunction RearrangedFunction::as_grid_function() const {
  return GridFunction(ball_, profile_);
}

double RearrangedFunction::value_at_measure(double m) const {
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), m);
  if (it == cumulative_.end()) return 0.0;
  return sorted_[std::size_t(it - cumulative_.begin())];
}

double RearrangedFunction::distribution_measure(double t) const {
  // sorted_ is nonincreasing; count entries strictly above t.
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), t,
                             [](double a, double b) { return a > b; });
  const std::size_t count = std::size_t(it - sorted_.begin());
  if (count == 0) return 0.0;
  if (uniform_volume_ > 0) return double(count) * uniform_volume_;
  return cumulative_[count - 1];
}

double RearrangedFunction::integral() const {
  double s = 0, prev = 0;
  for (std::size_t k = 0; k < sorted_.size(); ++k) {
    s += sorted_[k] * (cumulative_[k] - prev);
    prev = cumulative_[k];
  }
  return s;
}

RearrangedFunction rearrange(const GridFunction& u, int n_radial) {
  const auto& dom = u.domain();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] < 0)
      throw ConfigError("rearrange: input has negative values");

  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&u](std::size_t a,
                                                    std::size_t b) {
    return u[a] > u[b];
  });

  const auto& vols = dom.cell_volumes();
  bool uniform = true;
  for (double v : vols)
    if (v != vols[0]) {
      uniform = false;
      break;
    }

  std::vector<double> sorted(u.size()), cumulative(u.size());
  double running = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted[k] = u[order[k]];
    if (uniform) {
      cumulative[k] = double(k + 1) * vols[0];
    } else {
      running += vols[order[k]];
      cumulative[k] = running;
    }
  }

  DomainPtr ball = symmetrize_domain(dom, n_radial);
  const double sigma = unit_sphere_area(dom.dim());
  const int d = dom.dim();
  std::vector<double> profile(ball->size());
  const auto& radii = ball->radii();
  for (std::size_t j = 0; j < profile.size(); ++j) {
    const double m = sigma * std::pow(radii[j], d) / d;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), m);
    profile[j] =
        (it == cumulative.end()) ? 0.0 : sorted[std::size_t(it - cumulative.begin())];
  }

  return RearrangedFunction(std::move(ball), std::move(profile),
                            std::move(sorted), std::move(cumulative),
                            uniform ? vols[0] : 0.0);
}

double compose_check(const std::function<double(double)>& g,
                     const GridFunction& u, int n_radial) {
  std::vector<double> gu(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) gu[i] = g(u[i]);
  const GridFunction gu_fn(u.domain_ptr(), std::move(gu));

  const RearrangedFunction left = rearrange(gu_fn, n_radial);
  const RearrangedFunction right = rearrange(u, n_radial);
  double dev = 0;
  for (std::size_t j = 0; j < left.profile().size(); ++j)
    dev = std::max(dev,
                   std::abs(left.profile()[j] - g(right.profile()[j])));
  return dev;
}

}  // namespace pullin
