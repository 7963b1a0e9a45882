#pragma once

#include <functional>

#include "pullin/domain.hpp"

namespace pullin {

// Symmetric decreasing rearrangement of a nonnegative grid function.
//
// The exact object is the right-continuous step function built from the
// (value, cell volume) pairs sorted by decreasing value; it is equimeasurable
// with the input by construction. profile() resamples that step function at
// the radial nodes of the measure-equivalent ball.
class RearrangedFunction {
public:
  RearrangedFunction(DomainPtr ball, std::vector<double> profile,
                     std::vector<double> sorted_values,
                     std::vector<double> cumulative_measures,
                     double uniform_volume);

  const DomainPtr& ball() const { return ball_; }
  // Nonincreasing node values u*(r_j).
  const std::vector<double>& profile() const { return profile_; }
  GridFunction as_grid_function() const;

  const std::vector<double>& sorted_values() const { return sorted_; }
  const std::vector<double>& cumulative_measures() const { return cumulative_; }
  // Step-function value at measure coordinate m, right-continuous; zero past
  // the total mass of the input.
  double value_at_measure(double m) const;
  // |{u* > t}|, computed from the step representation.
  double distribution_measure(double t) const;

  double max_value() const { return sorted_.empty() ? 0 : sorted_.front(); }
  double integral() const;

private:
  DomainPtr ball_;
  std::vector<double> profile_;
  std::vector<double> sorted_;
  std::vector<double> cumulative_;
  double uniform_volume_ = 0;  // nonzero when all cell volumes coincide
};

// n_radial = 0 uses the source resolution (see default_radial_nodes).
// Rejects inputs with negative values.
RearrangedFunction rearrange(const GridFunction& u, int n_radial = 0);

// Sup over the ball nodes of |(g o u)* - g(u*)| for nondecreasing g. Zero for
// the sort-based construction; exposed so that can be checked.
double compose_check(const std::function<double(double)>& g,
                     const GridFunction& u, int n_radial = 0);

}  // namespace pullin
