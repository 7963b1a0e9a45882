#pragma once

#include <cstdint>
#include <random>

#include "pullin/domain.hpp"

namespace pullin {

// Deterministic random test-case generation. All draws come from the one
// engine the caller owns, so a whole suite is reproducible from a single
// seed: case k of a suite is generated by consuming the stream in order.
using CaseEngine = std::mt19937_64;

// Random connected-ish 2D mask inside an nx-by-ny lattice of the given
// spacing: union of 2-5 random axis-aligned ellipses anchored at a common
// core cell (so the mask is never empty). Cell count is bounded by the
// lattice; degenerate draws retry internally.
DomainPtr random_mask(CaseEngine& rng, int nx, int ny, double spacing);

// Random nonnegative function on the domain: a clipped mixture of Gaussian
// bumps, scaled to sup-norm about 1. min >= 0 by construction.
GridFunction random_nonnegative(CaseEngine& rng, DomainPtr domain);

// Random strictly positive forcing: baseline 0.5 plus a bounded smooth
// perturbation, so min >= 0.05 by construction.
GridFunction random_forcing(CaseEngine& rng, DomainPtr domain);

// Uniform draw in [lo, hi).
double random_level(CaseEngine& rng, double lo, double hi);

}  // namespace pullin
