"""Pull-in thresholds, symmetric decreasing rearrangement, and
comparison-principle checks on intervals, lattice masks, and balls.

The heavy lifting lives in the compiled ``_core`` module; this package
re-exports its public surface.
"""

from ._core import (
    Domain,
    compare,
    dirichlet_bound,
    domain,
    eig1,
    faber_krahn,
    load_mask,
    newton_bound,
    newton_mu1,
    newton_pull_in,
    pull_in,
    rearrange,
    save_mask,
    solve,
    symmetrize,
    talenti,
)

__version__ = "1.0.0"

__all__ = [
    "Domain",
    "compare",
    "dirichlet_bound",
    "domain",
    "eig1",
    "faber_krahn",
    "load_mask",
    "newton_bound",
    "newton_mu1",
    "newton_pull_in",
    "pull_in",
    "rearrange",
    "save_mask",
    "solve",
    "symmetrize",
    "talenti",
]
