"""Growth-optimal e-variables and concentration bounds for exponential families.

Modules
-------
expfam      natural exponential families generated by a zero-mean null
projection  information projection and the convex-alternative GROW e-variable
csc_convex  convex-case concentration bounds and their oracles
surround1d  one-dimensional surrounding alternatives (boundary mixtures)
nml         Shtarkov/NML e-variables, regret scans and partition comparisons
cli         batch command-line front end
"""

from .csc_convex import BoundReport, csc_convex_bound, mle_bound_check_1d, oracle_prob
from .evariable import EVariable, null_expectation
from .expfam import (
    FamilySpec,
    SampleConfig,
    enumerate_outcomes,
    gaussian_location,
    kl,
    log_density_ratio,
    natural_of_mean,
    poisson,
    sample_mean,
    scaled_bernoulli,
)
from .meansets import (
    ConvexPolytope,
    HalfSpace,
    Interval1D,
    SurroundIntervalComplement,
    SurroundKLBallComplement,
    SurroundRadial,
)
from .nml import (
    PartitionSpec,
    compare_partitions,
    csc_surround_bound,
    estimate_r,
    grow_sandwich,
    log_shtarkov_normalizer,
    nml_evariable,
    regret_scan,
)
from .projection import grow_convex, info_project_convex, pythagorean_residuals
from .surround1d import (
    BoundaryPrior,
    balance_objective,
    grow_surround_1d,
    monotonicity_scan,
    solve_balance,
)

__all__ = [
    "BoundReport",
    "csc_convex_bound",
    "mle_bound_check_1d",
    "oracle_prob",
    "EVariable",
    "null_expectation",
    "FamilySpec",
    "SampleConfig",
    "enumerate_outcomes",
    "gaussian_location",
    "kl",
    "log_density_ratio",
    "natural_of_mean",
    "poisson",
    "sample_mean",
    "scaled_bernoulli",
    "ConvexPolytope",
    "HalfSpace",
    "Interval1D",
    "SurroundIntervalComplement",
    "SurroundKLBallComplement",
    "SurroundRadial",
    "PartitionSpec",
    "compare_partitions",
    "csc_surround_bound",
    "estimate_r",
    "grow_sandwich",
    "log_shtarkov_normalizer",
    "nml_evariable",
    "regret_scan",
    "grow_convex",
    "info_project_convex",
    "pythagorean_residuals",
    "BoundaryPrior",
    "balance_objective",
    "grow_surround_1d",
    "monotonicity_scan",
    "solve_balance",
]

__version__ = "0.1.0"
