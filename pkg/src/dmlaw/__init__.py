"""Darling-Mandelbrot limit laws and anticipated-rejection sampler costs.

The package has three layers:

* exact/analytic facts about the Darling-Mandelbrot distribution and its
  geometric convolution (the cost law of samplers whose completed
  attempts can still miss): characteristic function, Laplace transform,
  moments, tail rate (:mod:`dmlaw.core`, backed by the scalar special
  functions in :mod:`dmlaw.specfun`);

* a numerical construction of the Darling-Mandelbrot density with CDF,
  quantile and sampling support (:mod:`dmlaw.density`);

* Monte Carlo machinery: the threshold sum process (:mod:`dmlaw.tsp`),
  concrete anticipated-rejection samplers for lattice paths and walks
  (:mod:`dmlaw.samplers`), and the statistical tests tying the empirical
  output back to the predicted limit laws (:mod:`dmlaw.stats`).

A command-line interface (``dmlaw``) exposes density tables, moment
printouts, simulation runs and a self-validation suite.
"""

from dmlaw.core import (
    cf_dm,
    cf_dmp,
    laplace_dm,
    moments_dm,
    moments_dmp,
    find_a0,
    legendre_nu,
    wedge_alpha,
    TailConstant,
)
from dmlaw.density import (
    DensityGrid,
    build_density,
    density_gk,
    singularity_coefficient,
    check_annihilator,
    cdf,
    quantile,
    sample_dm,
    sample_dmp,
    save_table,
    load_table,
)
from dmlaw.tsp import (
    BaseDistribution,
    TspOutcome,
    pareto_base,
    sample_tsp,
    scaling_factor,
    run_trials,
)
from dmlaw.samplers import (
    WalkModel,
    CostRecord,
    motzkin_prefix,
    schroeder_prefix,
    size_process,
    quarter_plane_walk,
    wedge_walk,
    avoiding_pair,
    cost_distribution,
    survival_counts,
)
from dmlaw.stats import (
    EmpiricalSample,
    FitReport,
    ks_one_sample,
    ks_two_sample,
    moment_report,
    survival_exponent,
    report_row,
)

__version__ = "0.1.0"

__all__ = [
    "cf_dm", "cf_dmp", "laplace_dm", "moments_dm", "moments_dmp",
    "find_a0", "legendre_nu", "wedge_alpha", "TailConstant",
    "DensityGrid", "build_density", "density_gk", "singularity_coefficient",
    "check_annihilator", "cdf", "quantile", "sample_dm", "sample_dmp",
    "save_table", "load_table",
    "BaseDistribution", "TspOutcome", "pareto_base", "sample_tsp",
    "scaling_factor", "run_trials",
    "WalkModel", "CostRecord", "motzkin_prefix", "schroeder_prefix",
    "size_process", "quarter_plane_walk", "wedge_walk", "avoiding_pair",
    "cost_distribution", "survival_counts",
    "EmpiricalSample", "FitReport", "ks_one_sample", "ks_two_sample",
    "moment_report", "survival_exponent", "report_row",
]
