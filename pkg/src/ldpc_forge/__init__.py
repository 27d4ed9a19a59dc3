"""Finite-length LDPC toolkit.

Stopping-set search and error-floor profiling, code annealing, cyclic
lifting with its suppressing-weight calculus, and a binary-erasure-channel
simulation harness.  Hot kernels run in a compiled extension when built,
with a pure-Python fallback selected at import.
"""

__version__ = "0.1.0"

from .kernels import BACKEND as KERNEL_BACKEND
from .graph import (DegreeDistribution, TannerGraph, compute_girth,
                    sample_irregular, sample_regular, swap_edges)
from .alist import read_alist, write_alist
from .stopsets import (ErrorFloorProfile, InducedStats,
                       brute_force_stopping_sets, ensemble_floor_estimate,
                       enumerate_stopping_sets, error_floor_profile,
                       floor_asymptote, induced_stats, is_stopping_set)
from .becsim import (EnsembleSim, SimCurve, SimPoint, StopRule, exact_fer,
                     mc_ensemble, mc_simulate, peel_decode)
from .lift import (LiftingSpec, Survival, classify_survival, index_ones,
                   lift, project, sample_lifting_spec)
from .suppress import (EnsembleFloor, SurvivalCensus, brute_force_survivals,
                       count_no_singleton_assignments, expectation_slope,
                       find_ordered_decoding_set, first_order_expectation,
                       lifted_ensemble_floor, suppressing_weight,
                       survival_lower_exponent, survival_order_exponent,
                       survival_upper_exponent)
from .anneal import (AnnealConfig, AnnealReport, AugmentedGraph, anneal,
                     anneal_lifting_sequence, degree_augment, improves,
                     remove_augment)
from .pipeline import PipelineConfig, PipelineResult, run_pipeline

__all__ = [
    "AnnealConfig", "AnnealReport", "AugmentedGraph", "DegreeDistribution",
    "EnsembleFloor", "EnsembleSim", "ErrorFloorProfile", "InducedStats",
    "KERNEL_BACKEND", "LiftingSpec", "PipelineConfig", "PipelineResult",
    "SimCurve", "SimPoint", "StopRule", "Survival", "SurvivalCensus",
    "TannerGraph", "__version__", "anneal", "anneal_lifting_sequence",
    "brute_force_stopping_sets", "brute_force_survivals", "classify_survival",
    "compute_girth", "count_no_singleton_assignments", "degree_augment",
    "ensemble_floor_estimate", "enumerate_stopping_sets", "error_floor_profile",
    "exact_fer", "expectation_slope", "find_ordered_decoding_set",
    "first_order_expectation", "floor_asymptote", "improves", "index_ones",
    "induced_stats", "is_stopping_set", "lift", "lifted_ensemble_floor",
    "mc_ensemble", "mc_simulate", "peel_decode", "project", "read_alist",
    "remove_augment", "run_pipeline", "sample_irregular", "sample_lifting_spec",
    "sample_regular", "suppressing_weight", "survival_lower_exponent",
    "survival_order_exponent", "survival_upper_exponent", "swap_edges",
    "write_alist",
]
