"""The law laboratory: seeded generators, operational oracles, enumerators and the law registry.

Typical use::

    from kleenewand.lawlab import run_law
    report = run_law("⩚.1", seed=1, cases=1000)
    assert report.passed

``run_law(..., impl="guard-only")`` runs the same law against a deliberately
wrong wand, which should fail.
"""

from .enumeration import ENUM_MAX_A, ENUM_MAX_X, all_maps, count_disjoint_pairs, enumerate_all
from .gen import (
    gen_disjoint_family,
    gen_disjoint_pair,
    gen_dj,
    gen_matobj,
    gen_matrix,
    gen_partial_map,
    gen_partition,
    gen_rest_idem,
    gen_sub_map,
    gen_surjection,
    gen_total_map,
    gen_uniform_square,
)
from .impl import MUTATIONS, Impl
from .oracle import star_simulate, step_simulate, token_trace, wand_simulate
from .registry import REGISTRY, Bounds, Law, all_laws, resolve
from .rng import SplitMix64, derive, mix64
from .runner import LawReport, replay, run_law, run_laws

__all__ = [
    "ENUM_MAX_A", "ENUM_MAX_X", "MUTATIONS", "REGISTRY", "Bounds", "Impl", "Law", "LawReport",
    "SplitMix64", "all_laws", "all_maps", "count_disjoint_pairs", "derive", "enumerate_all",
    "gen_disjoint_family", "gen_disjoint_pair", "gen_dj", "gen_matobj", "gen_matrix",
    "gen_partial_map", "gen_partition", "gen_rest_idem", "gen_sub_map", "gen_surjection",
    "gen_total_map", "gen_uniform_square", "mix64", "replay", "resolve", "run_law", "run_laws",
    "star_simulate", "step_simulate", "token_trace", "wand_simulate",
]
