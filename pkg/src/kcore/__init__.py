"""Core complexes of subgroups of free products of two finite groups."""

__version__ = "0.1.0"

from .core import (
    CoreComplex,
    build_core,
    index,
    is_complete,
    lift,
    member,
    prune_to_span,
    rebase,
    trans,
)
from .groups import FactorGroup, Subgroup, canonical_coset_rep, subgroup_closure
from .kurosh import gamma_graph, kurosh_rank
from .monodromy import monodromy, rank
from .separation import (
    boundary_vertices,
    find_rank_zero,
    intersection_witness,
    separating_witness,
    well_situate,
)
from .words import FreeProduct, Syllable

__all__ = [
    "CoreComplex",
    "FactorGroup",
    "FreeProduct",
    "Subgroup",
    "Syllable",
    "boundary_vertices",
    "build_core",
    "canonical_coset_rep",
    "find_rank_zero",
    "gamma_graph",
    "index",
    "intersection_witness",
    "is_complete",
    "kurosh_rank",
    "lift",
    "member",
    "monodromy",
    "prune_to_span",
    "rank",
    "rebase",
    "separating_witness",
    "subgroup_closure",
    "trans",
    "well_situate",
]
