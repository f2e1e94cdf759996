"""Inclusion matrices mod p and over Q, and reconstruction checks built on them.

Subsets of ``{0..v-1}`` are int bitmasks; families of ``t``-subsets,
graph edge sets and tournament arc sets are int bitsets over colex
indices. The ``graphs`` and ``tournaments`` modules are exposed as
submodules because both define ``boolean_sum``.
"""

from __future__ import annotations

from . import graphs, tournaments
from .combinatorics import (
    DigitVector,
    SubsetCode,
    binomial,
    binomial_mod_p_lucas,
    digits_base_p,
    is_prime,
    p_divides_binomial,
    subset_rank,
    subset_unrank,
)
from .errors import KellymodError, ParseError, PreconditionError, ResourceCapError
from .graph_theorems import GRAPH_THEOREMS, verify_graph_theorem
from .incidence import (
    InclusionMatrix,
    KernelClass,
    KernelTag,
    build_inclusion_matrix,
    computed_kernel_class,
    kernel_class,
    kneser_adjacency,
    left_kernel,
    wilson_diagonal,
    wilson_rank,
)
from .linalg import (
    DiagonalSpec,
    IntegerMatrix,
    ResidueMatrix,
    rank_mod_p,
    rank_rational,
    smith_normal_form,
)
from .pair_checks import check_graph_pair, check_tournament_pair
from .reconstruction import Family, classify_pair, verify_main_theorem, verify_pouzet_lemma
from .report import REPORT_SCHEMA, Report, Route
from .suite import run_suite
from .tournament_theorems import TOURNAMENT_THEOREMS, verify_tournament_theorem

__version__ = "0.1.0"

__all__ = [
    "DiagonalSpec",
    "DigitVector",
    "Family",
    "GRAPH_THEOREMS",
    "InclusionMatrix",
    "IntegerMatrix",
    "KellymodError",
    "KernelClass",
    "KernelTag",
    "ParseError",
    "PreconditionError",
    "REPORT_SCHEMA",
    "Report",
    "ResidueMatrix",
    "ResourceCapError",
    "Route",
    "SubsetCode",
    "TOURNAMENT_THEOREMS",
    "binomial",
    "binomial_mod_p_lucas",
    "build_inclusion_matrix",
    "check_graph_pair",
    "check_tournament_pair",
    "classify_pair",
    "computed_kernel_class",
    "digits_base_p",
    "graphs",
    "is_prime",
    "kernel_class",
    "kneser_adjacency",
    "left_kernel",
    "p_divides_binomial",
    "rank_mod_p",
    "rank_rational",
    "run_suite",
    "smith_normal_form",
    "subset_rank",
    "subset_unrank",
    "tournaments",
    "verify_graph_theorem",
    "verify_main_theorem",
    "verify_pouzet_lemma",
    "verify_tournament_theorem",
    "wilson_diagonal",
    "wilson_rank",
]
