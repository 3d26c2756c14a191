"""p-Kostka numbers and indecomposable Young permutation modules."""

__version__ = "0.1.0"

from .partitions import (
    Composition,
    Partition,
    dominates,
    p_adic_expansion,
    p_core,
    parse_partition,
    young_vertex,
)
from .characters import CharacterVector, kostka_number, permutation_character, spans_multiple_blocks
from .engine import Engine, PKostkaResult, klyachko_pkostka, pkostka, split_bound, two_part_pkostka
from .indecomposable import (
    IndecomposabilityVerdict,
    has_nonprincipal_summand,
    indecomposable_partitions,
    is_indecomposable,
    two_part_verdict,
)
