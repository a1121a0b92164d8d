"""Chord diagrams, their braid presentations, and the 4-term relation."""

from .braidindex import (
    BraidIndexResult,
    compute_braid_index,
    oracle_braid_index,
    three_braid_representatives,
    verify_three_braid_uniqueness,
)
from .braidword import (
    ChordWord,
    braid_up,
    canonical_braiding,
    close,
    cyclic_permute,
    cyclically_equivalent,
    parse_word,
    trace_normal_form,
)
from .diagram import (
    ChordDiagram,
    WeightedDiagram,
    amalgamate,
    canonical_form,
    enumerate_diagrams,
    expand,
    index_bounds,
    parse_name,
    special_chords,
)
from .errors import ChordBraidError
from .relations import (
    LinearCombo,
    RelationSystem,
    braid_context_relations,
    comb,
    four_term_relations,
    one_block_form,
    one_term_relations,
    quotient_dimension,
)

__all__ = [
    "BraidIndexResult", "ChordBraidError", "ChordDiagram", "ChordWord", "LinearCombo",
    "RelationSystem", "WeightedDiagram", "amalgamate", "braid_context_relations", "braid_up",
    "canonical_braiding", "canonical_form", "close", "comb", "compute_braid_index",
    "cyclic_permute", "cyclically_equivalent", "enumerate_diagrams", "expand",
    "four_term_relations", "index_bounds", "one_block_form", "one_term_relations",
    "oracle_braid_index", "parse_name", "parse_word", "quotient_dimension", "special_chords",
    "three_braid_representatives", "trace_normal_form", "verify_three_braid_uniqueness",
]
