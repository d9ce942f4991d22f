"""Generalized Fibonacci cubes: the hypercube subgraphs induced on binary
strings avoiding a forbidden factor, together with the string invariants,
explicit isomorphisms, canonical labeling, and exhaustive conjecture
checks that describe when two such graphs are isomorphic."""

from .counting import brute_count, build_automaton, count_avoiders, verify_count_chain
from .cube import (
    AvoidanceGraph,
    ExcludedSets,
    build_graph,
    edge_count,
    excluded_sets,
    flip_bit,
    from_graph6,
    graph_distance,
    left_to_right_path,
    to_graph6,
)
from .harness import (
    ConjectureReport,
    IsoClassTable,
    check_conjecture_blocks,
    check_conjecture_dim_minus_1,
    check_conjecture_two_thirds,
    isom_classes,
    nontrivial_pairs,
)
from .iso import (
    BudgetExceededError,
    Fingerprint,
    are_isomorphic,
    canonical_certificate,
    canonical_form,
    fingerprint,
    refine,
    verify_mapping,
)
from .theorems import (
    CoordinateMap,
    alpha_map,
    psi_map,
    verify_theorem_3k1,
    verify_theorem_blocks,
    verify_theorem_length,
)
from .words import (
    autocorrelation,
    bit_change_count,
    bit_change_indices,
    canonical_rep,
    complement,
    contains_factor,
    is_prime_word,
    is_trivial_pair,
    orbit,
    poly_value,
    representatives,
    reverse,
)

__version__ = "0.1.0"
