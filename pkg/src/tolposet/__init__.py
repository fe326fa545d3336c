"""Tolerance relations on finite posets: verification, blocks, quotients,
refinement, and exhaustive checking on small instances."""
from .errors import ParseError, PosetError, RelationError, TheoremFalsification
from .order import (
    Poset, bottom, canonical_form, interval, is_complemented, is_convex, is_directed, is_lattice,
    is_relatively_complemented, join, meet, top,
)
from .relations import (
    BinaryRelation, ConditionWitness, blocks, check_condition, diagonal, from_cliques,
    from_label_cliques, full, is_congruence, is_tolerance, tolerance_witness,
)
from .quotient import (
    QuotientPoset, block_leq, czedli_join, czedli_meet, interval_block_leq, orders_coincide,
    quotient_poset,
)
from .refinement import (
    BlockMap, RefinementPair, congruence_bijection_g, exists_order_preserving_bijection,
    injection_f, is_order_preserving, quotient_relation, refines,
)
from .enumeration import (
    CLAIMS, ToleranceFamily, VerificationReport, all_congruences, all_posets, all_tolerances,
    family_join, family_poset, minimal_upper_bounds, verify_theorems,
)

__version__ = "0.1.0"
