"""Finite groupoids, truncated simplicial groupoids, pullback axiom checkers,
and exact incidence coalgebras at desk scale."""

__version__ = "0.1.0"

from .groupoids import (
    FiniteGroupoid,
    GroupoidFunctor,
    GroupoidSquare,
    groupoid_cardinality,
    homotopy_fibre,
    homotopy_pullback,
    is_equivalence,
    is_pullback_square,
    iso_classes,
    product,
    validate_groupoid,
)
from .simplicial import (
    SimpMap,
    TruncSimpGrpd,
    check_cartesian,
    check_conservative,
    check_culf,
    check_decalage,
    check_decomposition,
    check_decomposition_active,
    check_extra_pullbacks,
    check_fibration,
    check_relatively_segal,
    check_segal,
    check_segal_direct,
    check_ulf,
    corrupted_variant,
    dec,
    dec_of_map,
    evaluate,
    product_simplicial,
    terminal_space,
    validate_simplicial,
)

__all__ = [
    "FiniteGroupoid",
    "GroupoidFunctor",
    "GroupoidSquare",
    "SimpMap",
    "TruncSimpGrpd",
    "check_cartesian",
    "check_conservative",
    "check_culf",
    "check_decalage",
    "check_decomposition",
    "check_decomposition_active",
    "check_extra_pullbacks",
    "check_fibration",
    "check_relatively_segal",
    "check_segal",
    "check_segal_direct",
    "check_ulf",
    "corrupted_variant",
    "dec",
    "dec_of_map",
    "evaluate",
    "groupoid_cardinality",
    "homotopy_fibre",
    "homotopy_pullback",
    "is_equivalence",
    "is_pullback_square",
    "iso_classes",
    "product",
    "product_simplicial",
    "terminal_space",
    "validate_groupoid",
    "validate_simplicial",
]
