"""Exact computations with two-strand degenerate cyclotomic BMW algebras."""

__version__ = "0.1.0"

from .admissibility import (
    ParameterSet,
    assess,
    check_admissible,
    check_u_admissible,
    check_weak,
    solve_universal,
    verify_equivalence,
)
from .bmw2 import (
    AlgebraElement,
    BasisWord,
    build_table,
    check_associativity,
    check_relations,
    freeness_certificate,
    involution,
    reduce_word,
)
from .repn import build_module, eigen_split, solve_kappa, verify_module_relations
from .ring import MultiPoly, RatFunc
from .symfun import eta, gamma, schur_q, signed_elementary, weighted_power_sum

__all__ = [
    "AlgebraElement",
    "BasisWord",
    "MultiPoly",
    "ParameterSet",
    "RatFunc",
    "assess",
    "build_module",
    "build_table",
    "check_admissible",
    "check_associativity",
    "check_relations",
    "check_u_admissible",
    "check_weak",
    "eigen_split",
    "eta",
    "freeness_certificate",
    "gamma",
    "involution",
    "reduce_word",
    "schur_q",
    "signed_elementary",
    "solve_kappa",
    "solve_universal",
    "verify_equivalence",
    "verify_module_relations",
    "weighted_power_sum",
]
