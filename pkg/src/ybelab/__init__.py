"""Finite skew braces, skew bracoids, semibraces, and their Yang-Baxter solutions."""

from .braces import SkewBrace, abelian_map_brace, brace_solution, trivial_brace, verify_skew_brace
from .bracoids import (
    ContainedBrace,
    SkewBracoid,
    contains_brace,
    from_holomorph_subgroup,
    from_strong_left_ideal,
    lambda_rho,
    lambda_rho_identity_checks,
    transport,
    verify_bracoid,
)
from .checks import AxiomViolated, Check, Report
from .groups import (
    FiniteGroup,
    GroupAction,
    GroupMap,
    Subgroup,
    automorphism_group,
    cyclic_group,
    direct_product,
    elementary_abelian,
    exact_factorization,
    find_complements,
    holomorph,
    semidirect_product,
    subgroup_generated,
)
from .semibraces import (
    Semibrace,
    bracoid_to_semibrace,
    decompose,
    roundtrip_check,
    semibrace_to_bracoid,
    verify_semibrace,
)
from .ybe import (
    SolutionMap,
    check_braid,
    conjugate_solution,
    restrict_solution,
    solution_from_bracoid,
    solution_from_semibrace,
    solutions_equal,
    tilde_solution_from_bracoid,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomViolated",
    "Check",
    "ContainedBrace",
    "FiniteGroup",
    "GroupAction",
    "GroupMap",
    "Report",
    "Semibrace",
    "SkewBrace",
    "SkewBracoid",
    "SolutionMap",
    "Subgroup",
    "abelian_map_brace",
    "automorphism_group",
    "brace_solution",
    "bracoid_to_semibrace",
    "check_braid",
    "conjugate_solution",
    "contains_brace",
    "cyclic_group",
    "decompose",
    "direct_product",
    "elementary_abelian",
    "exact_factorization",
    "find_complements",
    "from_holomorph_subgroup",
    "from_strong_left_ideal",
    "holomorph",
    "lambda_rho",
    "lambda_rho_identity_checks",
    "restrict_solution",
    "roundtrip_check",
    "semibrace_to_bracoid",
    "semidirect_product",
    "solution_from_bracoid",
    "solution_from_semibrace",
    "solutions_equal",
    "subgroup_generated",
    "tilde_solution_from_bracoid",
    "transport",
    "trivial_brace",
    "verify_bracoid",
    "verify_semibrace",
    "verify_skew_brace",
]
