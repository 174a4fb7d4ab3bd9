"""Double categories with a law checker, over exact rationals.

The package realizes one interface (:class:`~doublecat.core.DoubleCategoryInstance`)
and checks its axioms uniformly across the concrete constructions: commutative
squares, spans of finite sets, bimodules over small algebras, combinatorial
cobordisms, and the field-theory evaluation of the latter; double-category
actions come with their own checker, orbits and characteristic classes.
"""

__version__ = "0.1.0"

from .core import (
    EXHAUSTIVE,
    DoubleCategoryInstance,
    DoubleFunctor,
    LawReport,
    LawResult,
    check_double_category,
    check_double_functor,
    compose_double_functors,
    dual,
    identity_double_functor,
    is_bicategory_shaped,
    product_double_category,
    restrict,
)
from .errors import CategoryLawError, ClosureError, OrbitBudgetError, StructureError
from .finset import (
    FinCategory,
    FinFunction,
    FinMorphism,
    FinSet,
    PullbackCone,
    cartesian_product,
    check_pullback_universal,
    disjoint_union,
    pullback,
    validate_fin_category,
)
from .ratmat import RationalMatrix, frac

__all__ = [
    "EXHAUSTIVE",
    "CategoryLawError",
    "ClosureError",
    "DoubleCategoryInstance",
    "DoubleFunctor",
    "FinCategory",
    "FinFunction",
    "FinMorphism",
    "FinSet",
    "LawReport",
    "LawResult",
    "OrbitBudgetError",
    "PullbackCone",
    "RationalMatrix",
    "StructureError",
    "cartesian_product",
    "check_double_category",
    "check_double_functor",
    "check_pullback_universal",
    "compose_double_functors",
    "disjoint_union",
    "dual",
    "frac",
    "identity_double_functor",
    "is_bicategory_shaped",
    "product_double_category",
    "pullback",
    "restrict",
    "validate_fin_category",
]
