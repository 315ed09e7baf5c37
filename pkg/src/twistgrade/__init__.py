"""Exact computations with twisted group algebras of finite groups: cocycles,
graded polynomial identities, standard forms and the generic value lattice."""

from .cocycle import Cocycle, CocycleError, GenericCocycle, cocycle_from_spec, from_one_cocycle
from .graded_identities import (ElementaryIdentity, GradedMonomial, GradedPolynomial, compute_mu,
                                decide_identity, enumerate_E, reduce_to_generators)
from .group_core import Group, GroupError, from_spec
from .lambda_recognition import is_on_lambda
from .scalars import Cyclo, LaurentCoeff, RootOfUnity
from .standard_form import DegenerateCocycleError, standardize, verify_relations
from .twisted_algebra import TwistedAlgebra

__all__ = [
    "Cocycle", "CocycleError", "Cyclo", "DegenerateCocycleError", "ElementaryIdentity",
    "GenericCocycle", "GradedMonomial", "GradedPolynomial", "Group", "GroupError", "LaurentCoeff",
    "RootOfUnity", "TwistedAlgebra", "cocycle_from_spec", "compute_mu", "decide_identity",
    "enumerate_E", "from_one_cocycle", "from_spec", "is_on_lambda", "reduce_to_generators",
    "standardize", "verify_relations",
]
