"""Functional actual-cause inference: exact solvers for finite SCMs and a
joint-optimization learner for continuous simulated environments."""

from .predicates import (
    AlphaRatios,
    BinarySubsetPair,
    Event,
    Verdict,
    check_invariance,
    check_necessity_property,
    is_alpha_necessary,
    is_alpha_sufficient,
    is_contrastively_necessary,
    is_directly_sufficient,
    is_functional_actual_cause,
    is_weakly_sufficient,
    pair_cost,
    pair_to_doc,
)
from .scm import Intervention, Scm, Variable
from .solver import SolutionSet, solve, valid_binaries, verify_pair

__all__ = [
    "AlphaRatios",
    "BinarySubsetPair",
    "Event",
    "Intervention",
    "Scm",
    "SolutionSet",
    "Variable",
    "Verdict",
    "check_invariance",
    "check_necessity_property",
    "is_alpha_necessary",
    "is_alpha_sufficient",
    "is_contrastively_necessary",
    "is_directly_sufficient",
    "is_functional_actual_cause",
    "is_weakly_sufficient",
    "pair_cost",
    "pair_to_doc",
    "solve",
    "valid_binaries",
    "verify_pair",
]
