"""Probabilistic terminological reasoning over ALC concepts.

Load a knowledge base with :func:`load_kb`, then ask for exact minimal
ranges (:func:`entail_range_exact`) or run the sound local interval
propagation (:func:`propagate_to_fixpoint`).
"""

from .atoms import AtomProbability, AtomSpace, concept_to_atoms, enumerate_atoms, induced_probability
from .concepts import BOTTOM, TOP, And, Atom, Exists, Forall, Not, Or, normalize
from .errors import (
    CardinalityMismatch,
    DuplicateDefinition,
    EmptyIntersection,
    InconsistentKB,
    NonPropositionalQuery,
    PalcError,
    ReservedSymbol,
    SignatureTooLarge,
    TerminologicalCycle,
    UndeclaredSymbol,
    UnsatisfiableAntecedent,
    VacuousAntecedent,
    ValidationError,
)
from .intervals import Interval, Q
from .kb import KnowledgeBase, PConditioning, validate_kb
from .kernels import BACKEND
from .oracle import (
    EntailedRange,
    ExactOracle,
    check_consistency_exact,
    entail_range_exact,
    minimal_ranges_exact,
)
from .parser import load_kb, parse_concept, parse_document, parse_kb, serialize_kb
from .propagation import (
    IntervalMatrix,
    PropagationResult,
    check_consistency_local,
    propagate_to_fixpoint,
)
from .tableau import ConceptHierarchy, classify, is_satisfiable, subsumes
from .terminology import Axiom, Terminology, define, specialize, validate_terminology

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BOTTOM",
    "TOP",
    "And",
    "Atom",
    "AtomProbability",
    "AtomSpace",
    "Axiom",
    "CardinalityMismatch",
    "ConceptHierarchy",
    "DuplicateDefinition",
    "EmptyIntersection",
    "EntailedRange",
    "ExactOracle",
    "Exists",
    "Forall",
    "InconsistentKB",
    "Interval",
    "IntervalMatrix",
    "KnowledgeBase",
    "NonPropositionalQuery",
    "Not",
    "Or",
    "PConditioning",
    "PalcError",
    "PropagationResult",
    "Q",
    "ReservedSymbol",
    "SignatureTooLarge",
    "TerminologicalCycle",
    "Terminology",
    "UndeclaredSymbol",
    "UnsatisfiableAntecedent",
    "VacuousAntecedent",
    "ValidationError",
    "check_consistency_exact",
    "check_consistency_local",
    "classify",
    "concept_to_atoms",
    "define",
    "entail_range_exact",
    "enumerate_atoms",
    "induced_probability",
    "is_satisfiable",
    "load_kb",
    "minimal_ranges_exact",
    "normalize",
    "parse_concept",
    "parse_document",
    "parse_kb",
    "propagate_to_fixpoint",
    "serialize_kb",
    "specialize",
    "subsumes",
    "validate_kb",
    "validate_terminology",
]
