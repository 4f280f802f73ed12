"""P-conditionings and the validated knowledge base."""

from __future__ import annotations

from dataclasses import dataclass, field

from .concepts import Concept, check_declared, normalize
from .errors import UnsatisfiableAntecedent
from .intervals import Interval
from .tableau import Reasoner
from .terminology import Terminology


@dataclass(frozen=True)
class PConditioning:
    """``antecedent -> consequent`` with the ratio of the conjunction's size
    to the antecedent's size confined to ``range``."""

    antecedent: Concept
    consequent: Concept
    range: Interval

    def __str__(self) -> str:
        return f"{self.antecedent!r} -> {self.consequent!r} : {self.range}"


@dataclass(frozen=True)
class KnowledgeBase:
    terminology: Terminology
    conditionings: tuple = ()
    _reasoner: Reasoner | None = field(default=None, compare=False, repr=False)

    @property
    def reasoner(self) -> Reasoner:
        if self._reasoner is None:
            object.__setattr__(self, "_reasoner", Reasoner(self.terminology))
        return self._reasoner

    @property
    def signature(self) -> tuple:
        return self.terminology.signature


def validate_kb(terminology: Terminology, conditionings=()) -> KnowledgeBase:
    """Normalize the conditioning concepts and reject unsatisfiable antecedents.

    Probabilistic consistency is not decided here.
    """
    reasoner = Reasoner(terminology)
    sig, rls = set(terminology.signature), set(terminology.roles)
    out = []
    for pc in conditionings:
        check_declared(pc.antecedent, sig, rls)
        check_declared(pc.consequent, sig, rls)
        if not reasoner.is_satisfiable(pc.antecedent):
            raise UnsatisfiableAntecedent(pc)
        out.append(PConditioning(normalize(pc.antecedent), normalize(pc.consequent), pc.range))
    return KnowledgeBase(terminology, tuple(out), reasoner)
