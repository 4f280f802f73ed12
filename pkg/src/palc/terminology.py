"""Terminological axioms and acyclic terminologies."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .concepts import RESERVED, Concept, roles, symbols
from .errors import DuplicateDefinition, ReservedSymbol, TerminologicalCycle, UndeclaredSymbol


class AxiomKind(str, Enum):
    DEFINITION = "definition"  # A = C
    SPECIALIZATION = "specialization"  # A < C


@dataclass(frozen=True)
class Axiom:
    lhs: str
    rhs: Concept
    kind: AxiomKind = AxiomKind.SPECIALIZATION

    @property
    def is_definition(self) -> bool:
        return self.kind == AxiomKind.DEFINITION

    def __str__(self) -> str:
        return f"{self.lhs} {'=' if self.is_definition else '<'} {self.rhs!r}"


def define(lhs: str, rhs: Concept) -> Axiom:
    return Axiom(lhs, rhs, AxiomKind.DEFINITION)


def specialize(lhs: str, rhs: Concept) -> Axiom:
    return Axiom(lhs, rhs, AxiomKind.SPECIALIZATION)


@dataclass(frozen=True)
class Terminology:
    axioms: tuple = ()
    signature: tuple = ()  # concept symbols in declaration order
    roles: tuple = ()
    order: tuple = ()  # lhs symbols, dependencies first
    _by_lhs: dict = field(default_factory=dict, compare=False, repr=False)

    def axiom_for(self, name: str) -> Axiom | None:
        return self._by_lhs.get(name)

    def definitions(self) -> dict[str, Concept]:
        return {a.lhs: a.rhs for a in self.axioms if a.is_definition}

    @property
    def defined(self) -> tuple:
        return tuple(a.lhs for a in self.axioms if a.is_definition)

    @property
    def primitive(self) -> tuple:
        return tuple(s for s in self.signature if s not in self.defined)


def validate_terminology(axioms, concepts=None, role_names=None) -> Terminology:
    """Check lhs uniqueness, declarations and acyclicity.

    ``concepts``/``role_names`` list declared names; when omitted they are
    inferred from the axioms in order of first appearance.  Every lhs counts
    as declared.
    """
    axioms = tuple(axioms)
    by_lhs: dict[str, Axiom] = {}
    for ax in axioms:
        if ax.lhs in RESERVED:
            raise ReservedSymbol(ax.lhs)
        if ax.lhs in by_lhs:
            raise DuplicateDefinition(ax.lhs)
        by_lhs[ax.lhs] = ax

    sig: dict[str, None] = {}
    rls: dict[str, None] = {}
    if concepts is not None:
        for c in concepts:
            if c in RESERVED:
                raise ReservedSymbol(c)
            sig[c] = None
    for ax in axioms:
        sig.setdefault(ax.lhs, None)
    if role_names is not None:
        rls.update(dict.fromkeys(role_names))
    for ax in axioms:
        for s in sorted(symbols(ax.rhs)):
            if s not in sig:
                if concepts is not None:
                    raise UndeclaredSymbol(s)
                sig[s] = None
        for r in sorted(roles(ax.rhs)):
            if r not in rls:
                if role_names is not None:
                    raise UndeclaredSymbol(r)
                rls[r] = None
    clash = set(sig) & set(rls)
    if clash:
        raise ReservedSymbol(sorted(clash)[0])

    order = _topological_order(axioms, by_lhs)
    return Terminology(axioms, tuple(sig), tuple(rls), tuple(order), by_lhs)


def _topological_order(axioms, by_lhs) -> list[str]:
    done: dict[str, None] = {}
    visiting: list[str] = []

    def visit(name: str) -> None:
        if name in done or name not in by_lhs:
            return
        if name in visiting:
            raise TerminologicalCycle(visiting[visiting.index(name):] + [name])
        visiting.append(name)
        for dep in sorted(symbols(by_lhs[name].rhs)):
            visit(dep)
        visiting.pop()
        done[name] = None

    for ax in axioms:
        visit(ax.lhs)
    return list(done)
