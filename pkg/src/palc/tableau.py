"""Tableau satisfiability, subsumption and classification for acyclic ALC.

Named symbols are unfolded lazily: a symbol in a node label pulls in its
right-hand side, a negated *defined* symbol pulls in the negated right-hand
side.  The symbol literal stays in the label and doubles as the marker for
primitive specializations, so ``{A, not A}`` is a clash for any symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

from .concepts import (
    TOP,
    And,
    Atom,
    Concept,
    Exists,
    Forall,
    Not,
    Or,
    _Bottom,
    check_declared,
    nnf,
    sort_key,
)
from .terminology import Terminology


class Reasoner:
    """Satisfiability checker bound to one terminology.

    Keeps a memo of already decided node labels; instances are cheap and
    not shared between threads.
    """

    def __init__(self, t: Terminology):
        self.t = t
        self._pos: dict[str, Concept] = {}
        self._neg: dict[str, Concept] = {}
        for ax in t.axioms:
            self._pos[ax.lhs] = nnf(ax.rhs)
            if ax.is_definition:
                self._neg[ax.lhs] = nnf(Not(ax.rhs))
        self._memo: dict[frozenset, bool] = {}
        self._signature = set(t.signature)
        self._roles = set(t.roles)

    def check(self, c: Concept) -> None:
        check_declared(c, self._signature, self._roles)

    def is_satisfiable(self, c: Concept) -> bool:
        self.check(c)
        return self._sat(frozenset((nnf(c),)))

    def subsumes(self, c2: Concept, c1: Concept) -> bool:
        """True iff ``c1`` is subsumed by ``c2`` in every model."""
        return not self.is_satisfiable(And((c1, Not(c2))))

    def disjoint(self, c: Concept, d: Concept) -> bool:
        return not self.is_satisfiable(And((c, d)))

    def _saturate(self, label) -> set | None:
        todo = list(label)
        seen: set = set()
        while todo:
            x = todo.pop()
            if x in seen:
                continue
            seen.add(x)
            if isinstance(x, _Bottom):
                return None
            if isinstance(x, And):
                todo.extend(x.args)
            elif isinstance(x, Atom):
                if Not(x) in seen:
                    return None
                rhs = self._pos.get(x.name)
                if rhs is not None:
                    todo.append(rhs)
            elif isinstance(x, Not):
                if x.arg in seen:
                    return None
                rhs = self._neg.get(x.arg.name)
                if rhs is not None:
                    todo.append(rhs)
        return seen

    def _sat(self, label: frozenset) -> bool:
        hit = self._memo.get(label)
        if hit is not None:
            return hit
        result = self._expand(label)
        self._memo[label] = result
        return result

    def _expand(self, label: frozenset) -> bool:
        node = self._saturate(label)
        if node is None:
            return False
        open_or = [x for x in node if isinstance(x, Or) and not any(d in node for d in x.args)]
        if open_or:
            choice = min(open_or, key=sort_key)
            return any(self._sat(frozenset(node | {d})) for d in sorted(choice.args, key=sort_key))
        for ex in sorted((x for x in node if isinstance(x, Exists)), key=sort_key):
            succ = {ex.arg}
            succ.update(x.arg for x in node if isinstance(x, Forall) and x.role == ex.role)
            if not self._sat(frozenset(succ)):
                return False
        return True


def is_satisfiable(c: Concept, t: Terminology) -> bool:
    return Reasoner(t).is_satisfiable(c)


def subsumes(c2: Concept, c1: Concept, t: Terminology) -> bool:
    """``c1`` is subsumed by ``c2`` w.r.t. ``t``."""
    return Reasoner(t).subsumes(c2, c1)


def subsumes_probabilistic(c2: Concept, c1: Concept, kb) -> bool:
    """``c1`` subsumed by ``c2`` in every model of the KB's terminology and
    conditionings, read as ``max P(c1 and not c2) = 0``."""
    from .oracle import max_probability

    return max_probability(And((c1, Not(c2))), kb) == 0


@dataclass(frozen=True)
class ConceptHierarchy:
    """Transitive reduction of subsumption over named symbols.

    ``nodes`` holds equivalence classes (tuples of names, first one is the
    representative); ``edges`` holds ``(child, parent)`` representative pairs.
    ``top`` is the root and ``bottom`` the sink; unsatisfiable symbols join
    the bottom class.
    """

    nodes: tuple
    edges: tuple

    def parents(self, name: str) -> set[str]:
        rep = self.representative(name)
        return {p for c, p in self.edges if c == rep}

    def children(self, name: str) -> set[str]:
        rep = self.representative(name)
        return {c for c, p in self.edges if p == rep}

    def representative(self, name: str) -> str:
        for cls in self.nodes:
            if name in cls:
                return cls[0]
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "nodes": [list(cls) for cls in self.nodes],
            "edges": [{"child": c, "parent": p} for c, p in self.edges],
        }


def classify(t: Terminology) -> ConceptHierarchy:
    r = Reasoner(t)
    names = list(t.signature)
    unsat = [n for n in names if not r.is_satisfiable(Atom(n))]
    live = [n for n in names if n not in unsat]
    sub = {(x, y): x == y or r.subsumes(Atom(y), Atom(x)) for x in live for y in live}
    top_equiv = [n for n in live if r.subsumes(Atom(n), TOP)]

    classes: list[tuple] = []
    placed: set[str] = set()
    for n in live:
        if n in placed or n in top_equiv:
            continue
        cls = tuple(m for m in live if m not in top_equiv and sub[n, m] and sub[m, n])
        placed.update(cls)
        classes.append(cls)
    reps = [c[0] for c in classes]

    def above(x, y):  # y strictly above x
        return sub[x, y] and not sub[y, x]

    edges = []
    for x in reps:
        ups = [y for y in reps if above(x, y)]
        direct = [y for y in ups if not any(above(z, y) and above(x, z) for z in ups)]
        for y in direct or ["top"]:
            edges.append((x, y))
    leaves = [x for x in reps if not any(above(y, x) for y in reps)]
    for x in leaves or ["top"]:
        edges.append(("bottom", x))

    nodes = (("top", *top_equiv),) + tuple(classes) + (("bottom", *unsat),)
    return ConceptHierarchy(nodes, tuple(edges))

