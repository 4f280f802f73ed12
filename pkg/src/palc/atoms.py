"""Lindenbaum atoms over the concept signature.

An atom is a sign vector over the ordered signature, stored as an int mask
whose most significant bit belongs to the first symbol, so ascending masks
are binary counting order.  Assignments that the terminology makes
unsatisfiable are dropped at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .concepts import (
    And,
    Atom,
    Concept,
    Exists,
    Forall,
    Not,
    Or,
    _Bottom,
    _Top,
    conj,
    normalize,
)
from .errors import CardinalityMismatch, NonPropositionalQuery, SignatureTooLarge, UndeclaredSymbol
from .tableau import Reasoner
from .terminology import Terminology

DEFAULT_ATOM_CAP = 16


@dataclass(frozen=True)
class AtomSpace:
    signature: tuple
    atoms: tuple  # masks, ascending
    _named: dict = field(default_factory=dict, compare=False, repr=False)
    _cols: tuple = field(default=(), compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def m(self) -> int:
        return len(self.signature)

    @property
    def full(self) -> int:
        return (1 << len(self.atoms)) - 1

    def signs(self, atom: int) -> dict[str, bool]:
        m = self.m
        return {s: bool(atom >> (m - 1 - i) & 1) for i, s in enumerate(self.signature)}

    def concept(self, atom: int) -> Concept:
        """The conjunction of signed symbols an atom stands for."""
        lits = [Atom(s) if pos else Not(Atom(s)) for s, pos in self.signs(atom).items()]
        return conj(*lits) if lits else _Top()

    def label(self, atom: int) -> str:
        parts = [s if pos else f"~{s}" for s, pos in self.signs(atom).items()]
        return " & ".join(parts) or "top"

    def bits(self, c: Concept) -> int:
        """Bitset over atom positions (bit ``k`` = ``atoms[k]``) satisfying ``c``."""
        if isinstance(c, _Top):
            return self.full
        if isinstance(c, _Bottom):
            return 0
        if isinstance(c, Atom):
            try:
                return self._cols[self.signature.index(c.name)]
            except ValueError:
                raise UndeclaredSymbol(c.name) from None
        if isinstance(c, Not):
            return self.full ^ self.bits(c.arg)
        if isinstance(c, And):
            out = self.full
            for a in c.args:
                out &= self.bits(a)
            return out
        if isinstance(c, Or):
            out = 0
            for a in c.args:
                out |= self.bits(a)
            return out
        if isinstance(c, (Forall, Exists)):
            key = normalize(c)
            if key in self._named:
                return self._cols[self.signature.index(self._named[key])]
            key = normalize(Not(c))
            if key in self._named:
                return self.full ^ self._cols[self.signature.index(self._named[key])]
            raise NonPropositionalQuery(c)
        raise TypeError(f"not a concept: {c!r}")

    def positions(self, c: Concept) -> list[int]:
        b = self.bits(c)
        return [k for k in range(self.n) if b >> k & 1]


def enumerate_atoms(t: Terminology, cap: int = DEFAULT_ATOM_CAP, signature=None,
                    reasoner: Reasoner | None = None) -> AtomSpace:
    """All sign assignments over ``signature`` (default: every declared
    symbol) whose conjunction is satisfiable w.r.t. ``t``."""
    sig = tuple(t.signature if signature is None else signature)
    if len(sig) > cap:
        raise SignatureTooLarge(len(sig), cap)
    r = reasoner or Reasoner(t)
    m = len(sig)
    found: list[int] = []

    # depth-first, negative branch first: yields masks in ascending order and
    # prunes every extension of an unsatisfiable prefix
    def walk(i: int, mask: int, lits: list) -> None:
        if lits and not r._sat(frozenset(lits)):
            return
        if i == m:
            found.append(mask)
            return
        a = Atom(sig[i])
        walk(i + 1, mask << 1, lits + [Not(a)])
        walk(i + 1, mask << 1 | 1, lits + [a])

    walk(0, 0, [])
    cols = []
    for i in range(m):
        shift = m - 1 - i
        col = 0
        for k, atom in enumerate(found):
            if atom >> shift & 1:
                col |= 1 << k
        cols.append(col)
    named = {}
    for ax in t.axioms:
        if ax.is_definition and ax.lhs in sig:
            named.setdefault(normalize(ax.rhs), ax.lhs)
    return AtomSpace(sig, tuple(found), named, tuple(cols))


def concept_to_atoms(c: Concept, s: AtomSpace) -> frozenset:
    b = s.bits(c)
    return frozenset(a for k, a in enumerate(s.atoms) if b >> k & 1)


@dataclass(frozen=True)
class AtomProbability:
    space: AtomSpace
    weights: dict  # atom mask -> mpq

    def __post_init__(self):
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("negative atom weight")
        if sum(self.weights.values(), mpq(0)) != 1:
            raise ValueError("atom weights do not sum to 1")

    def vector(self) -> tuple:
        return tuple(self.weights.get(a, mpq(0)) for a in self.space.atoms)

    @classmethod
    def from_vector(cls, space: AtomSpace, x) -> "AtomProbability":
        return cls(space, {a: mpq(v) for a, v in zip(space.atoms, x)})


def induced_probability(domain_size: int, cardinalities: dict, space: AtomSpace) -> AtomProbability:
    """Relative cardinality of each atom's extension in a finite domain."""
    if domain_size <= 0:
        raise ValueError("domain size must be positive")
    if any(v < 0 for v in cardinalities.values()):
        raise ValueError("negative cardinality")
    total = sum(cardinalities.values())
    if total != domain_size:
        raise CardinalityMismatch(total, domain_size)
    unknown = set(cardinalities) - set(space.atoms)
    if unknown:
        raise ValueError(f"not atoms of this space: {sorted(unknown)}")
    return AtomProbability(space, {a: mpq(cardinalities.get(a, 0), domain_size) for a in space.atoms})


def probability_of(c: Concept, p: AtomProbability, s: AtomSpace | None = None) -> mpq:
    s = s or p.space
    b = s.bits(c)
    return sum((p.weights.get(a, mpq(0)) for k, a in enumerate(s.atoms) if b >> k & 1), mpq(0))
