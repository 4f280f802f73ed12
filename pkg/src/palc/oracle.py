"""Exact probabilistic consistency and minimal ranges by linear programming.

Points of the polytope are probability vectors over the satisfiable atoms.
Each conditioning ``C1 -> C2 : [lo, hi]`` contributes two homogeneous rows::

    P(C1 & C2) - lo * P(C1) >= 0
    hi * P(C1) - P(C1 & C2) >= 0

A conditional range ``P(C & D) / P(C)`` is optimised after scaling the
probabilities by ``1 / P(C)``: the rows stay homogeneous, the simplex
equation only fixes the (free) total mass, and ``P(C)`` becomes the
constraint ``sum(y over C) = 1``.  The scaled system is feasible exactly
when some model gives ``C`` positive probability.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .atoms import DEFAULT_ATOM_CAP, AtomProbability, AtomSpace, enumerate_atoms
from .concepts import And, Concept, normalize
from .errors import InconsistentKB, VacuousAntecedent
from .intervals import Interval
from .kb import KnowledgeBase, PConditioning
from .lp import LPResult, Row, Sense, Simplex, Status, check_farkas, satisfies

_0 = mpq(0)
_1 = mpq(1)

#: verify every witness and certificate the oracle hands out
CHECK_WITNESSES = os.environ.get("PALC_CHECK_WITNESSES", "") not in ("", "0")


class WitnessError(AssertionError):
    pass


@dataclass(frozen=True)
class LinearConstraint:
    coefficients: tuple  # aligned with AtomSpace.atoms
    relation: str = "ge"  # "ge" or "eq"
    provenance: object = None  # (conditioning, "lower" | "upper")
    rhs: mpq = _0

    def row(self) -> Row:
        return Row(self.coefficients, self.relation, self.rhs)


@dataclass(frozen=True)
class Polytope:
    """Probability vectors over ``space.atoms`` meeting ``constraints``
    (the simplex equation and nonnegativity are implicit)."""

    space: AtomSpace
    constraints: tuple

    def rows(self) -> list[Row]:
        return [c.row() for c in self.constraints]

    def simplex_rows(self) -> list[Row]:
        return self.rows() + [Row((_1,) * self.space.n, "eq", _1)]

    def contains(self, x) -> bool:
        return len(x) == self.space.n and satisfies(self.simplex_rows(), x)


def conditioning_constraints(pc: PConditioning, s: AtomSpace) -> list[LinearConstraint]:
    both = s.bits(And((pc.antecedent, pc.consequent)))
    ante = s.bits(pc.antecedent)
    lo, hi = pc.range.lo, pc.range.hi
    lower, upper = [], []
    for k in range(s.n):
        in_both = _1 if both >> k & 1 else _0
        in_ante = _1 if ante >> k & 1 else _0
        lower.append(in_both - lo * in_ante)
        upper.append(hi * in_ante - in_both)
    out = []
    for side, coeffs in (("lower", lower), ("upper", upper)):
        if any(coeffs):
            out.append(LinearConstraint(tuple(coeffs), "ge", (pc, side)))
    return out


def build_polytope(kb: KnowledgeBase, s: AtomSpace) -> Polytope:
    cons: list[LinearConstraint] = []
    for pc in kb.conditionings:
        cons.extend(conditioning_constraints(pc, s))
    return Polytope(s, tuple(cons))


def solve_lp(objective, p: Polytope, sense: Sense | str = Sense.MAX) -> LPResult:
    """Optimise a linear function of the atom probabilities over ``p``.

    ``objective`` is a sequence aligned with the atoms or a mapping from atom
    mask to coefficient.
    """
    if isinstance(objective, dict):
        c = [mpq(objective.get(a, 0)) for a in p.space.atoms]
    else:
        c = [mpq(v) for v in objective]
    res = Simplex(p.space.n, p.simplex_rows()).optimize(c, sense)
    if CHECK_WITNESSES and res.optimal:
        _check_point(p, res.x)
        if sum((a * b for a, b in zip(c, res.x)), _0) != res.value:
            raise WitnessError("LP witness does not attain the reported optimum")
    return res


@dataclass(frozen=True)
class EntailedRange:
    antecedent: Concept
    consequent: Concept
    range: Interval | None
    lo_witness: AtomProbability | None = None
    hi_witness: AtomProbability | None = None

    @property
    def vacuous(self) -> bool:
        return self.range is None


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    antecedent: Concept | None = None  # first antecedent that cannot be positive
    certificate: tuple | None = None  # Farkas multipliers over the scaled system rows
    rows: tuple = field(default=(), repr=False)

    def __bool__(self) -> bool:
        return self.consistent

    def __str__(self) -> str:
        if self.consistent:
            return "consistent"
        return f"inconsistent: {self.antecedent!r} has probability 0 in every model of the constraints"


class ExactOracle:
    """LP oracle bound to one knowledge base.

    Scaled systems are built once per antecedent and reused for every
    consequent, warm-starting from the previous optimal basis.
    """

    def __init__(self, kb: KnowledgeBase, atom_cap: int = DEFAULT_ATOM_CAP):
        self.kb = kb
        self.space = enumerate_atoms(kb.terminology, atom_cap, reasoner=kb.reasoner)
        self.polytope = build_polytope(kb, self.space)
        self._scaled: dict[Concept, Simplex] = {}
        self._report: ConsistencyReport | None = None

    def indicator(self, c: Concept) -> list:
        b = self.space.bits(c)
        return [_1 if b >> k & 1 else _0 for k in range(self.space.n)]

    def max_probability(self, c: Concept) -> mpq:
        res = solve_lp(self.indicator(c), self.polytope, Sense.MAX)
        return res.value

    def _scaled_rows(self, c: Concept) -> list[Row]:
        return self.polytope.rows() + [Row(tuple(self.indicator(c)), "eq", _1)]

    def scaled(self, c: Concept) -> Simplex:
        key = normalize(c)
        sim = self._scaled.get(key)
        if sim is None:
            sim = Simplex(self.space.n, self._scaled_rows(key))
            self._scaled[key] = sim
        return sim

    def can_be_positive(self, c: Concept) -> bool:
        return self.scaled(c).feasible().optimal

    def consistency(self) -> ConsistencyReport:
        if self._report is None:
            self._report = ConsistencyReport(True)
            for pc in self.kb.conditionings:
                feas = self.scaled(pc.antecedent).feasible()
                if not feas.optimal:
                    rows = tuple(self._scaled_rows(normalize(pc.antecedent)))
                    if CHECK_WITNESSES and not check_farkas(list(rows), feas.certificate):
                        raise WitnessError("invalid infeasibility certificate")
                    self._report = ConsistencyReport(False, pc.antecedent, feas.certificate, rows)
                    break
        return self._report

    def range(self, antecedent: Concept, consequent: Concept) -> EntailedRange:
        report = self.consistency()
        if not report:
            raise InconsistentKB(report)
        sim = self.scaled(antecedent)
        if not sim.feasible().optimal:
            raise VacuousAntecedent(antecedent)
        obj = self.indicator(And((antecedent, consequent)))
        lo = sim.optimize(obj, Sense.MIN)
        hi = sim.optimize(obj, Sense.MAX)
        assert lo.status == Status.OPTIMAL and hi.status == Status.OPTIMAL
        wlo = self._witness(lo.x)
        whi = self._witness(hi.x)
        if CHECK_WITNESSES:
            for w, bound in ((wlo, lo.value), (whi, hi.value)):
                self.check_witness(w, antecedent, consequent, bound)
        return EntailedRange(antecedent, consequent, Interval(lo.value, hi.value), wlo, whi)

    def range_or_vacuous(self, antecedent: Concept, consequent: Concept) -> EntailedRange:
        try:
            return self.range(antecedent, consequent)
        except VacuousAntecedent:
            return EntailedRange(antecedent, consequent, None)

    def _witness(self, y) -> AtomProbability:
        total = sum(y, _0)
        return AtomProbability.from_vector(self.space, [v / total for v in y])

    def check_witness(self, w: AtomProbability, antecedent, consequent, bound) -> None:
        x = w.vector()
        _check_point(self.polytope, x)
        pa = sum((v for v, i in zip(x, self.indicator(antecedent)) if i), _0)
        pab = sum((v for v, i in zip(x, self.indicator(And((antecedent, consequent)))) if i), _0)
        if pa == 0 or pab / pa != bound:
            raise WitnessError(f"witness ratio {pab}/{pa} does not attain {bound}")


def _check_point(p: Polytope, x) -> None:
    if not p.contains(x):
        raise WitnessError("witness violates the polytope constraints")


@lru_cache(maxsize=64)
def oracle_for(kb: KnowledgeBase, atom_cap: int = DEFAULT_ATOM_CAP) -> ExactOracle:
    return ExactOracle(kb, atom_cap)


def check_consistency_exact(kb: KnowledgeBase, atom_cap: int = DEFAULT_ATOM_CAP) -> ConsistencyReport:
    return oracle_for(kb, atom_cap).consistency()


def entail_range_exact(antecedent: Concept, consequent: Concept, kb: KnowledgeBase,
                       atom_cap: int = DEFAULT_ATOM_CAP) -> EntailedRange:
    return oracle_for(kb, atom_cap).range(antecedent, consequent)


def minimal_ranges_exact(kb: KnowledgeBase, tracked, atom_cap: int = DEFAULT_ATOM_CAP) -> list[EntailedRange]:
    """Ranges for every ordered pair of ``tracked``; vacuous antecedents get ``range=None``."""
    o = oracle_for(kb, atom_cap)
    report = o.consistency()
    if not report:
        raise InconsistentKB(report)
    return [o.range_or_vacuous(a, b) for a in tracked for b in tracked]


def max_probability(c: Concept, kb: KnowledgeBase, atom_cap: int = DEFAULT_ATOM_CAP) -> mpq:
    o = oracle_for(kb, atom_cap)
    report = o.consistency()
    if not report:
        raise InconsistentKB(report)
    return o.max_probability(c)
