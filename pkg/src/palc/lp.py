"""Exact two-phase simplex over ``gmpy2.mpq``.

Bland's smallest-index rule for both entering and leaving variables, so
every run terminates and the pivot sequence is a pure function of the
input.  A :class:`Simplex` keeps its tableau between calls: after the
feasibility phase, any number of objectives can be optimised from the last
basis, which is how the oracle sweeps many consequents for one antecedent.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from gmpy2 import mpq

from .kernels import pivot, simplex_run

_0 = mpq(0)
_1 = mpq(1)


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: mpq | None = None
    x: tuple | None = None
    certificate: tuple | None = None  # Farkas multipliers, one per input row

    @property
    def optimal(self) -> bool:
        return self.status == Status.OPTIMAL


@dataclass(frozen=True)
class Row:
    """``coeffs . x  (>=|<=|==)  rhs``"""

    coeffs: tuple
    kind: str  # "ge", "le" or "eq"
    rhs: mpq = _0


class Simplex:
    def __init__(self, n: int, rows):
        self.n = n
        self.rows_in = [Row(tuple(mpq(c) for c in r.coeffs), r.kind, mpq(r.rhs)) for r in rows]
        m = len(self.rows_in)
        n_slack = sum(r.kind != "eq" for r in self.rows_in)
        self.n_slack = n_slack
        self.art0 = n + n_slack  # first artificial column
        width = self.art0 + m + 1
        self.sign = []
        tab = []
        s = n
        for i, r in enumerate(self.rows_in):
            if len(r.coeffs) != n:
                raise ValueError(f"row {i} has {len(r.coeffs)} coefficients, expected {n}")
            row = [_0] * width
            row[:n] = r.coeffs
            if r.kind == "le":
                row[s] = _1
                s += 1
            elif r.kind == "ge":
                row[s] = -_1
                s += 1
            elif r.kind != "eq":
                raise ValueError(f"unknown row kind {r.kind!r}")
            row[-1] = r.rhs
            sg = -1 if r.rhs < 0 else 1
            if sg < 0:
                row = [-x for x in row]
            row[self.art0 + i] = _1
            self.sign.append(sg)
            tab.append(row)
        self.tab = tab
        self.basis = [self.art0 + i for i in range(m)]
        self._phase1: LPResult | None = None
        self.pivots = 0

    # -- core loop ---------------------------------------------------------

    def _run(self, z, allowed: int) -> Status:
        """Minimise the objective row ``z`` over columns ``< allowed``."""
        optimal, n = simplex_run(self.tab, z, self.basis, allowed)
        self.pivots += n
        return Status.OPTIMAL if optimal else Status.UNBOUNDED

    def feasible(self) -> LPResult:
        """Phase one; cached.  Returns a Farkas certificate when infeasible."""
        if self._phase1 is not None:
            return self._phase1
        width = len(self.tab[0]) if self.tab else self.art0 + 1
        z = [_0] * width
        for row in self.tab:
            for j in range(self.art0):
                z[j] -= row[j]
            z[-1] -= row[-1]
        self._run(z, self.art0)
        value = -z[-1]
        if value > 0:
            # duals of the artificial columns give y with y.A <= 0, y.b > 0
            y = [(_1 - z[self.art0 + i]) * self.sign[i] for i in range(len(self.tab))]
            self._phase1 = LPResult(Status.INFEASIBLE, certificate=tuple(y))
            return self._phase1
        self._drive_out_artificials()
        self._phase1 = LPResult(Status.OPTIMAL, _0, self._point())
        return self._phase1

    def _drive_out_artificials(self) -> None:
        for i, b in enumerate(self.basis):
            if b < self.art0:
                continue
            row = self.tab[i]
            for j in range(self.art0):
                if row[j] != 0:
                    pivot(self.tab, i, j)
                    self.basis[i] = j
                    break
            # otherwise the row is redundant; its artificial stays basic at 0

    def _point(self) -> tuple:
        x = [_0] * self.n
        for i, b in enumerate(self.basis):
            if b < self.n:
                x[b] = self.tab[i][-1]
        return tuple(x)

    def optimize(self, c, sense: Sense | str = Sense.MIN) -> LPResult:
        """Optimise ``c . x`` over the feasible region, warm-started."""
        feas = self.feasible()
        if not feas.optimal:
            return feas
        sense = Sense(sense)
        cost = [mpq(v) for v in c]
        if len(cost) != self.n:
            raise ValueError("objective length mismatch")
        if sense == Sense.MAX:
            cost = [-v for v in cost]
        full = cost + [_0] * (len(self.tab[0]) - 1 - self.n) if self.tab else cost
        z = list(full) + [_0]
        for i, b in enumerate(self.basis):
            cb = full[b] if b < len(full) else _0
            if cb:
                row = self.tab[i]
                for j, x in enumerate(row):
                    if x:
                        z[j] -= cb * x
        status = self._run(z, self.art0)
        if status == Status.UNBOUNDED:
            return LPResult(Status.UNBOUNDED)
        value = -z[-1]
        if sense == Sense.MAX:
            value = -value
        return LPResult(Status.OPTIMAL, value, self._point())


def solve(c, rows, n: int | None = None, sense: Sense | str = Sense.MIN) -> LPResult:
    """One-shot LP: optimise ``c . x`` subject to ``rows`` and ``x >= 0``."""
    n = len(c) if n is None else n
    return Simplex(n, rows).optimize(c, sense)


def check_farkas(rows, y) -> bool:
    """Verify an infeasibility certificate for ``rows`` with ``x >= 0``."""
    n = len(rows[0].coeffs) if rows else 0
    for r, u in zip(rows, y):
        if r.kind == "le" and u > 0 or r.kind == "ge" and u < 0:
            return False
    for j in range(n):
        if sum((u * r.coeffs[j] for r, u in zip(rows, y)), _0) > 0:
            return False
    return sum((u * r.rhs for r, u in zip(rows, y)), _0) > 0


def satisfies(rows, x) -> bool:
    if any(v < 0 for v in x):
        return False
    for r in rows:
        lhs = sum((a * v for a, v in zip(r.coeffs, x)), _0)
        if r.kind == "ge" and lhs < r.rhs or r.kind == "le" and lhs > r.rhs:
            return False
        if r.kind == "eq" and lhs != r.rhs:
            return False
    return True
