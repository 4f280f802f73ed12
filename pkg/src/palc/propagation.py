"""Local interval propagation over tracked concept pairs.

The engine keeps one closed interval per ordered pair ``(X, Y)`` bounding
``|X & Y| / |X|``, seeds it from the terminology and the explicit
conditionings, then intersects in candidates from pair rules (negation
duality, conjunction mirroring, zero symmetry, positivity) and triple rules
(triangle bounds, Bayes refinement) until a sweep changes nothing.

Every change is recorded, so the final matrix can be rebuilt from the
all-``[0, 1]`` matrix by replaying the trace.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from .concepts import And, Atom, Concept, Not, normalize
from .intervals import Interval, fmt
from .kb import KnowledgeBase
from .kernels import bayes, triangle

_0 = mpq(0)
_1 = mpq(1)

DEFAULT_MAX_SWEEPS = 100


@dataclass(frozen=True)
class TraceStep:
    rule: str
    entry: tuple  # (i, j) indices into the tracked concepts
    context: tuple  # concept indices the rule looked at
    old: Interval
    new: Interval | None  # None marks an empty intersection
    vacates: bool = False  # the empty intersection only shows row i is vacuous

    def describe(self, concepts) -> str:
        i, j = self.entry
        ctx = ", ".join(repr(concepts[k]) for k in self.context)
        if self.new is not None:
            new = str(self.new)
        else:
            new = f"EMPTY, so {concepts[i]!r} is vacuous" if self.vacates else "EMPTY"
        return f"{self.rule}[{ctx}]: ({concepts[i]!r} -> {concepts[j]!r}) {self.old} => {new}"


@dataclass(frozen=True)
class IntervalMatrix:
    concepts: tuple
    lo: tuple  # row-major tuples of mpq
    hi: tuple
    positive: frozenset = frozenset()  # pairs with P(X & Y) > 0 whenever P(X) > 0
    vacuous: frozenset = frozenset()  # rows whose antecedent has probability 0 in every model

    def index(self, c: Concept) -> int:
        return self.concepts.index(normalize(c))

    def __contains__(self, c: Concept) -> bool:
        return normalize(c) in self.concepts

    def get(self, a: Concept, b: Concept) -> Interval | None:
        """Range for ``a -> b``; ``None`` when ``a`` was shown vacuous."""
        return self.at(self.index(a), self.index(b))

    def at(self, i: int, j: int) -> Interval | None:
        if i in self.vacuous:
            return None
        return Interval(self.lo[i][j], self.hi[i][j])

    def items(self):
        n = len(self.concepts)
        for i in range(n):
            for j in range(n):
                yield (self.concepts[i], self.concepts[j]), self.at(i, j)

    def render(self) -> str:
        return "\n".join(f"{a!r} -> {b!r} : {'vacuous' if iv is None else iv}" for (a, b), iv in self.items())


@dataclass
class PropagationTrace:
    concepts: tuple
    steps: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def lines(self) -> list[str]:
        return [s.describe(self.concepts) for s in self.steps]

    def replay(self) -> IntervalMatrix:
        """Rebuild the matrix from all-``[0, 1]`` by applying every step."""
        n = len(self.concepts)
        lo = [[_0] * n for _ in range(n)]
        hi = [[_1] * n for _ in range(n)]
        vacuous = set()
        for s in self.steps:
            i, j = s.entry
            if (lo[i][j], hi[i][j]) != (s.old.lo, s.old.hi):
                raise ValueError(f"trace out of sync at {s.describe(self.concepts)}")
            if s.new is None:
                if not s.vacates:
                    break
                vacuous.add(i)
                continue
            lo[i][j], hi[i][j] = s.new.lo, s.new.hi
        return IntervalMatrix(self.concepts, tuple(map(tuple, lo)), tuple(map(tuple, hi)),
                              vacuous=frozenset(vacuous))


@dataclass(frozen=True)
class PropagationResult:
    matrix: IntervalMatrix
    trace: PropagationTrace
    sweeps: int
    status: str  # "fixpoint", "inconsistent" or "sweep_cap"
    conflict: TraceStep | None = None

    @property
    def consistent(self) -> bool:
        return self.status != "inconsistent"

    @property
    def converged(self) -> bool:
        return self.status == "fixpoint"


class _Conflict(Exception):
    def __init__(self, step):
        self.step = step


def tracked_concepts(kb: KnowledgeBase, extra=()) -> tuple:
    """Named symbols, their negations, the concepts of every conditioning,
    each conditioning's ``antecedent & consequent``, then ``extra``;
    unsatisfiable ones and duplicates (after normalization) are dropped."""
    cands: list[Concept] = [Atom(s) for s in kb.signature]
    cands += [Not(Atom(s)) for s in kb.signature]
    for pc in kb.conditionings:
        cands += [pc.antecedent, pc.consequent]
    for pc in kb.conditionings:
        cands.append(And((pc.antecedent, pc.consequent)))
    cands += list(extra)
    out: dict[Concept, None] = {}
    r = kb.reasoner
    for c in cands:
        n = normalize(c)
        if n not in out and r.is_satisfiable(n):
            out[n] = None
    return tuple(out)


class Propagator:
    """Single-writer refinement engine for one knowledge base.

    ``order`` shuffles the triple worklist (for confluence checks); ``None``
    keeps the deterministic index order.
    """

    def __init__(self, kb: KnowledgeBase, tracked=None, max_sweeps: int = DEFAULT_MAX_SWEEPS,
                 order: int | None = None, bayes_rule: bool = True):
        self.kb = kb
        self.concepts = tuple(normalize(c) for c in tracked) if tracked is not None else tracked_concepts(kb)
        n = self.n = len(self.concepts)
        self.max_sweeps = max_sweeps
        self.use_bayes = bayes_rule
        self._rng = random.Random(order) if order is not None else None
        self.lo = [[_0] * n for _ in range(n)]
        self.hi = [[_1] * n for _ in range(n)]
        self.positive: set[tuple[int, int]] = set()
        self.vacuous: set[int] = set()
        self.trace = PropagationTrace(self.concepts)
        self._changed: set[tuple[int, int]] = set()
        pos = {c: k for k, c in enumerate(self.concepts)}
        self._pos = pos
        self.neg = [pos.get(normalize(Not(c))) for c in self.concepts]
        # conditioning antecedents must be able to carry positive probability
        self.required = {pos[k] for k in (normalize(pc.antecedent) for pc in kb.conditionings) if k in pos}
        r = kb.reasoner
        cs = self.concepts
        # sub[i][j]: concept i is subsumed by concept j under the terminology
        self.sub = [[i == j or r.subsumes(cs[j], cs[i]) for j in range(n)] for i in range(n)]
        # conj[i, j] = k when concept k is equivalent to (i & j), up to the terminology
        self.conj = {}
        for i in range(n):
            for j in range(n):
                if i == j or self.sub[i][j] or self.sub[j][i]:
                    continue
                target = normalize(And((cs[i], cs[j])))
                k = pos.get(target)
                if k is None:
                    k = next((k for k in range(n) if self.sub[k][i] and self.sub[k][j]
                              and r.subsumes(cs[k], target)), None)
                if k is not None:
                    self.conj[i, j] = k

    # -- intersection ------------------------------------------------------

    def meet(self, i: int, j: int, lo, hi, rule: str, ctx: tuple) -> None:
        if i in self.vacuous:
            return
        old_lo, old_hi = self.lo[i][j], self.hi[i][j]
        new_lo = lo if lo > old_lo else old_lo
        new_hi = hi if hi < old_hi else old_hi
        if new_lo == old_lo and new_hi == old_hi:
            return
        old = Interval(old_lo, old_hi)
        if new_lo > new_hi:
            # no model gives concept i positive probability
            if i in self.required:
                step = TraceStep(rule, (i, j), ctx, old, None)
                self.trace.steps.append(step)
                raise _Conflict(step)
            self.trace.steps.append(TraceStep(rule, (i, j), ctx, old, None, vacates=True))
            self._vacate(i)
            return
        self.lo[i][j], self.hi[i][j] = new_lo, new_hi
        self.trace.steps.append(TraceStep(rule, (i, j), ctx, old, Interval(new_lo, new_hi)))
        self._changed.add((i, j))

    def _vacate(self, i: int) -> None:
        self.vacuous.add(i)
        self._changed.add((i, i))
        for x in range(self.n):
            if x != i:
                self.meet(x, i, _0, _0, "vacuity", (i,))

    # -- seeding -----------------------------------------------------------

    def initialize(self) -> None:
        r = self.kb.reasoner
        cs = self.concepts
        for i in range(self.n):
            self.meet(i, i, _1, _1, "reflexive", (i,))
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                if self.sub[i][j]:
                    self.meet(i, j, _1, _1, "subsumption", (i, j))
                if i < j and r.disjoint(cs[i], cs[j]):
                    self.meet(i, j, _0, _0, "disjoint", (i, j))
                    self.meet(j, i, _0, _0, "disjoint", (j, i))
        for pc in self.kb.conditionings:
            i = self._pos.get(normalize(pc.antecedent))
            j = self._pos.get(normalize(pc.consequent))
            if i is None or j is None:
                continue
            self.meet(i, j, pc.range.lo, pc.range.hi, "explicit", (i, j))

    # -- rules -------------------------------------------------------------

    def pair_rules(self, i: int, j: int) -> None:
        if i in self.vacuous:
            return
        lo, hi = self.lo, self.hi
        k = self.neg[j]
        if k is not None:
            self.meet(i, k, 1 - hi[i][j], 1 - lo[i][j], "negation", (i, j, k))
            self.meet(i, j, 1 - hi[i][k], 1 - lo[i][k], "negation", (i, k, j))
        if i == j and k is not None:
            self.meet(i, k, _0, _0, "self-negation", (i, k))
        k = self.conj.get((i, j))
        if k is not None:
            self.meet(i, k, lo[i][j], hi[i][j], "conjunction", (i, j, k))
            self.meet(i, j, lo[i][k], hi[i][k], "conjunction", (i, k, j))
        if lo[i][j] > 0 and hi[j][i] == 0:
            # i & j is nonempty whenever i is, so j -> i cannot be pinned to 0
            self.meet(i, j, _0, _0, "positivity", (j, i))
        if hi[i][j] == 0:
            self.meet(j, i, _0, _0, "zero-symmetry", (i, j))
        if lo[i][j] > 0 and i not in self.vacuous:
            self.positive.add((i, j))

    def triple_rules(self, a: int, b: int, c: int) -> None:
        if a in self.vacuous or b in self.vacuous:
            return
        lo, hi = self.lo, self.hi
        args = (lo[a][c], hi[a][c], lo[a][b], hi[a][b], lo[b][a], hi[b][a], lo[c][a], hi[c][a])
        t_lo, t_hi = triangle(*args)
        self.meet(b, c, t_lo, t_hi, "triangle", (a, b, c))
        if self.use_bayes:
            args = (lo[a][c], hi[a][c], lo[a][b], hi[a][b], lo[b][a], hi[b][a], lo[c][a], hi[c][a],
                    lo[c][b], hi[c][b])
            cand = bayes(*args)
            if cand is not None:
                self.meet(b, c, cand[0], cand[1], "bayes", (a, b, c))

    def _triples_touching(self, dirty) -> list[tuple[int, int, int]]:
        n = self.n
        out: set[tuple[int, int, int]] = set()
        for x, y in dirty:
            if x == y:
                continue
            for z in range(n):
                if z == x or z == y:
                    continue
                # (x, y) as a->c, a->b, b->a, c->a and c->b
                out.update(((x, z, y), (x, y, z), (y, x, z), (y, z, x), (z, y, x)))
        return sorted(out)

    def _all_triples(self) -> list[tuple[int, int, int]]:
        n = self.n
        return [(a, b, c) for a in range(n) for b in range(n) for c in range(n)
                if a != b and b != c and a != c]

    def run(self) -> PropagationResult:
        sweeps = 0
        status = "fixpoint"
        conflict = None
        try:
            self.initialize()
            dirty = None
            while True:
                if sweeps >= self.max_sweeps:
                    status = "sweep_cap"
                    break
                sweeps += 1
                self._changed = set()
                pairs = [(i, j) for i in range(self.n) for j in range(self.n)]
                triples = self._all_triples() if dirty is None else self._triples_touching(dirty)
                if self._rng is not None:
                    self._rng.shuffle(pairs)
                    self._rng.shuffle(triples)
                for i, j in pairs:
                    self.pair_rules(i, j)
                for a, b, c in triples:
                    self.triple_rules(a, b, c)
                if not self._changed:
                    break
                dirty = self._changed
        except _Conflict as e:
            status, conflict = "inconsistent", e.step
        return PropagationResult(self.snapshot(), self.trace, sweeps, status, conflict)

    def snapshot(self) -> IntervalMatrix:
        return IntervalMatrix(self.concepts, tuple(map(tuple, self.lo)), tuple(map(tuple, self.hi)),
                              frozenset(self.positive), frozenset(self.vacuous))


def propagate_to_fixpoint(kb: KnowledgeBase, tracked=None, max_sweeps: int = DEFAULT_MAX_SWEEPS,
                          order: int | None = None) -> PropagationResult:
    return Propagator(kb, tracked, max_sweeps, order).run()


@dataclass(frozen=True)
class LocalConsistency:
    consistent_so_far: bool
    result: PropagationResult

    def __bool__(self) -> bool:
        return self.consistent_so_far

    def __str__(self) -> str:
        if self.consistent_so_far:
            return "consistent so far (local rules are sound but not complete)"
        step = self.result.conflict
        return "inconsistent: " + step.describe(self.result.matrix.concepts)


def check_consistency_local(kb: KnowledgeBase, max_sweeps: int = DEFAULT_MAX_SWEEPS) -> LocalConsistency:
    res = propagate_to_fixpoint(kb, max_sweeps=max_sweeps)
    return LocalConsistency(res.consistent, res)


# Thin single-rule helpers over the kernels, on Interval values.


def rule_triangle(p: Interval, q: Interval, q_rev: Interval, p_rev: Interval) -> Interval:
    """Range for ``B -> C`` from ``A -> C`` (p), ``A -> B`` (q), ``B -> A``
    (q_rev) and ``C -> A`` (p_rev).  Raises ``ValueError`` when the bounds
    cross, which signals inconsistent inputs."""
    lo, hi = triangle(p.lo, p.hi, q.lo, q.hi, q_rev.lo, q_rev.hi, p_rev.lo, p_rev.hi)
    return Interval(lo, hi)


def rule_bayes(p: Interval, q: Interval, q_rev: Interval, p_rev: Interval, r_rev: Interval) -> Interval | None:
    """Bayes refinement for ``B -> C`` given also ``C -> B`` (r_rev); ``None``
    when ``p_rev.lo`` or ``q.lo`` is zero."""
    out = bayes(p.lo, p.hi, q.lo, q.hi, q_rev.lo, q_rev.hi, p_rev.lo, p_rev.hi, r_rev.lo, r_rev.hi)
    return None if out is None else Interval(*out)


def rule_negation_duality(iv: Interval) -> Interval:
    """Range for ``A -> not B`` given the range for ``A -> B``."""
    return Interval(1 - iv.hi, 1 - iv.lo)


def rule_zero_symmetry_and_positivity(forward: Interval, backward: Interval) -> Interval | None:
    """Refined ``backward`` entry, or ``None`` if the pair is contradictory."""
    if forward.hi == 0:
        if backward.lo > 0:
            return None
        return Interval(_0, _0)
    if forward.lo > 0 and backward.hi == 0:
        return None
    return backward


def format_interval(iv: Interval | None) -> str:
    return "vacuous" if iv is None else f"{iv} ~ {iv.decimal()}"


__all__ = [
    "IntervalMatrix",
    "PropagationResult",
    "PropagationTrace",
    "Propagator",
    "TraceStep",
    "check_consistency_local",
    "propagate_to_fixpoint",
    "rule_bayes",
    "rule_negation_duality",
    "rule_triangle",
    "rule_zero_symmetry_and_positivity",
    "tracked_concepts",
    "fmt",
]
