"""ALC concept expressions.

Concepts are immutable, hashable trees.  ``And``/``Or`` are n-ary; the
binary surface syntax is flattened by :func:`normalize`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .errors import UndeclaredSymbol

RESERVED = frozenset({"top", "bottom"})


@dataclass(frozen=True)
class _Top:
    def __repr__(self) -> str:
        return "top"


@dataclass(frozen=True)
class _Bottom:
    def __repr__(self) -> str:
        return "bottom"


TOP = _Top()
BOTTOM = _Bottom()


@dataclass(frozen=True)
class Atom:
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    arg: "Concept"

    def __repr__(self) -> str:
        return f"(not {self.arg!r})"


@dataclass(frozen=True)
class And:
    args: tuple

    def __repr__(self) -> str:
        return _render_nary("and", self.args)


@dataclass(frozen=True)
class Or:
    args: tuple

    def __repr__(self) -> str:
        return _render_nary("or", self.args)


@dataclass(frozen=True)
class Forall:
    role: str
    arg: "Concept"

    def __repr__(self) -> str:
        return f"(all {self.role} {self.arg!r})"


@dataclass(frozen=True)
class Exists:
    role: str
    arg: "Concept"

    def __repr__(self) -> str:
        return f"(some {self.role} {self.arg!r})"


Concept = Union[_Top, _Bottom, Atom, Not, And, Or, Forall, Exists]


def _render_nary(op: str, args: tuple) -> str:
    # right-nested binary form so the text stays inside the surface grammar
    if len(args) == 1:
        return repr(args[0])
    head, *rest = args
    tail = rest[0] if len(rest) == 1 else (And if op == "and" else Or)(tuple(rest))
    return f"({op} {head!r} {tail!r})"


def render(c: Concept) -> str:
    """Surface-syntax text of a concept (parseable by the KB parser)."""
    return repr(c)


def conj(*args: Concept) -> Concept:
    return args[0] if len(args) == 1 else And(tuple(args))


def disj(*args: Concept) -> Concept:
    return args[0] if len(args) == 1 else Or(tuple(args))


def symbols(c: Concept) -> set[str]:
    out: set[str] = set()
    _collect(c, out, None)
    return out


def roles(c: Concept) -> set[str]:
    out: set[str] = set()
    _collect(c, None, out)
    return out


def _collect(c, syms, rls) -> None:
    if isinstance(c, Atom):
        if syms is not None:
            syms.add(c.name)
    elif isinstance(c, Not):
        _collect(c.arg, syms, rls)
    elif isinstance(c, (And, Or)):
        for a in c.args:
            _collect(a, syms, rls)
    elif isinstance(c, (Forall, Exists)):
        if rls is not None:
            rls.add(c.role)
        _collect(c.arg, syms, rls)


def check_declared(c: Concept, concepts, role_names=None) -> None:
    for s in symbols(c):
        if s not in concepts:
            raise UndeclaredSymbol(s)
    if role_names is not None:
        for r in roles(c):
            if r not in role_names:
                raise UndeclaredSymbol(r)


def is_role_free(c: Concept) -> bool:
    return not roles(c)


def subterms(c: Concept) -> Iterator[Concept]:
    yield c
    if isinstance(c, Not):
        yield from subterms(c.arg)
    elif isinstance(c, (And, Or)):
        for a in c.args:
            yield from subterms(a)
    elif isinstance(c, (Forall, Exists)):
        yield from subterms(c.arg)


# ---------------------------------------------------------------------------
# Negation normal form


def nnf(c: Concept) -> Concept:
    """Push negations down to symbols; flatten nested ``And``/``Or``."""
    return _nnf(c, False)


@lru_cache(maxsize=65536)
def _nnf(c: Concept, neg: bool) -> Concept:
    if c is TOP or isinstance(c, _Top):
        return BOTTOM if neg else TOP
    if isinstance(c, _Bottom):
        return TOP if neg else BOTTOM
    if isinstance(c, Atom):
        return Not(c) if neg else c
    if isinstance(c, Not):
        return _nnf(c.arg, not neg)
    if isinstance(c, (And, Or)):
        is_and = isinstance(c, And) != neg
        parts = []
        for a in c.args:
            x = _nnf(a, neg)
            if is_and and isinstance(x, And) or not is_and and isinstance(x, Or):
                parts.extend(x.args)
            else:
                parts.append(x)
        return And(tuple(parts)) if is_and else Or(tuple(parts))
    if isinstance(c, Forall):
        return Exists(c.role, _nnf(c.arg, True)) if neg else Forall(c.role, _nnf(c.arg, False))
    if isinstance(c, Exists):
        return Forall(c.role, _nnf(c.arg, True)) if neg else Exists(c.role, _nnf(c.arg, False))
    raise TypeError(f"not a concept: {c!r}")


# ---------------------------------------------------------------------------
# Canonical form
#
# Role restrictions are canonicalised recursively and then treated as opaque
# boolean variables, using ``(all R C)`` as the positive literal and
# ``(some R (not C))`` as its complement.  The boolean skeleton is rewritten
# into the disjunction of all its prime implicants, which is unique per
# boolean function.  Skeletons with too many variables fall back to a sorted,
# absorbed NNF.

MAX_CANONICAL_VARS = 8


def sort_key(c: Concept) -> str:
    return repr(c)


def normalize(c: Concept) -> Concept:
    """Canonical representative of ``c``.

    Idempotent.  Role-free concepts with the same truth table normalize to
    the same tree: ``(not (not A))`` gives ``A``, ``(and A top)`` gives ``A``.
    """
    return _normalize(c)


@lru_cache(maxsize=65536)
def _normalize(c: Concept) -> Concept:
    vars_: dict[Concept, int] = {}
    skel = _skeleton(nnf(c), vars_)
    order = sorted(vars_, key=sort_key)
    if len(order) > MAX_CANONICAL_VARS:
        return _sorted_nnf(nnf(_rebuild_skeleton(skel, {i: v for v, i in vars_.items()})))
    remap = {vars_[v]: k for k, v in enumerate(order)}
    fn = _truth_table(skel, remap, len(order))
    return _from_prime_implicants(fn, order)


def _skeleton(c: Concept, vars_: dict) -> tuple:
    """Boolean skeleton of an NNF concept with role terms as variables."""
    if isinstance(c, _Top):
        return ("T",)
    if isinstance(c, _Bottom):
        return ("F",)
    if isinstance(c, Atom):
        return ("v", vars_.setdefault(c, len(vars_)))
    if isinstance(c, Not):
        return ("n", vars_.setdefault(c.arg, len(vars_)))
    if isinstance(c, And):
        return ("a",) + tuple(_skeleton(a, vars_) for a in c.args)
    if isinstance(c, Or):
        return ("o",) + tuple(_skeleton(a, vars_) for a in c.args)
    if isinstance(c, Forall):
        v = Forall(c.role, _normalize(c.arg))
        return ("v", vars_.setdefault(v, len(vars_)))
    if isinstance(c, Exists):
        v = Forall(c.role, _normalize(Not(c.arg)))
        return ("n", vars_.setdefault(v, len(vars_)))
    raise TypeError(c)


def _rebuild_skeleton(s: tuple, inv: dict) -> Concept:
    tag = s[0]
    if tag == "T":
        return TOP
    if tag == "F":
        return BOTTOM
    if tag == "v":
        return inv[s[1]]
    if tag == "n":
        return Not(inv[s[1]])
    parts = tuple(_rebuild_skeleton(x, inv) for x in s[1:])
    return And(parts) if tag == "a" else Or(parts)


def _truth_table(s: tuple, remap: dict, k: int) -> int:
    """Bitset over the 2**k assignments (bit ``i`` of a mask = variable ``i``)."""
    full = (1 << (1 << k)) - 1
    cols = []
    for i in range(k):
        bits = 0
        for mask in range(1 << k):
            if mask >> i & 1:
                bits |= 1 << mask
        cols.append(bits)

    def ev(x):
        tag = x[0]
        if tag == "T":
            return full
        if tag == "F":
            return 0
        if tag == "v":
            return cols[remap[x[1]]]
        if tag == "n":
            return full ^ cols[remap[x[1]]]
        vals = [ev(y) for y in x[1:]]
        out = full if tag == "a" else 0
        for v in vals:
            out = out & v if tag == "a" else out | v
        return out

    return ev(s)


def _prime_implicants(fn: int, k: int) -> list[tuple[int, int]]:
    """Prime implicants of ``fn`` as ``(care_mask, value_mask)`` cubes."""
    if fn == 0:
        return []
    full = (1 << k) - 1
    imp: dict[tuple[int, int], bool] = {}
    for care in sorted(range(1 << k), key=lambda m: -bin(m).count("1")):
        free = full & ~care
        low = free & -free
        sub = care
        while True:
            value = sub
            if free == 0:
                imp[(care, value)] = bool(fn >> value & 1)
            else:
                imp[(care, value)] = imp[(care | low, value)] and imp[(care | low, value | low)]
            if sub == 0:
                break
            sub = (sub - 1) & care
    primes = []
    for (care, value), ok in imp.items():
        if not ok:
            continue
        bits = care
        while bits:
            b = bits & -bits
            bits ^= b
            if imp[(care & ~b, value & ~b)]:
                break
        else:
            primes.append((care, value))
    return primes


def _literal(var: Concept, positive: bool) -> Concept:
    if positive:
        return var
    if isinstance(var, Forall):
        return Exists(var.role, _normalize(Not(var.arg)))
    return Not(var)


def _from_prime_implicants(fn: int, order: list) -> Concept:
    k = len(order)
    if fn == (1 << (1 << k)) - 1:
        return TOP
    primes = _prime_implicants(fn, k)
    if not primes:
        return BOTTOM
    terms = []
    for care, value in primes:
        lits = sorted(
            (_literal(order[i], bool(value >> i & 1)) for i in range(k) if care >> i & 1),
            key=sort_key,
        )
        terms.append(conj(*lits))
    terms = sorted(set(terms), key=sort_key)
    return disj(*terms)


def _sorted_nnf(c: Concept) -> Concept:
    """Fallback: flattened, deduplicated, sorted NNF with unit absorption."""
    if isinstance(c, (And, Or)):
        unit, zero = (TOP, BOTTOM) if isinstance(c, And) else (BOTTOM, TOP)
        parts = []
        for a in c.args:
            x = _sorted_nnf(a)
            if type(x) is type(c):
                parts.extend(x.args)
            else:
                parts.append(x)
        parts = [p for p in parts if p != unit]
        if zero in parts:
            return zero
        uniq = sorted(set(parts), key=sort_key)
        negs = {p.arg for p in uniq if isinstance(p, Not)}
        if any(p in negs for p in uniq):
            return zero
        if not uniq:
            return unit
        return uniq[0] if len(uniq) == 1 else type(c)(tuple(uniq))
    if isinstance(c, Forall):
        return Forall(c.role, _normalize(c.arg))
    if isinstance(c, Exists):
        return Exists(c.role, _normalize(c.arg))
    return c


def evaluate(c: Concept, assignment) -> bool:
    """Propositional truth value of a role-free concept under ``assignment``."""
    if isinstance(c, _Top):
        return True
    if isinstance(c, _Bottom):
        return False
    if isinstance(c, Atom):
        return bool(assignment[c.name])
    if isinstance(c, Not):
        return not evaluate(c.arg, assignment)
    if isinstance(c, And):
        return all(evaluate(a, assignment) for a in c.args)
    if isinstance(c, Or):
        return any(evaluate(a, assignment) for a in c.args)
    raise ValueError(f"role restriction has no propositional value: {c!r}")
