"""Random consistent knowledge bases, for property tests and benchmarks.

Conditionings are read off a random atom distribution, so every generated
KB has at least one model in which each antecedent is positive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .atoms import AtomProbability, enumerate_atoms, probability_of
from .concepts import And, Atom, Concept, Exists, Forall, Not, Or
from .intervals import Interval
from .kb import KnowledgeBase, PConditioning, validate_kb
from .terminology import define, specialize, validate_terminology


@dataclass(frozen=True)
class GeneratedKB:
    kb: KnowledgeBase
    model: AtomProbability  # the distribution the conditionings were read from


def _random_concept(rng: random.Random, names, depth: int = 1) -> Concept:
    a = Atom(rng.choice(names))
    roll = rng.random()
    if depth <= 0 or roll < 0.45:
        return a
    if roll < 0.6:
        return Not(a)
    b = _random_concept(rng, names, depth - 1)
    return And((a, b)) if roll < 0.85 else Or((a, b))


def _random_rhs(rng: random.Random, names, role: str) -> Concept:
    base = _random_concept(rng, names, 1)
    roll = rng.random()
    if roll < 0.25:
        return And((base, Forall(role, Atom(rng.choice(names)))))
    if roll < 0.4:
        return And((base, Exists(role, _random_concept(rng, names, 0))))
    return base


def _bound(rng: random.Random, v: mpq, up: bool) -> mpq:
    roll = rng.random()
    if roll < 0.3:
        return v
    if roll < 0.45:
        return mpq(1) if up else mpq(0)
    den = rng.choice((2, 3, 4, 5, 10, 20))
    if up:
        return min(mpq(1), v + mpq(rng.randint(0, den), den) * (1 - v))
    return max(mpq(0), v - mpq(rng.randint(0, den), den) * v)


def random_kb(rng: random.Random, max_symbols: int = 4, max_axioms: int = 2,
              max_conditionings: int = 5, min_symbols: int = 2) -> GeneratedKB:
    n = rng.randint(min_symbols, max_symbols)
    names = [f"c{i}" for i in range(n)]
    role = "r"
    # an axiom's rhs only mentions earlier symbols, so the terminology is acyclic
    axioms = []
    lhs_pool = names[1:]
    rng.shuffle(lhs_pool)
    for lhs in lhs_pool[: rng.randint(0, max_axioms)]:
        earlier = names[: names.index(lhs)]
        rhs = _random_rhs(rng, earlier, role)
        axioms.append(define(lhs, rhs) if rng.random() < 0.5 else specialize(lhs, rhs))
    t = validate_terminology(axioms, names, [role])

    space = enumerate_atoms(t)
    weights = {a: mpq(rng.choice((0, 1, 1, 2, 3, 5))) for a in space.atoms}
    total = sum(weights.values(), mpq(0))
    if total == 0:
        weights[rng.choice(space.atoms)] = mpq(1)
        total = mpq(1)
    model = AtomProbability(space, {a: w / total for a, w in weights.items()})

    conds = []
    for _ in range(rng.randint(1, max_conditionings)):
        for _attempt in range(20):
            ante = _random_concept(rng, names, rng.randint(0, 1))
            pa = probability_of(ante, model)
            if pa > 0:
                break
        else:
            continue
        cons = _random_concept(rng, names, rng.randint(0, 1))
        v = probability_of(And((ante, cons)), model) / pa
        conds.append(PConditioning(ante, cons, Interval(_bound(rng, v, False), _bound(rng, v, True))))
    return GeneratedKB(validate_kb(t, conds), model)


def random_kbs(seed: int, count: int, **kw):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_kb(rng, **kw)
