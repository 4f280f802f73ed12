import itertools
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from palc.atoms import enumerate_atoms
from palc.concepts import TOP, And, Atom, Not
from palc.errors import InconsistentKB, VacuousAntecedent
from palc.intervals import Interval
from palc.lp import check_farkas
from palc.oracle import (
    ExactOracle,
    WitnessError,
    build_polytope,
    check_consistency_exact,
    conditioning_constraints,
    entail_range_exact,
    max_probability,
    minimal_ranges_exact,
    solve_lp,
)
from palc.parser import load_kb
from palc.randomkb import random_kb

from conftest import kb_text
from kbfactory import free_kb, pc

A, B = Atom("A"), Atom("B")
bird, penguin, fo, ab = Atom("bird"), Atom("penguin"), Atom("flying_object"), Atom("antarctic_bird")


def test_conditioning_coefficients(birds):
    s = enumerate_atoms(birds.terminology)
    lower, upper = conditioning_constraints(birds.conditionings[0], s)
    both, ante = s.bits(And((bird, fo))), s.bits(bird)
    for k in range(s.n):
        if both >> k & 1:
            assert lower.coefficients[k] == mpq(1, 20) and upper.coefficients[k] == 0
        elif ante >> k & 1:
            assert lower.coefficients[k] == mpq(-19, 20) and upper.coefficients[k] == 1
        else:
            assert lower.coefficients[k] == 0 == upper.coefficients[k]
    assert lower.provenance[1] == "lower" and upper.provenance[1] == "upper"


def test_no_conditionings_gives_the_simplex():
    kb = free_kb("AB")
    p = build_polytope(kb, enumerate_atoms(kb.terminology))
    assert p.constraints == ()
    assert entail_range_exact(A, B, kb).range == Interval(0, 1)


def test_birds_consistent_and_ranges(birds):
    assert check_consistency_exact(birds)
    assert entail_range_exact(ab, fo, birds).range == Interval(mpq(3, 4), 1)
    assert entail_range_exact(bird, penguin, birds).range == Interval(0, mpq(1, 20))
    tracked = [bird, ab, penguin, fo]
    got = {(r.antecedent, r.consequent): r.range for r in minimal_ranges_exact(birds, tracked)}
    assert got[ab, fo] == Interval(mpq(3, 4), 1)
    assert got[bird, penguin] == Interval(0, mpq(1, 20))
    assert got[bird, ab] == Interval.point(mpq(1, 5))
    for c in tracked:
        assert got[c, c] == Interval(1, 1)


def test_pinned_atom_weights():
    # four top-conditionings fix every atom weight
    kb = free_kb("AB", [
        pc(TOP, And((Not(A), Not(B))), "0.5"),
        pc(TOP, And((Not(A), B)), "0.1"),
        pc(TOP, And((A, B)), "0.1"),
        pc(TOP, And((A, Not(B))), "0.3"),
    ])
    assert entail_range_exact(A, B, kb).range == Interval.point(mpq(1, 4))
    assert max_probability(A, kb) == mpq(2, 5)


def test_vacuous_antecedent():
    kb = free_kb("AB", [pc(TOP, A, 0)])
    o = ExactOracle(kb)
    with pytest.raises(VacuousAntecedent):
        o.range(A, B)
    assert o.range_or_vacuous(A, B).vacuous


def test_inconsistency_certificate():
    kb = load_kb(kb_text("contradictory.palc"))
    rep = check_consistency_exact(kb)
    assert not rep
    assert check_farkas(list(rep.rows), rep.certificate)
    with pytest.raises(InconsistentKB):
        entail_range_exact(Atom("a"), Atom("b"), kb)


def test_witnesses_attain_bounds(birds):
    r = entail_range_exact(ab, fo, birds)
    o = ExactOracle(birds)
    o.check_witness(r.lo_witness, ab, fo, r.range.lo)
    o.check_witness(r.hi_witness, ab, fo, r.range.hi)
    with pytest.raises(WitnessError):
        o.check_witness(r.hi_witness, ab, fo, r.range.lo)


def test_solve_lp_with_mapping(birds):
    o = ExactOracle(birds)
    res = solve_lp({a: 1 for a in o.space.atoms}, o.polytope, "max")
    assert res.value == 1


def _grid_ratios(kb, query, max_domain):
    """Ratios of ``query`` over every integer model with at most ``max_domain`` objects."""
    s = enumerate_atoms(kb.terminology)
    cons = [(s.bits(p.antecedent), s.bits(And((p.antecedent, p.consequent))), p.range) for p in kb.conditionings]
    qa, qb = s.bits(query[0]), s.bits(And(query))
    out = set()
    for d in range(1, max_domain + 1):
        for cut in itertools.combinations(range(d + s.n - 1), s.n - 1):
            bounds = (-1,) + cut + (d + s.n - 1,)
            counts = [bounds[k + 1] - bounds[k] - 1 for k in range(s.n)]

            def size(bits):
                return sum(c for k, c in enumerate(counts) if bits >> k & 1)

            ok = True
            for ante, both, rng in cons:
                na = size(ante)
                if na and mpq(size(both), na) not in rng:
                    ok = False
                    break
            if ok and size(qa):
                out.add(mpq(size(qb), size(qa)))
    return out


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_exact_ranges_contain_every_finite_model(seed):
    rng = random.Random(seed)
    kb = random_kb(rng, max_symbols=2, max_axioms=1, max_conditionings=3).kb
    o = ExactOracle(kb)
    names = [Atom(x) for x in kb.signature]
    q = (rng.choice(names), rng.choice(names + [Not(n) for n in names]))
    r = o.range_or_vacuous(*q)
    ratios = _grid_ratios(kb, q, 14)
    if r.vacuous:
        assert not ratios
    else:
        assert all(x in r.range for x in ratios)


def test_rational_endpoints_are_hit_by_a_finite_model():
    ratios = _grid_ratios(free_kb("AB", [pc("A", "B", "1/4", "1/2")]), (B, A), 12)
    # P(A|B) is unconstrained: both ends are attained with few objects
    assert 0 in ratios and 1 in ratios
