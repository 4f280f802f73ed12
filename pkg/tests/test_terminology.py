import random

import pytest

from palc.concepts import TOP, And, Atom, Forall, Not
from palc.errors import DuplicateDefinition, ReservedSymbol, TerminologicalCycle, UndeclaredSymbol, UnsatisfiableAntecedent
from palc.kb import validate_kb
from palc.terminology import define, specialize, validate_terminology

from kbfactory import birds_axioms, birds_kb, pc

A, B = Atom("A"), Atom("B")


def test_birds_terminology_is_valid():
    t = validate_terminology(birds_axioms())
    assert len(t.axioms) == 7
    assert set(t.defined) == {"flying_object", "antarctic_bird"}
    assert t.roles == ("moves_by",)
    order = list(t.order)
    assert order.index("antarctic_animal") < order.index("antarctic_bird") < order.index("penguin")


def test_self_reference_is_a_cycle():
    with pytest.raises(TerminologicalCycle):
        validate_terminology([define("A", Forall("R", A))])


def test_longer_cycle():
    with pytest.raises(TerminologicalCycle) as e:
        validate_terminology([specialize("A", B), define("B", Not(A))])
    assert e.value.args


def test_duplicate_lhs():
    with pytest.raises(DuplicateDefinition):
        validate_terminology([specialize("A", TOP), define("A", B)])


def test_undeclared_symbol_when_declarations_given():
    with pytest.raises(UndeclaredSymbol):
        validate_terminology([specialize("A", B)], concepts=["A"])


def test_reserved_symbol():
    with pytest.raises(ReservedSymbol):
        validate_terminology([specialize("top", A)])


def test_permutation_keeps_signature_set_and_a_valid_order():
    axioms = birds_axioms()
    base = validate_terminology(axioms)
    rng = random.Random(3)
    for _ in range(20):
        perm = axioms[:]
        rng.shuffle(perm)
        t = validate_terminology(perm)
        assert set(t.signature) == set(base.signature)
        assert set(t.order) == set(base.order)
        pos = {n: i for i, n in enumerate(t.order)}
        for ax in t.axioms:
            for dep in _deps(ax.rhs):
                if dep in pos:
                    assert pos[dep] < pos[ax.lhs]


def _deps(c):
    from palc.concepts import symbols
    return symbols(c)


def test_birds_kb_is_valid():
    kb = birds_kb()
    assert len(kb.conditionings) == 3


def test_unsatisfiable_antecedent():
    t = validate_terminology([specialize("A", TOP), define("B", And((A, Not(A))))])
    with pytest.raises(UnsatisfiableAntecedent):
        validate_kb(t, [pc("B", "A", "0.5", 1)])


def test_pure_terminology_kb():
    t = validate_terminology([specialize("A", TOP)])
    assert validate_kb(t, []).conditionings == ()
