import itertools

import pytest
from gmpy2 import mpq

from palc.atoms import AtomProbability, concept_to_atoms, enumerate_atoms, induced_probability, probability_of
from palc.concepts import TOP, And, Atom, Exists, Not, Or
from palc.errors import CardinalityMismatch, NonPropositionalQuery, SignatureTooLarge
from palc.terminology import define, specialize, validate_terminology

from kbfactory import birds_axioms

A, B, C = Atom("A"), Atom("B"), Atom("C")
NN, NP, PN, PP = 0b00, 0b01, 0b10, 0b11  # sign of A, then sign of B


@pytest.fixture
def t3():
    return validate_terminology([specialize("A", TOP), specialize("B", TOP), define("C", And((A, B)))])


@pytest.fixture
def space(t3):
    return enumerate_atoms(t3, signature=("A", "B"))


def test_two_symbol_space(space):
    assert space.n == 4
    assert {space.label(a) for a in space.atoms} == {"~A & ~B", "~A & B", "A & B", "A & ~B"}


def test_defined_symbol_prunes_atoms(t3):
    s = enumerate_atoms(t3)
    assert s.signature == ("A", "B", "C")
    assert s.n == 4
    for atom in s.atoms:
        signs = s.signs(atom)
        assert signs["C"] == (signs["A"] and signs["B"])
    assert {(s.signs(a)["A"], s.signs(a)["B"]) for a in s.atoms} == set(itertools.product((False, True), repeat=2))


def test_concept_to_atoms(space):
    assert concept_to_atoms(A, space) == {PP, PN}
    assert concept_to_atoms(Or((A, B)), space) == {NP, PP, PN}
    assert concept_to_atoms(TOP, space) == set(space.atoms)
    assert concept_to_atoms(And((A, Not(A))), space) == frozenset()


def test_role_concepts_need_a_name():
    t = validate_terminology(birds_axioms())
    s = enumerate_atoms(t)
    fo = Atom("flying_object")
    named = [d for a, d in t.definitions().items() if a == "flying_object"][0]
    assert concept_to_atoms(named, s) == concept_to_atoms(fo, s)
    assert concept_to_atoms(Not(named), s) == concept_to_atoms(Not(fo), s)
    with pytest.raises(NonPropositionalQuery):
        s.bits(Exists("moves_by", Atom("flying")))


def test_signature_cap(t3):
    with pytest.raises(SignatureTooLarge):
        enumerate_atoms(t3, cap=2)


def test_induced_probability(space):
    p = induced_probability(100, {NN: 50, NP: 10, PP: 10, PN: 30}, space)
    assert p.weights == {NN: mpq(1, 2), NP: mpq(1, 10), PP: mpq(1, 10), PN: mpq(3, 10)}
    assert probability_of(A, p) == mpq(2, 5)
    assert probability_of(And((A, B)), p) == mpq(1, 10)
    assert probability_of(TOP, p) == 1
    assert probability_of(B, p) == mpq(1, 5)


def test_induced_probability_errors(space):
    with pytest.raises(CardinalityMismatch):
        induced_probability(100, {NN: 50}, space)
    with pytest.raises(ValueError):
        induced_probability(0, {}, space)
    with pytest.raises(ValueError):
        AtomProbability(space, {NN: mpq(1, 2)})
