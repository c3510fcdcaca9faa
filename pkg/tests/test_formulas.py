import pytest
from hypothesis import given, strategies as st

from seqsurf.formulas import (
    Atom, Par, ParseError, Sequent, StarL, StarR, Tensor, UnitBot, UnitI,
    hom_left, hom_right, parse_formula, parse_sequent, print_formula, print_sequent,
)


def test_parse_basic_shapes():
    assert parse_formula("(A (x) B)^") == StarR(Tensor(Atom("A"), Atom("B")))
    assert parse_formula("^^C") == StarL(StarL(Atom("C")))
    assert parse_formula("bot") == UnitBot()
    assert parse_formula("I") == UnitI()
    assert parse_formula("(A (+) B)") == Par(Atom("A"), Atom("B"))


def test_unicode_aliases():
    assert parse_formula("(A ⊗ B)") == Tensor(Atom("A"), Atom("B"))
    assert parse_formula("(A ⅋ B)") == Par(Atom("A"), Atom("B"))
    assert parse_formula("⊥") == UnitBot()
    assert parse_formula("A*") == StarR(Atom("A"))


def test_hom_sugar():
    assert parse_formula("(A -o X)") == Par(StarR(Atom("A")), Atom("X"))
    assert parse_formula("(X o- A)") == Par(Atom("X"), StarL(Atom("A")))
    assert parse_formula("(A -o X)") == hom_right(Atom("A"), Atom("X"))
    assert parse_formula("(X o- A)") == hom_left(Atom("X"), Atom("A"))


def test_parse_sequent_sides():
    s = parse_sequent("A, (B (x) C), D |- E, (F (x) G), H")
    assert [print_formula(f) for f in s.antecedent] == ["A", "(B (x) C)", "D"]
    assert [print_formula(f) for f in s.succedent] == ["E", "(F (x) G)", "H"]
    assert parse_sequent("|- A, B") == Sequent((), (Atom("A"), Atom("B")))
    assert parse_sequent("A, B, C |-") == Sequent((Atom("A"), Atom("B"), Atom("C")), ())
    assert parse_sequent("|-") == Sequent((), ())


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_formula("")
    with pytest.raises(ParseError):
        parse_formula("A (x) B")  # parens mandatory
    with pytest.raises(ParseError):
        parse_formula("(A (x)")
    with pytest.raises(ParseError):
        parse_sequent("A |- B |- C")
    with pytest.raises(ParseError):
        parse_sequent("A, B")
    with pytest.raises(ParseError):
        parse_formula("(A ? B)")


formulas = st.deferred(
    lambda: st.one_of(
        st.sampled_from([Atom("A"), Atom("B"), Atom("C"), UnitI(), UnitBot()]),
        st.builds(Tensor, formulas, formulas),
        st.builds(Par, formulas, formulas),
        st.builds(StarR, formulas),
        st.builds(StarL, formulas),
    )
)


@given(formulas)
def test_formula_round_trip(f):
    assert parse_formula(print_formula(f)) == f


@given(st.lists(formulas, max_size=3), st.lists(formulas, max_size=3))
def test_sequent_round_trip(ante, succ):
    s = Sequent(tuple(ante), tuple(succ))
    assert parse_sequent(print_sequent(s)) == s
