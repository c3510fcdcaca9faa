import pytest

from seqsurf.compiler import CompileError, axiom_surface, compile_proof, cut_surface
from seqsurf.diagrams import iso_equal, sequent_to_diagram, signature
from seqsurf.formulas import parse_formula, parse_sequent
from seqsurf.proofs import axiom, cut, expand_derived, make, parse_proof, premise
from seqsurf.surfaces import bottom_slice, validate_surface

from test_proofs import comparison_script


def seq(text):
    return sequent_to_diagram(parse_sequent(text))


FORMULAS = [
    "A", "I", "bot", "(A (x) B)", "(A (+) B)", "A^", "^A", "^^A",
    "((A (x) B) (+) bot)", "(A (x) B)^", "^(I (+) A)", "(A^ (x) ^B)",
]


@pytest.mark.parametrize("text", FORMULAS)
def test_axiom_surface_bottom(text):
    f = parse_formula(text)
    s = axiom_surface(f)
    assert s.source.is_empty()
    assert iso_equal(bottom_slice(s), sequent_to_diagram(
        parse_sequent(f"{text} |- {text}")))


def test_axiom_surface_event_shapes():
    s = axiom_surface(parse_formula("A"))
    assert [e.kind for e in s.events] == ["atom-birth"]
    s = axiom_surface(parse_formula("bot"))
    assert [e.kind for e in s.events] == ["pair-intro"]
    s = axiom_surface(parse_formula("(A (x) B)"))
    assert sorted(e.kind for e in s.events) == \
        ["atom-birth", "atom-birth", "pair-intro"]
    s = axiom_surface(parse_formula("A^"))
    assert [e.kind for e in s.events] == ["atom-birth", "bend-fold", "bend-fold"]


@pytest.mark.parametrize("text", FORMULAS)
def test_cut_of_axioms_bottom(text):
    f = parse_formula(text)
    p = cut(f, axiom(f), axiom(f))
    s = compile_proof(p)
    assert iso_equal(bottom_slice(s), sequent_to_diagram(p.conclusion))


def test_compile_axiom_rule_equals_axiom_surface():
    from seqsurf.surfaces import canonical_event_order, surface_key
    f = parse_formula("(A (x) B)")
    a = compile_proof(axiom(f))
    b = axiom_surface(f)
    assert surface_key(canonical_event_order(a)) == surface_key(canonical_event_order(b))


def test_premise_cut_has_one_event():
    p = cut(parse_formula("A"),
            premise(parse_sequent("A |- A")),
            premise(parse_sequent("A |- A")))
    s = compile_proof(p)
    assert len(s.events) == 1 and s.events[0].kind == "atom-death"
    assert iso_equal(bottom_slice(s), seq("A |- A"))


def test_cut_with_contexts_fuses_roots():
    p = cut(parse_formula("B"),
            premise(parse_sequent("A, C |- B")),
            premise(parse_sequent("B |- D, E")))
    s = compile_proof(p)
    kinds = [e.kind for e in s.events]
    assert kinds == ["atom-death", "coherent"]
    assert iso_equal(bottom_slice(s), seq("A, C |- D, E"))


def test_core_rules_single_coherent_event():
    base = premise(parse_sequent("A, B |- C"))
    for rule, arg, concl, n_events in [
        # merging two root branches into a tensor is invisible: the
        # overloaded blue dot already is the tensor dot
        ("tensor-l-intro", 0, "(A (x) B) |- C", 0),
        ("i-l-intro", 1, "A, I, B |- C", 1),
        ("bot-r-intro", 0, "A, B |- bot, C", 1),
    ]:
        p = make(rule, (arg,), (base,))
        assert str(p.conclusion) == concl
        s = compile_proof(p)
        assert [e.kind for e in s.events] == ["coherent"] * n_events
        assert iso_equal(bottom_slice(s), sequent_to_diagram(p.conclusion))


def test_vacuous_core_rule_emits_no_event():
    # splitting a tensor at the root is invisible: the blue dot is the same
    p = make("tensor-l-elim", (0,), (axiom(parse_formula("(A (x) B)")),))
    s = compile_proof(p)
    assert [e.kind for e in s.events if e.kind == "coherent"] == []
    assert iso_equal(bottom_slice(s), seq("A, B |- (A (x) B)"))


def test_core_chain_round_trip():
    p = premise(parse_sequent("A, B |- C"))
    p = make("i-l-intro", (0,), (p,))
    p = make("i-l-elim", (0,), (p,))
    p = make("bot-r-intro", (1,), (p,))
    p = make("bot-r-elim", (1,), (p,))
    s = compile_proof(p)
    assert iso_equal(bottom_slice(s), seq("A, B |- C"))
    assert all(e.kind == "coherent" for e in s.events)


def test_n_rules_compile_and_round_trip():
    for fam in ("n1", "n2", "n3", "n4"):
        p = premise(parse_sequent("A |- B"))
        p = make(f"{fam}-intro", (), (p,))
        s = compile_proof(p)
        assert [e.kind for e in s.events] == ["bend-fold"]
        assert iso_equal(bottom_slice(s), sequent_to_diagram(p.conclusion))
        q = make(f"{fam}-elim", (), (p,))
        s2 = compile_proof(q)
        assert [e.kind for e in s2.events] == ["bend-fold", "bend-unfold"]
        assert iso_equal(bottom_slice(s2), seq("A |- B"))


def test_comparison_figure_compiles():
    p = expand_derived(parse_proof(comparison_script))
    s = compile_proof(p)
    assert s.source.is_empty()
    assert iso_equal(bottom_slice(s), seq("A, B |- bot, (A (x) B)"))


def test_tensor_r_expansion_with_premises():
    t = make("tensor-r", (), (premise(parse_sequent("A |- A")),
                              premise(parse_sequent("B |- B"))))
    p = expand_derived(t)
    s = compile_proof(p)
    assert iso_equal(bottom_slice(s), seq("A, B |- (A (x) B)"))
    # the top boundary is the two premise slices side by side
    src = s.source
    assert len(src.components()) == 2


def test_cut_surface_public_op():
    f = parse_formula("A")
    s = cut_surface(f, axiom_surface(f), axiom_surface(f))
    assert iso_equal(bottom_slice(s), seq("A |- A"))
    with pytest.raises(CompileError, match="mismatch"):
        cut_surface(parse_formula("B"), axiom_surface(f), axiom_surface(f))


def test_cut_surface_matches_compile():
    from seqsurf.surfaces import canonical_event_order, surface_key
    f = parse_formula("(A (+) B)")
    via_proof = compile_proof(cut(f, axiom(f), axiom(f)))
    via_op = cut_surface(f, axiom_surface(f), axiom_surface(f))
    assert surface_key(canonical_event_order(via_proof)) == \
        surface_key(canonical_event_order(via_op))


def test_compile_rejects_derived_and_invalid():
    t = make("tensor-r", (), (axiom(parse_formula("A")), axiom(parse_formula("B"))))
    with pytest.raises(CompileError, match="derived"):
        compile_proof(t)
    from seqsurf.proofs import Proof
    from seqsurf.formulas import Sequent, Atom
    bad = Proof("axiom", (Atom("A"),), (), Sequent((Atom("A"),), (Atom("B"),)))
    with pytest.raises(CompileError, match="invalid"):
        compile_proof(bad)


def test_core_fragment_only_coherent_events():
    p = premise(parse_sequent("A, B |- C"))
    p = make("tensor-l-intro", (0,), (p,))
    p = make("bot-r-intro", (0,), (p,))
    p = make("i-l-intro", (0,), (p,))
    s = compile_proof(p)
    assert all(e.kind == "coherent" for e in s.events)
