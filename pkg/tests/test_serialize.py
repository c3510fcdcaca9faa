from seqsurf.compiler import compile_proof
from seqsurf.diagrams import iso_equal, sequent_to_diagram
from seqsurf.equivalence import decide
from seqsurf.formulas import parse_sequent
from seqsurf.proofs import expand_derived, parse_proof
from seqsurf.serialize import (
    diagram_from_text, diagram_to_text, surface_from_text, surface_to_text,
    witness_from_text, witness_to_text,
)
from seqsurf.surfaces import bottom_slice, surface_key, canonical_event_order

from cases import comparison_script


def test_diagram_round_trip():
    for text in ["A |- A", "A, (B (x) C), D |- E, (F (x) G), H",
                 "A^, ^B |- ^^C, D", "A, bot |- B, I, bot"]:
        d = sequent_to_diagram(parse_sequent(text))
        d2 = diagram_from_text(diagram_to_text(d))
        assert d2.nodes == d.nodes and d2.pairing == d.pairing
        assert diagram_to_text(d2) == diagram_to_text(d)


def test_surface_round_trip():
    p = expand_derived(parse_proof(comparison_script))
    s = compile_proof(p)
    text = surface_to_text(s, p.conclusion)
    s2, concl = surface_from_text(text)
    assert concl == p.conclusion
    assert surface_key(s2) == surface_key(s)
    assert iso_equal(bottom_slice(s2), bottom_slice(s))
    assert surface_to_text(s2, concl) == text


def test_witness_round_trip():
    p = expand_derived(parse_proof(comparison_script))
    s = compile_proof(p)
    v = decide(s, s, 0)
    w2 = witness_from_text(witness_to_text(v.witness))
    assert witness_to_text(w2) == witness_to_text(v.witness)

    # a nontrivial witness with reductions and merges
    from seqsurf.equivalence import normalize
    n = normalize(s)
    v2 = decide(s, n, 0)
    assert v2.status == "equivalent"
    w3 = witness_from_text(witness_to_text(v2.witness))
    from seqsurf.equivalence import check_witness
    ok, _ = check_witness(s, n, w3)
    assert ok
