import pytest

from seqsurf.compiler import compile_proof
from seqsurf.formulas import parse_formula, parse_sequent
from seqsurf.proofs import axiom, cut, expand_derived, make, parse_proof, premise
from seqsurf.proofnets import ProjectionError, emit_net, project

from cases import comparison_script


def test_single_axiom_link():
    p = axiom(parse_formula("A"))
    net = project(compile_proof(p), p.conclusion)
    assert net.links == (frozenset({("ant", 0), ("suc", 0)}),)
    assert net.units == ()


def test_comparison_projection():
    p = expand_derived(parse_proof(comparison_script))
    s = compile_proof(p)
    net = project(s, p.conclusion)
    # axiom links A-A and B-B
    names = []
    for pair in net.links:
        a, b = sorted(pair)
        names.append((a, b))
    assert frozenset({("ant", 0), ("suc", 1, "l")}) in net.links   # A with A
    assert frozenset({("ant", 1), ("suc", 1, "r")}) in net.links   # B with B
    assert len(net.links) == 2
    # exactly one bot attachment, anchored on a wire of the conclusion
    assert len(net.units) == 1
    path, anchor, height = net.units[0]
    assert path == ("suc", 0)
    assert len(anchor) == 2 and height > 0


def test_unit_attachment_positions_differ():
    p0 = make("bot-r-intro", (0,), (axiom(parse_formula("A")),))
    p1 = make("bot-r-intro", (1,), (axiom(parse_formula("A")),))
    n0 = project(compile_proof(p0), p0.conclusion)
    n1 = project(compile_proof(p1), p1.conclusion)
    assert n0.links == (frozenset({("ant", 0), ("suc", 1)}),)
    assert n1.links == (frozenset({("ant", 0), ("suc", 0)}),)
    assert n0.units[0][1] != n1.units[0][1]  # different anchor edges


def test_bot_axiom_projection():
    p = axiom(parse_formula("bot"))
    net = project(compile_proof(p), p.conclusion)
    assert net.links == ()
    assert len(net.units) == 2
    assert {u[0] for u in net.units} == {("ant", 0), ("suc", 0)}


def test_open_surface_rejected():
    p = premise(parse_sequent("A |- A"))
    s = compile_proof(p)
    with pytest.raises(ProjectionError, match="open boundary"):
        project(s, p.conclusion)


def test_projection_invariant_under_cut_shuffle():
    # equivalent surfaces related by exchange/merge keep their links
    f = parse_formula("A")
    p = cut(f, axiom(f), axiom(f))
    s = compile_proof(p)
    from seqsurf.equivalence import normalize
    net1 = project(s, p.conclusion)
    net2 = project(normalize(s), p.conclusion)
    assert net1.links == net2.links


def test_emit_formats():
    p = expand_derived(parse_proof(comparison_script))
    s = compile_proof(p)
    net = project(s, p.conclusion)
    dot = emit_net(net, "dot")
    assert dot.startswith("graph proofnet {")
    assert dot.count("style=solid") == 2
    assert dot.count("style=dotted") == 1
    js = emit_net(net, "json")
    assert '"links"' in js and '"units"' in js
    with pytest.raises(ProjectionError):
        emit_net(net, "png")
