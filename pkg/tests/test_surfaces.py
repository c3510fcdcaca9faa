import pytest

from seqsurf.diagrams import (
    Diagram2, black, blue, iso_equal, red, sequent_to_diagram, signature,
)
from seqsurf.formulas import parse_sequent
from seqsurf.surfaces import (
    Surface, SurfaceError, apply_event, atom_birth, atom_death, bend_fold,
    bend_unfold, bottom_slice, canonical_event_order, coherent, identity_surface,
    compose_vertical, juxtapose, pair_elim, pair_intro, surface_key,
    validate_surface,
)


def seq(text):
    return sequent_to_diagram(parse_sequent(text))


def black_dots(d):
    return {nid: n for nid, n in d.nodes.items() if n.kind[0] == "black"}


def dot_of(d, name, pol):
    for nid, n in d.nodes.items():
        if n.kind == ("black", name, pol):
            return nid
    raise KeyError((name, pol))


def test_atom_birth_gives_axiom_diagram():
    s = Surface(Diagram2.empty(), (atom_birth("A", 1),))
    slices = validate_surface(s)
    assert len(slices) == 2
    assert iso_equal(slices[-1], seq("A |- A"))


def test_atom_death_needs_black_pair():
    s = Surface(Diagram2.empty(), (atom_death("A", 5, 6, 1),))
    with pytest.raises(SurfaceError) as e:
        validate_surface(s)
    assert e.value.index == 0


def test_birth_death_snake_across_two_strands():
    d0 = Diagram2.empty()
    d1, _ = apply_event(d0, atom_birth("A", 1))
    d2, _ = apply_event(d1, atom_birth("A", 2))
    n_suc1 = dot_of(d1, "A", "suc")
    n_ant2 = [n for n in black_dots(d2) if n not in d1.nodes and
              d2.nodes[n].kind[2] == "ant"][0]
    d3, _ = apply_event(d2, atom_death("A", n_suc1, n_ant2, 3))
    assert iso_equal(d3, seq("A |- A"))


def test_death_on_same_wire_rejected():
    d1, _ = apply_event(Diagram2.empty(), atom_birth("A", 1))
    a = dot_of(d1, "A", "ant")
    s = dot_of(d1, "A", "suc")
    with pytest.raises(SurfaceError, match="same wire"):
        apply_event(d1, atom_death("A", s, a, 2))


def test_unit_pair_intro_shapes():
    for conn, text in (("bot", "bot |- bot"), ("i", "I |- I")):
        s = Surface(Diagram2.empty(), (pair_intro(conn, (), 1),))
        assert iso_equal(bottom_slice(s), seq(text))


def test_unit_pair_elim_cut_shape():
    d, _ = apply_event(Diagram2.empty(), pair_intro("bot", (), 1))
    d, _ = apply_event(d, pair_intro("bot", (), 2))
    reds = [n for n, nd in d.nodes.items() if nd.kind == ("red", "bot")]
    blues = [n for n, nd in d.nodes.items() if nd.kind[0] == "blue"]
    # eliminate the blue of component 1 against the red of component 2
    r2 = [r for r in reds if r // 1_000_000 == 2][0]
    b1 = [b for b in blues if b // 1_000_000 == 1][0]
    d2, _ = apply_event(d, pair_elim("bot", r2, b1, 3))
    assert iso_equal(d2, seq("bot |- bot"))


def test_tensor_bridge_matches_axiom_diagram():
    d, _ = apply_event(Diagram2.empty(), atom_birth("A", 1))
    d, _ = apply_event(d, atom_birth("B", 2))
    du = d.nodes[dot_of(d, "A", "ant")].ports[0]
    dv = d.nodes[dot_of(d, "B", "ant")].ports[0]
    d2, _ = apply_event(d, pair_intro("tensor", (du, dv), 3))
    assert iso_equal(d2, seq("(A (x) B) |- (A (x) B)"))


def test_par_bridge_matches_axiom_diagram():
    d, _ = apply_event(Diagram2.empty(), atom_birth("A", 1))
    d, _ = apply_event(d, atom_birth("B", 2))
    du = d.nodes[dot_of(d, "A", "ant")].ports[0]
    dv = d.nodes[dot_of(d, "B", "ant")].ports[0]
    d2, _ = apply_event(d, pair_intro("par", (du, dv), 3))
    assert iso_equal(d2, seq("(A (+) B) |- (A (+) B)"))


def _tensor_axiom_slice(tag0):
    d, _ = apply_event(Diagram2.empty(), atom_birth("A", tag0))
    d, _ = apply_event(d, atom_birth("B", tag0 + 1))
    du = d.nodes[dot_of(d, "A", "ant")].ports[0]
    dv = d.nodes[dot_of(d, "B", "ant")].ports[0]
    d, _ = apply_event(d, pair_intro("tensor", (du, dv), tag0 + 2))
    return d


def test_tensor_cut_elim_round():
    # two tensor axioms side by side, cut them: deaths then bigon collapse
    dl = _tensor_axiom_slice(1)
    dr = _tensor_axiom_slice(4)
    nmap = {n: n + 100 for n in dr.nodes}
    dmap = {d_: d_ + 100 for d_ in dr.pairing}
    dr = dr.relabel(nmap, dmap)
    merged = Diagram2({**dl.nodes, **dr.nodes}, {**dl.pairing, **dr.pairing}, ())

    def find(dd, kind):
        return [n for n, nd in dd.nodes.items() if nd.kind == kind]

    sA_l = [n for n in find(merged, ("black", "A", "suc")) if n in dl.nodes][0]
    aA_r = [n for n in find(merged, ("black", "A", "ant")) if n not in dl.nodes][0]
    sB_l = [n for n in find(merged, ("black", "B", "suc")) if n in dl.nodes][0]
    aB_r = [n for n in find(merged, ("black", "B", "ant")) if n not in dl.nodes][0]
    d1, _ = apply_event(merged, atom_death("A", sA_l, aA_r, 10))
    d2, _ = apply_event(d1, atom_death("B", sB_l, aB_r, 11))
    red_l = [n for n in find(d2, ("red", "tensor")) if n in dl.nodes][0]
    blue_r = [n for n, nd in d2.nodes.items()
              if nd.kind[0] == "blue" and n not in dl.nodes][0]
    d3, _ = apply_event(d2, pair_elim("tensor", red_l, blue_r, 12))
    assert iso_equal(d3, seq("(A (x) B) |- (A (x) B)"))


def test_bend_fold_unfold_round_trip():
    d1, _ = apply_event(Diagram2.empty(), atom_birth("A", 1))
    a = dot_of(d1, "A", "ant")
    dd = d1.nodes[a].ports[0]
    d2, info = apply_event(d1, bend_fold(1, dd, 2))
    (bn,) = info.created_nodes
    assert d2.nodes[bn].kind[0] == "bend"
    d3, _ = apply_event(d2, bend_unfold(bn, 3))
    assert iso_equal(d3, d1)
    assert signature(d2) != signature(d1)


def test_coherent_event_hooks_unit_cap():
    src = seq("A |- A")
    (edge,) = [tuple(e) for e in src.edges()]
    h1, h2 = edge
    if src.nodes[src.owner(h1)[0]].kind[2] != "ant":
        h1, h2 = h2, h1
    pattern = Diagram2({}, {0: 1, 1: 0}, (0, 1))
    q_nodes = {0: blue((2, 3, 4)), 1: blue((5,))}
    replacement = Diagram2(q_nodes, {0: 2, 2: 0, 1: 3, 3: 1, 4: 5, 5: 4}, (0, 1))
    ev = coherent(pattern, replacement, (h1, h2), 1)
    s = Surface(src, (ev,))
    assert iso_equal(bottom_slice(s), seq("A |- bot, A"))


def test_coherent_pattern_mismatch():
    src = seq("A |- A")
    (edge,) = [tuple(e) for e in src.edges()]
    pattern = Diagram2({0: blue((0, 1, 2))}, {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2},
                       (3, 4, 5))
    ev = coherent(pattern, pattern, (edge[0], edge[1], edge[1]), 1)
    s = Surface(src, (ev,))
    with pytest.raises(SurfaceError):
        validate_surface(s)


def test_slice_conservation_counts():
    s = Surface(Diagram2.empty(), (
        atom_birth("A", 1), pair_intro("bot", (), 2), atom_birth("B", 3),
    ))
    slices = validate_surface(s)

    def count(d, k):
        return sum(1 for n in d.nodes.values() if n.kind[0] == k)

    assert [count(x, "black") for x in slices] == [0, 2, 2, 4]
    assert [count(x, "red") for x in slices] == [0, 0, 1, 1]


def test_juxtapose_and_compose():
    ax = Surface(Diagram2.empty(), (atom_birth("A", 1),))
    j = juxtapose(ax, ax)
    assert len(j.events) == 2
    assert iso_equal(bottom_slice(j), Diagram2(
        {0: black("A", "ant", 0), 1: black("A", "suc", 1),
         2: black("A", "ant", 2), 3: black("A", "suc", 3)},
        {0: 1, 1: 0, 2: 3, 3: 2}, ()))

    ident = identity_surface(seq("A |- A"))
    c = compose_vertical(ax, ident)
    assert len(c.events) == 1
    assert iso_equal(bottom_slice(c), seq("A |- A"))
    with pytest.raises(SurfaceError, match="mismatch"):
        compose_vertical(ax, identity_surface(seq("B |- B")))


def test_canonical_event_order_normalizes_disjoint_swaps():
    a = Surface(Diagram2.empty(), (atom_birth("A", 1), atom_birth("B", 2)))
    b = Surface(Diagram2.empty(), (atom_birth("B", 2), atom_birth("A", 1)))
    ka = surface_key(canonical_event_order(a))
    kb = surface_key(canonical_event_order(b))
    assert ka == kb
    # dependent events keep their order
    d0 = Diagram2.empty()
    s = Surface(d0, (atom_birth("A", 1),))
    d1 = bottom_slice(s)
    suc = dot_of(d1, "A", "suc")
    ant = dot_of(d1, "A", "ant")
    dd = d1.nodes[ant].ports[0]
    s2 = Surface(d0, (atom_birth("A", 1), bend_fold(1, dd, 2)))
    assert canonical_event_order(s2).events == s2.events
