"""Translate basis proofs into surfaces.

AXIOM and CUT are interpreted recursively: an axiom builds its formula
out of atom births, unit and connective pair creations, and bend
folds; a cut eliminates the same structure with the matching deaths,
collapses and unfolds, then fuses the two leftover root dots with one
coherent event.  Each core rule becomes exactly one coherent event
rewriting the blue tree near the root, and each negation rule becomes
one bend fold or unfold on the pivoting branch.

The compiler keeps a registry of top darts, one per formula occurrence
of the current conclusion, so every event site is located without
searching the slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagrams import (
    BEND, BLUE, Diagram2, blue, canonical_label, is_simple, iso_equal,
    match_subdiagram, sequent_diagram, sequent_to_diagram, signature,
)
from .formulas import (
    Atom, Formula, Par, Sequent, StarL, StarR, Tensor, UnitBot, UnitI,
)
from .proofs import (
    AXIOM, BASIS_RULES, CORE_RULES, CUT, PREMISE, Proof, uses_only,
    validate_proof,
)
from .surfaces import (
    STRIDE, ApplyInfo, Event, Surface, apply_event, atom_birth, atom_death,
    bend_fold, bend_unfold, coherent, extract_region, max_tag, pair_elim,
    pair_intro,
)


class CompileError(ValueError):
    pass


class _Tags:
    def __init__(self, start: int = 1):
        self.next = start

    def take(self) -> int:
        t = self.next
        self.next += 1
        return t


@dataclass
class _Part:
    """A compiled subproof: accumulated source, events, current slice,
    and the top darts of the conclusion's formula occurrences."""
    source: Diagram2
    events: list = field(default_factory=list)
    cur: Diagram2 = None
    ants: list[int] = field(default_factory=list)
    sucs: list[int] = field(default_factory=list)

    def emit(self, e: Event) -> ApplyInfo:
        self.cur, info = apply_event(self.cur, e)
        self.events.append(e)
        return info


def _merge(l: _Part, r: _Part) -> _Part:
    src = Diagram2({**l.source.nodes, **r.source.nodes},
                   {**l.source.pairing, **r.source.pairing},
                   l.source.boundary + r.source.boundary)
    cur = Diagram2({**l.cur.nodes, **r.cur.nodes},
                   {**l.cur.pairing, **r.cur.pairing},
                   l.cur.boundary + r.cur.boundary)
    return _Part(src, l.events + r.events, cur, [], [])


def _fresh_sequent_slice(seq: Sequent, tags: _Tags):
    sd = sequent_diagram(seq)
    base = tags.take() * STRIDE
    nmap = {n: base + n for n in sd.diagram.nodes}
    dmap = {d: base + d for d in sd.diagram.pairing}
    diag = sd.diagram.relabel(nmap, dmap)
    tops = {k: dmap[v] for k, v in sd.tops.items()}
    return diag, tops


def _subtree_tops(d: Diagram2, top: int, eff: str) -> tuple[int, int]:
    """Top darts of the two subtrees of a binary connective tree.

    ``top`` is the tree's principal dart.  Blue dots are shapeless, so
    the subtree ports are read cyclically from the entry; red dots have
    an intrinsic principal port which must be the entry.
    """
    o = d.owner(top)
    if o is None:
        raise CompileError("expected a connective node")
    nid, i = o
    node = d.nodes[nid]
    if node.degree() != 3:
        raise CompileError("expected a binary connective node")
    if node.kind[0] != BLUE and i != 0:
        raise CompileError("expected the principal port of a connective")
    nxt1 = d.pairing[node.ports[(i + 1) % 3]]
    nxt2 = d.pairing[node.ports[(i + 2) % 3]]
    if eff == "ant":
        return nxt1, nxt2
    return nxt2, nxt1


# ---------------------------------------------------------------------------
# axiom construction

def _build_axiom(part: _Part, f: Formula, tags: _Tags) -> tuple[int, int]:
    """Emit the events creating ``f |- f``; returns the top darts of
    the antecedent-form and succedent-form trees."""
    if isinstance(f, Atom):
        info = part.emit(atom_birth(f.name, tags.take()))
        na, ns = info.created_nodes
        return part.cur.nodes[na].ports[0], part.cur.nodes[ns].ports[0]
    if isinstance(f, (UnitI, UnitBot)):
        conn = "i" if isinstance(f, UnitI) else "bot"
        info = part.emit(pair_intro(conn, (), tags.take()))
        nl, nr = info.created_nodes
        return part.cur.nodes[nl].ports[0], part.cur.nodes[nr].ports[0]
    if isinstance(f, (Tensor, Par)):
        a_ant, _ = _build_axiom(part, f.left, tags)
        b_ant, _ = _build_axiom(part, f.right, tags)
        conn = "tensor" if isinstance(f, Tensor) else "par"
        info = part.emit(pair_intro(conn, (a_ant, b_ant), tags.take()))
        nw, ne = info.created_nodes
        west, east = part.cur.nodes[nw], part.cur.nodes[ne]
        if conn == "tensor":
            return west.ports[2], east.ports[0]
        return west.ports[0], east.ports[0]
    if isinstance(f, (StarR, StarL)):
        t_ant, _ = _build_axiom(part, f.inner, tags)
        orient = 1 if isinstance(f, StarR) else -1
        port = 0 if orient == 1 else 1
        info1 = part.emit(bend_fold(orient, t_ant, tags.take()))
        (b1,) = info1.created_nodes
        top1 = part.cur.nodes[b1].ports[port]
        info2 = part.emit(bend_fold(orient, top1, tags.take()))
        (b2,) = info2.created_nodes
        top2 = part.cur.nodes[b2].ports[port]
        return top1, top2
    raise CompileError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# cut elimination

def _eliminate(part: _Part, f: Formula, t_suc: int, t_ant: int, tags: _Tags) -> None:
    """Annihilate a succedent-form tree of f (top ``t_suc``) against an
    antecedent-form tree (top ``t_ant``), splicing the parent wires."""
    cur = part.cur
    if isinstance(f, Atom):
        part.emit(atom_death(f.name, cur.owner(t_suc)[0], cur.owner(t_ant)[0],
                             tags.take()))
        return
    if isinstance(f, UnitI):
        part.emit(pair_elim("i", cur.owner(t_suc)[0], cur.owner(t_ant)[0],
                            tags.take()))
        return
    if isinstance(f, UnitBot):
        part.emit(pair_elim("bot", cur.owner(t_ant)[0], cur.owner(t_suc)[0],
                            tags.take()))
        return
    if isinstance(f, (Tensor, Par)):
        la, lb = _subtree_tops(cur, t_suc, "suc")
        ra, rb = _subtree_tops(cur, t_ant, "ant")
        if isinstance(f, Tensor):
            red_node, blue_node = cur.owner(t_suc)[0], cur.owner(t_ant)[0]
            conn = "tensor"
        else:
            red_node, blue_node = cur.owner(t_ant)[0], cur.owner(t_suc)[0]
            conn = "par"
        _eliminate(part, f.left, la, ra, tags)
        _eliminate(part, f.right, lb, rb, tags)
        part.emit(pair_elim(conn, red_node, blue_node, tags.take()))
        return
    if isinstance(f, (StarR, StarL)):
        port = 0 if isinstance(f, StarR) else 1
        inner_l = _unfold_bend(part, t_suc, port, tags)
        inner_r = _unfold_bend(part, t_ant, port, tags)
        # the half-turn swaps the roles of the two sides
        _eliminate(part, f.inner, inner_r, inner_l, tags)
        return
    raise CompileError(f"not a formula: {f!r}")


def _unfold_bend(part: _Part, top: int, port: int, tags: _Tags) -> int:
    o = part.cur.owner(top)
    if o is None or part.cur.nodes[o[0]].kind[0] != BEND:
        raise CompileError("cut formula mismatch: expected a bend")
    nid, i = o
    if i != port:
        raise CompileError("cut formula mismatch: wrong bend orientation")
    inner = part.cur.pairing[part.cur.nodes[nid].ports[1 - port]]
    part.emit(bend_unfold(nid, tags.take()))
    return inner


def _fuse_roots(part: _Part, x: int, y: int, tags: _Tags) -> None:
    """After a cut splice, contract the wire between the two leftover
    root dots into the conclusion's single root (one coherent event)."""
    cur = part.cur
    ox, oy = cur.owner(x), cur.owner(y)
    if ox is None or oy is None:
        return
    nx, ny = ox[0], oy[0]
    if cur.nodes[nx].kind[0] != BLUE or cur.nodes[ny].kind[0] != BLUE or nx == ny:
        return
    px, py = cur.nodes[nx].ports, cur.nodes[ny].ports
    ix, iy = ox[1], oy[1]
    outer_l = [cur.pairing[px[(ix + k) % len(px)]] for k in range(1, len(px))]
    outer_r = [cur.pairing[py[(iy + k) % len(py)]] for k in range(1, len(py))]
    outer = tuple(outer_l + outer_r)
    if not outer:
        raise CompileError("cut would close the diagram into a blue bubble")
    region, _ = extract_region(cur, outer)
    pattern, _, _ = canonical_label(region)
    k = len(outer)
    if k >= 3:
        ports = tuple(range(k, 2 * k))
        pairing = {}
        for j in range(k):
            pairing[j] = k + j
            pairing[k + j] = j
        repl = Diagram2({0: blue(ports)}, pairing, tuple(range(k)))
    elif k == 2:
        repl = Diagram2({}, {0: 1, 1: 0}, (0, 1))
    else:
        repl = Diagram2({0: blue((1,))}, {0: 1, 1: 0}, (0,))
    if signature(region) == signature(repl):
        return
    part.emit(coherent(pattern, repl, outer, tags.take()))


def _cut(part: _Part, f: Formula, t_suc: int, t_ant: int, tags: _Tags) -> None:
    parent_l = part.cur.pairing[t_suc]
    parent_r = part.cur.pairing[t_ant]
    _eliminate(part, f, t_suc, t_ant, tags)
    if part.cur.pairing.get(parent_l) != parent_r:
        raise CompileError("cut elimination did not splice the roots")
    _fuse_roots(part, parent_l, parent_r, tags)


# ---------------------------------------------------------------------------
# core rules as single coherent events

def _core_coherent(part: _Part, rule: str, i: int,
                   conclusion: Sequent, tags: _Tags) -> None:
    cur = part.cur
    cd = sequent_diagram(conclusion)
    cm, cn = len(conclusion.antecedent), len(conclusion.succedent)
    c_ants = [cd.tops[("ant", k)] for k in range(cm)]
    c_sucs = [cd.tops[("suc", k)] for k in range(cn)]

    # slots: parallel lists of premise-side cut darts, conclusion-side cut
    # darts, and the new registry built from preserved darts ("site") or
    # replacement darts ("q", dart in the conclusion diagram).
    prem_cuts: list[int] = []
    concl_cuts: list[int] = []
    new_ants: list = []
    new_sucs: list = []

    def keep(side_list, new_list, prem_dart, concl_dart):
        side_list.append(prem_dart)
        concl_cuts.append(concl_dart)
        new_list.append(("site", prem_dart))

    if rule in ("tensor-l-intro", "par-r-intro"):
        side = "ant" if rule.startswith("tensor") else "suc"
        regs = part.ants if side == "ant" else part.sucs
        c_tops = c_ants if side == "ant" else c_sucs
        news = new_ants if side == "ant" else new_sucs
        sa, sb = _subtree_tops(cd.diagram, c_tops[i], side)
        for k, top in enumerate(regs):
            if k == i:
                prem_cuts.extend((regs[i], regs[i + 1]))
                concl_cuts.extend((sa, sb))
                news.append(("q", c_tops[i]))
            elif k == i + 1:
                continue
            else:
                prem_cuts.append(top)
                concl_cuts.append(c_tops[k if k < i else k - 1])
                news.append(("site", top))
        other = new_sucs if side == "ant" else new_ants
        others = part.sucs if side == "ant" else part.ants
        c_others = c_sucs if side == "ant" else c_ants
        for k, top in enumerate(others):
            prem_cuts.append(top)
            concl_cuts.append(c_others[k])
            other.append(("site", top))
    elif rule in ("tensor-l-elim", "par-r-elim"):
        side = "ant" if rule.startswith("tensor") else "suc"
        regs = part.ants if side == "ant" else part.sucs
        c_tops = c_ants if side == "ant" else c_sucs
        news = new_ants if side == "ant" else new_sucs
        pa, pb = _subtree_tops(cur, regs[i], side)
        for k, top in enumerate(regs):
            if k == i:
                prem_cuts.extend((pa, pb))
                concl_cuts.extend((c_tops[i], c_tops[i + 1]))
                news.extend((("site", pa), ("site", pb)))
            else:
                prem_cuts.append(top)
                concl_cuts.append(c_tops[k if k < i else k + 1])
                news.append(("site", top))
        other = new_sucs if side == "ant" else new_ants
        others = part.sucs if side == "ant" else part.ants
        c_others = c_sucs if side == "ant" else c_ants
        for k, top in enumerate(others):
            prem_cuts.append(top)
            concl_cuts.append(c_others[k])
            other.append(("site", top))
    elif rule in ("i-l-intro", "bot-r-intro"):
        side = "ant" if rule.startswith("i-") else "suc"
        regs = part.ants if side == "ant" else part.sucs
        c_tops = c_ants if side == "ant" else c_sucs
        news = new_ants if side == "ant" else new_sucs
        for k, top in enumerate(regs):
            kk = k if k < i else k + 1
            keep(prem_cuts, news, top, c_tops[kk])
        news.insert(i, ("q", c_tops[i]))
        other = new_sucs if side == "ant" else new_ants
        others = part.sucs if side == "ant" else part.ants
        c_others = c_sucs if side == "ant" else c_ants
        for k, top in enumerate(others):
            keep(prem_cuts, other, top, c_others[k])
    elif rule in ("i-l-elim", "bot-r-elim"):
        side = "ant" if rule.startswith("i-") else "suc"
        regs = part.ants if side == "ant" else part.sucs
        c_tops = c_ants if side == "ant" else c_sucs
        news = new_ants if side == "ant" else new_sucs
        for k, top in enumerate(regs):
            if k == i:
                continue  # the unit cap joins the rewritten region
            keep(prem_cuts, news, top, c_tops[k if k < i else k - 1])
        other = new_sucs if side == "ant" else new_ants
        others = part.sucs if side == "ant" else part.ants
        c_others = c_sucs if side == "ant" else c_ants
        for k, top in enumerate(others):
            keep(prem_cuts, other, top, c_others[k])
    else:
        raise CompileError(f"not a core rule: {rule}")

    if not prem_cuts:
        raise CompileError(f"{rule}: rule application on a closed slice region")

    p_region, _ = extract_region(cur, tuple(prem_cuts))
    q_region, _ = extract_region(cd.diagram, tuple(concl_cuts))
    pattern, _, p_dmap = canonical_label(p_region)
    repl, _, q_dmap = canonical_label(q_region)
    if not is_simple(pattern) or not is_simple(repl):
        raise CompileError(f"{rule}: rewritten region is not simple")
    if signature(p_region) == signature(q_region):
        # vacuous rewrite (the overloaded blue dot): no event; replacement
        # darts correspond to premise darts through the canonical forms
        info = None
        inv_p = {v: k for k, v in p_dmap.items()}
        image = {v: inv_p[v] for v in q_dmap.values() if v in inv_p}
    else:
        info = part.emit(coherent(pattern, repl, tuple(prem_cuts), tags.take()))
        image = dict(info.dart_image)

    def resolve(slot):
        if slot[0] == "site":
            return slot[1]
        return image[q_dmap[slot[1]]]

    part.ants = [resolve(s) for s in new_ants]
    part.sucs = [resolve(s) for s in new_sucs]


# ---------------------------------------------------------------------------
# negation rules

_N_SPEC = {
    # rule: (side, end index, orient); elim reverses the intro
    "n1": ("suc", -1, 1, "ant", "append"),
    "n2": ("ant", 0, 1, "suc", "prepend"),
    "n3": ("suc", 0, -1, "ant", "prepend"),
    "n4": ("ant", -1, -1, "suc", "append"),
}


def _n_rule(part: _Part, rule: str, tags: _Tags) -> None:
    fam, direction = rule.split("-")
    side, idx, orient, to_side, place = _N_SPEC[fam]
    port = 0 if orient == 1 else 1
    if direction == "intro":
        src = part.sucs if side == "suc" else part.ants
        dst = part.ants if to_side == "ant" else part.sucs
        top = src[idx]
        d = part.cur.pairing[top]
        info = part.emit(bend_fold(orient, d, tags.take()))
        (bnode,) = info.created_nodes
        new_top = part.cur.nodes[bnode].ports[port]
        src.pop(idx)
        dst.append(new_top) if place == "append" else dst.insert(0, new_top)
    else:
        # elim undoes the intro: the starred occurrence sits at the end the
        # intro put it on, and moves back
        src = part.ants if to_side == "ant" else part.sucs
        dst = part.sucs if side == "suc" else part.ants
        pos = -1 if place == "append" else 0
        top = src[pos]
        inner = _unfold_bend(part, top, port, tags)
        src.pop(pos)
        if idx == -1:
            dst.append(inner)
        else:
            dst.insert(0, inner)


# ---------------------------------------------------------------------------
# entry points

def _compile(p: Proof, tags: _Tags) -> _Part:
    if p.rule == PREMISE:
        diag, tops = _fresh_sequent_slice(p.conclusion, tags)
        m, n = len(p.conclusion.antecedent), len(p.conclusion.succedent)
        return _Part(diag, [], diag,
                     [tops[("ant", k)] for k in range(m)],
                     [tops[("suc", k)] for k in range(n)])
    if p.rule == AXIOM:
        part = _Part(Diagram2.empty(), [], Diagram2.empty(), [], [])
        t_ant, t_suc = _build_axiom(part, p.args[0], tags)
        part.ants, part.sucs = [t_ant], [t_suc]
        return part
    if p.rule == CUT:
        l = _compile(p.premises[0], tags)
        r = _compile(p.premises[1], tags)
        part = _merge(l, r)
        _cut(part, p.args[0], l.sucs[0], r.ants[0], tags)
        part.ants, part.sucs = l.ants, r.sucs
        return part
    if p.rule in CORE_RULES:
        part = _compile(p.premises[0], tags)
        _core_coherent(part, p.rule, p.args[0], p.conclusion, tags)
        return part
    if p.rule.startswith("n") and p.rule in BASIS_RULES:
        part = _compile(p.premises[0], tags)
        _n_rule(part, p.rule, tags)
        return part
    raise CompileError(f"not a basis rule: {p.rule} (run expand_derived first)")


def compile_proof(p: Proof) -> Surface:
    """Compile a validated basis proof into a surface.

    The top boundary is the juxtaposition of the open premise slices;
    the bottom slice equals the conclusion's sequent diagram.
    """
    diags = validate_proof(p)
    if diags:
        raise CompileError("invalid proof: " + "; ".join(diags))
    if not uses_only(p, BASIS_RULES):
        raise CompileError("proof uses derived rules; run expand_derived first")
    part = _compile(p, _Tags())
    expected = sequent_to_diagram(p.conclusion)
    if not iso_equal(part.cur, expected):
        raise CompileError("internal error: bottom slice does not match the conclusion")
    return Surface(part.source, tuple(part.events))


def axiom_surface(f: Formula) -> Surface:
    """The surface of the identity proof ``f |- f`` built from nothing."""
    part = _Part(Diagram2.empty(), [], Diagram2.empty(), [], [])
    _build_axiom(part, f, _Tags())
    return Surface(part.source, tuple(part.events))


def _tree_pattern(f: Formula, eff: str) -> tuple[Diagram2, int]:
    """The formula tree alone, with one stub where its root wire leaves."""
    sd = sequent_diagram(Sequent((), (f,)) if eff == "suc" else Sequent((f,), ()))
    d = sd.diagram
    cap = [nid for nid, n in d.nodes.items() if n.kind == (BLUE,) and n.degree() == 1]
    # the root cap is the blue degree-1 node that is not a unit leaf
    unit_leaves = set(sd.leaves.values())
    (root,) = [nid for nid in cap if nid not in unit_leaves]
    stub = d.nodes[root].ports[0]
    nodes = {nid: n for nid, n in d.nodes.items() if nid != root}
    pat = Diagram2(nodes, d.pairing, (stub,), check=False)
    return pat, stub


def cut_surface(f: Formula, left: Surface, right: Surface) -> Surface:
    """Cut two surfaces along a formula.

    The left surface must end in ``Gamma |- f`` and the right one in
    ``f |- Delta``; the formula trees are located in the bottom slices,
    eliminated recursively, and the roots fused.
    """
    from .surfaces import bottom_slice, juxtapose

    j = juxtapose(left, right)
    bottom = bottom_slice(j)
    # juxtapose keeps the left side's ids, so the left's bottom nodes
    # identify the left half of the combined slice
    left_only = set(bottom_slice(left).nodes)
    pat_s, stub_s = _tree_pattern(f, "suc")
    pat_a, stub_a = _tree_pattern(f, "ant")
    t_suc = _locate(bottom, pat_s, stub_s, left_only)
    t_ant = _locate(bottom, pat_a, stub_a, set(bottom.nodes) - left_only)
    if t_suc is None or t_ant is None:
        raise CompileError("cut-formula mismatch")
    part = _Part(j.source, list(j.events), bottom, [], [])
    _cut(part, f, t_suc, t_ant, _Tags(max_tag(j) + 1))
    return Surface(part.source, tuple(part.events))


def _locate(bottom: Diagram2, pattern: Diagram2, stub: int, allowed: set[int]):
    matches = match_subdiagram(bottom, pattern)
    best = None
    for m in matches:
        if m["nodes"] and not set(m["nodes"].values()) <= allowed:
            continue
        # the tree top dart: the image of the dart paired to the stub
        top = m["darts"].get(pattern.pairing[stub])
        if top is None:
            # wire-only pattern: cannot happen, trees have nodes
            continue
        key = tuple(sorted(m["nodes"].values()))
        if best is None or key < best[0]:
            best = (key, top)
    return None if best is None else best[1]


def _compile_with_regs(p: Proof) -> tuple[Surface, list[int], list[int]]:
    part = _compile(p, _Tags())
    return Surface(part.source, tuple(part.events)), part.ants, part.sucs
