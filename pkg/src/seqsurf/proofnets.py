"""Projection of surfaces to proof nets.

The proof net is the 2d shadow of a closed surface: the conclusion's
formula forest, axiom links pairing the atom leaves that were born
together, and one attachment record per unit occurrence carrying the
wire it hangs on in the conclusion diagram and the slice height at
which it appeared.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .diagrams import (
    BLACK, BLUE, RED, Diagram2, canonical_label, sequent_diagram, signature,
)
from .formulas import Sequent, print_formula, print_sequent
from .surfaces import ATOM_BIRTH, Surface, apply_event


class ProjectionError(ValueError):
    pass


@dataclass(frozen=True)
class ProofNet:
    conclusion: Sequent
    # unordered pairs of occurrence paths, e.g. (("ant", 0), ("suc", 1, "l"))
    links: tuple[frozenset, ...]
    # (occurrence path, anchor edge as canonical dart pair, birth height)
    units: tuple[tuple[tuple, tuple[int, int], int], ...]


def project(s: Surface, conclusion: Sequent) -> ProofNet:
    """Trace births through the surface to the conclusion diagram."""
    if not s.source.is_empty():
        raise ProjectionError("open boundary: the surface is not a closed proof")
    slices = [s.source]
    born_at: dict[int, int] = {}
    cur = s.source
    for k, e in enumerate(s.events):
        cur, info = apply_event(cur, e)
        slices.append(cur)
        for n in info.created_nodes:
            born_at[n] = k + 1
    bottom = cur

    ref = sequent_diagram(conclusion)
    if signature(bottom) != signature(ref.diagram):
        raise ProjectionError("bottom slice does not match the stated conclusion")
    _, bn, bd = canonical_label(bottom)
    _, rn, rd = canonical_label(ref.diagram)
    inv_rn = {v: k for k, v in rn.items()}
    to_ref = {nid: inv_rn[bn[nid]] for nid in bottom.nodes}
    path_of = {nid: p for p, nid in ref.leaves.items()}

    # the black lines: birth arcs joined at death arcs; each surviving
    # line ends in exactly two endpoints of the bottom slice
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    cur2 = s.source
    for e in s.events:
        cur2, info = apply_event(cur2, e)
        if e.kind == ATOM_BIRTH:
            a, b = info.created_nodes
            union(a, b)
        elif e.kind == "atom-death":
            union(e.site[0], e.site[1])

    lines: dict[int, list[int]] = {}
    for nid in bottom.nodes:
        if bottom.nodes[nid].kind[0] == BLACK:
            lines.setdefault(find(nid), []).append(nid)
    links = []
    for endpoints in lines.values():
        if len(endpoints) != 2:
            raise ProjectionError("a black line does not end in an axiom pair")
        links.append(frozenset(path_of[to_ref[n]] for n in endpoints))

    atoms = {p for p, nid in ref.leaves.items()
             if ref.diagram.nodes[nid].kind[0] == BLACK}
    linked = set()
    for pair in links:
        linked |= pair
    if linked != atoms:
        raise ProjectionError("axiom links do not cover the atom leaves")

    units = []
    for nid, node in sorted(bottom.nodes.items()):
        is_unit = (node.kind[0] == BLUE and node.degree() == 1) or \
                  (node.kind[0] == RED and node.kind[1] in ("i", "bot"))
        if not is_unit:
            continue
        path = path_of[to_ref[nid]]
        d = node.ports[0]
        anchor = tuple(sorted((bd[d], bd[bottom.pairing[d]])))
        units.append((path, anchor, born_at.get(nid, 0)))
    units.sort()

    return ProofNet(conclusion, tuple(sorted(links, key=sorted)), tuple(units))


def _created(slice_before: Diagram2, e) -> tuple[int, ...]:
    _, info = apply_event(slice_before, e)
    return info.created_nodes


def _fmt_path(p: tuple) -> str:
    return "/".join(str(x) for x in p)


def emit_net(n: ProofNet, fmt: str = "dot") -> str:
    """Serialize a proof net: 'dot' graph text or 'json' data."""
    if fmt == "json":
        return json.dumps({
            "conclusion": print_sequent(n.conclusion),
            "links": sorted(sorted(_fmt_path(p) for p in pair) for pair in n.links),
            "units": [{"occurrence": _fmt_path(p), "anchor": list(a), "height": h}
                      for p, a, h in n.units],
        }, indent=2, sort_keys=True) + "\n"
    if fmt != "dot":
        raise ProjectionError(f"unknown format {fmt!r}")
    ref = sequent_diagram(n.conclusion)
    lines = ["graph proofnet {"]
    for path, nid in sorted(ref.leaves.items()):
        kind = ref.diagram.nodes[nid].kind
        if kind[0] == BLACK:
            label = f"{kind[1]}:{kind[2]}"
        elif kind[0] == RED:
            label = {"i": "I", "bot": "bot"}[kind[1]]
        else:
            label = "unit"
        lines.append(f'  "{_fmt_path(path)}" [label="{label}"];')
    for pair in sorted(n.links, key=sorted):
        a, b = sorted(pair)
        lines.append(f'  "{_fmt_path(a)}" -- "{_fmt_path(b)}" [style=solid];')
    for path, anchor, height in n.units:
        lines.append(
            f'  "{_fmt_path(path)}" -- "edge{anchor[0]}_{anchor[1]}"'
            f' [style=dotted, label="h={height}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
