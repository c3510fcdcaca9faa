"""Planar port graphs: the 2d string-diagram model for sequent slices.

A diagram is a set of nodes with cyclically ordered ports (a rotation
system), a perfect matching on darts (half-edges), and an ordered list
of boundary stubs.  Every dart is either one of a node's ports or a
boundary stub, and every dart is paired with exactly one partner; an
edge whose two darts are both stubs is a bare through-wire.

Node kinds:

* ``("blue",)`` -- structural dots (commas, tensor-left, par-right,
  unit caps on their natural side).  Blue dots are shapeless: only the
  degree and the cyclic order of their ports matter.  Degree-2 blue
  dots are identity wires and are never stored.
* ``("red", conn)`` with conn in {"tensor", "par", "i", "bot"} -- the
  connective seen from its unnatural side.  ``ports[0]`` is the
  principal port (the port on the connective's own wire).
* ``("black", name, pol)`` with pol in {"ant", "suc"} -- an atomic
  variable endpoint; exactly one port.
* ``("bend",)`` -- a half-turn; ``ports = (p_in, p_out)`` and
  traversing in -> out winds by +1 (the right-star direction).

Port lists are in counterclockwise order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .formulas import (
    Atom, Formula, Par, Sequent, StarL, StarR, Tensor, UnitBot, UnitI,
)

BLUE = "blue"
RED = "red"
BLACK = "black"
BEND = "bend"

RED_CONNS = ("tensor", "par", "i", "bot")


@dataclass(frozen=True)
class Node:
    kind: tuple
    ports: tuple[int, ...]

    def degree(self) -> int:
        return len(self.ports)


def blue(ports: Iterable[int]) -> Node:
    return Node((BLUE,), tuple(ports))


def red(conn: str, ports: Iterable[int]) -> Node:
    if conn not in RED_CONNS:
        raise ValueError(f"bad red connective {conn!r}")
    return Node((RED, conn), tuple(ports))


def black(name: str, pol: str, port: int) -> Node:
    if pol not in ("ant", "suc"):
        raise ValueError(f"bad polarity {pol!r}")
    return Node((BLACK, name, pol), (port,))


def bend(p_in: int, p_out: int) -> Node:
    return Node((BEND,), (p_in, p_out))


class DiagramError(ValueError):
    pass


class Diagram2:
    """Immutable planar port graph.  Use :meth:`replace` for edits."""

    __slots__ = ("nodes", "pairing", "boundary", "_owner", "_faces", "_canon", "_sig")

    def __init__(self, nodes: dict[int, Node], pairing: dict[int, int],
                 boundary: tuple[int, ...] = (), check: bool = True,
                 planar: bool | None = None):
        object.__setattr__(self, "nodes", dict(nodes))
        object.__setattr__(self, "pairing", dict(pairing))
        object.__setattr__(self, "boundary", tuple(boundary))
        object.__setattr__(self, "_owner", None)
        object.__setattr__(self, "_faces", None)
        object.__setattr__(self, "_canon", None)
        object.__setattr__(self, "_sig", None)
        if check:
            self.check(planar=check if planar is None else planar)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Diagram2 is immutable")

    @staticmethod
    def empty() -> "Diagram2":
        return Diagram2({}, {}, ())

    # -- basic views --------------------------------------------------

    def darts(self) -> Iterator[int]:
        for n in self.nodes.values():
            yield from n.ports
        yield from self.boundary

    def edges(self) -> set[frozenset[int]]:
        return {frozenset((a, b)) for a, b in self.pairing.items()}

    def owner(self, d: int) -> Optional[tuple[int, int]]:
        """(node id, port index) of a dart, or None for a boundary stub."""
        o = self._owner_map()
        return o.get(d)

    def _owner_map(self) -> dict[int, tuple[int, int]]:
        if self._owner is None:
            m: dict[int, tuple[int, int]] = {}
            for nid, n in self.nodes.items():
                for i, d in enumerate(n.ports):
                    m[d] = (nid, i)
            object.__setattr__(self, "_owner", m)
        return self._owner

    def is_empty(self) -> bool:
        return not self.nodes and not self.boundary

    # -- validity -----------------------------------------------------

    def check(self, planar: bool = True) -> None:
        seen: set[int] = set()
        for nid, n in self.nodes.items():
            k = n.kind[0]
            if k == BLACK and n.degree() != 1:
                raise DiagramError(f"black node {nid} must have 1 port")
            if k == BEND and n.degree() != 2:
                raise DiagramError(f"bend node {nid} must have 2 ports")
            if k == BLUE and n.degree() in (0, 2):
                raise DiagramError(f"blue node {nid} has degree {n.degree()}")
            if k == RED:
                want = 3 if n.kind[1] in ("tensor", "par") else 1
                if n.degree() != want:
                    raise DiagramError(f"red {n.kind[1]} node {nid} must have {want} ports")
            for d in n.ports:
                if d in seen:
                    raise DiagramError(f"dart {d} used twice")
                seen.add(d)
        for d in self.boundary:
            if d in seen:
                raise DiagramError(f"boundary dart {d} also at a node")
            seen.add(d)
        for a, b in self.pairing.items():
            if self.pairing.get(b) != a or a == b:
                raise DiagramError(f"pairing is not an involution at {a}")
            if a not in seen or b not in seen:
                raise DiagramError(f"pairing of unknown dart {a}")
        unpaired = seen - set(self.pairing)
        if unpaired:
            raise DiagramError(f"unpaired darts {sorted(unpaired)}")
        if planar:
            self._check_euler()

    def _check_euler(self) -> None:
        for comp in self.components():
            nodes, stubs = comp
            v = len(nodes) + (1 if stubs else 0)
            comp_darts = set()
            for nid in nodes:
                comp_darts.update(self.nodes[nid].ports)
            comp_darts.update(stubs)
            e = len(comp_darts) // 2
            f = len(_face_orbits_restricted(self, comp_darts, stubs))
            if v - e + f != 2:
                raise DiagramError(f"rotation system is not planar (v-e+f = {v - e + f})")

    def check_component_planar(self, seed_dart: int) -> None:
        """Euler check on the component containing one dart."""
        owner = self._owner_map()
        comp_darts: set[int] = set()
        stack = [seed_dart]
        while stack:
            x = stack.pop()
            if x in comp_darts:
                continue
            comp_darts.add(x)
            stack.append(self.pairing[x])
            o = owner.get(x)
            if o is not None:
                stack.extend(self.nodes[o[0]].ports)
        nodes = {owner[x][0] for x in comp_darts if x in owner}
        stubs = tuple(d for d in self.boundary if d in comp_darts)
        v = len(nodes) + (1 if stubs else 0)
        e = len(comp_darts) // 2
        f = len(_face_orbits_restricted(self, comp_darts, stubs))
        if v - e + f != 2:
            raise DiagramError(f"rotation system is not planar (v-e+f = {v - e + f})")

    # -- topology -----------------------------------------------------

    def components(self) -> list[tuple[set[int], tuple[int, ...]]]:
        """Connected components as (node id set, boundary stubs in order)."""
        owner = self._owner_map()
        comp_of_dart: dict[int, int] = {}
        comps: list[set[int]] = []  # dart sets
        for d in self.pairing:
            if d in comp_of_dart:
                continue
            idx = len(comps)
            stack, dartset = [d], set()
            while stack:
                x = stack.pop()
                if x in dartset:
                    continue
                dartset.add(x)
                comp_of_dart[x] = idx
                stack.append(self.pairing[x])
                o = owner.get(x)
                if o is not None:
                    stack.extend(self.nodes[o[0]].ports)
            comps.append(dartset)
        out = []
        for dartset in comps:
            nids = {owner[d][0] for d in dartset if d in owner}
            stubs = tuple(d for d in self.boundary if d in dartset)
            out.append((nids, stubs))
        return out

    def faces(self) -> list[tuple[int, ...]]:
        """Face orbits of the rotation system (boundary closed off)."""
        if self._faces is None:
            all_darts = set(self.darts())
            object.__setattr__(self, "_faces",
                               _face_orbits_restricted(self, all_darts, self.boundary))
        return self._faces

    def face_of(self, d: int) -> tuple[int, ...]:
        for orbit in self.faces():
            if d in orbit:
                return orbit
        raise DiagramError(f"unknown dart {d}")

    def same_face(self, d1: int, d2: int) -> bool:
        return d2 in self.face_of(d1)

    def corner_face(self, nid: int) -> tuple[int, ...]:
        """The face a degree-1 node opens into."""
        n = self.nodes[nid]
        if n.degree() != 1:
            raise DiagramError(f"node {nid} is not a cap")
        return self.face_of(n.ports[0])

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_acyclic(self) -> bool:
        # Treat stubs as leaf vertices; forest iff e = v - c over each part.
        comps = self.components()
        for nodes, stubs in comps:
            comp_darts = set(stubs)
            for nid in nodes:
                comp_darts.update(self.nodes[nid].ports)
            v = len(nodes) + len(stubs)
            e = len(comp_darts) // 2
            if e != v - 1 and not (v == 0 and e == 0):
                return False
        return True

    # -- edits (copy on write) ------------------------------------------

    def replace(self, *, add_nodes: dict[int, Node] | None = None,
                del_nodes: Iterable[int] = (),
                pair: Iterable[tuple[int, int]] = (),
                unpair: Iterable[int] = (),
                boundary: tuple[int, ...] | None = None,
                check: bool = True) -> "Diagram2":
        nodes = dict(self.nodes)
        for nid in del_nodes:
            del nodes[nid]
        if add_nodes:
            for nid, n in add_nodes.items():
                if nid in nodes:
                    raise DiagramError(f"node id {nid} already present")
                nodes[nid] = n
        pairing = dict(self.pairing)
        for d in unpair:
            other = pairing.pop(d, None)
            if other is not None:
                pairing.pop(other, None)
        for a, b in pair:
            pairing[a] = b
            pairing[b] = a
        # structural checks on every edit; the planarity invariant is
        # asserted at validation boundaries (see validate_surface)
        return Diagram2(nodes, pairing,
                        self.boundary if boundary is None else boundary,
                        check=check, planar=False)

    def relabel(self, node_map: dict[int, int], dart_map: dict[int, int]) -> "Diagram2":
        nodes = {node_map[nid]: Node(n.kind, tuple(dart_map[d] for d in n.ports))
                 for nid, n in self.nodes.items()}
        pairing = {dart_map[a]: dart_map[b] for a, b in self.pairing.items()}
        boundary = tuple(dart_map[d] for d in self.boundary)
        return Diagram2(nodes, pairing, boundary, check=False)


def _face_orbits_restricted(d: Diagram2, darts: set[int], stubs: tuple[int, ...]):
    """Face orbits over a dart set, closing the listed stubs with a
    virtual outside vertex (rotation: reversed stub order)."""
    owner = d._owner_map()
    stub_list = list(stubs)
    rev = list(reversed(stub_list))

    def sigma(x: int) -> int:
        o = owner.get(x)
        if o is None:
            i = rev.index(x)
            return rev[(i + 1) % len(rev)]
        nid, i = o
        ports = d.nodes[nid].ports
        return ports[(i + 1) % len(ports)]

    orbits = []
    left = set(darts)
    while left:
        start = min(left)
        orbit = []
        x = start
        while True:
            orbit.append(x)
            left.discard(x)
            x = sigma(d.pairing[x])
            if x == start:
                break
        orbits.append(tuple(orbit))
    return orbits


# ---------------------------------------------------------------------------
# canonical labeling

def _kind_token(n: Node, entry: int) -> tuple:
    k = n.kind[0]
    if k == BLUE:
        return (BLUE, n.degree())
    if k == RED:
        prin = (0 - entry) % n.degree()
        return (RED, n.kind[1], prin)
    if k == BLACK:
        return (BLACK, n.kind[1], n.kind[2])
    if k == BEND:
        return (BEND, entry)  # 0 = entered at the in port
    raise DiagramError(f"bad kind {n.kind}")


def _encode_component(d: Diagram2, start: int, bpos: dict[int, int],
                      closed_start: bool = False):
    """Encode the component reachable from node dart ``start``.

    Returns (tokens, node order, dart order).  Tokens are comparable
    tuples; two starts give equal tokens iff there is an isomorphism of
    embedded port graphs matching them.  For a closed component the
    start dart's own edge is unexplored, so it is followed as well.
    """
    owner = d._owner_map()
    num: dict[int, int] = {}
    entry_of: dict[int, int] = {}
    node_order: list[int] = []
    dart_order: list[int] = []
    tokens: list[tuple] = []

    def visit(dd: int, include_entry_edge: bool = False):
        nid, i = owner[dd]
        if nid in num:
            rel = (i - entry_of[nid]) % d.nodes[nid].degree()
            tokens.append(("ref", num[nid], rel))
            return
        num[nid] = len(num)
        entry_of[nid] = i
        node_order.append(nid)
        n = d.nodes[nid]
        tokens.append(("node",) + _kind_token(n, i))
        deg = n.degree()
        for k in range(deg):
            dart_order.append(n.ports[(i + k) % deg])
        follow = []
        lo = 0 if include_entry_edge else 1
        for k in range(lo, deg):
            dd2 = n.ports[(i + k) % deg]
            partner = d.pairing[dd2]
            if partner in bpos:
                tokens.append(("bnd", bpos[partner]))
            else:
                follow.append(partner)
                tokens.append(("go",))
        for partner in follow:
            visit(partner)

    visit(start, include_entry_edge=closed_start)
    return tuple(tokens), node_order, dart_order


def canonical_label(d: Diagram2) -> tuple["Diagram2", dict[int, int], dict[int, int]]:
    """Relabel ids by a deterministic traversal.

    Two diagrams are isomorphic as embedded planar port graphs (with
    the same boundary order) iff their canonical forms are structurally
    identical.  Returns (canonical diagram, node map, dart map).
    """
    if d._canon is not None:
        return d._canon
    owner = d._owner_map()
    bpos = {dd: i for i, dd in enumerate(d.boundary)}
    comps = d.components()

    encoded = []
    for nodes, stubs in comps:
        if not nodes:
            # bare through-wire(s)
            for s in stubs:
                p = d.pairing[s]
                if bpos[s] < bpos[p]:
                    encoded.append((("wire", bpos[s], bpos[p]), [], [], stubs))
            continue
        if stubs:
            start = d.pairing[stubs[0]]
            toks, norder, dorder = _encode_component(d, start, bpos)
            encoded.append((toks, norder, dorder, stubs))
        else:
            best = None
            for nid in nodes:
                for dd in d.nodes[nid].ports:
                    toks, norder, dorder = _encode_component(d, dd, bpos, closed_start=True)
                    if best is None or toks < best[0]:
                        best = (toks, norder, dorder, ())
            assert best is not None
            encoded.append(best)

    def comp_key(item):
        toks, _, _, stubs = item
        if stubs:
            return (0, bpos[stubs[0]])
        return (1, toks)

    encoded.sort(key=comp_key)

    node_map: dict[int, int] = {}
    dart_map: dict[int, int] = {}
    for toks, norder, dorder, stubs in encoded:
        for nid in norder:
            node_map[nid] = len(node_map)
        for dd in dorder:
            dart_map[dd] = len(dart_map)
    base = len(dart_map)
    for i, s in enumerate(d.boundary):
        dart_map[s] = base + i

    result = (d.relabel(node_map, dart_map), node_map, dart_map)
    object.__setattr__(d, "_canon", result)
    return result


def signature(d: Diagram2) -> tuple:
    """Hashable canonical signature; equal iff diagrams are isomorphic."""
    if d._sig is not None:
        return d._sig
    bpos = {dd: i for i, dd in enumerate(d.boundary)}
    parts = []
    for nodes, stubs in d.components():
        if not nodes:
            for s in stubs:
                p = d.pairing[s]
                if bpos[s] < bpos[p]:
                    parts.append((("wire", bpos[s], bpos[p]), 0))
            continue
        if stubs:
            toks, _, _ = _encode_component(d, d.pairing[stubs[0]], bpos)
            parts.append((toks, bpos[stubs[0]]))
        else:
            toks = min(_encode_component(d, dd, bpos, closed_start=True)[0]
                       for nid in nodes for dd in d.nodes[nid].ports)
            parts.append((toks, -1))
    open_parts = sorted(p for p in parts if p[1] >= 0)
    closed = sorted(p[0] for p in parts if p[1] < 0)
    result = (tuple(open_parts), tuple(closed), len(d.boundary))
    object.__setattr__(d, "_sig", result)
    return result


def iso_equal(a: Diagram2, b: Diagram2) -> bool:
    return signature(a) == signature(b)


# ---------------------------------------------------------------------------
# simplicity and interface

def is_simple(d: Diagram2) -> bool:
    """Connected, acyclic, nonempty boundary, and blue-only."""
    if not d.boundary:
        return False
    if not d.is_connected() or not d.is_acyclic():
        return False
    return all(n.kind[0] == BLUE for n in d.nodes.values())


def interface(d: Diagram2) -> tuple[tuple[str, int], ...]:
    """Per boundary stub: what the wire reaches first past any bends
    ("node" or "end"), and the winding accumulated on the way."""
    owner = d._owner_map()
    out = []
    for s in d.boundary:
        w = 0
        cur = d.pairing[s]
        while True:
            o = owner.get(cur)
            if o is None:
                out.append(("end", w))
                break
            nid, i = o
            n = d.nodes[nid]
            if n.kind[0] != BEND:
                out.append(("node", w))
                break
            w += 1 if i == 0 else -1
            cur = d.pairing[n.ports[1 - i]]
    return tuple(out)


# ---------------------------------------------------------------------------
# subdiagram matching

def match_subdiagram(host: Diagram2, pattern: Diagram2) -> list[dict]:
    """All embeddings of ``pattern`` into ``host``.

    An embedding maps pattern nodes to host nodes injectively,
    preserving kinds and rotations (blue dots up to cyclic rotation,
    red dots keeping the principal port, bends keeping orientation),
    and maps each pattern boundary stub to the host dart the cut wire
    continues into.  Returned as dicts with "nodes", "darts" and
    "boundary" maps.
    """
    if pattern.is_empty():
        raise DiagramError("empty pattern")
    results: list[dict] = []

    p_nodes = sorted(pattern.nodes)
    if not p_nodes:
        # wires only: map each through-wire to a host edge, injectively
        wires = []
        seen = set()
        for s in pattern.boundary:
            if s in seen:
                continue
            seen.add(s)
            seen.add(pattern.pairing[s])
            wires.append((s, pattern.pairing[s]))
        host_edges = sorted(tuple(sorted(e)) for e in host.edges())

        def assign(i, used, bmap):
            if i == len(wires):
                results.append({"nodes": {}, "darts": {}, "boundary": dict(bmap)})
                return
            s1, s2 = wires[i]
            for e in host_edges:
                if e in used:
                    continue
                for a, b in ((e[0], e[1]), (e[1], e[0])):
                    bmap[s1], bmap[s2] = a, b
                    assign(i + 1, used | {e}, bmap)
            bmap.pop(s1, None)
            bmap.pop(s2, None)

        assign(0, set(), {})
        return _dedupe(results)

    anchor = p_nodes[0]
    pa = pattern.nodes[anchor]
    for hid, hn in sorted(host.nodes.items()):
        if hn.kind != pa.kind or hn.degree() != pa.degree():
            continue
        rotations = range(pa.degree()) if pa.kind[0] == BLUE else (0,)
        for rot in rotations:
            emb = _try_extend(host, pattern, anchor, hid, rot)
            if emb is not None:
                results.append(emb)
    return _dedupe(results)


def _dedupe(results: list[dict]) -> list[dict]:
    seen = set()
    out = []
    for r in results:
        key = (tuple(sorted(r["nodes"].items())), tuple(sorted(r["boundary"].items())))
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def _try_extend(host: Diagram2, pattern: Diagram2, p0: int, h0: int, rot: int):
    p_owner = pattern._owner_map()
    h_owner = host._owner_map()
    nmap: dict[int, int] = {}
    dmap: dict[int, int] = {}
    bmap: dict[int, int] = {}

    def map_node(pn: int, hn: int, prot: int) -> bool:
        if pn in nmap:
            return nmap[pn] == hn and _rot_of(pn) == prot
        if hn in nmap.values():
            return False
        pnode, hnode = pattern.nodes[pn], host.nodes[hn]
        if pnode.kind != hnode.kind or pnode.degree() != hnode.degree():
            return False
        if pnode.kind[0] != BLUE and prot != 0:
            return False
        nmap[pn] = hn
        rots[pn] = prot
        deg = pnode.degree()
        for i in range(deg):
            dmap[pnode.ports[i]] = hnode.ports[(i + prot) % deg]
        return True

    rots: dict[int, int] = {}

    def _rot_of(pn: int) -> int:
        return rots[pn]

    if not map_node(p0, h0, rot):
        return None
    queue = [p0]
    done = set()
    while queue:
        pn = queue.pop()
        if pn in done:
            continue
        done.add(pn)
        for pd in pattern.nodes[pn].ports:
            hd = dmap[pd]
            p_partner = pattern.pairing[pd]
            h_partner = host.pairing[hd]
            if p_partner in pattern._owner_map():
                po = p_owner[p_partner]
                ho = h_owner.get(h_partner)
                if ho is None:
                    return None
                pn2, pi2 = po
                hn2, hi2 = ho
                deg2 = pattern.nodes[pn2].degree()
                prot2 = (hi2 - pi2) % deg2
                if not map_node(pn2, hn2, prot2):
                    return None
                queue.append(pn2)
            else:
                if p_partner in bmap and bmap[p_partner] != h_partner:
                    return None
                bmap[p_partner] = h_partner
    return {"nodes": nmap, "darts": dmap, "boundary": bmap}


# ---------------------------------------------------------------------------
# sequents to diagrams

@dataclass(frozen=True)
class SequentDiagram:
    """A sequent diagram plus occurrence bookkeeping.

    ``tops`` maps each top-level occurrence ("ant", i) or ("suc", j)
    to the dart at the top node of its formula tree.  ``leaves`` maps
    paths (occurrence key extended with "l"/"r"/"i" steps) of atoms
    and units to node ids.
    """
    diagram: Diagram2
    tops: dict[tuple, int]
    leaves: dict[tuple, int]


def sequent_to_diagram(s: Sequent) -> Diagram2:
    return sequent_diagram(s).diagram


def sequent_diagram(s: Sequent) -> SequentDiagram:
    nodes: dict[int, Node] = {}
    pairing: dict[int, int] = {}
    leaves: dict[tuple, int] = {}
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def build(f: Formula, eff: str, path: tuple) -> int:
        if isinstance(f, Atom):
            d = fresh()
            nid = fresh()
            nodes[nid] = black(f.name, eff, d)
            leaves[path] = nid
            return d
        if isinstance(f, UnitI):
            d = fresh()
            nid = fresh()
            nodes[nid] = blue((d,)) if eff == "ant" else red("i", (d,))
            leaves[path] = nid
            return d
        if isinstance(f, UnitBot):
            d = fresh()
            nid = fresh()
            nodes[nid] = red("bot", (d,)) if eff == "ant" else blue((d,))
            leaves[path] = nid
            return d
        if isinstance(f, (Tensor, Par)):
            tl = build(f.left, eff, path + ("l",))
            tr = build(f.right, eff, path + ("r",))
            p, xa, xb = fresh(), fresh(), fresh()
            natural_left = isinstance(f, Tensor)
            on_natural = (eff == "ant") == natural_left
            conn = "tensor" if isinstance(f, Tensor) else "par"
            if eff == "ant":
                ports = (p, xa, xb)      # CCW: principal, first sub, second sub
            else:
                ports = (p, xb, xa)
            nid = fresh()
            nodes[nid] = blue(ports) if on_natural else red(conn, ports)
            pairing[xa] = tl
            pairing[tl] = xa
            pairing[xb] = tr
            pairing[tr] = xb
            return p
        if isinstance(f, (StarR, StarL)):
            flip = "suc" if eff == "ant" else "ant"
            t = build(f.inner, flip, path + ("i",))
            p_in, p_out = fresh(), fresh()
            nid = fresh()
            nodes[nid] = bend(p_in, p_out)
            if isinstance(f, StarR):
                # root -> subtree traversal winds +1: enter at in, leave at out
                pairing[p_out] = t
                pairing[t] = p_out
                return p_in
            pairing[p_in] = t
            pairing[t] = p_in
            return p_out
        raise TypeError(f"not a formula: {f!r}")

    tops: dict[tuple, int] = {}
    for i, f in enumerate(s.antecedent):
        tops[("ant", i)] = build(f, "ant", ("ant", i))
    for j, f in enumerate(s.succedent):
        tops[("suc", j)] = build(f, "suc", ("suc", j))

    keys = [("ant", i) for i in range(len(s.antecedent))] + \
           [("suc", j) for j in range(len(s.succedent))]
    m, n = len(s.antecedent), len(s.succedent)
    total = m + n
    if total == 1:
        (k,) = keys
        rd = fresh()
        nid = fresh()
        nodes[nid] = blue((rd,))
        t = tops[k]
        pairing[rd] = t
        pairing[t] = rd
    elif total == 2:
        k1, k2 = keys
        t1, t2 = tops[k1], tops[k2]
        pairing[t1] = t2
        pairing[t2] = t1
    elif total > 2:
        root_darts = [fresh() for _ in range(total)]
        # CCW around the root: antecedents top to bottom, then succedents
        # bottom to top.
        order = keys[:m] + list(reversed(keys[m:]))
        nid = fresh()
        nodes[nid] = blue(tuple(root_darts))
        for rd, k in zip(root_darts, order):
            t = tops[k]
            pairing[rd] = t
            pairing[t] = rd

    return SequentDiagram(Diagram2(nodes, pairing, ()), tops, leaves)
