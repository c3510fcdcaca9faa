"""Surfaces: a source slice plus an ordered list of events.

An event is a local rewrite of the current slice.  The alphabet
follows the unit/counit pattern of the adjunctions between each
connective's blue and red dots, plus half-turn folds for negation and
coherent vertices for the blue fragment:

* ``atom-birth``/``atom-death`` create and annihilate an opposite
  pair of black endpoints (the fold of an atomic sheet edge);
* ``pair-intro c`` bridges two strands with the blue/red dot pair of a
  binary connective, or creates the capped wire of a unit;
* ``pair-elim c`` collapses the facing configuration (the bigon for
  binary connectives, the facing cap pair for units), splicing wires;
* ``bend-fold``/``bend-unfold`` insert and remove one half-turn;
* ``coherent`` replaces an embedded simple subdiagram by another with
  the same interface.

Every event allocates fresh ids inside its own tag block, so replaying
an event is deterministic and two events commute exactly when their
footprints are disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import (
    BEND, BLACK, BLUE, RED, Diagram2, Node, bend, black, blue, canonical_label,
    is_simple, iso_equal, red, signature,
)

STRIDE = 1_000_000

ATOM_BIRTH = "atom-birth"
ATOM_DEATH = "atom-death"
PAIR_INTRO = "pair-intro"
PAIR_ELIM = "pair-elim"
BEND_FOLD = "bend-fold"
BEND_UNFOLD = "bend-unfold"
COHERENT = "coherent"

BINARY_CONNS = ("tensor", "par")
UNIT_CONNS = ("i", "bot")


class SurfaceError(ValueError):
    def __init__(self, msg: str, index: int | None = None):
        super().__init__(msg if index is None else f"event {index}: {msg}")
        self.index = index


@dataclass(frozen=True, eq=False)
class Event:
    kind: str
    payload: tuple
    site: tuple
    tag: int

    def describe(self) -> str:
        if self.kind in (ATOM_BIRTH, ATOM_DEATH):
            return f"{self.kind}({self.payload[0]})"
        if self.kind in (PAIR_INTRO, PAIR_ELIM):
            return f"{self.kind}({self.payload[0]})"
        if self.kind == BEND_FOLD:
            return f"bend-fold({'cw' if self.payload[0] > 0 else 'ccw'})"
        return self.kind


def atom_birth(name: str, tag: int) -> Event:
    return Event(ATOM_BIRTH, (name,), (), tag)


def atom_death(name: str, n1: int, n2: int, tag: int) -> Event:
    return Event(ATOM_DEATH, (name,), (n1, n2), tag)


def pair_intro(conn: str, site: tuple, tag: int) -> Event:
    if conn in UNIT_CONNS and site:
        raise ValueError("unit pair-intro takes no site")
    if conn in BINARY_CONNS and len(site) != 2:
        raise ValueError("binary pair-intro site is a dart pair")
    return Event(PAIR_INTRO, (conn,), site, tag)


def pair_elim(conn: str, red_node: int, blue_node: int, tag: int) -> Event:
    return Event(PAIR_ELIM, (conn,), (red_node, blue_node), tag)


def bend_fold(orient: int, dart: int, tag: int) -> Event:
    if orient not in (1, -1):
        raise ValueError("orient must be +1 or -1")
    return Event(BEND_FOLD, (orient,), (dart,), tag)


def bend_unfold(node: int, tag: int) -> Event:
    return Event(BEND_UNFOLD, (), (node,), tag)


def coherent(pattern: Diagram2, replacement: Diagram2, site: tuple, tag: int) -> Event:
    if len(pattern.boundary) != len(replacement.boundary) or len(site) != len(pattern.boundary):
        raise ValueError("pattern, replacement and site boundary lengths differ")
    return Event(COHERENT, (pattern, replacement), site, tag)


@dataclass(frozen=True)
class ApplyInfo:
    nodes: frozenset[int]
    darts: frozenset[int]
    created_nodes: tuple[int, ...]
    # for coherent events: where the replacement's darts landed
    dart_image: tuple[tuple[int, int], ...] = ()


class _Alloc:
    def __init__(self, tag: int):
        self.base = tag * STRIDE
        self.k = 0

    def __call__(self) -> int:
        self.k += 1
        return self.base + self.k - 1


def _planar_at(d: Diagram2, seed_dart: int, what: str):
    try:
        d.check_component_planar(seed_dart)
    except Exception:
        raise SurfaceError(f"{what}: site would break planarity") from None


def _check_same_face(d: Diagram2, d1: int, d2: int, what: str):
    """Two darts must see a common face when they live in one component;
    separate components can always be brought together in depth."""
    comp = None
    for nodes, stubs in d.components():
        comp_darts = set(stubs)
        for nid in nodes:
            comp_darts.update(d.nodes[nid].ports)
        if d1 in comp_darts:
            comp = comp_darts
            break
    if comp is None or d2 not in comp:
        return
    if d2 not in d.face_of(d1):
        raise SurfaceError(f"{what}: sites are not on a common face")


def apply_event(d: Diagram2, e: Event) -> tuple[Diagram2, ApplyInfo]:
    new = _Alloc(e.tag)
    if e.tag <= 0:
        raise SurfaceError("event tags must be positive")

    if e.kind == ATOM_BIRTH:
        (name,) = e.payload
        da, ds = new(), new()
        na, ns = new(), new()
        d2 = d.replace(add_nodes={na: black(name, "ant", da), ns: black(name, "suc", ds)},
                       pair=[(da, ds)])
        return d2, ApplyInfo(frozenset((na, ns)), frozenset((da, ds)), (na, ns))

    if e.kind == ATOM_DEATH:
        (name,) = e.payload
        n1, n2 = e.site
        for n in (n1, n2):
            if n not in d.nodes:
                raise SurfaceError(f"no node {n} at death site")
        k1, k2 = d.nodes[n1].kind, d.nodes[n2].kind
        if k1[0] != BLACK or k2[0] != BLACK or k1[1] != name or k2[1] != name:
            raise SurfaceError("death site is not a matching black pair")
        if {k1[2], k2[2]} != {"ant", "suc"}:
            raise SurfaceError("death needs opposite polarities")
        d1, d2_ = d.nodes[n1].ports[0], d.nodes[n2].ports[0]
        if d.pairing[d1] == d2_:
            raise SurfaceError("black dots cap the same wire")
        _check_same_face(d, d1, d2_, "atom-death")
        x, y = d.pairing[d1], d.pairing[d2_]
        out = d.replace(del_nodes=(n1, n2), unpair=(d1, d2_), pair=[(x, y)])
        _planar_at(out, x, "atom-death")
        return out, ApplyInfo(frozenset((n1, n2)), frozenset((d1, d2_, x, y)), ())

    if e.kind == PAIR_INTRO:
        (conn,) = e.payload
        if conn in UNIT_CONNS:
            dl, dr = new(), new()
            nl, nr = new(), new()
            if conn == "i":
                add = {nl: blue((dl,)), nr: red("i", (dr,))}
            else:
                add = {nl: red("bot", (dl,)), nr: blue((dr,))}
            d2 = d.replace(add_nodes=add, pair=[(dl, dr)])
            return d2, ApplyInfo(frozenset((nl, nr)), frozenset((dl, dr)), (nl, nr))
        du, dv = e.site
        if du == dv or d.pairing.get(du) is None or d.pairing.get(dv) is None:
            raise SurfaceError("bad strand pair for pair-intro")
        if d.pairing[du] == dv:
            raise SurfaceError("pair-intro strands must be distinct edges")
        _check_same_face(d, du, dv, "pair-intro")
        fu, fv = d.pairing[du], d.pairing[dv]
        near_u, near_v, wbr = new(), new(), new()
        ebr, far_v, far_u = new(), new(), new()
        nw, ne = new(), new()
        # The near halves (du, dv) join the west node, the far halves
        # (fu, fv) the east node, with a bridge wire in between.  The
        # blue dot sits on the connective's natural side: west for
        # tensor, east for par; the red dot's principal port is the
        # bridge (its own connective wire).
        if conn == "tensor":
            add = {nw: blue((near_u, near_v, wbr)),
                   ne: red("tensor", (ebr, far_v, far_u))}
        else:
            add = {nw: red("par", (wbr, near_u, near_v)),
                   ne: blue((ebr, far_v, far_u))}
        pairs = [(du, near_u), (dv, near_v), (wbr, ebr), (fv, far_v), (fu, far_u)]
        d2 = d.replace(add_nodes=add, unpair=(du, dv), pair=pairs)
        _planar_at(d2, wbr, "pair-intro")
        touched = frozenset((du, dv, fu, fv, near_u, near_v, wbr, ebr, far_v, far_u))
        return d2, ApplyInfo(frozenset((nw, ne)), touched, (nw, ne))

    if e.kind == PAIR_ELIM:
        (conn,) = e.payload
        rn, bn = e.site
        if rn not in d.nodes or bn not in d.nodes:
            raise SurfaceError("pair-elim site missing")
        rnode, bnode = d.nodes[rn], d.nodes[bn]
        if rnode.kind != (RED, conn) or bnode.kind[0] != BLUE:
            raise SurfaceError(f"pair-elim {conn}: site is not a red/blue pair")
        if conn in UNIT_CONNS:
            if bnode.degree() != 1:
                raise SurfaceError("unit pair-elim needs a blue cap")
            dr, db = rnode.ports[0], bnode.ports[0]
            if d.pairing[dr] == db:
                raise SurfaceError("unit pair caps the same wire")
            _check_same_face(d, dr, db, "pair-elim")
            x, y = d.pairing[dr], d.pairing[db]
            out = d.replace(del_nodes=(rn, bn), unpair=(dr, db), pair=[(x, y)])
            _planar_at(out, x, "pair-elim")
            return out, ApplyInfo(frozenset((rn, bn)), frozenset((dr, db, x, y)), ())
        if bnode.degree() != 3:
            raise SurfaceError("binary pair-elim needs a degree-3 blue dot")
        rp, r1, r2 = rnode.ports
        b1, b2 = d.pairing[r1], d.pairing[r2]
        bo = d.owner(b1)
        if bo is None or bo[0] != bn or d.owner(b2) is None or d.owner(b2)[0] != bn:
            raise SurfaceError("pair-elim: strands do not join the blue dot")
        (bq,) = [p for p in bnode.ports if p not in (b1, b2)]
        # planar bigon: blue must read (outer, b2, b1) counterclockwise
        i = bnode.ports.index(bq)
        if (bnode.ports[(i + 1) % 3], bnode.ports[(i + 2) % 3]) != (b2, b1):
            raise SurfaceError("pair-elim: bigon orientation mismatch")
        x, y = d.pairing[rp], d.pairing[bq]
        if x == bq or y == rp:
            raise SurfaceError("pair-elim would close a loop")
        out = d.replace(del_nodes=(rn, bn), unpair=(rp, bq, r1, r2), pair=[(x, y)])
        _planar_at(out, x, "pair-elim")
        touched = frozenset((rp, r1, r2, b1, b2, bq, x, y))
        return out, ApplyInfo(frozenset((rn, bn)), touched, ())

    if e.kind == BEND_FOLD:
        (orient,) = e.payload
        (dd,) = e.site
        if dd not in d.pairing:
            raise SurfaceError("bend-fold site missing")
        far = d.pairing[dd]
        p_in, p_out = new(), new()
        nb = new()
        if orient == 1:
            pairs = [(dd, p_in), (p_out, far)]
        else:
            pairs = [(dd, p_out), (p_in, far)]
        d2 = d.replace(add_nodes={nb: bend(p_in, p_out)}, unpair=(dd,), pair=pairs)
        return d2, ApplyInfo(frozenset((nb,)), frozenset((dd, far, p_in, p_out)), (nb,))

    if e.kind == BEND_UNFOLD:
        (nid,) = e.site
        if nid not in d.nodes or d.nodes[nid].kind[0] != BEND:
            raise SurfaceError("bend-unfold site is not a bend")
        p_in, p_out = d.nodes[nid].ports
        x, y = d.pairing[p_in], d.pairing[p_out]
        if x == p_out:
            raise SurfaceError("bend caps a loop")
        out = d.replace(del_nodes=(nid,), unpair=(p_in, p_out), pair=[(x, y)])
        return out, ApplyInfo(frozenset((nid,)), frozenset((p_in, p_out, x, y)), ())

    if e.kind == COHERENT:
        pattern, replacement = e.payload
        outer = e.site
        return _apply_coherent(d, pattern, replacement, outer, new)

    raise SurfaceError(f"unknown event kind {e.kind!r}")


def extract_region(d: Diagram2, outer: tuple[int, ...]) -> tuple[Diagram2, set[int]]:
    """The subdiagram cut off by the given outer darts.

    Each outer dart's edge is cut; the region is everything on the far
    side.  Returns (region as an open diagram whose boundary stubs are
    the outer darts in site order, interior node ids).
    """
    owner = d._owner_map()
    for h in outer:
        if h not in d.pairing:
            raise SurfaceError(f"site dart {h} missing")
    cut = set(outer)
    inner = [d.pairing[h] for h in outer]
    interior: set[int] = set()
    stack = [t for t in inner if t not in cut and owner.get(t) is not None]
    while stack:
        t = stack.pop()
        o = owner.get(t)
        if o is None:
            raise SurfaceError("region boundary leaks to the diagram boundary")
        nid = o[0]
        if nid in interior:
            continue
        interior.add(nid)
        for p in d.nodes[nid].ports:
            q = d.pairing[p]
            if p in cut or q in cut:
                continue
            if owner.get(q) is not None:
                stack.append(q)
            else:
                raise SurfaceError("region boundary leaks to the diagram boundary")
    for h in outer:
        o = owner.get(h)
        if o is not None and o[0] in interior:
            raise SurfaceError("site darts must lie outside the region")
    nodes = {nid: d.nodes[nid] for nid in interior}
    pairing = {}
    for nid in interior:
        for p in d.nodes[nid].ports:
            q = d.pairing[p]
            if q in cut and p not in cut:
                pairing[p] = q
                pairing[q] = p
            elif owner.get(q) is not None and owner[q][0] in interior:
                pairing[p] = q
    for h in outer:
        if d.pairing[h] in cut:
            pairing[h] = d.pairing[h]
    region = Diagram2(nodes, pairing, tuple(outer), check=False)
    return region, interior


def _apply_coherent(d: Diagram2, pattern: Diagram2, replacement: Diagram2,
                    outer: tuple, new: _Alloc):
    region, interior = extract_region(d, outer)
    if signature(region) != signature(pattern):
        raise SurfaceError("coherent pattern does not match at the site")
    # instantiate the replacement
    nmap = {nid: new() for nid in sorted(replacement.nodes)}
    dmap = {}
    stub_to_host = dict(zip(replacement.boundary, outer))
    for nid in sorted(replacement.nodes):
        for p in replacement.nodes[nid].ports:
            dmap[p] = new()
    add_nodes = {nmap[nid]: Node(n.kind, tuple(dmap[p] for p in n.ports))
                 for nid, n in replacement.nodes.items()}
    pairs = []
    done = set()
    for a, b in replacement.pairing.items():
        if a in done or b in done:
            continue
        done.update((a, b))
        aa = stub_to_host.get(a, dmap.get(a))
        bb = stub_to_host.get(b, dmap.get(b))
        pairs.append((aa, bb))
    del_darts = set()
    for nid in interior:
        del_darts.update(d.nodes[nid].ports)
    touched_darts = del_darts | set(outer) | set(dmap.values())
    out = d.replace(del_nodes=interior, add_nodes=add_nodes,
                    unpair=list(del_darts) + list(outer), pair=pairs)
    for h in outer:
        _planar_at(out, h, "coherent")
        break
    info = ApplyInfo(frozenset(interior) | frozenset(nmap.values()),
                     frozenset(touched_darts), tuple(nmap.values()),
                     dart_image=tuple(sorted(dmap.items())))
    return out, info


# ---------------------------------------------------------------------------
# surfaces

@dataclass(frozen=True, eq=False)
class Surface:
    source: Diagram2
    events: tuple[Event, ...]

    def __len__(self) -> int:
        return len(self.events)


def identity_surface(d: Diagram2) -> Surface:
    return Surface(d, ())


def validate_surface(s: Surface) -> list[Diagram2]:
    """All slices from source to bottom; raises SurfaceError with the
    index of the first ill-typed event."""
    slices = [s.source]
    cur = s.source
    for i, e in enumerate(s.events):
        try:
            cur, _ = apply_event(cur, e)
        except SurfaceError as err:
            raise SurfaceError(str(err), index=i) from None
        slices.append(cur)
    try:
        cur.check(planar=True)
    except Exception as err:
        raise SurfaceError(f"bottom slice is not planar: {err}") from None
    return slices


def bottom_slice(s: Surface) -> Diagram2:
    return validate_surface(s)[-1]


def footprints(s: Surface) -> list[ApplyInfo]:
    out = []
    cur = s.source
    for e in s.events:
        cur, info = apply_event(cur, e)
        out.append(info)
    return out


def max_tag(s: Surface) -> int:
    tags = [0]
    tags += [e.tag for e in s.events]
    tags += [i // STRIDE for i in s.source.nodes]
    tags += [i // STRIDE for i in s.source.pairing]
    return max(tags)


def remap_event(e: Event, nmap, dmap, tag_shift: int = 0) -> Event:
    def rn(i: int) -> int:
        j = nmap(i)
        if j != i:
            return j
        return i + tag_shift * STRIDE if i >= STRIDE else i

    def rd(i: int) -> int:
        j = dmap(i)
        if j != i:
            return j
        return i + tag_shift * STRIDE if i >= STRIDE else i

    tag = e.tag + tag_shift
    if e.kind in (ATOM_DEATH, PAIR_ELIM):
        return Event(e.kind, e.payload, tuple(rn(i) for i in e.site), tag)
    if e.kind in (BEND_UNFOLD,):
        return Event(e.kind, e.payload, (rn(e.site[0]),), tag)
    if e.kind in (BEND_FOLD, PAIR_INTRO, COHERENT):
        return Event(e.kind, e.payload, tuple(rd(i) for i in e.site), tag)
    if e.kind == ATOM_BIRTH:
        return Event(e.kind, e.payload, (), tag)
    raise SurfaceError(f"unknown event kind {e.kind!r}")


def relabel_surface(s: Surface, node_map: dict[int, int], dart_map: dict[int, int],
                    tag_shift: int = 0) -> Surface:
    src = s.source.relabel(node_map, dart_map)
    events = tuple(
        remap_event(e, lambda i: node_map.get(i, i), lambda i: dart_map.get(i, i), tag_shift)
        for e in s.events
    )
    return Surface(src, events)


def retag(s: Surface, tag_shift: int) -> Surface:
    if tag_shift == 0:
        return s
    ident = lambda i: i
    return Surface(s.source, tuple(remap_event(e, ident, ident, tag_shift) for e in s.events))


def juxtapose(left: Surface, right: Surface) -> Surface:
    """Place two surfaces side by side; the left one's events first."""
    shift = max_tag(left) + 1
    # keep source ids of the two sides disjoint (sources use ids < STRIDE)
    offset = 10_000
    while any(i >= offset for i in left.source.nodes) or \
          any(i >= offset for i in left.source.pairing):
        offset *= 2
    nmap = {i: i + offset for i in right.source.nodes}
    dmap = {i: i + offset for i in right.source.pairing}
    r2 = relabel_surface(right, nmap, dmap, tag_shift=shift)
    src = Diagram2(
        {**left.source.nodes, **r2.source.nodes},
        {**left.source.pairing, **r2.source.pairing},
        left.source.boundary + r2.source.boundary,
    )
    return Surface(src, left.events + r2.events)


def compose_vertical(top: Surface, bottom: Surface) -> Surface:
    """Stack surfaces: the bottom's source must match the top's last slice."""
    last = bottom_slice(top)
    cb, nm_b, dm_b = canonical_label(bottom.source)
    cl, nm_l, dm_l = canonical_label(last)
    if not iso_equal(last, bottom.source):
        raise SurfaceError("boundary mismatch in vertical composition")
    inv_n = {v: k for k, v in nm_l.items()}
    inv_d = {v: k for k, v in dm_l.items()}
    nmap = {i: inv_n[nm_b[i]] for i in bottom.source.nodes}
    dmap = {i: inv_d[dm_b[i]] for i in bottom.source.pairing}
    shift = max_tag(top) + 1
    b2 = relabel_surface(bottom, nmap, dmap, tag_shift=shift)
    return Surface(top.source, top.events + b2.events)


# ---------------------------------------------------------------------------
# exchange normal form

def _disjoint(a: ApplyInfo, b: ApplyInfo) -> bool:
    return not (a.nodes & b.nodes) and not (a.darts & b.darts)


def _site_key(e: Event, info: ApplyInfo, slice_before: Diagram2,
              slice_after: Diagram2) -> tuple:
    """Selection key for the exchange normal form.

    The film effect (kind, payload, resulting slice) comes first so
    isomorphic surfaces order their events identically; the canonical
    site position only breaks ties between film-equal candidates.
    """
    _, nm, dm = canonical_label(slice_before)
    ns = tuple(sorted(nm[i] for i in info.nodes if i in nm))
    ds = tuple(sorted(dm[i] for i in info.darts if i in dm))
    payload = e.payload
    if e.kind == COHERENT:
        payload = (signature(e.payload[0]), signature(e.payload[1]))
    elif e.kind == BEND_FOLD:
        payload = ()
    return (e.kind, payload, signature(slice_after), ds, ns)


def canonical_event_order(s: Surface) -> Surface:
    """Greedy exchange normal form.

    Repeatedly emit the event that can be commuted to the front (all
    earlier events have disjoint footprints) with the least canonical
    site, tie-broken by kind.  The output is equal to the input modulo
    exchange moves, and the order is a normal form: any lawful
    sequence of adjacent disjoint swaps yields the same result.
    """
    remaining = list(s.events)
    cur = s.source
    out: list[Event] = []
    while remaining:
        infos = []
        c = cur
        ok = True
        for e in remaining:
            c, info = apply_event(c, e)
            infos.append(info)
        best = None
        for j, e in enumerate(remaining):
            if all(_disjoint(infos[j], infos[k]) for k in range(j)):
                after, _ = apply_event(cur, e)
                key = _site_key(e, infos[j], cur, after)
                if best is None or key < best[0]:
                    best = (key, j)
        assert best is not None  # j = 0 always qualifies
        j = best[1]
        e = remaining.pop(j)
        out.append(e)
        cur, _ = apply_event(cur, e)
    return Surface(s.source, tuple(out))


def surface_key(s: Surface) -> tuple:
    """Canonical hashable key: the slice film.

    Two surfaces get equal keys when their event kinds agree and all
    their slices are isomorphic; this is invariant under relabeling
    (site data is reflected in the slices, not compared directly).
    Apply canonical_event_order first to absorb exchange moves.
    """
    parts = [signature(s.source)]
    cur = s.source
    for e in s.events:
        cur, _ = apply_event(cur, e)
        payload = e.payload
        if e.kind == COHERENT:
            payload = (signature(e.payload[0]), signature(e.payload[1]))
        elif e.kind == BEND_FOLD:
            payload = ()
        parts.append((e.kind, payload, signature(cur)))
    return tuple(parts)
