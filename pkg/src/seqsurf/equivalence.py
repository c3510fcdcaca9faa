"""Surface equivalence: moves, normal forms, witnesses, bounded search.

The move alphabet implements the four equivalence generators:

* ``zigzag-reduce`` / ``zigzag-expand`` -- an intro event and a later
  elim event of the matching kind that share exactly one node cancel
  (the adjunction snake); expansion inserts such a pair.
* ``coherent-merge`` -- a contiguous run of coherent events whose
  joint footprint closes up to a simple blue region is replaced by at
  most one coherent event with a canonical payload (coherence), and a
  vacuous event disappears (locality picks the smallest region).
* ``exchange`` -- adjacent events with disjoint footprints swap
  (isotopy / interchangers).

Every move preserves the top and bottom boundaries; reductions are
validated by replaying the remaining events.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagrams import (
    BEND, BLUE, Diagram2, canonical_label, is_simple, iso_equal, signature,
)
from .surfaces import (
    ATOM_BIRTH, ATOM_DEATH, BEND_FOLD, BEND_UNFOLD, COHERENT, PAIR_ELIM,
    PAIR_INTRO, STRIDE, ApplyInfo, Event, Surface, apply_event, atom_birth,
    atom_death, bend_fold, bend_unfold, canonical_event_order, coherent,
    extract_region, max_tag, pair_elim, pair_intro, surface_key,
    validate_surface,
)


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str       # zigzag-reduce | zigzag-expand | coherent-merge | exchange
    data: tuple

    def __str__(self) -> str:
        if self.kind == "zigzag-reduce":
            return f"zigzag-reduce {self.data[0]} {self.data[1]}"
        if self.kind == "zigzag-expand":
            return f"zigzag-expand at {self.data[0]}..{self.data[1]}"
        if self.kind == "coherent-merge":
            return f"coherent-merge {self.data[0]}..{self.data[1]}"
        return f"exchange {self.data[0]}"


@dataclass(frozen=True)
class Witness:
    """A checkable script: moves applied to either side until the two
    surfaces coincide."""
    moves: tuple[tuple[str, Move], ...]  # side "a" or "b", then the move

    def count(self, kind: str) -> int:
        return sum(1 for _, m in self.moves if m.kind == kind)


_INTRO_OF = {ATOM_DEATH: ATOM_BIRTH, PAIR_ELIM: PAIR_INTRO, BEND_UNFOLD: BEND_FOLD}


def _node_ports(d: Diagram2, nid: int) -> tuple[int, ...]:
    return d.nodes[nid].ports


def _zigzag_shared(s: Surface, infos: list[ApplyInfo], i: int, j: int):
    """If events i < j form a snake pair, return (kept id map); else None.

    The elim at j must consume exactly one of the nodes the intro at i
    created; the intro's other creation then stands in for the elim's
    other victim downstream.
    """
    ei, ej = s.events[i], s.events[j]
    if _INTRO_OF.get(ej.kind) != ei.kind:
        return None
    if ei.kind != BEND_FOLD and ei.payload != ej.payload:
        return None
    created = set(infos[i].created_nodes)
    victims = list(ej.site) if ej.kind != BEND_UNFOLD else [ej.site[0]]
    shared = [n for n in victims if n in created]
    if len(shared) != 1:
        return None
    if ej.kind == BEND_UNFOLD:
        return {"bend": shared[0]}
    (c_s,) = shared
    (c_o,) = [n for n in created if n != c_s]
    (n_o,) = [n for n in victims if n not in created]
    return {"c_o": c_o, "n_o": n_o}


def _remap_ids(events, node_map: dict[int, int], dart_map: dict[int, int]):
    from .surfaces import remap_event
    return [remap_event(e, lambda x: node_map.get(x, x),
                        lambda x: dart_map.get(x, x)) for e in events]


def _rebind_coherent(cur: Diagram2, e: Event) -> Event | None:
    """After a snake removal, a coherent event may face a rearranged
    region.  Rebinding the pattern (same replacement, same interface)
    is a lawful coherent vertex; a bare-wire pattern may additionally
    slide along its wire, narrowing to the surviving sub-edge."""
    from .diagrams import interface
    stored_pattern, replacement = e.payload
    sites = [e.site]
    if not stored_pattern.nodes and len(e.site) == 2:
        a, b = e.site
        if a in cur.pairing:
            sites.append((a, cur.pairing[a]))
        if b in cur.pairing:
            sites.append((cur.pairing[b], b))
    for site in sites:
        if len(set(site)) != len(site):
            continue
        try:
            region, _ = extract_region(cur, site)
        except Exception:
            continue
        pattern, _, _ = canonical_label(region)
        if not is_simple(pattern):
            continue
        # boundary equality is winding data only; what the ends reach
        # inside the region is free to differ
        if [w for _, w in interface(pattern)] != [w for _, w in interface(replacement)]:
            continue
        return Event(COHERENT, (pattern, replacement), site, e.tag)
    return None


def _slice_fingerprint(d: Diagram2) -> int:
    """Cheap exact-id structural hash (not canonical) for memoization."""
    return hash((
        tuple(sorted((k, n.kind, n.ports) for k, n in d.nodes.items())),
        tuple(sorted(d.pairing.items())),
        d.boundary,
    ))


def _greedy_replay(source: Diagram2, events: list[Event],
                   check_bottom: Diagram2 | None = None) -> Surface | None:
    """Schedule the events in some order that applies; None if stuck.

    The given order is tried first; on failure, a bounded backtracking
    search over orders runs with memoized failed states.  If
    ``check_bottom`` is given, only a schedule reproducing that bottom
    slice is accepted.
    """
    n = len(events)

    def try_apply(cur, e):
        try:
            return apply_event(cur, e)[0], e
        except Exception:
            if e.kind == COHERENT:
                e2 = _rebind_coherent(cur, e)
                if e2 is not None:
                    try:
                        return apply_event(cur, e2)[0], e2
                    except Exception:
                        return None
            return None

    # fast path: the order as given
    cur = source
    out = []
    for e in events:
        r = try_apply(cur, e)
        if r is None:
            out = None
            break
        cur, applied = r
        out.append(applied)
    if out is not None and (check_bottom is None or
                            signature(cur) == signature(check_bottom)):
        return Surface(source, tuple(out))

    failed: set = set()
    budget = [80]

    def dfs(cur: Diagram2, pending: tuple[int, ...], out: list[Event]):
        if not pending:
            if check_bottom is not None and signature(cur) != signature(check_bottom):
                return None
            return list(out)
        if budget[0] <= 0:
            return None
        key = (pending, _slice_fingerprint(cur))
        if key in failed:
            return None
        budget[0] -= 1
        for k in pending:
            r = try_apply(cur, events[k])
            if r is None:
                continue
            nxt, applied = r
            out.append(applied)
            res = dfs(nxt, tuple(x for x in pending if x != k), out)
            if res is not None:
                return res
            out.pop()
        failed.add(key)
        return None

    res = dfs(source, tuple(range(n)), [])
    if res is None:
        return None
    return Surface(source, tuple(res))


def apply_move(s: Surface, m: Move) -> Surface:
    """Apply one equivalence move; boundaries are preserved."""
    if m.kind == "exchange":
        (i,) = m.data
        if not 0 <= i < len(s.events) - 1:
            raise MoveError("exchange index out of range")
        from .surfaces import footprints, _disjoint
        infos = footprints(s)
        if not _disjoint(infos[i], infos[i + 1]):
            raise MoveError("sites are not disjoint")
        ev = list(s.events)
        ev[i], ev[i + 1] = ev[i + 1], ev[i]
        out = Surface(s.source, tuple(ev))
        try:
            validate_surface(out)
        except Exception as e:
            raise MoveError(f"exchange does not replay: {e}") from None
        return out

    if m.kind == "zigzag-reduce":
        i, j = m.data[0], m.data[1]
        if not 0 <= i < j < len(s.events):
            raise MoveError("bad zigzag indices")
        return _reduce_pair(s, i, j, validate_surface(s), _infos(s))

    if m.kind == "zigzag-expand":
        i, j, intro, elim = m.data
        if not 0 <= i <= j <= len(s.events):
            raise MoveError("bad expansion indices")
        ev = list(s.events)
        ev.insert(i, intro)
        ev.insert(j + 1, elim)
        out = Surface(s.source, tuple(ev))
        try:
            validate_surface(out)
        except Exception as e:
            raise MoveError(f"expansion does not replay: {e}") from None
        infos = _infos(out)
        if _zigzag_shared(out, infos, i, j + 1) is None:
            raise MoveError("expansion does not form a snake")
        if signature(_bottom(out)) != signature(_bottom(s)):
            raise MoveError("expansion changed the boundary")
        return out

    if m.kind == "coherent-merge":
        start, end, replacements = m.data
        if not 0 <= start < end <= len(s.events):
            raise MoveError("bad merge range")
        if any(e.kind != COHERENT for e in s.events[start:end]):
            raise MoveError("region is not coherent")
        return _apply_merge(s, start, end, replacements)

    raise MoveError(f"unknown move {m.kind!r}")


def _reduce_pair(s: Surface, i: int, j: int, slices, infos) -> Surface:
    shared = _zigzag_shared(s, infos, i, j)
    if shared is None:
        raise MoveError("no snake at site")
    node_map, dart_map = _zigzag_maps(s, i, shared, slices)
    # Events whose sites name a dart of the annihilated shared node
    # ride on the snake strand.  They slide along the straightened
    # wire: a fold re-designates the edge from its other end with
    # flipped chirality; direction-free designators (coherent cuts,
    # bridge halves) re-designate through the splice onto the
    # surviving strand.
    orphan: set[int] = set()
    through = None
    if "c_o" in shared:
        c_s = [n for n in infos[i].created_nodes if n != shared["c_o"]][0]
        orphan = set(slices[i + 1].nodes[c_s].ports)
        n_o = shared["n_o"]
        for sl in slices:
            if n_o in sl.nodes and sl.nodes[n_o].degree() == 1:
                through = sl.pairing[sl.nodes[n_o].ports[0]]
                break
    rest = []
    for k, e in enumerate(s.events):
        if k in (i, j):
            continue
        if orphan & set(e.site) and i < k:
            if e.kind == BEND_FOLD:
                other = slices[k].pairing[e.site[0]]
                e = Event(BEND_FOLD, (-e.payload[0],), (other,), e.tag)
            elif e.kind in (COHERENT, PAIR_INTRO):
                if through is not None:
                    site = tuple(through if d in orphan else d for d in e.site)
                else:
                    # direction-free designators re-route to the other
                    # end of the edge they named at their own time
                    site = tuple(slices[k].pairing[d] if d in orphan else d
                                 for d in e.site)
                e = Event(e.kind, e.payload, site, e.tag)
        rest.append(e)
    rest = _remap_ids(rest, node_map, dart_map)
    out = _greedy_replay(s.source, rest, check_bottom=slices[-1])
    if out is None:
        raise MoveError("no snake at site: remaining events do not replay")
    return out


def _infos(s: Surface) -> list[ApplyInfo]:
    out = []
    cur = s.source
    for e in s.events:
        cur, info = apply_event(cur, e)
        out.append(info)
    return out


def _bottom(s: Surface) -> Diagram2:
    cur = s.source
    for e in s.events:
        cur, _ = apply_event(cur, e)
    return cur


def _zigzag_maps(s: Surface, i: int, shared, slices=None) -> tuple[dict, dict]:
    """Id maps applied to the surviving events after a snake removal.

    For node pairs, the intro's surviving creation stands in for the
    elim's surviving victim.  For a removed bend, references to the
    bend's darts re-route through its other port (same turn heading,
    so fold orientations on the straightened wire are unchanged).
    """
    if slices is None:
        slices = validate_surface(s)
    if "bend" in shared:
        bnode = shared["bend"]
        after_i = slices[i + 1]
        near = s.events[i].site[0]
        pi, po = after_i.nodes[bnode].ports
        if after_i.pairing[pi] == near:
            far = after_i.pairing[po]
            return {}, {pi: far, po: near}
        far = after_i.pairing[pi]
        return {}, {po: far, pi: near}
    c_o, n_o = shared["c_o"], shared["n_o"]

    def ports_of(nid):
        for sl in slices:
            if nid in sl.nodes:
                return sl.nodes[nid].ports
        raise MoveError("lost zigzag node")

    pc, pn = ports_of(c_o), ports_of(n_o)
    if len(pc) != len(pn):
        raise MoveError("no snake at site: endpoint shapes differ")
    return {c_o: n_o}, dict(zip(pc, pn))


# ---------------------------------------------------------------------------
# snake reduction

def snake_reduce(s: Surface, trace: list | None = None, side: str = "a") -> Surface:
    """Cancel intro/elim snake pairs until none remains.

    Each reduction removes exactly two events.  The scan order is
    deterministic (earliest elim, then earliest intro)."""
    changed = True
    while changed:
        changed = False
        infos = _infos(s)
        slices = validate_surface(s)
        n = len(s.events)
        for j in range(n):
            if s.events[j].kind not in _INTRO_OF:
                continue
            for i in range(j):
                if _zigzag_shared(s, infos, i, j) is None:
                    continue
                try:
                    s2 = _reduce_pair(s, i, j, slices, infos)
                except MoveError:
                    continue
                if trace is not None:
                    trace.append((side, Move("zigzag-reduce", (i, j))))
                s = s2
                changed = True
                break
            if changed:
                break
    return s


# ---------------------------------------------------------------------------
# coherence normalization

def _blue_closure(before: Diagram2, touched_nodes: set[int], touched_darts: set[int]):
    """Connected groups of the maximal blue region around the touched
    material: ([blue node set], [bare touched edges]) per group."""
    owner = before._owner_map()
    seed_nodes = {n for n in touched_nodes
                  if n in before.nodes and before.nodes[n].kind[0] == BLUE}
    for d in touched_darts:
        o = owner.get(d)
        if o is not None and before.nodes[o[0]].kind[0] == BLUE:
            seed_nodes.add(o[0])
    # expand through blue-blue adjacency
    region = set()
    stack = list(seed_nodes)
    while stack:
        n = stack.pop()
        if n in region:
            continue
        region.add(n)
        for p in before.nodes[n].ports:
            q = before.pairing[p]
            o = owner.get(q)
            if o is not None and before.nodes[o[0]].kind[0] == BLUE:
                stack.append(o[0])
    bare_edges = set()
    for d in touched_darts:
        if d not in before.pairing:
            continue
        q = before.pairing[d]
        od, oq = owner.get(d), owner.get(q)
        d_blue = od is not None and before.nodes[od[0]].kind[0] == BLUE
        q_blue = oq is not None and before.nodes[oq[0]].kind[0] == BLUE
        if not d_blue and not q_blue:
            bare_edges.add(frozenset((d, q)))
    # group into connected components (bare edges never touch region blues)
    groups = []
    seen = set()
    for n in sorted(region):
        if n in seen:
            continue
        comp = set()
        stack = [n]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            seen.add(x)
            for p in before.nodes[x].ports:
                o = owner.get(before.pairing[p])
                if o is not None and o[0] in region:
                    stack.append(o[0])
        groups.append((comp, set()))
    for e in sorted(bare_edges, key=sorted):
        groups.append((set(), {e}))
    return groups


def _group_cuts(before: Diagram2, group) -> tuple[int, ...]:
    nodes, bare = group
    owner = before._owner_map()
    cuts = []
    for n in sorted(nodes):
        for p in before.nodes[n].ports:
            q = before.pairing[p]
            o = owner.get(q)
            if o is None or o[0] not in nodes:
                cuts.append(q)
    for e in bare:
        cuts.extend(sorted(e))
    _, _, dm = canonical_label(before)
    cuts.sort(key=lambda d: dm[d])
    return tuple(cuts)


def _merge_replacements(s: Surface, start: int, end: int):
    """Compute the canonical replacement events for a coherent run."""
    slices = validate_surface(s)
    before, after = slices[start], slices[end]
    touched_nodes: set[int] = set()
    touched_darts: set[int] = set()
    cur = before
    for e in s.events[start:end]:
        cur, info = apply_event(cur, e)
        touched_nodes |= set(info.nodes)
        touched_darts |= set(info.darts)
    groups = _blue_closure(before, touched_nodes, touched_darts)
    tag = max_tag(s) + 1
    repl = []
    for g in groups:
        cuts = _group_cuts(before, g)
        if not cuts:
            raise MoveError("coherent region has no boundary")
        p_region, _ = extract_region(before, cuts)
        q_region, _ = extract_region(after, cuts)
        pattern, _, _ = canonical_label(p_region)
        replacement, _, _ = canonical_label(q_region)
        if not is_simple(pattern) or not is_simple(replacement):
            raise MoveError("boundaries are not simple")
        if signature(p_region) == signature(q_region):
            continue
        repl.append(coherent(pattern, replacement, cuts, tag))
        tag += 1
    repl.sort(key=lambda e: e.site)
    return tuple(repl)


def _region_id_maps(after_old: Diagram2, after_new: Diagram2, cuts, infos_new):
    """Identify the run-created region of the old slice with the merged
    event's creation, identity elsewhere."""
    node_map: dict[int, int] = {}
    dart_map: dict[int, int] = {}
    region_old, _ = extract_region(after_old, cuts)
    region_new, _ = extract_region(after_new, cuts)
    _, nm_o, dm_o = canonical_label(region_old)
    _, nm_n, dm_n = canonical_label(region_new)
    inv_n = {v: k for k, v in nm_n.items()}
    inv_d = {v: k for k, v in dm_n.items()}
    for k, v in nm_o.items():
        node_map[k] = inv_n[v]
    for k, v in dm_o.items():
        dart_map[k] = inv_d[v]
    return node_map, dart_map


def _apply_merge(s: Surface, start: int, end: int, replacements,
                 trusted: bool = False) -> Surface:
    slices = validate_surface(s)
    before, after_old = slices[start], slices[end]
    if not trusted:
        expected = _merge_replacements(s, start, end)
        if tuple(_event_key(e) for e in expected) != \
                tuple(_event_key(e) for e in replacements):
            raise MoveError("merge replacement mismatch")
    cur = before
    for e in replacements:
        cur, _ = apply_event(cur, e)
    after_new = cur
    if not iso_equal(after_old, after_new):
        raise MoveError("merge changed the slice")
    # identify the rewritten regions so later events still resolve
    node_map: dict[int, int] = {}
    dart_map: dict[int, int] = {}
    groups = _blue_closure_post(s, start, end)
    for cuts in groups:
        nm, dm = _region_id_maps(after_old, after_new, cuts, None)
        node_map.update(nm)
        dart_map.update(dm)
    tail = _remap_ids(list(s.events[end:]), node_map, dart_map)
    out = Surface(s.source, s.events[:start] + tuple(replacements) + tuple(tail))
    validate_surface(out)
    if not trusted and signature(_bottom(out)) != signature(_bottom(s)):
        raise MoveError("merge changed the boundary")
    return out


def _blue_closure_post(s: Surface, start: int, end: int):
    slices = validate_surface(s)
    before = slices[start]
    touched_nodes: set[int] = set()
    touched_darts: set[int] = set()
    cur = before
    for e in s.events[start:end]:
        cur, info = apply_event(cur, e)
        touched_nodes |= set(info.nodes)
        touched_darts |= set(info.darts)
    groups = _blue_closure(before, touched_nodes, touched_darts)
    return [_group_cuts(before, g) for g in groups]


def _event_key(e: Event) -> tuple:
    payload = e.payload
    if e.kind == COHERENT:
        payload = (signature(e.payload[0]), signature(e.payload[1]))
    return (e.kind, payload, e.site)


def coherence_normalize(s: Surface, trace: list | None = None, side: str = "a") -> Surface:
    """Merge every maximal contiguous run of coherent events into at
    most one canonical coherent event per connected region; idempotent."""
    i = 0
    while i < len(s.events):
        if s.events[i].kind != COHERENT:
            i += 1
            continue
        j = i
        while j < len(s.events) and s.events[j].kind == COHERENT:
            j += 1
        replacements = _merge_replacements(s, i, j)
        if tuple(_event_key(e) for e in replacements) != \
                tuple(_event_key(e) for e in s.events[i:j]):
            m = Move("coherent-merge", (i, j, replacements))
            s = _apply_merge(s, i, j, replacements, trusted=True)
            if trace is not None:
                trace.append((side, m))
            i += len(replacements) if replacements else 0
            i += 1
        else:
            i = j
    return s


# ---------------------------------------------------------------------------
# witnesses and the decision pipeline

@dataclass
class Verdict:
    status: str                 # equivalent | unknown | not-comparable
    witness: Witness | None
    reason: str = ""


def nf_key(s: Surface) -> tuple:
    """Structural equality key: exchange normal form with canonical
    fold designators and canonical labels."""
    return surface_key(canonical_event_order(
        _fold_chain_canonical(canonical_event_order(s))))


def check_witness(a: Surface, b: Surface, w: Witness):
    """Replay a witness; returns (accepted, trace of surface hashes)."""
    cur = {"a": a, "b": b}
    trace = []
    for k, (side, m) in enumerate(w.moves):
        try:
            cur[side] = apply_move(cur[side], m)
        except MoveError as e:
            return False, trace + [f"move {k} failed: {e}"]
        trace.append(f"{side}:{hash(surface_key(canonical_event_order(cur[side]))):x}")
    if nf_key(cur["a"]) == nf_key(cur["b"]):
        return True, trace
    return False, trace + ["hash mismatch after all moves"]


def _fold_chain_canonical(s: Surface) -> Surface:
    """Re-express maximal runs of folds acting on one wire.

    Successive folds of the same wire are rewrites with disjoint
    supports; by interchange, only the resulting bend chain matters.
    The canonical run builds the chain outward from the wire end with
    the least canonical dart, one fold per bend.
    """
    if not any(e.kind == BEND_FOLD for e in s.events):
        return s
    changed = True
    while changed:
        changed = False
        slices = validate_surface(s)
        k = 0
        while k < len(s.events):
            if s.events[k].kind != BEND_FOLD:
                k += 1
                continue
            # grow the run of folds entangled with this wire
            span = {s.events[k].site[0], slices[k].pairing[s.events[k].site[0]]}
            cur = slices[k]
            j = k
            while j < len(s.events) and s.events[j].kind == BEND_FOLD and \
                    s.events[j].site[0] in span:
                cur, info = apply_event(cur, s.events[j])
                span |= set(info.darts)
                j += 1
            if j - k < 2:
                k += 1
                continue
            # read off the final chain between the original wire ends
            x = s.events[k].site[0]
            y = slices[k].pairing[x]
            _, _, dm = canonical_label(slices[k])
            if dm[y] < dm[x]:
                x, y = y, x
            chir = []
            d = x
            ok = True
            for _ in range(2 * len(cur.pairing) + 2):
                partner = cur.pairing[d]
                if partner == y:
                    break
                o = cur.owner(partner)
                if o is None or cur.nodes[o[0]].kind[0] != BEND:
                    ok = False
                    break
                chir.append(1 if o[1] == 0 else -1)
                d = cur.nodes[o[0]].ports[1 - o[1]]
            else:
                ok = False
            if not ok or len(chir) != j - k:
                k = j
                continue
            new_events = []
            base = slices[k]
            anchor = x
            for m, c in enumerate(chir):
                ne = bend_fold(c, anchor, s.events[k + m].tag)
                base, info = apply_event(base, ne)
                (nb,) = info.created_nodes
                anchor = base.nodes[nb].ports[1 if c == 1 else 0]
                new_events.append(ne)
            def sig_ev(e):
                return (e.kind, e.payload, e.site, e.tag)

            if [sig_ev(e) for e in new_events] == [sig_ev(e) for e in s.events[k:j]]:
                k = j
                continue

            # positional correspondence along the two chains, so later
            # designators keep their geometric spots
            def chain_ids(sl):
                darts, nodes = [], []
                d = x
                for _ in range(2 * len(sl.pairing) + 2):
                    p = sl.pairing[d]
                    darts.append(p)
                    if p == y:
                        return darts, nodes
                    o = sl.owner(p)
                    nodes.append(o[0])
                    d = sl.nodes[o[0]].ports[1 - o[1]]
                    darts.append(d)
                return None, None

            old_darts, old_nodes = chain_ids(cur)
            new_darts, new_nodes = chain_ids(base)
            if old_darts is None or new_darts is None or len(old_darts) != len(new_darts):
                k = j
                continue
            dmap2 = {a: b for a, b in zip(old_darts, new_darts) if a != b}
            nmap2 = {a: b for a, b in zip(old_nodes, new_nodes) if a != b}
            tail = _remap_ids(list(s.events[j:]), nmap2, dmap2)
            cand = s.events[:k] + tuple(new_events) + tuple(tail)
            try:
                out = Surface(s.source, cand)
                validate_surface(out)
            except Exception:
                k = j
                continue
            if signature(_bottom(out)) != signature(_bottom(s)):
                k = j
                continue
            s = out
            changed = True
            break
    return s


def _order_with_trace(s: Surface, trace: list | None, side: str) -> Surface:
    """Reach the exchange normal form, recording the adjacent swaps."""
    target = canonical_event_order(s)
    if trace is None:
        return target
    working = list(s.events)
    for pos, e in enumerate(target.events):
        at = next(k for k, x in enumerate(working) if x is e)
        while at > pos:
            m = Move("exchange", (at - 1,))
            s = apply_move(s, m)
            trace.append((side, m))
            working[at - 1], working[at] = working[at], working[at - 1]
            at -= 1
    return s


def _normalize(s: Surface, trace: list | None, side: str) -> Surface:
    # iterate to a fixpoint: merging can expose new snakes and vice versa
    for _ in range(len(s.events) + 2):
        before = surface_key(s)
        s = snake_reduce(s, trace, side)
        s = _order_with_trace(s, trace, side)
        s = coherence_normalize(s, trace, side)
        s = _order_with_trace(s, trace, side)
        s = _fold_chain_canonical(s)
        s = canonical_event_order(s)
        if surface_key(s) == before:
            break
    return s


def normalize(s: Surface) -> Surface:
    return _normalize(s, None, "a")


def equivalent(a: Surface, b: Surface, budget: int = 0) -> Witness | None:
    return decide(a, b, budget).witness


def decide(a: Surface, b: Surface, budget: int = 0,
           expansions: bool = True) -> Verdict:
    """Semi-decision of surface equivalence.

    Normalize both sides; if the normal forms coincide, the recorded
    normalization moves are the witness.  Otherwise run a bidirectional
    search over moves up to the budget.  ``unknown`` never means
    inequivalent.
    """
    if signature(a.source) != signature(b.source):
        return Verdict("not-comparable", None, "top boundaries differ")
    if signature(_bottom(a)) != signature(_bottom(b)):
        return Verdict("not-comparable", None, "bottom boundaries differ")
    trace: list = []
    na = _normalize(a, trace, "a")
    nb = _normalize(b, trace, "b")
    if surface_key(na) == surface_key(nb):
        return Verdict("equivalent", Witness(tuple(trace)))
    if budget <= 0:
        return Verdict("unknown", None, "normal forms differ and budget is 0")
    found = _bidirectional_search(na, nb, budget, expansions)
    if found is None:
        return Verdict("unknown", None, f"no witness within budget {budget}")
    more = [("a", m) for m in found[0]] + [("b", m) for m in found[1]]
    return Verdict("equivalent", Witness(tuple(trace) + tuple(more)))


def _enumerate_moves(s: Surface, alphabet, expansions: bool = True):
    """All single moves from a surface (reduction, merge, expansion)."""
    out = []
    infos = _infos(s)
    n = len(s.events)
    for j in range(n):
        if s.events[j].kind not in _INTRO_OF:
            continue
        for i in range(j):
            if _zigzag_shared(s, infos, i, j) is not None:
                out.append(Move("zigzag-reduce", (i, j)))
    # merges of coherent runs
    i = 0
    while i < n:
        if s.events[i].kind != COHERENT:
            i += 1
            continue
        j = i
        while j < n and s.events[j].kind == COHERENT:
            j += 1
        try:
            repl = _merge_replacements(s, i, j)
            if tuple(_event_key(e) for e in repl) != \
                    tuple(_event_key(e) for e in s.events[i:j]):
                out.append(Move("coherent-merge", (i, j, repl)))
        except MoveError:
            pass
        i = j
    if not expansions:
        return out
    names, conns = alphabet
    slices = validate_surface(s)
    tag = max_tag(s) + 1
    for i, sl in enumerate(slices):
        intros = []
        for name in names:
            intros.append(atom_birth(name, tag))
        for conn in conns & {"i", "bot"}:
            intros.append(pair_intro(conn, (), tag))
        darts = sorted(sl.pairing)
        for du in darts:
            intros.append(bend_fold(1, du, tag))
            intros.append(bend_fold(-1, du, tag))
            for dv in darts:
                if du != dv and sl.pairing[du] != dv:
                    for conn in conns & {"tensor", "par"}:
                        intros.append(pair_intro(conn, (du, dv), tag))
        for intro in intros:
            try:
                mid, info = apply_event(sl, intro)
            except Exception:
                continue
            fresh = set(info.created_nodes)
            for j in range(i, len(s.events) + 1):
                for elim in _elims_against(s, i, j, intro, fresh):
                    m = Move("zigzag-expand", (i, j, intro, elim))
                    out.append(m)
    return out


def _elims_against(s: Surface, i: int, j: int, intro: Event, fresh: set[int]):
    """Candidate elim events at position j consuming one fresh node."""
    ev = list(s.events)
    ev.insert(i, intro)
    cur = s.source
    try:
        for e in ev[: j + 1]:
            cur, _ = apply_event(cur, e)
    except Exception:
        return
    tag = intro.tag + 1
    alive_fresh = [n for n in fresh if n in cur.nodes]
    if not alive_fresh:
        return
    if intro.kind == BEND_FOLD:
        for n in alive_fresh:
            yield bend_unfold(n, tag)
        return
    for n in alive_fresh:
        nk = cur.nodes[n].kind
        for m, mnode in sorted(cur.nodes.items()):
            mk = mnode.kind
            if m == n or m in fresh:
                continue
            if intro.kind == ATOM_BIRTH and mk[0] == "black" and \
                    mk[1] == nk[1] and mk[2] != nk[2]:
                pair = (n, m) if nk[2] == "suc" else (m, n)
                yield atom_death(nk[1], pair[0], pair[1], tag)
            if intro.kind == PAIR_INTRO:
                conn = intro.payload[0]
                if nk == ("red", conn) and mk[0] == BLUE:
                    yield pair_elim(conn, n, m, tag)
                if nk[0] == BLUE and mk == ("red", conn):
                    yield pair_elim(conn, m, n, tag)


def _alphabet(a: Surface, b: Surface):
    names = set()
    conns = set()
    for s in (a, b):
        cur = s.source
        for d in [cur] + [cur := apply_event(cur, e)[0] for e in s.events]:
            for node in d.nodes.values():
                if node.kind[0] == "black":
                    names.add(node.kind[1])
                elif node.kind[0] == "red":
                    conns.add(node.kind[1])
    return names, conns


def _bidirectional_search(a: Surface, b: Surface, budget: int,
                          expansions: bool = True):
    alphabet = _alphabet(a, b)
    start_a, start_b = canonical_event_order(a), canonical_event_order(b)
    fa = {nf_key(start_a): (start_a, [])}
    fb = {nf_key(start_b): (start_b, [])}
    if set(fa) & set(fb):
        return [], []
    depth = 0
    while depth < budget:
        # expand the smaller frontier by one move
        grow_a = len(fa) <= len(fb)
        frontier = fa if grow_a else fb
        new = {}
        for key, (surf, path) in list(frontier.items()):
            if len(path) * 2 >= budget:
                continue
            for m in _enumerate_moves(surf, alphabet, expansions):
                try:
                    nxt = canonical_event_order(apply_move(surf, m))
                except MoveError:
                    continue
                k = nf_key(nxt)
                if k in frontier or k in new:
                    continue
                new[k] = (nxt, path + [m])
        frontier.update(new)
        depth += 1
        meet = set(fa) & set(fb)
        if meet:
            k = sorted(meet)[0]
            return fa[k][1], fb[k][1]
        if not new:
            return None
    return None
