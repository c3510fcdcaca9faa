"""Brute-force move-closure oracle, independent of the decision pipeline.

Explores the full closure of a surface under terminating moves
(zigzag reductions, coherent merges, exchanges), identifying states by
the shared structural-equality key.  Two surfaces are
oracle-equivalent when their closures share a state.
"""

from seqsurf.equivalence import (
    Move, MoveError, apply_move, nf_key, _infos, _zigzag_shared,
)
from seqsurf.surfaces import COHERENT, canonical_event_order, surface_key


def one_step_moves(s):
    n = len(s.events)
    infos = _infos(s)
    moves = []
    for j in range(n):
        for i in range(j):
            if _zigzag_shared(s, infos, i, j) is not None:
                moves.append(Move("zigzag-reduce", (i, j)))
    for i in range(n - 1):
        moves.append(Move("exchange", (i,)))
    i = 0
    while i < n:
        if s.events[i].kind != COHERENT:
            i += 1
            continue
        j = i
        while j < n and s.events[j].kind == COHERENT:
            j += 1
        from seqsurf.equivalence import _merge_replacements, _event_key
        try:
            repl = _merge_replacements(s, i, j)
            if tuple(_event_key(e) for e in repl) != \
                    tuple(_event_key(e) for e in s.events[i:j]):
                moves.append(Move("coherent-merge", (i, j, repl)))
        except MoveError:
            pass
        i = j
    return moves


def closure(s, max_states: int = 4000):
    start = canonical_event_order(s)
    seen = {nf_key(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for t in frontier:
            for m in one_step_moves(t):
                try:
                    t2 = canonical_event_order(apply_move(t, m))
                except MoveError:
                    continue
                k = nf_key(t2)
                if k in seen:
                    continue
                seen.add(k)
                nxt.append(t2)
                if len(seen) > max_states:
                    raise RuntimeError("oracle state cap exceeded")
        frontier = nxt
    return seen


def oracle_equivalent(a, b) -> bool:
    return bool(closure(a) & closure(b))
