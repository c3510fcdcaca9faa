"""Text formats for diagrams, surfaces and witnesses (JSON documents).

Schemas are documented in docs/FORMATS.md.  All emitters are
deterministic: equal values produce byte-identical text.
"""

from __future__ import annotations

import json

from .diagrams import BEND, BLACK, BLUE, RED, Diagram2, Node, bend, black, blue, red
from .equivalence import Move, Witness
from .formulas import Sequent, parse_sequent, print_sequent
from .surfaces import COHERENT, Event, Surface


class FormatError(ValueError):
    pass


# -- diagrams ---------------------------------------------------------------

def diagram_to_data(d: Diagram2) -> dict:
    nodes = []
    for nid in sorted(d.nodes):
        n = d.nodes[nid]
        k = n.kind[0]
        if k == BLUE:
            entry = {"id": nid, "kind": "blue"}
        elif k == RED:
            entry = {"id": nid, "kind": "red", "conn": n.kind[1]}
        elif k == BLACK:
            entry = {"id": nid, "kind": "black", "atom": n.kind[1], "pol": n.kind[2]}
        else:
            entry = {"id": nid, "kind": "bend"}
        entry["ports"] = list(n.ports)
        nodes.append(entry)
    edges = sorted(sorted(e) for e in d.edges())
    return {"nodes": nodes, "edges": edges, "boundary": list(d.boundary)}


def diagram_from_data(data: dict) -> Diagram2:
    nodes = {}
    for entry in data["nodes"]:
        ports = tuple(entry["ports"])
        k = entry["kind"]
        if k == "blue":
            nodes[entry["id"]] = blue(ports)
        elif k == "red":
            nodes[entry["id"]] = red(entry["conn"], ports)
        elif k == "black":
            nodes[entry["id"]] = black(entry["atom"], entry["pol"], ports[0])
        elif k == "bend":
            nodes[entry["id"]] = bend(ports[0], ports[1])
        else:
            raise FormatError(f"unknown node kind {k!r}")
    pairing = {}
    for a, b in data["edges"]:
        pairing[a] = b
        pairing[b] = a
    return Diagram2(nodes, pairing, tuple(data["boundary"]))


def diagram_to_text(d: Diagram2) -> str:
    return json.dumps(diagram_to_data(d), indent=2, sort_keys=True) + "\n"


def diagram_from_text(text: str) -> Diagram2:
    return diagram_from_data(json.loads(text))


# -- events and surfaces -----------------------------------------------------

def event_to_data(e: Event) -> dict:
    out = {"kind": e.kind, "tag": e.tag, "site": list(e.site)}
    if e.kind == COHERENT:
        out["pattern"] = diagram_to_data(e.payload[0])
        out["replacement"] = diagram_to_data(e.payload[1])
    else:
        out["payload"] = list(e.payload)
    return out


def event_from_data(data: dict) -> Event:
    kind = data["kind"]
    site = tuple(data["site"])
    if kind == COHERENT:
        payload = (diagram_from_data(data["pattern"]),
                   diagram_from_data(data["replacement"]))
    else:
        payload = tuple(data["payload"])
    return Event(kind, payload, site, data["tag"])


def surface_to_data(s: Surface, conclusion: Sequent | None = None) -> dict:
    out = {
        "source": diagram_to_data(s.source),
        "events": [event_to_data(e) for e in s.events],
    }
    if conclusion is not None:
        out["conclusion"] = print_sequent(conclusion)
    return out


def surface_from_data(data: dict) -> tuple[Surface, Sequent | None]:
    s = Surface(diagram_from_data(data["source"]),
                tuple(event_from_data(e) for e in data["events"]))
    concl = None
    if "conclusion" in data:
        concl = parse_sequent(data["conclusion"])
    return s, concl


def surface_to_text(s: Surface, conclusion: Sequent | None = None) -> str:
    return json.dumps(surface_to_data(s, conclusion), indent=2, sort_keys=True) + "\n"


def surface_from_text(text: str) -> tuple[Surface, Sequent | None]:
    return surface_from_data(json.loads(text))


# -- witnesses ----------------------------------------------------------------

def move_to_data(m: Move) -> dict:
    if m.kind == "coherent-merge":
        start, end, replacements = m.data
        return {"kind": m.kind, "start": start, "end": end,
                "replacements": [event_to_data(e) for e in replacements]}
    if m.kind == "zigzag-expand":
        i, j, intro, elim = m.data
        return {"kind": m.kind, "at": i, "elim_at": j,
                "intro": event_to_data(intro), "elim": event_to_data(elim)}
    return {"kind": m.kind, "args": list(m.data)}


def move_from_data(data: dict) -> Move:
    kind = data["kind"]
    if kind == "coherent-merge":
        return Move(kind, (data["start"], data["end"],
                           tuple(event_from_data(e) for e in data["replacements"])))
    if kind == "zigzag-expand":
        return Move(kind, (data["at"], data["elim_at"],
                           event_from_data(data["intro"]),
                           event_from_data(data["elim"])))
    return Move(kind, tuple(data["args"]))


def witness_to_text(w: Witness) -> str:
    data = [{"side": side, **move_to_data(m)} for side, m in w.moves]
    return json.dumps({"moves": data}, indent=2, sort_keys=True) + "\n"


def witness_from_text(text: str) -> Witness:
    data = json.loads(text)
    moves = []
    for entry in data["moves"]:
        side = entry.pop("side")
        moves.append((side, move_from_data(entry)))
    return Witness(tuple(moves))
