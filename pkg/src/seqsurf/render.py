"""SVG and TikZ emitters for diagrams, slice filmstrips and proof nets.

Layout is purely presentational: nodes sit on a grid computed by a
breadth-first layering of each component, wires are straight lines,
and bends show as small half-turn arcs.  Output is deterministic.
"""

from __future__ import annotations

from .diagrams import BEND, BLACK, BLUE, RED, Diagram2, canonical_label, sequent_diagram
from .formulas import Sequent
from .proofnets import ProofNet
from .surfaces import Surface, validate_surface

XSTEP = 60.0
YSTEP = 40.0
MARGIN = 30.0


def layout_diagram(d: Diagram2) -> dict:
    """Positions for nodes and boundary stubs, plus the edge list."""
    _, nmap, dmap = canonical_label(d)
    order = sorted(d.nodes, key=lambda n: nmap[n])
    pos: dict = {}
    x_off = 0.0
    seen: set[int] = set()
    for root in order:
        if root in seen:
            continue
        levels: dict[int, int] = {root: 0}
        queue = [root]
        seen.add(root)
        comp = [root]
        while queue:
            n = queue.pop(0)
            for p in d.nodes[n].ports:
                q = d.pairing[p]
                o = d.owner(q)
                if o is None or o[0] in seen:
                    continue
                seen.add(o[0])
                levels[o[0]] = levels[n] + 1
                comp.append(o[0])
                queue.append(o[0])
        rows: dict[int, int] = {}
        width = 0
        for n in sorted(comp, key=lambda n: (levels[n], nmap[n])):
            lv = levels[n]
            rows[lv] = rows.get(lv, 0) + 1
            pos[("n", n)] = (x_off + lv * XSTEP, rows[lv] * YSTEP)
            width = max(width, lv)
        x_off += (width + 2) * XSTEP
    for i, s in enumerate(d.boundary):
        q = d.pairing[s]
        o = d.owner(q)
        if o is not None and ("n", o[0]) in pos:
            x, y = pos[("n", o[0])]
            pos[("b", s)] = (x - XSTEP / 2, y + 10 + 4 * i)
        else:
            pos[("b", s)] = (x_off + i * 20.0, YSTEP)
    edges = []
    for e in sorted(sorted(x) for x in d.edges()):
        a, b = e
        pa = _end_pos(d, pos, a)
        pb = _end_pos(d, pos, b)
        edges.append((a, b, pa, pb))
    return {"pos": pos, "edges": edges}


def _end_pos(d: Diagram2, pos: dict, dart: int):
    o = d.owner(dart)
    if o is None:
        return pos[("b", dart)]
    return pos[("n", o[0])]


_SVG_COLORS = {BLUE: "#1f4fa0", RED: "#c03030", BLACK: "#000000", BEND: "#808080"}


def _svg_node(d: Diagram2, nid: int, x: float, y: float) -> str:
    n = d.nodes[nid]
    color = _SVG_COLORS[n.kind[0]]
    if n.kind[0] == BLACK:
        label = f"{n.kind[1]}"
        return (f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="{color}"/>'
                f'<text x="{x + 6:.1f}" y="{y - 6:.1f}" font-size="11">{label}</text>')
    if n.kind[0] == BEND:
        return (f'<path d="M {x - 5:.1f} {y:.1f} A 5 5 0 0 1 {x + 5:.1f} {y:.1f}"'
                f' stroke="{color}" fill="none" stroke-width="2"/>')
    label = ""
    if n.kind[0] == RED:
        label = {"tensor": "(x)", "par": "(+)", "i": "I", "bot": "bot"}[n.kind[1]]
    text = (f'<text x="{x + 6:.1f}" y="{y - 6:.1f}" font-size="10"'
            f' fill="{color}">{label}</text>') if label else ""
    return f'<circle cx="{x:.1f}" cy="{y:.1f}" r="5" fill="{color}"/>{text}'


def render_diagram_svg(d: Diagram2, y_shift: float = 0.0, standalone: bool = True) -> str:
    if d.is_empty():
        body = ['<text x="10" y="25" font-size="11">(empty slice)</text>']
        w, h = 140.0, 40.0
    else:
        lay = layout_diagram(d)
        body = []
        for a, b, (xa, ya), (xb, yb) in lay["edges"]:
            body.append(f'<line x1="{xa:.1f}" y1="{ya + y_shift:.1f}"'
                        f' x2="{xb:.1f}" y2="{yb + y_shift:.1f}"'
                        f' stroke="#333333" stroke-width="1.5"/>')
        for key, (x, y) in sorted(lay["pos"].items(), key=lambda kv: str(kv[0])):
            if key[0] == "n":
                body.append(_svg_node(d, key[1], x, y + y_shift))
            else:
                body.append(f'<circle cx="{x:.1f}" cy="{y + y_shift:.1f}" r="2"'
                            f' fill="none" stroke="#999999"/>')
        xs = [p[0] for p in lay["pos"].values()]
        ys = [p[1] for p in lay["pos"].values()]
        w, h = max(xs) + MARGIN, max(ys) + MARGIN
    if not standalone:
        return "\n".join(body)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w + MARGIN:.0f}"'
            f' height="{h + y_shift + MARGIN:.0f}">\n'
            + "\n".join(body) + "\n</svg>\n")


def render_slices_svg(s: Surface) -> str:
    slices = validate_surface(s)
    frames = []
    y = 0.0
    width = 200.0
    for i, sl in enumerate(slices):
        frames.append(f'<text x="5" y="{y + 14:.1f}" font-size="10"'
                      f' fill="#666666">slice {i}</text>')
        frames.append(render_diagram_svg(sl, y_shift=y + 20.0, standalone=False))
        if not sl.is_empty():
            lay = layout_diagram(sl)
            ys = [p[1] for p in lay["pos"].values()]
            xs = [p[0] for p in lay["pos"].values()]
            y += max(ys) + 50.0
            width = max(width, max(xs) + 2 * MARGIN)
        else:
            y += 50.0
        frames.append(f'<line x1="0" y1="{y:.1f}" x2="{width:.1f}" y2="{y:.1f}"'
                      f' stroke="#dddddd"/>')
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}"'
            f' height="{y + MARGIN:.0f}">\n' + "\n".join(frames) + "\n</svg>\n")


def render_net_svg(net: ProofNet) -> str:
    ref = sequent_diagram(net.conclusion)
    d = ref.diagram
    lay = layout_diagram(d)
    body = [render_diagram_svg(d, standalone=False)]
    _, _, dmap = canonical_label(d)
    inv_d = {v: k for k, v in dmap.items()}
    for pair in sorted(net.links, key=sorted):
        a, b = sorted(pair)
        (xa, ya) = lay["pos"][("n", ref.leaves[a])]
        (xb, yb) = lay["pos"][("n", ref.leaves[b])]
        my = min(ya, yb) - 25.0
        body.append(f'<path d="M {xa:.1f} {ya:.1f} C {xa:.1f} {my:.1f},'
                    f' {xb:.1f} {my:.1f}, {xb:.1f} {yb:.1f}"'
                    f' stroke="#208020" fill="none" stroke-width="1.2"/>')
    for path, anchor, height in net.units:
        (xu, yu) = lay["pos"][("n", ref.leaves[path])]
        da = inv_d[anchor[0]]
        dbp = inv_d[anchor[1]]
        (xa, ya) = _end_pos(d, lay["pos"], da)
        (xb, yb) = _end_pos(d, lay["pos"], dbp)
        mx, my2 = (xa + xb) / 2, (ya + yb) / 2
        body.append(f'<line x1="{xu:.1f}" y1="{yu:.1f}" x2="{mx:.1f}" y2="{my2:.1f}"'
                    f' stroke="#806020" stroke-dasharray="3,3"/>')
        body.append(f'<text x="{(xu + mx) / 2:.1f}" y="{(yu + my2) / 2 - 3:.1f}"'
                    f' font-size="9" fill="#806020">h={height}</text>')
    xs = [p[0] for p in lay["pos"].values()]
    ys = [p[1] for p in lay["pos"].values()]
    w, h = max(xs) + 2 * MARGIN, max(ys) + 2 * MARGIN
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}"'
            f' height="{h:.0f}">\n' + "\n".join(body) + "\n</svg>\n")


# -- TikZ ----------------------------------------------------------------------

_TIKZ_STYLE = {
    BLUE: "fill=blue!70!black", RED: "fill=red!80!black",
    BLACK: "fill=black", BEND: "draw=gray",
}


def _tikz_coord(x: float, y: float) -> str:
    return f"({x / 40.0:.2f},{-y / 40.0:.2f})"


def render_diagram_tikz(d: Diagram2, standalone: bool = True) -> str:
    lines = []
    if d.is_empty():
        lines.append(r"\node at (0,0) {(empty slice)};")
    else:
        lay = layout_diagram(d)
        for a, b, (xa, ya), (xb, yb) in lay["edges"]:
            lines.append(rf"\draw {_tikz_coord(xa, ya)} -- {_tikz_coord(xb, yb)};")
        for key, (x, y) in sorted(lay["pos"].items(), key=lambda kv: str(kv[0])):
            if key[0] != "n":
                continue
            n = d.nodes[key[1]]
            style = _TIKZ_STYLE[n.kind[0]]
            if n.kind[0] == BLACK:
                lines.append(rf"\node[circle,{style},inner sep=1.6pt,"
                             rf"label=above:{{{n.kind[1]}}}] at {_tikz_coord(x, y)} {{}};")
            elif n.kind[0] == BEND:
                lines.append(rf"\draw[{style},thick] {_tikz_coord(x - 5, y)}"
                             rf" arc (180:0:0.12);")
            else:
                lines.append(rf"\node[circle,{style},inner sep=2pt]"
                             rf" at {_tikz_coord(x, y)} {{}};")
    body = "\n".join("  " + ln for ln in lines)
    if not standalone:
        return body
    return "\\begin{tikzpicture}\n" + body + "\n\\end{tikzpicture}\n"


def render_slices_tikz(s: Surface) -> str:
    slices = validate_surface(s)
    parts = []
    for i, sl in enumerate(slices):
        parts.append(f"% slice {i}")
        parts.append("\\begin{tikzpicture}")
        parts.append(render_diagram_tikz(sl, standalone=False))
        parts.append("\\end{tikzpicture}")
        parts.append("")
    return "\n".join(parts) + "\n"


def render_net_tikz(net: ProofNet) -> str:
    ref = sequent_diagram(net.conclusion)
    d = ref.diagram
    lay = layout_diagram(d)
    lines = [render_diagram_tikz(d, standalone=False)]
    _, _, dmap = canonical_label(d)
    inv_d = {v: k for k, v in dmap.items()}
    for pair in sorted(net.links, key=sorted):
        a, b = sorted(pair)
        (xa, ya) = lay["pos"][("n", ref.leaves[a])]
        (xb, yb) = lay["pos"][("n", ref.leaves[b])]
        lines.append(rf"  \draw[green!50!black] {_tikz_coord(xa, ya)}"
                     rf" to[bend left=40] {_tikz_coord(xb, yb)};")
    for path, anchor, height in net.units:
        (xu, yu) = lay["pos"][("n", ref.leaves[path])]
        (xa, ya) = _end_pos(d, lay["pos"], inv_d[anchor[0]])
        (xb, yb) = _end_pos(d, lay["pos"], inv_d[anchor[1]])
        mx, my = (xa + xb) / 2, (ya + yb) / 2
        lines.append(rf"  \draw[densely dotted,brown] {_tikz_coord(xu, yu)} --"
                     rf" node[midway,font=\tiny] {{h={height}}} {_tikz_coord(mx, my)};")
    return "\\begin{tikzpicture}\n" + "\n".join(lines) + "\n\\end{tikzpicture}\n"
