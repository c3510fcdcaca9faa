"""Command line interface.

Commands: parse, compile, equiv, project, render.  Exit codes:
0 success (equiv: equivalent), 1 usage error, 2 validation failure,
3 unknown within budget.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .compiler import CompileError, compile_proof
from .equivalence import check_witness, decide
from .formulas import ParseError, print_sequent
from .proofs import expand_derived, parse_proof, print_proof, validate_proof
from .proofnets import ProjectionError, emit_net, project
from .render import (
    render_diagram_svg, render_diagram_tikz, render_net_svg, render_net_tikz,
    render_slices_svg, render_slices_tikz,
)
from .serialize import (
    FormatError, surface_from_text, surface_to_text, witness_from_text,
    witness_to_text,
)
from .surfaces import SurfaceError, bottom_slice


def _load_proof(path: str):
    text = Path(path).read_text()
    proof = parse_proof(text)
    diags = validate_proof(proof)
    return proof, diags


def cmd_parse(args) -> int:
    try:
        proof, diags = _load_proof(args.path)
    except (ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    for d in diags:
        print(f"invalid: {d}", file=sys.stderr)
    if diags:
        return 2
    sys.stdout.write(print_proof(expand_derived(proof) if args.expand else proof))
    return 0


def cmd_compile(args) -> int:
    try:
        proof, diags = _load_proof(args.path)
        if diags:
            for d in diags:
                print(f"invalid: {d}", file=sys.stderr)
            return 2
        surface = compile_proof(expand_derived(proof))
    except (ParseError, CompileError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = surface_to_text(surface, proof.conclusion)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _load_surface(path: str):
    return surface_from_text(Path(path).read_text())


def cmd_equiv(args) -> int:
    try:
        a, _ = _load_surface(args.a)
        b, _ = _load_surface(args.b)
    except (OSError, FormatError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.witness:
        w = witness_from_text(Path(args.witness).read_text())
        ok, trace = check_witness(a, b, w)
        for line in trace:
            print(line)
        print("EQUIVALENT" if ok else "REJECTED")
        return 0 if ok else 2
    verdict = decide(a, b, args.budget)
    if verdict.status == "equivalent":
        print("EQUIVALENT")
        if args.out:
            Path(args.out).write_text(witness_to_text(verdict.witness))
        return 0
    if verdict.status == "not-comparable":
        print(f"NOT-COMPARABLE: {verdict.reason}")
        return 2
    print(f"UNKNOWN: {verdict.reason}")
    return 3


def cmd_project(args) -> int:
    try:
        surface, conclusion = _load_surface(args.path)
        if conclusion is None:
            print("error: surface file carries no conclusion sequent", file=sys.stderr)
            return 2
        net = project(surface, conclusion)
        text = emit_net(net, args.format)
    except (OSError, FormatError, ProjectionError, SurfaceError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_render(args) -> int:
    try:
        surface, conclusion = _load_surface(args.path)
        svg = args.format == "svg"
        if args.view == "conclusion":
            d = bottom_slice(surface)
            text = render_diagram_svg(d) if svg else render_diagram_tikz(d)
        elif args.view == "slices":
            text = render_slices_svg(surface) if svg else render_slices_tikz(surface)
        else:
            if conclusion is None:
                print("error: surface file carries no conclusion sequent",
                      file=sys.stderr)
                return 2
            net = project(surface, conclusion)
            text = render_net_svg(net) if svg else render_net_tikz(net)
    except (OSError, FormatError, ProjectionError, SurfaceError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="seqsurf",
        description="Sequent proofs as 3d surface diagrams.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("parse", help="check a proof file")
    p.add_argument("path")
    p.add_argument("--expand", action="store_true",
                   help="expand derived rules before printing")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("compile", help="compile a proof file to a surface")
    p.add_argument("path")
    p.add_argument("--out", "-o")
    p.set_defaults(fn=cmd_compile)

    p = sub.add_parser("equiv", help="decide equivalence of two surfaces")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--witness", help="check this witness file instead of searching")
    p.add_argument("--search", action="store_true",
                   help="(implied) search when normal forms differ")
    p.add_argument("--budget", type=int, default=0)
    p.add_argument("--out", "-o", help="write the found witness here")
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("project", help="project a surface to a proof net")
    p.add_argument("path")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out", "-o")
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("render", help="render a surface")
    p.add_argument("path")
    p.add_argument("--format", choices=("svg", "tikz"), default="svg")
    p.add_argument("--view", choices=("conclusion", "slices", "net"),
                   default="conclusion")
    p.add_argument("--out", "-o")
    p.set_defaults(fn=cmd_render)

    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
