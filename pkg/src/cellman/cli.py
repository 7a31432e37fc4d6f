"""Command-line surface: every subcommand wraps exactly one library call.

Exit codes: 0 for success or a true verdict; 1 for a false/negative verdict
(invalid lattice, no isomorphism, blocked shift, failed search, improper
input to quotient, ...); 2 for usage and parse errors.  ``--json`` switches
report-style subcommands to machine-readable output carrying ``"schema": 1``.
Subcommands that produce a lattice or diagram write it to ``-o/--output``
or, by default, to stdout.  ``CELLMAN_THREADS`` caps internal parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as cio
from .classify import (
    brute_force_enumerate,
    count_neighbourly_reducible_excess2,
    count_neighbourly_reducible_excess2_printed,
    enumerate_excess1,
    enumerate_reducible_excess2,
)
from .constructions import barycentric, cartesian, dual, join, tensor
from .gale import (
    SearchOptions,
    gale_search,
    gale_validate,
    shift_point,
    sphere_from_diagram,
)
from .lattice import (
    InvalidParameter,
    LatticeError,
    euler_char_of_bsd,
    is_isomorphic,
    is_neighbourly,
    validate,
)
from .symmetry import decompose, inflate, quotient, transposition_classes

__all__ = ["main"]


def _emit(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _print_json(payload: dict) -> None:
    print(json.dumps({"schema": 1, **payload}))


def _info_line(L) -> str:
    fv = ",".join(str(c) for c in L.f_vector)
    return f"dim={L.dim} n={L.n} excess={L.excess} f=({fv})"


def _report_lines(report) -> list[str]:
    lines = []
    for tag, witnesses in report.violations:
        shown = " ".join("(" + ",".join(w) + ")" for w in witnesses)
        lines.append(f"{tag}: {shown}")
    return lines


# ---------------------------------------------------------------------------
# handlers


def cmd_validate(args) -> int:
    L = cio.load_lattice(args.file, raw=True)
    report = validate(L)
    if args.json:
        _print_json(
            {
                "valid": report.verdict,
                "violations": [[tag, [list(w) for w in ws]] for tag, ws in report.violations],
            }
        )
    else:
        print("valid" if report else "invalid")
        for line in _report_lines(report):
            print(line)
    return 0 if report else 1


def cmd_info(args) -> int:
    L = cio.load_lattice(args.file)
    if args.json:
        _print_json(
            {
                "dim": L.dim,
                "n": L.n,
                "excess": L.excess,
                "f_vector": list(L.f_vector),
            }
        )
    else:
        print(_info_line(L))
    return 0


def cmd_dual(args) -> int:
    L = cio.load_lattice(args.file)
    _emit(cio.dumps_lattice(dual(L)), args.output)
    return 0


def cmd_op(args) -> int:
    fn = {"tensor": tensor, "join": join, "cartesian": cartesian}[args.kind]
    A = cio.load_lattice(args.a)
    B = cio.load_lattice(args.b)
    _emit(cio.dumps_lattice(fn(A, B)), args.output)
    return 0


def cmd_bsd(args) -> int:
    L = cio.load_lattice(args.file)
    if args.euler:
        chi = euler_char_of_bsd(L)
        if args.json:
            _print_json({"euler": chi})
        else:
            print(chi)
        return 0
    _emit(cio.dumps_lattice(barycentric(L)), args.output)
    return 0


def cmd_classes(args) -> int:
    L = cio.load_lattice(args.file)
    classes = transposition_classes(L)
    if args.json:
        _print_json({"classes": [list(c) for c in classes]})
    else:
        for c in classes:
            print(",".join(c))
    return 0


def cmd_decompose(args) -> int:
    L = cio.load_lattice(args.file)
    dec = decompose(L)
    if args.output:
        cio.save_lattice(dec.irreducible, args.output)
    if args.json:
        _print_json(
            {
                "spheres": [list(c) for c in dec.spheres],
                "irreducible": {
                    "dim": dec.irreducible.dim,
                    "n": dec.irreducible.n,
                    "excess": dec.irreducible.excess,
                },
            }
        )
    else:
        for c in dec.spheres:
            print("sphere " + ",".join(c))
        print("irreducible " + _info_line(dec.irreducible))
    return 0


def cmd_quotient(args) -> int:
    L = cio.load_lattice(args.file)
    _emit(cio.dumps_lattice(quotient(L)), args.output)
    return 0


def _parse_multiplicity(text: str) -> dict:
    mult: dict[str, int] = {}
    if not text.strip():
        return mult
    for part in text.split(","):
        if "=" not in part:
            raise InvalidParameter(f"bad multiplicity term {part!r} (expected label=count)")
        lab, _, count = part.partition("=")
        lab = lab.strip()
        count = count.strip()
        if not lab or not count.isdigit() or int(count) < 1:
            raise InvalidParameter(f"bad multiplicity term {part!r} (expected label=count, count >= 1)")
        if lab in mult:
            raise InvalidParameter(f"label {lab!r} given twice in multiplicity map")
        mult[lab] = int(count)
    return mult


def cmd_inflate(args) -> int:
    L = cio.load_lattice(args.file)
    mult = _parse_multiplicity(args.multiplicity)
    _emit(cio.dumps_lattice(inflate(L, mult)), args.output)
    return 0


def cmd_iso(args) -> int:
    A = cio.load_lattice(args.a)
    B = cio.load_lattice(args.b)
    mapping = is_isomorphic(A, B)
    if args.json:
        _print_json({"isomorphic": mapping is not None, "mapping": mapping})
    else:
        print("isomorphic" if mapping is not None else "not isomorphic")
    return 0 if mapping is not None else 1


def cmd_neighbourly(args) -> int:
    L = cio.load_lattice(args.file)
    verdict = is_neighbourly(L)
    if args.json:
        _print_json({"neighbourly": verdict})
    else:
        print("neighbourly" if verdict else "not neighbourly")
    return 0 if verdict else 1


def cmd_enumerate(args) -> int:
    if args.excess == 1:
        if args.neighbourly:
            raise InvalidParameter("--neighbourly applies only to --excess 2")
        items = enumerate_excess1(args.dim)
    else:
        items = enumerate_reducible_excess2(args.dim, neighbourly=args.neighbourly)
        if args.neighbourly:
            proof_form = count_neighbourly_reducible_excess2(args.dim)
            printed_form = count_neighbourly_reducible_excess2_printed(args.dim)
            if proof_form != printed_form:
                print(
                    f"note: closed forms disagree at dim {args.dim}: proof form {proof_form}, "
                    f"printed form {printed_form}; enumeration gives {len(items)}",
                    file=sys.stderr,
                )
    if args.out:
        cio.write_catalog(items, args.out)
    if args.json:
        payload = {"count": len(items)}
        if not args.count_only:
            payload["items"] = [
                {"family": it.family, "params": list(it.params)} for it in items
            ]
        _print_json(payload)
    elif args.count_only:
        print(len(items))
    else:
        for it in items:
            print(it.describe())
    return 0


def cmd_oracle(args) -> int:
    found = brute_force_enumerate(args.dim, args.vertices)
    if args.json:
        _print_json(
            {"count": len(found), "f_vectors": [list(L.f_vector) for L in found]}
        )
    else:
        print(f"count={len(found)}")
        for L in found:
            print(_info_line(L))
    return 0


def cmd_gale_validate(args) -> int:
    G = cio.load_diagram(args.file)
    report = gale_validate(G)
    if args.json:
        _print_json(
            {
                "valid": report.verdict,
                "violations": [[tag, [list(w) for w in ws]] for tag, ws in report.violations],
            }
        )
    else:
        print("valid" if report else "invalid")
        for line in _report_lines(report):
            print(line)
    return 0 if report else 1


def cmd_gale_sphere(args) -> int:
    G = cio.load_diagram(args.file)
    _emit(cio.dumps_lattice(sphere_from_diagram(G)), args.output)
    return 0


def cmd_gale_search(args) -> int:
    L = cio.load_lattice(args.file)
    G = gale_search(L, SearchOptions())
    if G is None:
        print("no diagram found")
        return 1
    _emit(cio.dumps_diagram(G), args.output)
    return 0


def cmd_gale_shift(args) -> int:
    G = cio.load_diagram(args.file)
    _emit(cio.dumps_diagram(shift_point(G, args.label, args.ray)), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    report_flags = argparse.ArgumentParser(add_help=False)
    report_flags.add_argument("--json", action="store_true", help="machine-readable output")
    out_flag = argparse.ArgumentParser(add_help=False)
    out_flag.add_argument("-o", "--output", metavar="PATH", help="write result here instead of stdout")

    p = argparse.ArgumentParser(
        prog="cellman",
        description="Ranked face lattices: constructions, classification, and circle-diagram certificates.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sp = sub.add_parser("validate", parents=[report_flags], help="check the pseudomanifold axioms")
    sp.add_argument("file", help="lattice file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("info", parents=[report_flags], help="dimension, vertex count, excess, f-vector")
    sp.add_argument("file", help="lattice file")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("dual", parents=[out_flag], help="opposite lattice")
    sp.add_argument("file", help="lattice file")
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("op", parents=[out_flag], help="binary product of two lattices")
    sp.add_argument("kind", choices=["tensor", "join", "cartesian"])
    sp.add_argument("a", help="left operand lattice file")
    sp.add_argument("b", help="right operand lattice file")
    sp.set_defaults(func=cmd_op)

    sp = sub.add_parser(
        "bsd", parents=[report_flags, out_flag], help="barycentric subdivision (or its Euler characteristic)"
    )
    sp.add_argument("file", help="lattice file")
    sp.add_argument("--euler", action="store_true", help="print the subdivision's Euler characteristic instead")
    sp.set_defaults(func=cmd_bsd)

    sp = sub.add_parser("classes", parents=[report_flags], help="vertex classes of the swap relation")
    sp.add_argument("file", help="lattice file")
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser(
        "decompose", parents=[report_flags, out_flag], help="split off sphere join factors (-o: irreducible part)"
    )
    sp.add_argument("file", help="lattice file")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("quotient", parents=[out_flag], help="lattice on the swap classes")
    sp.add_argument("file", help="lattice file")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("inflate", parents=[out_flag], help="replace vertices by copies")
    sp.add_argument("file", help="lattice file")
    sp.add_argument(
        "multiplicity",
        nargs="?",
        default="",
        help='copy counts as "a=2,b=3"; unlisted vertices keep one copy',
    )
    sp.set_defaults(func=cmd_inflate)

    sp = sub.add_parser("iso", parents=[report_flags], help="test two lattices for isomorphism")
    sp.add_argument("a", help="lattice file")
    sp.add_argument("b", help="lattice file")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("neighbourly", parents=[report_flags], help="test whether every vertex pair spans a face")
    sp.add_argument("file", help="lattice file")
    sp.set_defaults(func=cmd_neighbourly)

    sp = sub.add_parser("enumerate", parents=[report_flags], help="classified lattices for a given excess and dimension")
    sp.add_argument("--excess", type=int, choices=[1, 2], required=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--neighbourly", action="store_true", help="excess 2 only: keep neighbourly items")
    sp.add_argument("--count-only", action="store_true", help="print just the number of items")
    sp.add_argument("--out", metavar="DIR", help="also write the items and a manifest into DIR")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("oracle", parents=[report_flags], help="brute-force enumeration at tiny parameters")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--vertices", type=int, required=True)
    sp.set_defaults(func=cmd_oracle)

    gp = sub.add_parser("gale", help="circle-diagram certificates for excess-2 lattices")
    gsub = gp.add_subparsers(dest="gale_command", required=True, metavar="SUBCOMMAND")

    sp = gsub.add_parser("validate", parents=[report_flags], help="check the hemisphere condition")
    sp.add_argument("file", help="diagram file")
    sp.set_defaults(func=cmd_gale_validate)

    sp = gsub.add_parser("sphere", parents=[out_flag], help="lattice generated by a diagram")
    sp.add_argument("file", help="diagram file")
    sp.set_defaults(func=cmd_gale_sphere)

    sp = gsub.add_parser("search", parents=[out_flag], help="find a diagram generating the given lattice")
    sp.add_argument("file", help="lattice file")
    sp.set_defaults(func=cmd_gale_search)

    sp = gsub.add_parser("shift", parents=[out_flag], help="move one point along an empty arc")
    sp.add_argument("file", help="diagram file")
    sp.add_argument("label", help="vertex to move")
    sp.add_argument("ray", type=int, help="destination ray")
    sp.set_defaults(func=cmd_gale_shift)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (cio.ParseError, InvalidParameter) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except LatticeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
