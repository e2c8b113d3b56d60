"""Command-line interface.

Exit codes: 0 success, 1 ``distinct`` verdict or failed map check,
2 parse or usage error, 3 non-pure braid, 4 strand-count mismatch,
5 Gauss linking disagrees with the crossing count, 6 operation undefined
for the input (e.g. coordinates of a non-Borromean link).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import braid as br
from . import geometry as geo
from . import operad as op
from . import stringlink as sl
from .errors import (
    BraidSyntaxError,
    DomainError,
    HSLinkError,
    NotPureBraidError,
    RankMismatchError,
)
from .report import SCHEMA_VERSION, build_report

EXIT_OK, EXIT_DISTINCT, EXIT_PARSE, EXIT_NOT_PURE, EXIT_MISMATCH, EXIT_LK, EXIT_DOMAIN = range(7)


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_text(arg: str) -> str:
    """A literal, or the contents of a file when ``arg`` names one."""
    path = Path(arg)
    if not arg.lstrip().startswith(("n=", "k=")) and path.is_file():
        return path.read_text()
    return arg


def _link(arg: str) -> sl.StringLink:
    return sl.StringLink(br.parse(_read_text(arg)))


def _braid(arg: str) -> br.BraidWord:
    return br.parse(_read_text(arg))


def _emit(args, text: str, data: dict) -> None:
    if args.format == "structured":
        data = {"schema_version": SCHEMA_VERSION, "command": args.command, **data}
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


def _parse_mu(values: Sequence[str] | None) -> list[tuple[int, ...]] | None:
    if not values:
        return None
    out = []
    for v in values:
        try:
            out.append(tuple(int(x) for x in v.split(",")))
        except ValueError as exc:
            raise _Fail(EXIT_PARSE, f"bad --mu value {v!r}") from exc
    return out


def cmd_invariants(args) -> int:
    rep = build_report(_link(args.braid), _parse_mu(args.mu))
    if args.format == "structured":
        print(rep.to_json())
    else:
        print(rep.to_text())
    return EXIT_OK


def cmd_equal(args) -> int:
    a, b = _link(args.a), _link(args.b)
    diff = sl.first_difference(a, b)
    if diff is None:
        _emit(args, "equal", {"verdict": "equal", "witness": None})
        return EXIT_OK
    idx, va, vb = diff
    label = f"mu({','.join(map(str, idx))})"
    _emit(
        args,
        f"distinct\n{label}: {va} != {vb}",
        {"verdict": "distinct", "witness": {"indices": list(idx), "left": va, "right": vb}},
    )
    return EXIT_DISTINCT


def cmd_delete(args) -> int:
    out = sl.delta_i(_link(args.braid), args.strand)
    _emit(args, str(out), {"braid": str(out)})
    return EXIT_OK


def cmd_borromean(args) -> int:
    sigma = _link(args.braid)
    flag = sl.is_borromean(sigma)
    coords = sl.borromean_coordinates(sigma) if flag and sigma.n >= 2 else None
    text = "true" if flag else "false"
    if coords is not None:
        text += f"\ncoords: ({', '.join(map(str, coords))})"
    _emit(args, text, {"borromean": flag, "coords": None if coords is None else list(coords)})
    return EXIT_OK


def cmd_coords(args) -> int:
    coords = sl.borromean_coordinates(_link(args.braid))
    _emit(args, f"({', '.join(map(str, coords))})", {"coords": list(coords)})
    return EXIT_OK


def cmd_stack(args) -> int:
    out = sl.stack(_link(args.a), _link(args.b))
    _emit(args, str(out), {"braid": str(out)})
    return EXIT_OK


def cmd_invert(args) -> int:
    out = sl.inverse(_link(args.braid))
    _emit(args, str(out), {"braid": str(out)})
    return EXIT_OK


def _export(args, obj) -> None:
    if args.export:
        geo.export(obj, args.export, "json" if args.format == "structured" else None)


def cmd_realize(args) -> int:
    b = _braid(args.braid)
    br.require_pure(b)
    g = geo.realize(b)
    _export(args, g)
    summary = {
        "n": g.n,
        "vertices_per_strand": len(g.ts),
        "min_separation": g.min_segment_separation(),
        "read_back": str(geo.read_braid(g)),
    }
    if args.format == "structured":
        summary["link"] = geo.link_to_dict(g)
    text = "\n".join(f"{k}: {v}" for k, v in summary.items())
    _emit(args, text, summary)
    return EXIT_OK


def cmd_closure(args) -> int:
    b = _braid(args.braid)
    br.require_pure(b)
    link = geo.closure_b(geo.realize(b))
    _export(args, link)
    data = {"n": link.n, "vertices_per_component": [len(c) for c in link.components],
            "min_distance": geo.min_component_distance(link)}
    if args.format == "structured":
        data["link"] = geo.closed_to_dict(link)
    _emit(args, "\n".join(f"{k}: {v}" for k, v in data.items()), data)
    return EXIT_OK


def cmd_lk(args) -> int:
    b = _braid(args.braid)
    br.require_pure(b)
    for v in (args.i, args.j):
        if not 1 <= v <= b.strands or args.i == args.j:
            raise _Fail(EXIT_PARSE, f"need two distinct strands in 1..{b.strands}")
    value, rounded = geo.gauss_linking(geo.closure_b(geo.realize(b)), args.i, args.j, deterministic=args.deterministic)
    crossing = br.crossing_linking(b, args.i, args.j)
    agree = rounded == crossing and abs(value - rounded) <= 0.05
    text = f"{value!r}\n{rounded}"
    if not agree:
        text += f"\ndisagrees with crossing count {crossing}"
    _emit(args, text, {"gauss": value, "rounded": rounded, "crossing": crossing, "agree": agree})
    return EXIT_OK if agree else EXIT_LK


def cmd_verify_map(args) -> int:
    b = _braid(args.braid)
    br.require_pure(b)
    report = geo.verify_conditions(geo.kappa_sample(geo.realize(b), args.resolution))
    summary = report.summary()
    text = "\n".join(f"{c}: {'ok' if k == 0 else f'{k} violations'}" for c, k in summary.items())
    _emit(args, text, {"ok": report.ok, "violations": summary})
    return EXIT_OK if report.ok else EXIT_DISTINCT


def _geom_input(arg: str) -> geo.GeomStringLink:
    path = Path(arg)
    if path.is_file():
        text = path.read_text()
        if path.suffix == ".json":
            return geo.link_from_dict(json.loads(text))
        if not text.lstrip().startswith("n="):
            return geo.link_from_lines(text)
        arg = text
    b = br.parse(arg)
    br.require_pure(b)
    return geo.realize(b)


def cmd_operad_act(args) -> int:
    ivs = op.parse_intervals(_read_text(args.intervals))
    links = [_geom_input(a) for a in args.inputs]
    g = op.act_on_links(ivs, links)
    _export(args, g)
    out = geo.read_braid(g)
    data = {"braid": str(out), "vertices_per_strand": len(g.ts)}
    if args.format == "structured":
        data["link"] = geo.link_to_dict(g)
    _emit(args, str(out), data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--export", metavar="PATH")
    common.add_argument("--resolution", type=int, default=geo.DEFAULT_RESOLUTION)
    common.add_argument("--deterministic", action="store_true", help="fixed summation order")
    common.add_argument("--mu", action="append", metavar="I,J,...", help="select a Milnor invariant to print")

    p = argparse.ArgumentParser(prog="hslink", description="Homotopy string link toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *positionals):
        s = sub.add_parser(name, parents=[common])
        for pos, kw in positionals:
            s.add_argument(pos, **kw)
        s.set_defaults(func=func)

    braid = ("braid", {"help": "braid text or file"})
    add("invariants", cmd_invariants, braid)
    add("equal", cmd_equal, ("a", {}), ("b", {}))
    add("delete", cmd_delete, braid, ("strand", {"type": int}))
    add("borromean", cmd_borromean, braid)
    add("coords", cmd_coords, braid)
    add("stack", cmd_stack, ("a", {}), ("b", {}))
    add("invert", cmd_invert, braid)
    add("realize", cmd_realize, braid)
    add("closure", cmd_closure, braid)
    add("lk", cmd_lk, braid, ("i", {"type": int}), ("j", {"type": int}))
    add("verify-map", cmd_verify_map, braid)
    add("operad-act", cmd_operad_act, ("intervals", {}), ("inputs", {"nargs": "+"}))
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BraidSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotPureBraidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PURE
    except RankMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (HSLinkError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
