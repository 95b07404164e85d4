"""Command-line interface: classification reports, lens-space and product
classification, geodesic queries, the self-verification suite, and SVG
rendering of the Farey disc.

Exit codes: 0 on success, 2 on invalid input, 3 when verification finds a
mismatch.  Report output is offered as json (schema_version 1), csv, or an
aligned text table; identical inputs produce byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .families import (
    ClassificationReport,
    EpsilonSymbol,
    Family,
    SADDLE_FAMILIES,
    SurfaceClass,
    classify_all,
    euler_characteristic,
)
from .graphs import Graph, bfs_geodesic_oracle, det2_neighbors_bounded, geodesic_in_What
from .paths import InvariantPath, SpecialPath, SpecialVertex
from .product_spaces import classify_lens
from .render import farey_disc_svg
from .ribbon import assemble, boundary_count, euler_char, is_orientable, schedule_of
from .slopes import (
    Matrix2,
    ParityClass,
    Slope,
    TraceClass,
    parity_class,
    trace_class,
)

SCHEMA_VERSION = "1"

VERIFY_FIXTURES = (
    Matrix2(5, 2, 2, 1),
    Matrix2(2, 1, 1, 1),
    Matrix2(1, 1, 1, 2),
    Matrix2(3, 1, 2, 1),
)

CSV_HEADER = "family,class,period,epsilon,genus,boundary,slope_num,slope_den,orientable"


class InputError(Exception):
    """Invalid command input; reported on stderr with exit code 2."""


def _parse_matrix(text: str) -> Matrix2:
    parts = text.split(",")
    if len(parts) != 4:
        raise InputError("matrix must be four integers a,b,c,d (row-major)")
    try:
        a, b, c, d = (int(p.strip()) for p in parts)
    except ValueError as exc:
        raise InputError(f"matrix entries must be integers: {exc}") from exc
    try:
        return Matrix2(a, b, c, d)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_slope(text: str) -> Slope:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Slope(int(num), int(den))
        return Slope(int(text), 1)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid slope {text!r}: {exc}") from exc


def _slope_json(s: Optional[Slope]) -> Optional[list[int]]:
    return None if s is None else [s.p, s.q]


def _surface_to_dict(sc: SurfaceClass) -> dict:
    return {
        "family": sc.family.value,
        "parity_class": None if sc.parity is None else int(sc.parity),
        "period": sc.period,
        "genus": sc.genus,
        "boundary_count": sc.boundary_count,
        "slope": _slope_json(sc.slope),
        "orientable": sc.orientable,
        "epsilon": None if sc.eps is None else list(sc.eps.bits),
        "sigma": None if sc.eps is None else list(sc.eps.sigma),
        "path": None if sc.path is None else [list(v.vector()) for v in sc.path.window],
        "special_path": None if sc.special is None else [
            [list(v.first.vector()), list(v.second.vector())] for v in sc.special.window
        ],
    }


def _surface_from_dict(data: dict, monodromy: Matrix2) -> SurfaceClass:
    family = Family(data["family"])
    path = None
    if data["path"] is not None:
        window = tuple(Slope(p, q) for p, q in data["path"])
        path = InvariantPath(
            window, monodromy,
            Graph.DET2 if family in (Family.CLOSED_TREE_PATH,
                                     Family.HORIZONTAL_TREE_PATH,
                                     Family.ARC_TREE_PATH) else Graph.FAREY,
        )
    special = None
    if data["special_path"] is not None:
        window = tuple(
            SpecialVertex(Slope(*first), Slope(*second))
            for first, second in data["special_path"]
        )
        special = SpecialPath(window, monodromy)
    eps = None
    if data["epsilon"] is not None:
        eps = EpsilonSymbol(tuple(data["epsilon"]), tuple(data["sigma"]))
    return SurfaceClass(
        family=family,
        genus=data["genus"],
        boundary_count=data["boundary_count"],
        orientable=data["orientable"],
        slope=None if data["slope"] is None else Slope(*data["slope"]),
        path=path,
        special=special,
        eps=eps,
        parity=None if data["parity_class"] is None else ParityClass(data["parity_class"]),
    )


def report_to_dict(report: ClassificationReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "matrix": list(report.monodromy.entries()),
        "sign": report.monodromy.sign,
        "power": report.power,
        "trace_sign": report.trace_sign,
        "rl_word": {"blocks": [list(b) for b in report.rl_word.blocks],
                    "sign": report.rl_word.sign},
        "mod2_permutation": list(report.mod2),
        "closed": [_surface_to_dict(sc) for sc in report.closed],
        "horizontal_boundary": [_surface_to_dict(sc) for sc in report.horizontal_boundary],
        "transverse_boundary": [_surface_to_dict(sc) for sc in report.transverse_boundary],
    }


def report_from_dict(data: dict) -> ClassificationReport:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported schema version {data.get('schema_version')!r}")
    base = Matrix2(*data["matrix"], sign=data["sign"])
    phi = base.pow(data["power"])
    from .slopes import RLWord

    return ClassificationReport(
        monodromy=base,
        power=data["power"],
        trace_sign=data["trace_sign"],
        rl_word=RLWord(tuple(tuple(b) for b in data["rl_word"]["blocks"]),
                       data["rl_word"]["sign"]),
        mod2=tuple(data["mod2_permutation"]),
        closed=tuple(_surface_from_dict(d, phi) for d in data["closed"]),
        horizontal_boundary=tuple(_surface_from_dict(d, phi)
                                  for d in data["horizontal_boundary"]),
        transverse_boundary=tuple(_surface_from_dict(d, phi)
                                  for d in data["transverse_boundary"]),
    )


def _csv_rows(report: ClassificationReport) -> list[str]:
    rows = [CSV_HEADER]
    for sc in report.all_surfaces():
        eps = "" if sc.eps is None else "".join(str(b) for b in sc.eps.bits)
        slope_num = "" if sc.slope is None else str(sc.slope.p)
        slope_den = "" if sc.slope is None else str(sc.slope.q)
        cls = "" if sc.parity is None else str(int(sc.parity))
        rows.append(
            f"{sc.family.value},{cls},{sc.period},{eps},{sc.genus},"
            f"{sc.boundary_count},{slope_num},{slope_den},{sc.orientable}"
        )
    return rows


def _use_color(stream) -> bool:
    if os.environ.get("NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _table_lines(report: ClassificationReport, color: bool) -> list[str]:
    bold = ("\x1b[1m", "\x1b[0m") if color else ("", "")
    lines = [
        f"{bold[0]}monodromy{bold[1]} {report.monodromy} power {report.power} "
        f"(trace sign {report.trace_sign:+d}, word {report.rl_word}, "
        f"mod-2 permutation {report.mod2})"
    ]
    sections = (
        ("closed surfaces", report.closed),
        ("horizontal boundary", report.horizontal_boundary),
        ("transverse boundary", report.transverse_boundary),
    )
    header = f"{'family':<22} {'cls':>3} {'period':>6} {'genus':>5} {'bdry':>4} {'slope':>7} {'orient':>6}  epsilon"
    for title, surfaces in sections:
        lines.append("")
        lines.append(f"{bold[0]}{title} ({len(surfaces)}){bold[1]}")
        lines.append(header)
        for sc in surfaces:
            slope = "-" if sc.slope is None else str(sc.slope)
            eps = "" if sc.eps is None else "(" + ",".join(map(str, sc.eps.bits)) + ")"
            cls = "-" if sc.parity is None else str(int(sc.parity))
            orient = "yes" if sc.orientable else "no"
            lines.append(
                f"{sc.family.value:<22} {cls:>3} {sc.period:>6} {sc.genus:>5} "
                f"{sc.boundary_count:>4} {slope:>7} {orient:>6}  {eps}"
            )
    return lines


def cmd_classify(args) -> int:
    m = _parse_matrix(args.matrix)
    phi = m.pow(args.power)
    kind = trace_class(phi)
    if kind is not TraceClass.HYPERBOLIC:
        raise InputError(
            f"{kind.value} monodromy unsupported (entry trace {phi.entry_trace()})"
        )
    report = classify_all(m, args.power)
    if args.format == "json":
        print(json.dumps(report_to_dict(report), indent=2, sort_keys=True))
    elif args.format == "csv":
        print("\n".join(_csv_rows(report)))
    else:
        print("\n".join(_table_lines(report, _use_color(sys.stdout))))
    return 0


def cmd_lens(args) -> int:
    try:
        result = classify_lens(args.q, args.p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if result is None:
        print("none")
    else:
        print(f"genus {result.genus} nonorientable incompressible surface")
    return 0


def cmd_path(args) -> int:
    u = _parse_slope(args.start)
    v = _parse_slope(args.end)
    if args.graph in ("what", "det2"):
        try:
            path = geodesic_in_What(u, v)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        print(" ".join(str(s) for s in path.vertices))
        return 0
    raise InputError(f"unsupported graph {args.graph!r}")


def _verify_forest(bound: int, failures: list[str]) -> None:
    import math as _math

    vertices = []
    for q in range(0, bound + 1):
        for p in range(-bound, bound + 1):
            if (p, q) == (0, 0) or _math.gcd(abs(p), abs(q)) != 1:
                continue
            if q == 0 and p != 1:
                continue
            vertices.append(Slope(p, q))
    by_class: dict[ParityClass, list[Slope]] = {}
    for v in vertices:
        by_class.setdefault(parity_class(v), []).append(v)
    for cls, vs in sorted(by_class.items()):
        index = {v: i for i, v in enumerate(vs)}
        parent = list(range(len(vs)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        edge_count = 0
        for v in vs:
            for w in det2_neighbors_bounded(v, bound):
                if parity_class(w) != cls:
                    failures.append(f"forest: edge {v}--{w} crosses parity classes")
                if w in index and index[w] > index[v]:
                    edge_count += 1
                    ra, rb = find(index[v]), find(index[w])
                    if ra == rb:
                        failures.append(f"forest: cycle through {v}--{w}")
                    else:
                        parent[ra] = rb
        components = len({find(i) for i in range(len(vs))})
        if len(vs) - edge_count != components:
            failures.append(
                f"forest: class {int(cls)} is not acyclic "
                f"(V={len(vs)}, E={edge_count}, components={components})"
            )


def _verify_geodesics(bound: int, failures: list[str]) -> None:
    sample = []
    for q in range(0, bound + 1, 3):
        for p in range(-bound, bound + 1, 2):
            try:
                sample.append(Slope(p, q))
            except ValueError:
                continue
    seen = sorted(set(sample), key=lambda s: (s.q, s.p))
    for i, u in enumerate(seen):
        for v in seen[i + 1:i + 6]:
            if parity_class(u) != parity_class(v):
                continue
            pair_bound = 10 * max(abs(u.p), abs(u.q), abs(v.p), abs(v.q))
            fast = len(geodesic_in_What(u, v))
            slow = len(bfs_geodesic_oracle(u, v, pair_bound))
            if fast != slow:
                failures.append(
                    f"geodesic: {u} -> {v} descent length {fast} != bfs {slow}"
                )


def _verify_table(failures: list[str], fault: Optional[str]) -> None:
    for m in VERIFY_FIXTURES:
        for k in (1, 2, 3):
            report = classify_all(m, k)
            for sc in report.all_surfaces():
                if sc.family not in SADDLE_FAMILIES or sc.period > 6:
                    continue
                surface = assemble(schedule_of(sc), fault=fault)
                chi = euler_char(surface)
                b = boundary_count(surface)
                orient = is_orientable(surface)
                recovered = (2 - chi - b) // 2 if orient else 2 - chi - b
                expected = (-sc.saddle_count(), sc.boundary_count, sc.orientable, sc.genus)
                got = (chi, b, orient, recovered)
                if expected != got or chi != euler_characteristic(sc):
                    failures.append(
                        f"table: {m} power {k} {sc.family.value} period {sc.period}: "
                        f"table (chi,b,orient,genus)={expected} ribbon={got}"
                    )


def cmd_verify(args) -> int:
    failures: list[str] = []
    _verify_forest(args.bound, failures)
    _verify_geodesics(min(args.bound, 24), failures)
    _verify_table(failures, args.inject_fault)
    if failures:
        print(f"verification failed with {len(failures)} mismatches:")
        for line in failures[:40]:
            print(f"  {line}")
        return 3
    print(f"verification passed (forest bound {args.bound}, "
          f"{len(VERIFY_FIXTURES)} fixture monodromies)")
    return 0


def cmd_render(args) -> int:
    highlight = []
    if args.paths:
        for chunk in args.paths.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            highlight.append([_parse_slope(part) for part in chunk.split(",")])
    svg = farey_disc_svg(args.depth, highlight)
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(svg)
        except OSError as exc:
            raise InputError(f"cannot write {args.out!r}: {exc}") from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fareybundle",
        description="Classify incompressible surfaces in punctured-torus "
                    "bundles via invariant Farey edge-paths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify one bundle")
    p_classify.add_argument("-m", "--matrix", required=True,
                            help="monodromy entries a,b,c,d (row-major)")
    p_classify.add_argument("-k", "--power", type=int, default=1,
                            help="power of the monodromy (default 1)")
    p_classify.add_argument("-f", "--format", choices=("json", "csv", "table"),
                            default="table")
    p_classify.set_defaults(func=cmd_classify)

    p_lens = sub.add_parser("lens", help="classify a lens space L(q,p)")
    p_lens.add_argument("q", type=int)
    p_lens.add_argument("p", type=int)
    p_lens.set_defaults(func=cmd_lens)

    p_path = sub.add_parser("path", help="geodesic between two slopes")
    p_path.add_argument("start")
    p_path.add_argument("end")
    p_path.add_argument("--graph", default="what", choices=("what", "det2"),
                        help="graph to search (det-two forest)")
    p_path.set_defaults(func=cmd_path)

    p_verify = sub.add_parser("verify", help="run the built-in oracle suite")
    p_verify.add_argument("--bound", type=int, default=30,
                          help="vertex bound for the forest check (default 30)")
    p_verify.add_argument("--inject-fault", choices=("mirror-template",),
                          default=None, help="deliberately miscalibrate one "
                          "saddle template; verification must fail")
    p_verify.set_defaults(func=cmd_verify)

    p_render = sub.add_parser("render", help="render the Farey disc as SVG")
    p_render.add_argument("--depth", type=int, default=4,
                          help="mediant subdivision depth (default 4)")
    p_render.add_argument("--paths", default="",
                          help="highlighted paths, e.g. '1/1,3/1,7/3;0/1,2/1'")
    p_render.add_argument("--out", default="-",
                          help="output file, '-' for standard output")
    p_render.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
