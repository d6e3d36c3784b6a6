"""Batch command line interface.

Subcommands: smooth, decompose, enumerate, series, staircase, selftest.
All output is deterministic for fixed flags: json emits a single document,
tsv one record per line, text a human-readable rendering of the same data.
Exit codes: 0 success, 1 invalid input or exhausted budget, 2 failed
internal cross-check (series --diff mismatch, selftest failure).

Elements are accepted as --window or --word comma lists, or as --element
pointing to a JSON file {"n": 4, "window": [2,5,0,3]} / {"n": 4, "word":
[0,3,2]}; output always echoes the normalized window.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .affine import AffinePermutation, from_window, from_word
from .bp import complete_bp_decomposition
from .errors import BudgetExceeded, CapExceeded, MalformedDiagram, NotSmooth
from .series import (
    IntSeries,
    series_A_assembled,
    series_A_closed,
    series_AB,
    series_Abar,
    series_AF,
    series_AM,
    series_Astar,
)
from .smoothness import (
    enumerate_smooth,
    is_rationally_smooth,
    is_smooth,
    is_twisted_spiral,
)
from .staircase import (
    StaircaseDiagram,
    broken_staircases,
    cycle_decompose,
    cycle_graph,
    enumerate_diagrams,
    from_json,
    fully_supported_path_diagrams,
    increasing_diagrams,
    line_decompose,
    path_graph,
    render,
    to_dyck,
    to_json,
)
from . import selftest as selftest_module

ENUM_CAP_DEFAULT = 6
ENUM_CAP_MAX = 8


# ----------------------------------------------------------------------
# argument plumbing


def _parse_ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.replace(" ", "").split(",")]
    except ValueError as exc:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from exc


def _element(args: argparse.Namespace) -> AffinePermutation:
    sources = [s for s in (args.window, args.word, args.element) if s is not None]
    if len(sources) != 1:
        raise ValueError("supply exactly one of --window, --word, --element")
    if args.element is not None:
        with open(args.element, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        n = int(doc["n"])
        if args.n is not None and args.n != n:
            raise ValueError(f"--n {args.n} disagrees with element file n = {n}")
        if "window" in doc:
            return from_window(n, [int(v) for v in doc["window"]])
        if "word" in doc:
            return from_word(n, [int(v) for v in doc["word"]])
        raise ValueError("element file needs a 'window' or 'word' field")
    if args.n is None:
        raise ValueError("--n is required with --window/--word")
    values = _parse_ints(args.window if args.window is not None else args.word)
    if args.window is not None:
        if len(values) != args.n:
            raise ValueError(f"window must list {args.n} values")
        return from_window(args.n, values)
    return from_word(args.n, values)


def _emit(args: argparse.Namespace, doc: object, tsv_rows: list[str], text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(doc))
    elif args.format == "tsv":
        for row in tsv_rows:
            print(row)
    else:
        for line in text_lines:
            print(line)


# ----------------------------------------------------------------------
# smooth / decompose / enumerate


def _cmd_smooth(args: argparse.Namespace) -> int:
    w = _element(args)
    doc = {
        "smooth": is_smooth(w),
        "rationally_smooth": is_rationally_smooth(w),
        "twisted_spiral": is_twisted_spiral(w),
        "length": w.length,
        "window": list(w.window),
    }
    rows = [f"{k}\t{json.dumps(v)}" for k, v in doc.items()]
    _emit(args, doc, rows, [f"{k}: {json.dumps(v)}" for k, v in doc.items()])
    return 0


def _grassmannian_nodes(n: int, support: frozenset[int]) -> list[int]:
    ordered = cycle_graph(n).run_order(support) if n > 1 else tuple(support)
    return list(ordered)


def _cmd_decompose(args: argparse.Namespace) -> int:
    w = _element(args)
    js = frozenset(_parse_ints(args.J)) if args.J is not None else frozenset()
    bad = [j for j in js if not 0 <= j < w.n]
    if bad:
        raise ValueError(f"--J nodes {bad} outside 0..{w.n - 1}")
    decomposition = complete_bp_decomposition(w, js)
    if js:
        from .bp import is_smooth_partial

        smooth = is_smooth_partial(w, js)
    else:
        smooth = is_smooth(w)
    factors = None
    if decomposition is not None:
        factors = []
        for i, v in enumerate(decomposition.factors):
            missing = sorted(decomposition.chain[i] - decomposition.chain[i + 1])[0]
            factors.append(
                {
                    "word": list(v.reduced_word),
                    "K": sorted(decomposition.chain[i + 1]),
                    "maximal": decomposition.maximal[i],
                    "grassmannian": {
                        "nodes": _grassmannian_nodes(w.n, v.support),
                        "missing": missing,
                    },
                }
            )
    doc = {"factors": factors, "smooth": smooth, "window": list(w.window)}
    rows = []
    if factors is None:
        rows.append("factors\tnull")
    else:
        for i, f in enumerate(factors):
            rows.append(
                f"factor\t{i}\t{','.join(map(str, f['word']))}\t"
                f"K={','.join(map(str, f['K']))}\tmaximal={f['maximal']}"
            )
    rows.append(f"smooth\t{json.dumps(smooth)}")
    text = [json.dumps(doc, indent=2)]
    _emit(args, doc, rows, text)
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    elements = enumerate_smooth(args.n, args.max_length, args.budget_seconds)
    ordered = sorted(elements, key=lambda w: (w.length, w.window))
    if args.count_only:
        _emit(args, len(ordered), [str(len(ordered))], [str(len(ordered))])
        return 0
    doc = [{"length": w.length, "window": list(w.window)} for w in ordered]
    rows = [f"{w.length}\t{','.join(map(str, w.window))}" for w in ordered]
    _emit(args, doc, rows, rows)
    return 0


# ----------------------------------------------------------------------
# series


def _series_formula(which: str, order: int) -> IntSeries:
    table = {
        "A": series_A_closed,
        "AM": series_AM,
        "AB": series_AB,
        "AF": series_AF,
        "ABAR": series_Abar,
        "ASTAR": series_Astar,
    }
    return table[which](order)


def _series_enumerated(which: str, n: int) -> int:
    if which == "A":
        return len(enumerate_diagrams(cycle_graph(n), spherical_only=True))
    if which == "AM":
        return len(increasing_diagrams(n))
    if which == "AB":
        return len(broken_staircases(n))
    if which == "AF":
        return len(fully_supported_path_diagrams(n))
    if which == "ABAR":
        return len(
            enumerate_diagrams(cycle_graph(n), spherical_only=True, fully_supported_only=True)
        )
    if which == "ASTAR":
        return sum(len(fully_supported_path_diagrams(k)) for k in range(1, n))
    raise ValueError(f"unknown series {which!r}")


def _cmd_series(args: argparse.Namespace) -> int:
    which = args.which
    order = args.order
    if order < 1:
        raise ValueError("--order must be at least 1")
    cap = min(args.enum_cap, ENUM_CAP_MAX)
    methods = (
        ["closed", "assembled", "enumerate"] if args.method == "all" else [args.method]
    )
    columns: dict[str, dict[int, int]] = {}
    for method in methods:
        if method == "closed":
            s = _series_formula(which, order)
            columns["closed"] = {n: s[n] for n in range(1, order + 1)}
        elif method == "assembled":
            s = series_A_assembled(order) if which == "A" else _series_formula(which, order)
            columns["assembled"] = {n: s[n] for n in range(1, order + 1)}
        else:
            lo = 2 if which in ("A", "ABAR") else 1
            columns["enumerate"] = {
                n: _series_enumerated(which, n) for n in range(lo, min(order, cap) + 1)
            }
    primary = columns.get("closed") or columns.get("assembled") or columns["enumerate"]
    mismatches = []
    names = sorted(columns)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            for n in sorted(set(columns[a]) & set(columns[b])):
                if columns[a][n] != columns[b][n]:
                    mismatches.append({"n": n, a: columns[a][n], b: columns[b][n]})
    doc: dict = {
        "which": which,
        "order": order,
        "methods": names,
        "rows": [[n, primary[n]] for n in sorted(primary)],
    }
    # The combined count A(t) only counts varieties for n >= 2; smaller n is
    # reported anyway but flagged so tools do not mistake it for a count.
    outside = [n for n, _ in doc["rows"] if n < 2] if which == "A" else []
    if outside:
        doc["outside_domain"] = outside
    if args.diff:
        doc["mismatches"] = mismatches
    rows = [f"{n}\t{c}" for n, c in doc["rows"]]
    text = [
        f"{which}[{n}] = {c}" + ("  (outside domain)" if n in outside else "")
        for n, c in doc["rows"]
    ]
    if args.diff and mismatches:
        text.append(f"mismatches: {mismatches}")
    _emit(args, doc, rows, text)
    if args.diff and mismatches:
        return 2
    return 0


# ----------------------------------------------------------------------
# staircase


def _load_diagram(path: str) -> StaircaseDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json(fh.read())


def _piece_doc(piece) -> dict:
    return {
        "n": piece.n,
        "direction": piece.direction,
        "blocks": [sorted(b) for b in piece.blocks],
        "broken": piece.is_broken,
    }


def _cmd_staircase(args: argparse.Namespace) -> int:
    if args.action == "validate":
        try:
            d = _load_diagram(args.file)
        except MalformedDiagram as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        ok, reason = d.validate()
        doc = {"valid": ok, "reason": reason}
        _emit(
            args,
            doc,
            [f"valid\t{json.dumps(ok)}", f"reason\t{reason}"],
            [f"valid: {ok}" + (f" ({reason})" if reason else "")],
        )
        return 0
    d = _load_diagram(args.file)
    ok, reason = d.validate()
    if not ok:
        raise ValueError(f"diagram fails {reason}")
    if args.action == "render":
        picture = render(d)
        _emit(args, picture, picture.splitlines(), picture.splitlines())
        return 0
    if args.action == "dyck":
        p = to_dyck(d)
        doc = {"semilength": p.semilength, "pairs": [list(pair) for pair in p.pairs]}
        rows = [f"{r}\t{u}" for r, u in p.pairs]
        _emit(args, doc, rows, [f"pairs: {list(map(list, p.pairs))}"])
        return 0
    if args.action == "decompose":
        if d.graph.kind == "cycle":
            pieces, mark = cycle_decompose(d)
            doc = {
                "kind": "cycle",
                "pieces": [_piece_doc(p) for p in pieces],
                "mark": mark,
            }
        else:
            pieces, final = line_decompose(d)
            doc = {
                "kind": "path",
                "pieces": [_piece_doc(p) for p in pieces],
                "final": json.loads(to_json(final)),
            }
        rows = [json.dumps(doc)]
        _emit(args, doc, rows, [json.dumps(doc, indent=2)])
        return 0
    raise ValueError(f"unknown staircase action {args.action!r}")


# ----------------------------------------------------------------------
# selftest


def _cmd_selftest(args: argparse.Namespace) -> int:
    results = selftest_module.run_selftest(args.scale, workers=args.workers)
    doc = [
        {"criterion": r.index, "name": r.name, "ok": r.ok, "detail": r.detail}
        for r in results
    ]
    rows = [
        f"{r.index}\t{'PASS' if r.ok else 'FAIL'}\t{r.name}\t{r.detail}" for r in results
    ]
    text = [
        f"{'PASS' if r.ok else 'FAIL'} criterion {r.index:2d} {r.name}: {r.detail}"
        for r in results
    ]
    _emit(args, doc, rows, text)
    return 0 if all(r.ok for r in results) else 2


# ----------------------------------------------------------------------
# parser


def _add_element_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=None, help="number of window positions")
    p.add_argument("--window", default=None, help="comma-separated window values")
    p.add_argument("--word", default=None, help="comma-separated reduced word letters")
    p.add_argument("--element", default=None, help="JSON file with n and window or word")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schubsmooth",
        description="Smoothness, BP decompositions, staircase diagrams, and counts "
        "for affine type A Schubert varieties.",
    )
    parser.add_argument("--format", choices=("json", "tsv", "text"), default="json")
    parser.add_argument(
        "--workers", type=int, default=1, help="parallelism hint; results never depend on it"
    )
    parser.add_argument(
        "--budget-seconds", type=float, default=None, help="abort enumeration after this long"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("smooth", help="decide smoothness of one element")
    _add_element_flags(p)
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("decompose", help="complete BP decomposition of one element")
    _add_element_flags(p)
    p.add_argument("--J", default=None, help="comma-separated nodes of the relative parabolic")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("enumerate", help="list all smooth elements of the affine group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--max-length", type=int, default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("series", help="generating function coefficients")
    p.add_argument("--which", choices=("A", "AM", "AB", "AF", "ABAR", "ASTAR"), required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument(
        "--method", choices=("closed", "assembled", "enumerate", "all"), default="closed"
    )
    p.add_argument("--diff", action="store_true", help="exit 2 on any method mismatch")
    p.add_argument(
        "--enum-cap",
        type=int,
        default=ENUM_CAP_DEFAULT,
        help=f"largest n counted by enumeration (hard max {ENUM_CAP_MAX})",
    )
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("staircase", help="operations on staircase diagram files")
    p.add_argument("action", choices=("validate", "render", "dyck", "decompose"))
    p.add_argument("--file", required=True, help="diagram JSON file")
    p.set_defaults(func=_cmd_staircase)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--scale", choices=("small", "full"), default="small")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, MalformedDiagram, NotSmooth, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
