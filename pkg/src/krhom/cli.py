"""Command-line front end: brackets, homology tables, verification runs.

Subcommands:

  bracket    graded resolution count of a diagram
  homology   homology tables of a diagram at a specialization
  verify     factorization calculus plus diagram-level cross checks
  mf-verify  the factorization calculus checks only

Diagrams are read from a file of X[a,b,c,d] / O[k] lines, or from stdin
when the path is ``-``.  Exit status is 0 on success, 1 when a verification
check fails, and 2 for unusable input or arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product
from multiprocessing import Pool

from . import braids, diagrams, mfact, skein
from .cube import assemble_complex, assemble_specialized, build_cube
from .homology import (
    PRESETS,
    HomologyTable,
    euler_characteristic,
    homology_at,
    homology_dims,
    parse_specialization,
    split_q_blocks,
)
from .linkweb import ORIENTED, SINGULAR, parse_diagram, resolve
from .polyring import poly_str


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _add_format(p) -> None:
    p.add_argument(
        "--format",
        choices=("text", "json", "tsv"),
        default="text",
        help="output style (default: text)",
    )


def _add_verify_args(p) -> None:
    p.add_argument(
        "--filter",
        metavar="SUBSTR",
        help="only run checks whose name contains this substring",
    )
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    _add_format(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krhom",
        description="Link homology from the two-variable Frobenius algebra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bracket", help="graded resolution count of a diagram")
    b.add_argument("diagram", help="diagram file, or - for stdin")
    _add_format(b)
    b.set_defaults(func=cmd_bracket)

    h = sub.add_parser("homology", help="homology tables at a specialization")
    h.add_argument("diagram", help="diagram file, or - for stdin")
    h.add_argument(
        "--spec",
        default="khovanov",
        help="preset name (%s) or 'a,h'" % ", ".join(PRESETS),
    )
    h.add_argument("--all", action="store_true", help="run every preset")
    h.add_argument("--bigraded", action="store_true", help="split by q-degree")
    h.add_argument("--jobs", type=int, default=1, help="worker processes")
    h.add_argument(
        "--dump-complex",
        metavar="PATH",
        help="also write the symbolic complex as JSON",
    )
    _add_format(h)
    h.set_defaults(func=cmd_homology)

    v = sub.add_parser("verify", help="run the full verification suite")
    _add_verify_args(v)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mf-verify", help="run the factorization checks only")
    _add_verify_args(m)
    m.set_defaults(func=cmd_mf_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


# -- bracket -------------------------------------------------------------------


def cmd_bracket(args) -> int:
    d = parse_diagram(_read_text(args.diagram))
    poly = skein.link_bracket(d)
    if args.format == "json":
        payload = {
            "crossings": len(d.crossings),
            "components": d.n_components,
            "bracket": [
                [deg, poly.terms[deg]] for deg in sorted(poly.terms, reverse=True)
            ],
            "text": str(poly),
        }
        print(json.dumps(payload, indent=1))
    elif args.format == "tsv":
        for deg in sorted(poly.terms, reverse=True):
            print(f"{deg}\t{poly.terms[deg]}")
    else:
        print(poly)
    return 0


# -- homology ------------------------------------------------------------------


def _block_worker(item):
    q, cx = item
    return q, homology_dims(cx).totals


def _dims(cx, bigraded: bool, jobs: int) -> HomologyTable:
    if jobs <= 1:
        return homology_dims(cx, bigraded=bigraded)
    try:
        blocks = split_q_blocks(cx)
    except ValueError:
        if bigraded:
            raise
        print(
            "note: differential mixes q-degrees; running on one worker",
            file=sys.stderr,
        )
        return homology_dims(cx)
    with Pool(jobs) as pool:
        merged = pool.map(_block_worker, sorted(blocks.items()))
    totals: dict = {}
    big: dict = {}
    for q, block_totals in merged:
        for i, dim in block_totals.items():
            totals[i] = totals.get(i, 0) + dim
            big[(i, q)] = dim
    return HomologyTable(totals, big if bigraded else None)


def _dump_complex(cx, path: str) -> None:
    modules = {}
    for i in cx.degrees():
        mod = cx.modules[i]
        modules[str(i)] = [
            {"label": str(label), "q": q}
            for label, q in zip(mod.labels, mod.qdegrees)
        ]
    differential = {}
    for i in sorted(cx.diff):
        rows = [
            [r, c, poly_str(v)] for (r, c), v in sorted(cx.diff[i].items())
        ]
        if rows:
            differential[str(i)] = rows
    with open(path, "w") as fh:
        json.dump({"modules": modules, "differential": differential}, fh, indent=1)
    print(f"wrote symbolic complex to {path}", file=sys.stderr)


def cmd_homology(args) -> int:
    if args.all and args.bigraded:
        print("error: --all and --bigraded cannot be combined", file=sys.stderr)
        return 2
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    d = parse_diagram(_read_text(args.diagram))
    cube = build_cube(d)
    if args.dump_complex:
        _dump_complex(assemble_complex(cube, check=False), args.dump_complex)
    if args.all:
        specs = [PRESETS[k] for k in ("khovanov", "distinct1", "distinct2", "double")]
    else:
        specs = [parse_specialization(args.spec)]
    results = []
    for spec in specs:
        cx = assemble_specialized(cube, spec, check=False)
        results.append((spec, _dims(cx, args.bigraded, args.jobs)))
    _emit_homology(d, results, args)
    return 0


def _emit_homology(d, results, args) -> None:
    if args.format == "json":
        payload = {
            "crossings": len(d.crossings),
            "components": d.n_components,
            "results": [
                {
                    "spec": spec.name,
                    "a": str(spec.a),
                    "h": str(spec.h),
                    "total_dimension": table.total_dimension(),
                    "rows": [
                        [i, dim] if j is None else [i, j, dim]
                        for i, j, dim in table.rows()
                    ],
                }
                for spec, table in results
            ],
        }
        print(json.dumps(payload, indent=1))
    elif args.format == "tsv":
        for spec, table in results:
            for i, j, dim in table.rows():
                cells = [spec.name] if args.all else []
                cells.append(str(i))
                if j is not None:
                    cells.append(str(j))
                cells.append(str(dim))
                print("\t".join(cells))
    else:
        for spec, table in results:
            print(f"spec {spec.name}: a = {spec.a}, h = {spec.h}")
            if table.bigraded is not None:
                print("   i    q  dim")
            else:
                print("   i  dim")
            for i, j, dim in table.rows():
                if j is None:
                    print(f"{i:>4} {dim:>4}")
                else:
                    print(f"{i:>4} {j:>4} {dim:>4}")
            print(f"total dimension {table.total_dimension()}")
    return None


# -- verification --------------------------------------------------------------


_SMALL_WEBS = (
    "unknot",
    "unlink2",
    "kink_pos",
    "kink_neg",
    "hopf_pos",
    "hopf_neg",
    "trefoil_right",
)

_EULER_NAMES = _SMALL_WEBS + ("trefoil_left", "figure8")

_R1_PAIRS = (
    ("unknot", "kink_pos"),
    ("unknot", "kink_neg"),
    ("twist_trefoil", "stabilized_trefoil"),
)
_R2_PAIRS = (("unlink2", "r2_pair"),)
_R3_PAIRS = (
    ("r3_left", "r3_right"),
    ("r3_mixed_left", "r3_mixed_right"),
)


def _closed_web_ranks() -> None:
    for name in _SMALL_WEBS:
        d = diagrams.get(name)
        for states in product((ORIENTED, SINGULAR), repeat=len(d.crossings)):
            web = resolve(d, dict(enumerate(states)))
            pres = mfact.closed_web_homology(web)
            if pres.graded_rank() != skein.web_bracket(web):
                raise AssertionError(f"graded rank mismatch: {name} {states}")
            if pres.concentration != web.p_parity():
                raise AssertionError(f"periodicity mismatch: {name} {states}")


def _euler_vs_bracket() -> None:
    for name in _EULER_NAMES:
        d = diagrams.get(name)
        if euler_characteristic(build_cube(d)) != skein.link_bracket(d):
            raise AssertionError(f"euler characteristic != bracket: {name}")


def _khovanov_tables_match(pairs) -> None:
    spec = PRESETS["khovanov"]
    for left, right in pairs:
        ta = homology_at(diagrams.get(left), spec, bigraded=True)
        tb = homology_at(diagrams.get(right), spec, bigraded=True)
        if ta.totals != tb.totals or ta.bigraded != tb.bigraded:
            raise AssertionError(f"homology differs: {left} vs {right}")


def _jones_skein_triples() -> None:
    triples = (
        ((1, 1), (1, -1), (1,)),
        ((1, 1, 1), (1, 1, -1), (1, 1)),
    )
    for wpos, wneg, wor in triples:
        ok = skein.jones_relation_check(
            braids.closure_diagram(2, wpos),
            braids.closure_diagram(2, wneg),
            braids.closure_diagram(2, wor),
        )
        if not ok:
            raise AssertionError(f"skein relation fails at closure{wpos}")


def _diagram_checks():
    return (
        ("closed_web_ranks", _closed_web_ranks),
        ("euler_vs_bracket", _euler_vs_bracket),
        ("reidemeister_r1", lambda: _khovanov_tables_match(_R1_PAIRS)),
        ("reidemeister_r2", lambda: _khovanov_tables_match(_R2_PAIRS)),
        ("reidemeister_r3", lambda: _khovanov_tables_match(_R3_PAIRS)),
        ("jones_skein_triples", _jones_skein_triples),
    )


def _registry(mf_only: bool, inject_fault: bool):
    checks = list(mfact.verification_suite(inject_fault=inject_fault))
    if not mf_only:
        checks.extend(_diagram_checks())
    return checks


def _check_worker(task):
    name, mf_only, inject_fault = task
    for n, fn in _registry(mf_only, inject_fault):
        if n != name:
            continue
        try:
            fn()
        except Exception as exc:
            return name, f"{type(exc).__name__}: {exc}"
        return name, None
    return name, "check not found"


def _run_checks(args, mf_only: bool) -> int:
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    checks = _registry(mf_only, args.inject_fault)
    if args.filter:
        checks = [(n, fn) for n, fn in checks if args.filter in n]
        if not checks:
            print(f"error: no check matches {args.filter!r}", file=sys.stderr)
            return 2
    if args.jobs > 1:
        tasks = [(name, mf_only, args.inject_fault) for name, _ in checks]
        with Pool(args.jobs) as pool:
            results = pool.map(_check_worker, tasks)
    else:
        results = []
        for name, fn in checks:
            try:
                fn()
                results.append((name, None))
            except Exception as exc:
                results.append((name, f"{type(exc).__name__}: {exc}"))
    _emit_checks(results, args.format)
    return 1 if any(detail is not None for _, detail in results) else 0


def _emit_checks(results, fmt: str) -> None:
    failed = sum(1 for _, detail in results if detail is not None)
    if fmt == "json":
        payload = {
            "checks": [
                {"name": name, "ok": detail is None, "detail": detail}
                for name, detail in results
            ],
            "passed": len(results) - failed,
            "failed": failed,
        }
        print(json.dumps(payload, indent=1))
    elif fmt == "tsv":
        for name, detail in results:
            status = "PASS" if detail is None else "FAIL"
            print(f"{name}\t{status}\t{detail or ''}")
    else:
        for name, detail in results:
            if detail is None:
                print(f"PASS {name}")
            else:
                print(f"FAIL {name}: {detail}")
        print(f"{len(results)} checks: {len(results) - failed} passed, {failed} failed")


def cmd_verify(args) -> int:
    return _run_checks(args, mf_only=False)


def cmd_mf_verify(args) -> int:
    return _run_checks(args, mf_only=True)


if __name__ == "__main__":
    sys.exit(main())
