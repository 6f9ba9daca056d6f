"""Command-line interface.

Subcommands:

- ``shapes``            write the kernel-shape catalog as JSON lines
- ``gf``                series for exactly R occurrences of 132
- ``closed-form``       the same level as polynomials P, Q over (1-4x)^(1/2-R)
- ``restricted``        series additionally avoiding 12...K
- ``verify``            compare solver output against the brute-force oracle
- ``check-invariants``  exhaustive structural checks over small sizes
- ``conjectures``       informational reports over the catalog and closed forms

All numeric output is exact (integers or integer arrays); nothing is
ever printed in floating point.  Identical arguments produce
byte-identical output regardless of ``--threads``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .algebraic import extract_pq, poly_eval
from .invariants import (
    STRUCTURE_CHECKS,
    cell_order_totality,
    one_sided_criterion_subsumed,
    roundtrip_backward,
    structure_sweep,
)
from .oracle import count_exact, count_exact_restricted
from .shapes import (
    CatalogError,
    ShapeCatalog,
    catalog_to_text,
    census,
    enumerate_kernel_shapes,
    load_catalog,
    save_catalog,
    verify_exceptional_uniqueness,
)
from .solver import Solver


def _default_threads() -> int:
    env = os.environ.get("OCC132_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _obtain_catalog(max_occ: int, path: str | None, threads: int) -> ShapeCatalog:
    """Load a cached catalog when it is big enough, else build (and cache)."""
    if path and Path(path).exists():
        try:
            catalog = load_catalog(path)
            if catalog.max_occ >= max_occ:
                return catalog
            print(
                f"cached catalog at {path} only covers max-occ {catalog.max_occ}; rebuilding",
                file=sys.stderr,
            )
        except CatalogError as exc:
            print(f"ignoring cache: {exc}", file=sys.stderr)
    catalog = enumerate_kernel_shapes(max_occ, threads=threads)
    if path:
        save_catalog(catalog, path)
    return catalog


# -- subcommands ------------------------------------------------------------


def _cmd_shapes(args) -> int:
    catalog = enumerate_kernel_shapes(args.max_occ, threads=args.threads)
    if args.verify_exceptional:
        for r in range(1, min(args.max_occ, 2) + 1):
            ok = verify_exceptional_uniqueness(r, threads=args.threads)
            print(f"maximal shape unique at capacity {r}: {'confirmed' if ok else 'FAILED'}",
                  file=sys.stderr)
            if not ok:
                return 1
    c = census(catalog)
    print(f"shapes by size: {c.by_size}", file=sys.stderr)
    print(f"new non-maximal shapes by budget: {c.new_nonexceptional}", file=sys.stderr)
    _emit(catalog_to_text(catalog), args.out)
    return 0


def _cmd_gf(args) -> int:
    catalog = _obtain_catalog(args.occ, args.catalog, args.threads)
    series = Solver(catalog, args.order).occurrence_series(args.occ)
    coeffs = series.integer_coeffs()
    if args.format == "csv":
        text = "\n".join(f"{n},{c}" for n, c in enumerate(coeffs)) + "\n"
    else:
        text = json.dumps(coeffs) + "\n"
    _emit(text, args.out)
    return 0


def _poly_latex(coeffs: list[int]) -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            x = "x" if e == 1 else f"x^{{{e}}}"
            body = x if mag == 1 else f"{mag}{x}"
        sign = "-" if c < 0 else ("+" if terms else "")
        terms.append(f"{sign} {body}" if terms else f"{sign}{body}")
    return " ".join(terms) if terms else "0"


def _cmd_closed_form(args) -> int:
    catalog = _obtain_catalog(args.occ, args.catalog, args.threads)
    form = extract_pq(Solver(catalog).occurrence_closed_form(args.occ), args.occ)
    if not form.polynomial:
        print(
            f"split of level {args.occ} is not polynomial: "
            f"P = {form.P.num}/{form.P.den}, Q = {form.Q.num}/{form.Q.den}",
            file=sys.stderr,
        )
        return 1
    two_p = [int(c) for c in form.P.as_polynomial()]
    two_q = [int(c) for c in form.Q.as_polynomial()]
    if args.format == "latex":
        exp = Fraction(1 - 2 * args.occ, 2)
        text = (
            r"\frac{1}{2}\left(" + _poly_latex(two_p)
            + r" + \left(" + _poly_latex(two_q) + r"\right)"
            + rf"(1-4x)^{{{exp.numerator}/{exp.denominator}}}\right)" + "\n"
        )
    else:
        text = (
            json.dumps(
                {
                    "two_P": two_p,
                    "two_Q": two_q,
                    "exponent_num": 1 - 2 * args.occ,
                    "exponent_den": 2,
                }
            )
            + "\n"
        )
    _emit(text, args.out)
    return 0


def _cmd_restricted(args) -> int:
    catalog = _obtain_catalog(args.occ, args.catalog, args.threads)
    series = Solver(catalog, args.order).restricted_series(args.occ, args.k)
    coeffs = series.integer_coeffs()
    if args.format == "csv":
        text = "\n".join(f"{n},{c}" for n, c in enumerate(coeffs)) + "\n"
    else:
        text = json.dumps(coeffs) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_verify(args) -> int:
    catalog = _obtain_catalog(args.occ, args.catalog, args.threads)
    solver = Solver(catalog, max(args.max_n, 0))
    if args.k is None:
        series = solver.occurrence_series(args.occ)
        tag = f"occ={args.occ}"
    else:
        series = solver.restricted_series(args.occ, args.k)
        tag = f"occ={args.occ}, k={args.k}"
    print(f"{'n':>3} {'solver':>14} {'oracle':>14}  ({tag})")
    ok = True
    for n in range(args.max_n + 1):
        got = int(series[n])
        if args.k is None:
            want = count_exact(n, args.occ, guard=max(args.max_n, 10), threads=args.threads)
        else:
            want = count_exact_restricted(
                n, args.occ, args.k, guard=max(args.max_n, 10), threads=args.threads
            )
        mark = "" if got == want else "  MISMATCH"
        print(f"{n:>3} {got:>14} {want:>14}{mark}")
        ok = ok and got == want
    return 0 if ok else 1


def _cmd_check_invariants(args) -> int:
    ok = True

    def report(name: str, violations: list[str]) -> None:
        nonlocal ok
        status = "PASS" if not violations else "FAIL"
        print(f"{status}  {name}")
        for v in violations[:10]:
            print(f"      {v}")
        ok = ok and not violations

    sweep = structure_sweep(args.max_n)
    for name in STRUCTURE_CHECKS:
        report(f"{name} (all sizes <= {args.max_n})", sweep[name])
    report(f"assemble/decompose inverse (assembled size <= {args.max_n})",
           roundtrip_backward(args.max_n))
    from .shapes import iter_kernel_permutations

    shapes = iter_kernel_permutations(args.max_n)
    report("feasible-cell order total", cell_order_totality(shapes))
    report("one-sided infeasibility criterion subsumed", one_sided_criterion_subsumed(shapes))
    return 0 if ok else 1


def _cmd_conjectures(args) -> int:
    catalog = _obtain_catalog(args.max_occ, args.catalog, args.threads)
    bad = [
        str(rec.shape)
        for rec in catalog.records
        if rec.size > 1 and rec.size < rec.f
    ]
    print(f"size >= feasible-cell count for every shape != 1: "
          f"{'holds' if not bad else 'counterexamples ' + repr(bad)} "
          f"({len(catalog.records)} shapes)")
    solver = Solver(catalog)
    for r in range(1, args.max_occ + 1):
        form = extract_pq(solver.occurrence_closed_form(r), r)
        if not form.polynomial:
            print(f"occ {r}: split NOT polynomial")
            continue
        two_p, two_q = form.P.as_polynomial(), form.Q.as_polynomial()
        halfint = all((2 * c).denominator == 1 for c in two_p + two_q)
        q_at_quarter = poly_eval(two_q, Fraction(1, 4))
        print(
            f"occ {r}: split polynomial; half-integer halves "
            f"{'hold' if halfint else 'FAIL'}; (1-4x) divides Q: "
            f"{'no' if q_at_quarter != 0 else 'YES (unexpected)'}"
        )
    return 0


# -- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="occ132",
        description="Exact counting of permutations by number of 132-pattern occurrences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    threads_default = _default_threads()

    def add_common(p, *, order: bool = False, catalog: bool = True):
        p.add_argument("--threads", type=int, default=threads_default,
                       help=f"worker processes (default {threads_default}; env OCC132_THREADS)")
        if order:
            p.add_argument("--order", type=int, default=32, help="series truncation (default 32)")
        if catalog:
            p.add_argument("--catalog", help="catalog file to reuse (rebuilt+cached when too small)")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("shapes", help="enumerate kernel shapes into a catalog")
    p.add_argument("--max-occ", type=int, required=True, help="capacity budget R")
    p.add_argument("--verify-exceptional", action="store_true",
                   help="exhaustively confirm maximal-shape uniqueness for budgets <= 2")
    add_common(p, catalog=False)
    p.set_defaults(func=_cmd_shapes)

    p = sub.add_parser("gf", help="series for exactly R occurrences")
    p.add_argument("--occ", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    add_common(p, order=True)
    p.set_defaults(func=_cmd_gf)

    p = sub.add_parser("closed-form", help="P, Q split of the closed form")
    p.add_argument("--occ", type=int, required=True)
    p.add_argument("--format", choices=("json", "latex"), default="json")
    add_common(p)
    p.set_defaults(func=_cmd_closed_form)

    p = sub.add_parser("restricted", help="series additionally avoiding 12...K")
    p.add_argument("--occ", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    add_common(p, order=True)
    p.set_defaults(func=_cmd_restricted)

    p = sub.add_parser("verify", help="solver vs brute-force oracle")
    p.add_argument("--occ", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="also avoid 12...k")
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-invariants", help="exhaustive structural checks")
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(func=_cmd_check_invariants)

    p = sub.add_parser("conjectures", help="informational reports")
    p.add_argument("--max-occ", type=int, default=6)
    add_common(p)
    p.set_defaults(func=_cmd_conjectures)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CatalogError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
