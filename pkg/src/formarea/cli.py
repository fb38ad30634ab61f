"""``formarea`` command-line front end.

Exit codes: 0 success, 1 usage error, 2 accuracy failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from . import bounds as bd
from .checks import GROUPS, run_checks
from .families import Family, FamilyId, make
from .numtheory import DomainError
from .polycore import discriminant, to_string
from .quadrature import AccuracyError, QuadratureConfig, area_integral, curve_samples, default_workers
from .tables import compute_tables, factored, table1_reference, table2_reference

EXIT_OK, EXIT_USAGE, EXIT_ACCURACY, EXIT_VERIFY = 0, 1, 2, 3

FAMILY_NAMES = [f.value for f in Family]

LIMITS = {
    "psi": 16 / 3,
    "pi": 16 / 3,
    "chebyshev-t": 8 / 3,
    "chebyshev-u": 8 / 3,
    "s": math.pi,
    "cyclotomic": 4.0,
    "binomial": 4.0,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt_real(x: float) -> str:
    """12 significant digits; divergent values as ``inf``."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def _family_id(args) -> FamilyId:
    fam = Family(args.family)
    if fam is Family.BINOMIAL:
        if args.a is None or args.b is None:
            raise UsageError("binomial needs --a and --b")
        return FamilyId(fam, args.n, args.a, args.b)
    if args.a is not None or args.b is not None:
        raise UsageError(f"{fam.value} takes no --a/--b")
    return FamilyId(fam, args.n)


def _config(args) -> QuadratureConfig:
    return QuadratureConfig(target_rel_error=args.tol, workers=default_workers())


def _emit_csv(header: Sequence[str], rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _open_out(path: Optional[str]):
    if path is None:
        return None
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


class _Output:
    """Collects text and writes it to --out or stdout."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self.buf = io.StringIO()

    def flush(self, stdout) -> None:
        text = self.buf.getvalue()
        if self.path is None:
            stdout.write(text)
            return
        fh = _open_out(self.path)
        with fh:
            fh.write(text)


# ---------------------------------------------------------------- commands

def cmd_poly(args, out: io.StringIO) -> int:
    fid = _family_id(args)
    f = make(fid)
    if args.json:
        json.dump({"command": "poly", "family": fid.tag.value, "n": fid.n,
                   "coefficients": [str(c) for c in f.poly.coeffs],
                   "polynomial": to_string(f.poly), "form_degree": f.form_degree,
                   "discriminant": str(discriminant(f))}, out)
        out.write("\n")
    else:
        out.write(f"{to_string(f.poly)}\n")
        out.write(f"form degree {f.form_degree}\n")
    return EXIT_OK


def cmd_area(args, out) -> int:
    fid = _family_id(args)
    f = make(fid)
    res = area_integral(f, _config(args))
    if args.json:
        json.dump({"command": "area", "family": fid.tag.value, "n": fid.n, "value": fmt_real(res.value),
                   "abs_error_estimate": fmt_real(res.abs_error_estimate), "status": res.status.value}, out)
        out.write("\n")
    else:
        out.write(f"{fmt_real(res.value)}\n")
        out.write(f"error estimate {fmt_real(res.abs_error_estimate)}, status {res.status.value}\n")
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    if args.family not in bd.BOUNDED_FAMILIES:
        raise UsageError(f"no bounds for {args.family}; choose from {', '.join(bd.BOUNDED_FAMILIES)}")
    r = bd.sandwich(args.family, args.n, args.alpha, _config(args))
    record = {"command": "bounds", "family": args.family, "n": args.n, "alpha": fmt_real(r.alpha),
              "lower": fmt_real(r.lower), "computed": fmt_real(r.computed), "upper": fmt_real(r.upper),
              "lower_margin": fmt_real(r.lower_margin), "upper_margin": fmt_real(r.upper_margin),
              "verdict": r.verdict.value}
    if args.json:
        json.dump(record, out)
        out.write("\n")
    else:
        for k in ("lower", "computed", "upper", "lower_margin", "upper_margin", "verdict"):
            out.write(f"{k} {record[k]}\n")
    return EXIT_OK if r.sandwich_ok else EXIT_VERIFY


def _six(x: float) -> str:
    # six significant digits with trailing zeros kept, the reference tables' style
    return "inf" if math.isinf(x) else f"{x:#.6g}"


def cmd_tables(args, out) -> int:
    rows = compute_tables(_config(args), workers=default_workers())
    which = [1, 2] if args.which is None else [args.which]
    by_key = {(r.family, r.n): r for r in rows}
    tables = {}
    for w in which:
        if w == 1:
            header = ["n", "family", "discriminant"] + (["factored"] if args.factored else []) + ["area", "printed"]
            body = []
            for ref in table1_reference():
                r = by_key[(ref.family, ref.n)]
                row = [r.n, r.family, str(r.discriminant)]
                if args.factored:
                    row.append(factored(r.discriminant))
                row += [fmt_real(r.area), _six(r.area)]
                body.append(row)
        else:
            header = ["n", "family", "q", "printed"]
            body = []
            for ref in table2_reference():
                q = by_key[(ref.family, ref.n)].q
                body.append([ref.n, ref.family, fmt_real(q), _six(q)])
        tables[f"table{w}"] = (header, body)
    if args.json:
        json.dump({k: [dict(zip(h, map(str, row))) for row in b] for k, (h, b) in tables.items()}, out)
        out.write("\n")
    else:
        for i, (header, body) in enumerate(tables.values()):
            if i:
                out.write("\n")
            _emit_csv(header, body, out)
    return EXIT_OK


def cmd_curve(args, out) -> int:
    fid = _family_id(args)
    if args.samples < 8:
        raise UsageError("--samples must be at least 8")
    pts = curve_samples(make(fid), args.samples)
    rows = [[fmt_real(p.theta), "ray" if p.is_ray else fmt_real(p.x), "ray" if p.is_ray else fmt_real(p.y)]
            for p in pts]
    if args.json:
        json.dump([dict(zip(("theta", "x", "y"), r)) for r in rows], out)
        out.write("\n")
    else:
        _emit_csv(["theta", "x", "y"], rows, out)
    return EXIT_OK


def _limit_value(fid: FamilyId, cfg: QuadratureConfig) -> float:
    if fid.tag is Family.BINOMIAL:
        return bd.binomial_area_closed(fid.a, fid.b, fid.n)
    if fid.tag is Family.S:
        return bd.s_area_closed(fid.n)
    return area_integral(make(fid), cfg).value


def cmd_limits(args, out) -> int:
    fam = Family(args.family)
    if fam is Family.BINOMIAL and (args.a is None or args.b is None):
        args.a = 1 if args.a is None else args.a
        args.b = 1 if args.b is None else args.b
    try:
        ns = [int(s) for s in args.n_list.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --n-list {args.n_list!r}") from exc
    if not ns:
        raise UsageError("--n-list is empty")
    cfg = _config(args)
    target = LIMITS[fam.value]
    ids = [FamilyId(fam, n, args.a, args.b) if fam is Family.BINOMIAL else FamilyId(fam, n) for n in ns]
    workers = default_workers()
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda f: _limit_value(f, cfg), ids))
    else:
        values = [_limit_value(f, cfg) for f in ids]
    rows = [[n, fmt_real(v), fmt_real(abs(v - target))] for n, v in zip(ns, values)]
    if args.json:
        json.dump({"command": "limits", "family": fam.value, "limit": fmt_real(target),
                   "rows": [dict(zip(("n", "value", "distance"), map(str, r))) for r in rows]}, out)
        out.write("\n")
    else:
        _emit_csv(["n", "value", "distance"], rows, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    only = None
    if args.only:
        only = [g.strip() for g in args.only.split(",") if g.strip()]
        bad = [g for g in only if g not in GROUPS]
        if bad:
            raise UsageError(f"unknown group(s) {', '.join(bad)}; choose from {', '.join(GROUPS)}")
    results = run_checks(only, _config(args))
    if args.json:
        json.dump([{"group": r.group, "name": r.name, "status": r.status, "detail": r.detail} for r in results], out)
        out.write("\n")
    else:
        for r in results:
            out.write(f"{r.status:5} [{r.group}] {r.name}" + (f": {r.detail}" if r.detail else "") + "\n")
        failed = sum(r.failed for r in results)
        out.write(f"{len(results)} checks, {failed} failed\n")
    return EXIT_VERIFY if any(r.failed for r in results) else EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text/CSV")
    common.add_argument("--tol", type=float, default=1e-9, help="target relative error for quadrature")
    common.add_argument("--out", metavar="PATH", help="write output to PATH")

    p = _Parser(prog="formarea", description="Areas of fundamental regions of integer binary forms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def family_cmd(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("family", choices=FAMILY_NAMES)
        sp.add_argument("n", type=int)
        sp.add_argument("--a", type=int)
        sp.add_argument("--b", type=int)
        return sp

    family_cmd("poly", "print the dehomogenized polynomial and form degree")
    family_cmd("area", "compute the area of the fundamental region")
    sp = sub.add_parser("bounds", parents=[common], help="closed-form bounds against quadrature")
    sp.add_argument("family", choices=list(bd.BOUNDED_FAMILIES) + [f for f in FAMILY_NAMES
                                                                    if f not in bd.BOUNDED_FAMILIES])
    sp.add_argument("n", type=int)
    sp.add_argument("--alpha", type=float)
    sp = sub.add_parser("tables", parents=[common], help="recompute the n = 3..9 reference tables as CSV")
    sp.add_argument("--which", type=int, choices=(1, 2))
    sp.add_argument("--factored", action="store_true", help="add a prime-factorization column")
    sp = family_cmd("curve", "sample the level curve |F(x, y)| = 1")
    sp.add_argument("--samples", type=int, default=720)
    sp = sub.add_parser("limits", parents=[common], help="distance to the limiting area along n")
    sp.add_argument("family", choices=FAMILY_NAMES)
    sp.add_argument("--n-list", default="12,24,48,96")
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)
    sp = sub.add_parser("verify", parents=[common], help="run the self-verification suite")
    sp.add_argument("--only", help=f"comma-separated subset of {','.join(GROUPS)}")
    return p


_COMMANDS = {
    "poly": cmd_poly,
    "area": cmd_area,
    "bounds": cmd_bounds,
    "tables": cmd_tables,
    "curve": cmd_curve,
    "limits": cmd_limits,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        if not 0 < args.tol < 1:
            raise UsageError("--tol must lie in (0, 1)")
        out = _Output(args.out)
        code = _COMMANDS[args.command](args, out.buf)
        out.flush(stdout)
        return code
    except UsageError as exc:
        stderr.write(f"formarea: usage error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        stderr.write(f"formarea: usage error: {exc}\n")
        return EXIT_USAGE
    except AccuracyError as exc:
        stderr.write(f"formarea: accuracy failure: {exc} (value {exc.value:.12g}, change {exc.estimate:.3g})\n")
        return EXIT_ACCURACY


if __name__ == "__main__":
    sys.exit(main())
