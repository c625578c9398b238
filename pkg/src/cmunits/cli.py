"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 on usage or precondition
errors, 2 when a mathematical verification fails.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from . import cache as _cache
from .errors import IntegralityError, PrecisionError
from .exact import bernoulli_numbers, gen_bernoulli_table, is_prime, padic_valuation
from .fields import DISCRIMINANTS, DirichletChar, get_field, is_split
from .padic import RANGE_NOTE, SCAN_LIMIT, paper_claims, scan_primes
from .stick import admissible_norms, nu_table
from . import verify as _verify

__all__ = ["main", "build_parser", "RunConfig", "UsageError"]

IDENTITIES = ("kersey", "kersey-mult", "norm-units", "distribution", "homogeneity", "theta-a")
NU_LIMIT = 10**5

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 256
    guard_bits: int = 32
    cache_dir: Optional[str] = None
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        if self.precision_bits < 128:
            raise UsageError("--prec must be >= 128")
        if self.guard_bits < 16:
            raise UsageError("--guard must be >= 16")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")

    def snapshot(self) -> Dict[str, int]:
        return {"precision_bits": self.precision_bits, "guard_bits": self.guard_bits}


def _qstr(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_range(text: str) -> List[int]:
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"malformed range {text!r}; use M or A..B") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"range {text!r} must satisfy 0 <= A <= B")
    return list(range(lo, hi + 1))


def _field_arg(d: int):
    if d not in DISCRIMINANTS:
        raise UsageError(f"--dK must be one of {list(DISCRIMINANTS)}")
    return get_field(d)


def _prime_arg(F, p: int, split: bool = True) -> None:
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    try:
        ok = is_split(F, p)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if split and not ok:
        raise UsageError(f"{p} not split in {F.name}")


# --------------------------------------------------------------------------
# commands: each returns (results, claims, exit_code, csv_rows or None)

def cmd_bernoulli(args, cfg: RunConfig):
    ms = _parse_range(args.m)
    primes = args.vp or []
    for q in primes:
        if not is_prime(q):
            raise UsageError(f"--vp {q} is not prime")
    if args.chi is None:
        vals = bernoulli_numbers(ms[-1])
        formula, label = "bernoulli.recurrence", "B_m"
    else:
        if -args.chi not in DISCRIMINANTS:
            raise UsageError(f"--chi must be one of {[-d for d in DISCRIMINANTS]}")
        chi = DirichletChar.from_discriminant(args.chi)
        vals = gen_bernoulli_table(max(ms[-1], 1), chi)
        formula, label = "bernoulli.generalized.power_sums", f"B_m,chi_{args.chi}"
    results = []
    for m in ms:
        v = vals[m]
        results.append({
            "m": m, "family": label, "value": _qstr(v), "formula": formula,
            "valuations": {str(q): _val(v, q) for q in primes},
        })
    rows = [["m", "family", "value"] + [f"v_{q}" for q in primes]]
    rows += [[r["m"], r["family"], r["value"]] + [r["valuations"][str(q)] for q in primes]
             for r in results]
    return results, [], EXIT_OK, rows


def _val(v: Fraction, q: int):
    x = padic_valuation(v, q)
    return "inf" if x == float("inf") else x


def cmd_verify(args, cfg: RunConfig):
    F = _field_arg(args.dK)
    prec, guard = cfg.precision_bits, cfg.guard_bits
    ident = args.identity
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    needs_p = ident not in ("homogeneity", "theta-a")
    if needs_p:
        if args.p is None:
            raise UsageError(f"verify {ident} needs --p")
        _prime_arg(F, args.p, split=ident in ("kersey", "kersey-mult"))
    try:
        if ident == "kersey":
            reps = [_verify.verify_kersey(F, args.p, args.n, prec, guard)]
        elif ident == "kersey-mult":
            Na = args.Na if args.Na is not None else admissible_norms(F, args.p, 1)[0]
            reps = [_verify.verify_kersey_mult(F, args.p, args.n, args.c, Na, prec, guard)]
        elif ident == "norm-units":
            reps = [_verify.verify_norm_unit_identities(F, args.p, args.n, prec, guard)]
        elif ident == "distribution":
            reps = [_verify.verify_distribution(F, args.p, prec, guard)]
        elif ident == "homogeneity":
            reps = [_verify.verify_homogeneity(F, precision=prec, guard=guard)]
        else:
            reps = [_verify.verify_theta_a(F, precision=prec, guard=guard)]
    except ValueError as e:
        raise UsageError(str(e)) from None
    results = [r.to_dict() for r in reps]
    code = EXIT_OK if all(r.passed for r in reps) else EXIT_FAIL
    rows = [["identity", "parameters", "max_abs_diff", "tolerance", "passed"]]
    rows += [[r.identity, json.dumps(r.parameters, sort_keys=True), r.max_abs_diff, r.tolerance,
              str(r.passed).lower()] for r in reps]
    return results, [], code, rows


def cmd_criterion(args, cfg: RunConfig):
    if args.pmax > SCAN_LIMIT:
        raise UsageError(f"--pmax must be <= {SCAN_LIMIT}")
    ds = [args.dK] if args.dK is not None else list(DISCRIMINANTS)
    results, claims = [], []
    rows = [["d_K", "p", "split", "verdict", "witnesses"]]
    for d in ds:
        F = _field_arg(d)
        verdicts = scan_primes(F, args.pmax, jobs=cfg.jobs)
        for v in verdicts:
            results.append(v.to_dict())
            rows.append([v.d_K, v.p, v.split_status, str(v.verdict).lower(),
                         ";".join(f"{f}@{m}" for m, f in v.witnesses)])
        claims.extend(paper_claims(F, verdicts))
    return results, claims, EXIT_OK, rows


def cmd_nu_table(args, cfg: RunConfig):
    F = _field_arg(args.dK)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    _prime_arg(F, args.p)
    if F.d_K * args.p ** args.n > NU_LIMIT:
        raise UsageError(f"d_K * p^n must be <= {NU_LIMIT}")
    tab = nu_table(F, args.p, args.n, strict=False)
    bad = tab.violations()
    rows = [["c", "b", "nu", "is_integer"]]
    rows += [[c, b, v, "true" if ok else "false"] for c, b, v, ok in tab.rows()]
    results = [{
        "d_K": F.d_K, "p": args.p, "n": args.n, "rows": len(tab),
        "formula": "nu.class_sums", "all_integers": not bad,
        "violations": [[c, b, _qstr(Fraction(v))] for c, b, v in bad],
        "table": [{"c": r[0], "b": r[1], "nu": r[2]} for r in rows[1:]],
    }]
    return results, [], (EXIT_OK if not bad else EXIT_FAIL), rows


COMMANDS = {
    "bernoulli": cmd_bernoulli,
    "verify": cmd_verify,
    "criterion": cmd_criterion,
    "nu-table": cmd_nu_table,
}


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def common(suppress: bool) -> argparse.ArgumentParser:
        cp = _Parser(add_help=False)

        def d(v):
            return argparse.SUPPRESS if suppress else v

        cp.add_argument("--prec", type=int, default=d(256), help="working precision in bits (>= 128)")
        cp.add_argument("--guard", type=int, default=d(32), help="guard bits (>= 16)")
        cp.add_argument("--jobs", type=int, default=d(1), help="worker processes")
        cp.add_argument("--out", default=d(None), help="write the report here instead of stdout")
        cp.add_argument("--format", choices=("json", "csv"), default=d("json"), dest="fmt")
        cp.add_argument("--cache-dir", default=d(None), help="persistent value cache")
        return cp

    top, local = common(False), common(True)

    ap = _Parser(prog="cmunits", description="Elliptic-unit and Bernoulli-number checks.",
                 parents=[top])
    ap.add_argument("--version", action="version", version=f"cmunits {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bernoulli", parents=[local], help="B_m or B_{m,chi} with valuations")
    b.add_argument("--m", required=True, help="index M or range A..B")
    b.add_argument("--chi", type=int, default=None, help="field discriminant, e.g. -4")
    b.add_argument("--vp", type=int, nargs="*", default=[], help="primes for valuations")

    v = sub.add_parser("verify", parents=[local], help="run a numerical identity")
    v.add_argument("identity", choices=IDENTITIES)
    v.add_argument("--dK", type=int, required=True)
    v.add_argument("--p", type=int, default=None)
    v.add_argument("--n", type=int, default=1)
    v.add_argument("--c", type=int, default=1)
    v.add_argument("--Na", type=int, default=None)

    c = sub.add_parser("criterion", parents=[local], help="scan the divisibility criterion")
    c.add_argument("--dK", type=int, default=None, help="one field (default: all nine)")
    c.add_argument("--pmax", type=int, required=True)

    t = sub.add_parser("nu-table", parents=[local], help="write the nu exponent table")
    t.add_argument("--dK", type=int, required=True)
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--n", type=int, default=1)
    return ap


def _render(report: Dict, rows: Optional[List[list]], fmt: str) -> str:
    if fmt == "csv" and rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    return json.dumps(report, indent=2, sort_keys=False, default=str) + "\n"


def run(argv: Optional[Sequence[str]] = None):
    """Parse ``argv`` and execute; returns ``(exit_code, report_dict, text)``."""
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig(args.prec, args.guard, args.cache_dir, args.fmt, args.jobs)
    except UsageError as e:
        ap.error(str(e))
    if cfg.cache_dir:
        _cache.install(cfg.cache_dir)
    try:
        results, claims, code, rows = COMMANDS[args.command](args, cfg)
    except UsageError as e:
        ap.error(str(e))
    finally:
        if cfg.cache_dir:
            _cache.uninstall()
    report = {
        "command": args.command,
        "argv": list(argv) if argv is not None else sys.argv[1:],
        "config": cfg.snapshot(),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "results": results,
        "paper_claims": claims,
        "version": __version__,
    }
    if args.command == "criterion":
        report["range_note"] = RANGE_NOTE
    text = _render(report, rows, cfg.fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code, report, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        code, _, _ = run(argv)
    except SystemExit as e:
        return int(e.code or 0)
    except (IntegralityError, PrecisionError) as e:
        print(f"cmunits: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    return code


if __name__ == "__main__":
    sys.exit(main())
