"""Command-line interface.

    zetaquot table p --n-max 8
    zetaquot table q --n-max 10 --format json
    zetaquot quot 4 --prec 256
    zetaquot lstar p 4
    zetaquot lstar --coeffs 0,1
    zetaquot lvalue 10
    zetaquot verify all
    zetaquot witness 10 --p-max 500

Machine output goes to stdout (or --out); diagnostics go to stderr.
Exit status is 0 on success, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import modular, numerics, polycalc
from .errfloat import to_fraction
from .poly import RatPoly, render
from .verify import SUITES

N_CAP = 200
DEFAULT_PREC = 256


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    prec: int = DEFAULT_PREC
    fmt: str = "text"
    n_max: Optional[int] = None
    p_max: Optional[int] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.prec < 64:
            raise UsageError(f"--prec must be >= 64, got {self.prec}")
        if self.n_max is not None and not 1 <= self.n_max <= N_CAP:
            raise UsageError(f"--n-max must be in [1, {N_CAP}], got {self.n_max}")
        if self.p_max is not None and self.p_max < 2:
            raise UsageError(f"--p-max must be >= 2, got {self.p_max}")


def dumps_json(obj) -> str:
    """Canonical JSON used for all emissions, so parse + re-dump is byte-identical."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands -------------------------------------------------------------------


def cmd_table(kind: str, n_max: int, fmt: str) -> str:
    if kind == "p":
        if n_max < 1:
            raise UsageError("table p needs --n-max >= 1")
        ns, build = range(1, n_max + 1), polycalc.build_p
    elif kind == "q":
        if n_max < 3:
            raise UsageError("table q needs --n-max >= 3")
        ns, build = range(3, n_max + 1), polycalc.build_q
    else:
        raise UsageError(f"unknown table kind {kind!r}")
    polys = [(n, build(n)) for n in ns]
    if fmt == "json":
        return dumps_json([f.to_json(kind, n) for n, f in polys])
    if fmt == "csv":
        return _csv_text(["kind", "n", "coeffs"], [[kind, n, " ".join(str(c) for c in f.coeffs)] for n, f in polys])
    return "".join(f"{kind}_{n}(x) = {render(f)}\n" for n, f in polys)


def _num_text(label: str, x) -> str:
    rec = x.to_json()
    return f"{label:<22} {rec['value']}  ± {rec['abs_err_le']}\n"


def cmd_quot(n: int, prec: int, fmt: str) -> tuple[str, bool]:
    if n < 2 or n % 2:
        raise UsageError(f"quot needs an even n >= 2, got {n}")
    formula = numerics.zeta_quotient(n, prec)
    oracle = numerics.zeta_int(n + 1, prec) / numerics.zeta_int(n, prec)
    diff = abs(to_fraction(formula.value) - to_fraction(oracle.value))
    ok = formula.overlaps(oracle)
    if fmt == "json":
        return dumps_json(
            {
                "n": n,
                "quotient_formula": formula.to_json(prec),
                "zeta_oracle": oracle.to_json(prec),
                "difference": f"{float(diff):.3e}",
                "overlap": ok,
            }
        ), ok
    if fmt == "csv":
        a, b = formula.to_json(prec), oracle.to_json(prec)
        return _csv_text(
            ["n", "formula", "formula_err", "oracle", "oracle_err", "difference", "overlap"],
            [[n, a["value"], a["abs_err_le"], b["value"], b["abs_err_le"], f"{float(diff):.3e}", ok]],
        ), ok
    text = f"zeta({n + 1})/zeta({n})\n"
    text += _num_text("quotient formula:", formula)
    text += _num_text("zeta series oracle:", oracle)
    text += f"{'difference:':<22} {float(diff):.3e}  ({'within' if ok else 'OUTSIDE'} combined bound)\n"
    return text, ok


def _emit_number(label: str, x, prec: int, fmt: str) -> str:
    rec = x.to_json(prec)
    if fmt == "json":
        return dumps_json(rec)
    if fmt == "csv":
        return _csv_text(["quantity", "value", "abs_err_le", "prec_bits"], [[label, rec["value"], rec["abs_err_le"], prec]])
    return _num_text(label + ":", x)


def _parse_coeffs(text: str) -> RatPoly:
    try:
        return RatPoly([Fraction(c.strip()) for c in text.split(",") if c.strip()])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --coeffs {text!r}: {exc}") from None


def cmd_lstar(kind: Optional[str], n: Optional[int], coeffs: Optional[str], prec: int, fmt: str) -> str:
    if coeffs is not None:
        f, label = _parse_coeffs(coeffs), "L*(f)"
    elif kind in ("p", "q") and n is not None:
        if n > N_CAP:
            raise UsageError(f"n must be <= {N_CAP}")
        try:
            f = polycalc.build_p(n) if kind == "p" else polycalc.build_q(n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        label = f"L*({kind}_{n})"
    else:
        raise UsageError("lstar needs KIND N (KIND in p, q) or --coeffs")
    return _emit_number(label, numerics.lstar_eval(f, prec), prec, fmt)


def cmd_lvalue(n: int, prec: int, fmt: str) -> str:
    if not 1 <= n <= N_CAP:
        raise UsageError(f"lvalue needs 1 <= n <= {N_CAP}")
    return _emit_number(f"l_{n}", numerics.l_value(n, prec), prec, fmt)


def cmd_verify(suite: str, n_max: Optional[int], p_max: Optional[int], prec: int, fmt: str) -> tuple[str, bool]:
    names = list(SUITES) if suite == "all" else [suite]
    if any(s not in SUITES for s in names):
        raise UsageError(f"unknown suite {suite!r}; choose from exact, numeric, modular, all")
    checks = []
    for s in names:
        if s == "exact":
            results = SUITES[s](n_max or 60)
        elif s == "numeric":
            results = SUITES[s](n_max or 60, prec)
        else:
            results = SUITES[s](p_max or 31)
        checks.extend((s, c) for c in results)
    ok = all(c.passed for _, c in checks)
    if fmt == "json":
        return dumps_json(
            {"pass": ok, "checks": [{"suite": s, "name": c.name, "pass": c.passed, "detail": c.detail} for s, c in checks]}
        ), ok
    if fmt == "csv":
        return _csv_text(["suite", "name", "pass", "detail"], [[s, c.name, c.passed, c.detail] for s, c in checks]), ok
    lines = [f"[{s}] {c.line()}" for s, c in checks]
    lines.append(f"{'ALL PASSED' if ok else 'FAILURES PRESENT'}: {sum(c.passed for _, c in checks)}/{len(checks)}")
    return "\n".join(lines) + "\n", ok


def cmd_witness(ns: Sequence[int], p_max: int, fmt: str) -> tuple[str, bool]:
    if any(n < 4 for n in ns):
        raise UsageError("witness needs n >= 4")
    certs = []
    for n in ns:
        p = modular.witness_scan(n, p_max)
        certs.append(modular.certificate(n, "modp-irreducible", p, p is not None))
    ok = all(c["pass"] for c in certs)
    if fmt == "json":
        return dumps_json(certs), ok
    if fmt == "csv":
        return _csv_text(["n", "claim", "prime", "pass"], [[c["n"], c["claim"], c["prime"], c["pass"]] for c in certs]), ok
    lines = []
    for c in certs:
        if c["pass"]:
            lines.append(f"q_{c['n']}: irreducible over Z (q_{c['n']} mod {c['prime']} is irreducible)")
        else:
            lines.append(f"q_{c['n']}: unknown (no witness prime <= {p_max})")
    return "\n".join(lines) + "\n", ok


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=DEFAULT_PREC, help="precision in bits (>= 64)")
    common.add_argument("--format", dest="fmt", choices=["text", "json", "csv"], default="text")
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--p-max", type=int, default=None)
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="zetaquot", description="Zeta quotients via the polynomials p_n and q_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="print p_n or q_n")
    p.add_argument("kind", choices=["p", "q"])
    p.add_argument("n", nargs="?", type=int, help="same as --n-max")

    p = sub.add_parser("quot", parents=[common], help="zeta(n+1)/zeta(n) two ways")
    p.add_argument("n", type=int)

    p = sub.add_parser("lstar", parents=[common], help="evaluate L* of a polynomial")
    p.add_argument("kind", nargs="?", choices=["p", "q"])
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("--coeffs", help="comma-separated ascending coefficients, e.g. 0,1/2,3")

    p = sub.add_parser("lvalue", parents=[common], help="certified l_n")
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("suite", choices=["exact", "numeric", "modular", "all"])

    p = sub.add_parser("witness", parents=[common], help="mod-p irreducibility witnesses for q_n")
    p.add_argument("n", nargs="?", type=int, help="single n; default scans 4..--n-max")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[str, int, Optional[str]]:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, args.prec, args.fmt, args.n_max, args.p_max, args.out)
    ok = True
    if cfg.command == "table":
        default = 8 if args.kind == "p" else 10
        n_max = args.n if args.n is not None else (cfg.n_max or default)
        if n_max > N_CAP:
            raise UsageError(f"n must be <= {N_CAP}")
        text = cmd_table(args.kind, n_max, cfg.fmt)
    elif cfg.command == "quot":
        if args.n > N_CAP:
            raise UsageError(f"n must be <= {N_CAP}")
        text, ok = cmd_quot(args.n, cfg.prec, cfg.fmt)
    elif cfg.command == "lstar":
        text = cmd_lstar(args.kind, args.n, args.coeffs, cfg.prec, cfg.fmt)
    elif cfg.command == "lvalue":
        text = cmd_lvalue(args.n, cfg.prec, cfg.fmt)
    elif cfg.command == "verify":
        text, ok = cmd_verify(args.suite, cfg.n_max, cfg.p_max, cfg.prec, cfg.fmt)
    else:
        ns = [args.n] if args.n is not None else list(range(4, (cfg.n_max or 10) + 1))
        text, ok = cmd_witness(ns, cfg.p_max or 1000, cfg.fmt)
    return text, 0 if ok else 1, cfg.out


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        text, status, out = run(argv)
    except UsageError as exc:
        print(f"zetaquot: error: {exc}", file=sys.stderr)
        return 2
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
