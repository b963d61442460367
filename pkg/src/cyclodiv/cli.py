"""Command-line interface: ``cyclodiv <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import bounds
from .constructions import (
    DEFAULT_MATERIALIZE_CAP,
    extremal_fk,
    prefix_witness,
    suzuki_witness,
    trunc_of_product,
)
from .cyclotomic import DEFAULT_CAP, cyclotomic, cyclotomic_trunc, factor_xn_minus_1
from .divisor_search import DEFAULT_B_BUDGET, DEFAULT_H_BUDGET, big_B, big_H
from .errors import CycloError
from .numtheory import FactoredInt, primorial


@dataclass(frozen=True)
class RunConfig:
    cap: int = DEFAULT_CAP
    budget: Optional[int] = None  # None: the default of the command's search
    workers: int = 1
    output_format: str = "plain"
    trunc_cap: int = DEFAULT_MATERIALIZE_CAP

    def __post_init__(self) -> None:
        for name in ("cap", "workers", "trunc_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be positive")
        if self.output_format not in ("plain", "json", "csv"):
            raise ValueError(f"unknown format {self.output_format!r}")

    def budget_or(self, default: int) -> int:
        return default if self.budget is None else self.budget


def _index(text: str) -> FactoredInt:
    try:
        n = FactoredInt.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not n.factors and text.strip() not in ("1", ""):
        raise argparse.ArgumentTypeError(f"invalid index {text!r}")
    return n


def _target(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _shared(default: bool) -> argparse.ArgumentParser:
    # subcommands accept the global flags too; SUPPRESS keeps them from
    # overwriting values given before the subcommand
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if default else (lambda v: argparse.SUPPRESS)
    p.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="max index/degree to materialize")
    p.add_argument("--budget", type=int, default=d(None), help="max subsets per exhaustive search")
    p.add_argument("--workers", type=int, default=d(1), help="processes for subset search")
    p.add_argument("--format", dest="output_format", choices=("plain", "json", "csv"), default=d("plain"))
    p.add_argument(
        "--trunc-cap",
        type=int,
        default=d(DEFAULT_MATERIALIZE_CAP),
        help="largest witness order to materialize or truncation order to verify",
    )
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclodiv",
        description="Cyclotomic polynomials, divisors of x^n - 1 and their coefficients.",
        parents=[_shared(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_shared(False)]

    p = sub.add_parser("cyclo", parents=common, help="phi_N, full or truncated")
    p.add_argument("n", type=_index, help='index, decimal or factored like "2^1.3^1.5^1"')
    p.add_argument("--trunc", type=int, metavar="R", help="only coefficients 0..R")

    p = sub.add_parser("factor-x", parents=common, help="x^N - 1 as a product of phi_d")
    p.add_argument("n", type=_index)

    p = sub.add_parser("bn", parents=common, help="B(N): max height over divisors of x^N - 1")
    p.add_argument("n", type=_index)

    p = sub.add_parser("hrn", parents=common, help="H(R, N): max |coefficient R| over divisors")
    p.add_argument("r", type=int)
    p.add_argument("n", type=_index)

    p = sub.add_parser("witness", parents=common, help="constructive witnesses")
    wsub = p.add_subparsers(dest="kind", required=True)
    w = wsub.add_parser("prefix", parents=common, help="divisor with coefficients 1..r prescribed")
    w.add_argument("target", type=_target, help="c1,c2,...; put -- before a negative first entry")
    w = wsub.add_parser("suzuki", parents=common, help="m irreducible factors covering -n..n")
    w.add_argument("m", type=int)
    w.add_argument("n", type=int)
    w.add_argument("--order", type=int, help="truncation order (default from the construction)")

    p = sub.add_parser("extremal", parents=common, help="f_k over the k-th primorial")
    p.add_argument("k", type=int)
    p.add_argument("--r", type=int, default=None, help="coefficient index (default k)")

    p = sub.add_parser("bounds", parents=common, help="upper or lower bound sweeps")
    p.add_argument("--r", type=int, required=True, help="largest coefficient index")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--lower", action="store_true", help="primorial lower bound instead")
    p.add_argument("--k-max", type=int, default=None)

    p = sub.add_parser("survey", parents=common, help="exploratory growth statistics")
    p.add_argument("--n-max", type=int, required=True)
    return parser


# -- rendering -----------------------------------------------------------------


def _coeffs(c: Iterable) -> str:
    return "[" + ", ".join(str(a) for a in c) + "]"


def _table(rows: list[dict], columns: Sequence[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out)
        out.write("\n")
        return
    if fmt == "csv":
        w = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({c: "" if row.get(c) is None else row[c] for c in columns})
        return
    cells = [[str(c) for c in columns]]
    cells += [["" if row.get(c) is None else str(row[c]) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    for r in cells:
        out.write("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def _emit(obj, fmt: str, out, plain: str) -> None:
    if fmt == "plain":
        out.write(plain + "\n")
    else:
        json.dump(obj, out)
        out.write("\n")


def _witness_plain(report) -> str:
    lines = ["indices: " + ", ".join(str(m) for m in report.product.indices)]
    lines.append(f"order_l: {report.product.order_l}")
    lines.append("truncation: " + _coeffs(report.truncation.coeffs))
    for name, passed in report.claims:
        lines.append(f"{'pass' if passed else 'FAIL'}  {name}")
    return "\n".join(lines)


# -- commands ------------------------------------------------------------------


def _cmd_cyclo(args, cfg: RunConfig, out) -> int:
    if args.trunc is not None:
        c = list(cyclotomic_trunc(args.n, args.trunc).coeffs)
    else:
        c = list(cyclotomic(args.n, cfg.cap).coeffs)
    if cfg.output_format == "csv":
        _table([{"degree": i, "coefficient": a} for i, a in enumerate(c)], ["degree", "coefficient"], "csv", out)
    else:
        _emit({"n": args.n.to_json(), "trunc": args.trunc, "coeffs": c}, cfg.output_format, out, _coeffs(c))
    return 0


def _cmd_factor_x(args, cfg: RunConfig, out) -> int:
    rows = [{"d": str(d), "phi": _coeffs(phi.coeffs)} for d, phi in factor_xn_minus_1(args.n, cfg.cap)]
    if cfg.output_format == "plain":
        out.writelines(f"phi_{r['d']}: {r['phi']}\n" for r in rows)
    else:
        _table(rows, ["d", "phi"], cfg.output_format, out)
    return 0


def _search_out(res, cfg: RunConfig, out, label: str) -> int:
    data = res.to_json()
    if cfg.output_format == "csv":
        data = dict(data, witness_subset=" ".join(map(str, data["witness_subset"])))
        _table([data], ["n", "r", "value", "witness_subset"], "csv", out)
    else:
        plain = f"{label} = {res.value}\nwitness: {{{', '.join(map(str, data['witness_subset']))}}}"
        _emit(data, cfg.output_format, out, plain)
    return 0


def _cmd_bn(args, cfg: RunConfig, out) -> int:
    res = big_B(args.n, cfg.budget_or(DEFAULT_B_BUDGET), cfg.cap)
    return _search_out(res, cfg, out, f"B({args.n})")


def _cmd_hrn(args, cfg: RunConfig, out) -> int:
    res = big_H(args.r, args.n, cfg.budget_or(DEFAULT_H_BUDGET), cfg.workers)
    return _search_out(res, cfg, out, f"H({args.r}, {args.n})")


def _cmd_witness(args, cfg: RunConfig, out) -> int:
    if args.kind == "prefix":
        report = prefix_witness(args.target, cfg.trunc_cap)
    else:
        report = suzuki_witness(args.m, args.n, args.order, cfg.trunc_cap)
    if cfg.output_format == "plain":
        out.write(_witness_plain(report) + "\n")
    else:
        json.dump(report.to_json(), out)
        out.write("\n")
    return 0 if report.ok else 3


def _cmd_extremal(args, cfg: RunConfig, out) -> int:
    r = args.k if args.r is None else args.r
    if args.k < 1 or r < 0:
        raise ValueError("need k >= 1 and r >= 0")
    fk = extremal_fk(args.k)
    trunc = trunc_of_product(fk, r)
    data = {
        "k": args.k,
        "n_k": primorial(args.k).to_json(),
        "d_n": 1 << args.k,
        "indices": [str(m) for m in fk.indices],
        "r": r,
        "truncation": list(trunc.coeffs),
        "coefficient": trunc[r],
    }
    if 1 <= r <= args.k:
        rep = bounds.check_lower(r, args.k, cfg.budget_or(DEFAULT_H_BUDGET))
        data["ratio"] = str(rep.ratios["observed/leading"])
        data["leading_term"] = str(rep.leading_term)
    if cfg.output_format == "plain":
        lines = [f"n_k = {primorial(args.k)}, d(n_k) = {data['d_n']}"]
        lines.append("indices: " + ", ".join(data["indices"]))
        lines.append(f"coefficients 0..{r}: " + _coeffs(data["truncation"]))
        if "ratio" in data:
            lines.append(f"|coefficient {r}| / leading term = {data['ratio']}")
        out.write("\n".join(lines) + "\n")
    elif cfg.output_format == "csv":
        _table([{"i": i, "coefficient": a} for i, a in enumerate(data["truncation"])], ["i", "coefficient"], "csv", out)
    else:
        _emit(data, "json", out, "")
    return 0


def _cmd_bounds(args, cfg: RunConfig, out) -> int:
    budget = cfg.budget_or(DEFAULT_H_BUDGET)
    if args.lower:
        k_max = args.k_max if args.k_max is not None else args.r
        reports = bounds.lower_grid(args.r, k_max, budget)
        rows, columns = [rep.lower_row() for rep in reports], bounds.LOWER_COLUMNS
    else:
        if args.n_max is None:
            raise ValueError("--n-max is required for the upper bound grid")
        reports = bounds.upper_grid(args.r, args.n_max, budget, cfg.workers)
        rows, columns = [rep.upper_row() for rep in reports], bounds.UPPER_COLUMNS
    if cfg.output_format == "json":
        json.dump([rep.to_json() for rep in reports], out)
        out.write("\n")
    else:
        _table(rows, columns, cfg.output_format, out)
    failed = [rep for rep in reports if not rep.ok]
    for rep in failed:
        names = ", ".join(n for n, p in rep.checks if not p)
        print(f"violation at r={rep.r}, n={rep.n}: {names}", file=sys.stderr)
    return 3 if failed else 0


def _cmd_survey(args, cfg: RunConfig, out) -> int:
    rows = bounds.survey(args.n_max, cfg.budget_or(DEFAULT_B_BUDGET), cfg.cap)
    _table([row.to_row() for row in rows], ["n", "d_n", "divisor_exponent", "B_n", "growth_stat"], cfg.output_format, out)
    return 0


_COMMANDS = {
    "cyclo": _cmd_cyclo,
    "factor-x": _cmd_factor_x,
    "bn": _cmd_bn,
    "hrn": _cmd_hrn,
    "witness": _cmd_witness,
    "extremal": _cmd_extremal,
    "bounds": _cmd_bounds,
    "survey": _cmd_survey,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.cap, args.budget, args.workers, args.output_format, args.trunc_cap)
        return _COMMANDS[args.command](args, cfg, out)
    except CycloError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"ValueError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
