"""Command-line front end.

Exit codes: 0 success (or verdict verified), 1 a check failed, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from .asymptotics import extract_asymptotics
from .catalog import CATALOG, default_radius, load_group
from .cayley import enumerate_growth
from .errors import BudgetExceededError, GrowthLabError
from .series import SeriesCoefficients, fit_rational
from .thinness import estimate_delta
from .verify import check_fiber_bounds, check_lemma_inequality, run_theorem_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("growth", "series", "rate", "lemma", "fibers", "delta", "verify")
CHECK_SCHEMA = "growthlab.check/1"


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help=f"catalog key ({', '.join(CATALOG)}) or group file path")
    common.add_argument("--radius", type=_nonnegative, help="enumeration radius (default: per catalog group)")
    common.add_argument("--delta", type=_positive, help="thinness constant, overriding the group file")
    common.add_argument("--n", type=_nonnegative, default=1)
    common.add_argument("--m", type=_nonnegative, default=1)
    common.add_argument("--store-elements", action="store_true", help="export the element store (growth)")
    common.add_argument("--format", choices=("csv", "json", "text"), default="text")
    common.add_argument(
        "--budget-mb",
        type=_positive,
        default=None,
        help="memory budget in MiB (default: $GROWTHLAB_BUDGET_MB or 8192)",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for sampled triangles")
    common.add_argument("--sample", type=_positive, help="sample this many triangles (delta)")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="growthlab", description="Exact word growth of finitely presented groups.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "growth": "sphere and ball sizes",
        "series": "fit the rational growth function",
        "rate": "growth rate, polynomial degree and constants",
        "lemma": "convolution inequality for given n, m",
        "fibers": "fiber sizes of the product map S(n) x S(m)",
        "delta": "empirical thin-triangle constant",
        "verify": "full report on purely exponential growth",
    }
    for cmd in COMMANDS:
        sub.add_parser(cmd, parents=[common], help=helps[cmd])
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, default=str) + "\n"


def _kv_text(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _csv(header, rows) -> str:
    lines = [",".join(header)] + [",".join(str(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


def _radius(args) -> int:
    if args.radius is not None:
        return args.radius
    r = default_radius(args.group)
    if r is None:
        raise GrowthLabError("--radius is required for groups outside the catalog")
    return r


def _delta(args, p) -> int:
    d = args.delta if args.delta is not None else p.delta
    if d is None:
        raise GrowthLabError("no delta in the group file; pass --delta")
    return d


def cmd_growth(args, p) -> int:
    table = enumerate_growth(p, _radius(args), store_elements=args.store_elements, budget_mb=args.budget_mb)
    if args.format == "csv":
        text = table.to_csv()
    elif args.format == "json":
        d = table.to_dict()
        if args.store_elements:
            d["elements"] = [[p.format(w) for w in table.words(n)] for n in range(table.radius + 1)]
        text = _dump(d)
    else:
        text = _csv(["n", "sphere", "ball"], zip(range(table.radius + 1), table.sphere_counts, table.ball_counts))
        text = text.replace(",", "\t")
        if args.store_elements:
            text += table.export_elements(p)
    _emit(text, args.out)
    return EXIT_OK


def _fit(args, p):
    table = enumerate_growth(p, _radius(args), budget_mb=args.budget_mb)
    return table, fit_rational(SeriesCoefficients.spherical(table))


def cmd_series(args, p) -> int:
    _, r = _fit(args, p)
    if args.format == "json":
        text = _dump(r.to_dict())
    elif args.format == "csv":
        n = max(len(r.numerator), len(r.denominator))
        rows = [(i, r.numerator[i] if i < len(r.numerator) else 0, r.denominator[i] if i < len(r.denominator) else 0) for i in range(n)]
        text = _csv(["power", "numerator", "denominator"], rows)
    else:
        text = _kv_text(
            [
                ("function", str(r)),
                ("train_window", f"{r.train_window[0]}..{r.train_window[1]}"),
                ("verified_through", r.verified_through),
            ]
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_rate(args, p) -> int:
    table, r = _fit(args, p)
    a = extract_asymptotics(r, table)
    if args.format == "json":
        text = _dump(a.to_dict())
    elif args.format == "csv":
        text = _csv(
            ["lambda_lo", "lambda_hi", "alpha", "C_hat", "D_hat"],
            [(float(a.lambda_lo), float(a.lambda_hi), a.alpha, a.C_hat, a.D_hat)],
        )
    else:
        rows = [
            ("lambda", f"[{float(a.lambda_lo):.12g}, {float(a.lambda_hi):.12g}]"),
            ("alpha", a.alpha),
            ("C_hat", f"{a.C_hat} ({float(a.C_hat):.9g})" if a.C_hat.denominator < 10**6 else f"{float(a.C_hat):.12g}"),
            ("D_hat", f"{a.D_hat} ({float(a.D_hat):.9g})" if a.D_hat.denominator < 10**6 else f"{float(a.D_hat):.12g}"),
        ]
        if a.warning:
            rows.append(("warning", a.warning))
        text = _kv_text(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_lemma(args, p) -> int:
    delta = _delta(args, p)
    table = enumerate_growth(p, _radius(args), budget_mb=args.budget_mb)
    c = check_lemma_inequality(table, delta, args.n, args.m)
    d = {"schema": CHECK_SCHEMA, "check": "lemma", "n": c.n, "m": c.m, "delta": c.delta, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds}
    if args.format == "json":
        text = _dump(d)
    elif args.format == "csv":
        text = _csv(["n", "m", "delta", "lhs", "rhs", "holds"], [(c.n, c.m, c.delta, c.lhs, c.rhs, c.holds)])
    else:
        text = _kv_text([(k, v) for k, v in d.items() if k not in ("schema", "check")])
    _emit(text, args.out)
    return EXIT_OK if c.holds else EXIT_FAIL


def cmd_fibers(args, p) -> int:
    delta = _delta(args, p)
    table = enumerate_growth(p, _radius(args), store_elements=True, budget_mb=args.budget_mb)
    f = check_fiber_bounds(p, table, delta, args.n, args.m)
    if args.format == "csv":
        rows = [(p.format(w.g) or "1", w.ell, w.fiber_size, w.N, w.bound) for w in f.witnesses()]
        text = _csv(["g", "ell", "fiber_size", "N", "bound"], rows)
    else:
        d = {
            "schema": CHECK_SCHEMA,
            "check": "fibers",
            "n": f.n,
            "m": f.m,
            "delta": f.delta,
            "pairs": f.pairs,
            "products": int(len(f.sizes)),
            "max_fiber": f.max_fiber,
            "ells": f.ells,
            "ell_range_ok": f.ell_range_ok,
            "center_ok": f.center_ok,
            "violations": [[p.format(w.g), w.fiber_size, w.bound] for w in f.violations()],
            "ok": f.ok,
        }
        text = _dump(d) if args.format == "json" else _kv_text([(k, v) for k, v in d.items() if k not in ("schema", "check")])
    _emit(text, args.out)
    return EXIT_OK if f.ok else EXIT_FAIL


def cmd_delta(args, p) -> int:
    rep = estimate_delta(p, _radius(args), sample=args.sample, seed=args.seed)
    d = rep.to_dict(p)
    if args.format == "json":
        text = _dump(d)
    elif args.format == "csv":
        text = _csv(["radius", "triangles", "delta_hat", "worst_defect"], [(rep.radius_examined, rep.triangles_examined, rep.delta_hat, rep.worst_defect)])
    else:
        text = _kv_text([(k, v) for k, v in d.items() if k not in ("schema", "worst_triangle")])
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args, p) -> int:
    rep = run_theorem_report(p, _radius(args), delta_override=args.delta, budget_mb=args.budget_mb)
    if args.format == "json":
        text = rep.to_json() + "\n"
    elif args.format == "csv":
        rows = [(n, s, b) for n, (s, b) in enumerate(zip(rep.growth.sphere_counts, rep.growth.ball_counts))] if rep.growth else []
        text = _csv(["n", "sphere", "ball"], rows) + f"# verdict,{rep.verdict}\n"
    else:
        text = rep.to_text()
    _emit(text, args.out)
    return rep.exit_code


HANDLERS = {
    "growth": cmd_growth,
    "series": cmd_series,
    "rate": cmd_rate,
    "lemma": cmd_lemma,
    "fibers": cmd_fibers,
    "delta": cmd_delta,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.budget_mb is None and os.environ.get("GROWTHLAB_BUDGET_MB"):
        try:
            args.budget_mb = _positive(os.environ["GROWTHLAB_BUDGET_MB"])
        except (ValueError, argparse.ArgumentTypeError):
            print("growthlab: GROWTHLAB_BUDGET_MB must be a positive integer", file=sys.stderr)
            return EXIT_USAGE
    try:
        p = load_group(args.group)
        return HANDLERS[args.command](args, p)
    except BudgetExceededError as exc:
        print(f"growthlab: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except GrowthLabError as exc:
        print(f"growthlab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"growthlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
