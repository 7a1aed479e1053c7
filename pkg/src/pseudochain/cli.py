"""Command-line front end: plot-ready CSV and JSON for the chain models.

Exit codes: 0 success, 2 bad configuration, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .errors import NoRootInRange, PredicateNotBracketed, PseudoChainError
from .model import ChainModel
from .patterns import brute_force_count, enumerate_counts
from .spectral import (
    BISECT_XTOL,
    MERGER_STEPS,
    QH_GRID_CELLS,
    XI_GRID_CELLS,
    NotQuasiHermitian,
    classify_mergers,
    domain4_contains,
    qh_threshold,
    scan,
    xi_root,
)

EXIT_CONFIG = 2
EXIT_NUMERIC = 3
BRUTE_FORCE_MAX_N = 20


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    J: int | None = None
    G: tuple[float, ...] | None = None

    def model(self) -> ChainModel:
        if self.J is None or self.G is None:
            raise ConfigError("--J and --G are required")
        if len(self.G) != self.J:
            raise ConfigError(f"--G needs {self.J} values, got {len(self.G)}")
        return ChainModel(self.J, self.G)


def fmt_num(x: float) -> str:
    """12 significant digits, no negative zero."""
    x = float(x)
    if x == 0.0:
        return "0"
    return format(x, ".12g")


def json_num(x: float) -> float:
    x = float(x)
    return 0.0 if x == 0.0 else float(format(x, ".12g"))


def fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _json_rational(x: Fraction):
    return x.numerator if x.denominator == 1 else fmt_rational(x)


def parse_g(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --G list {text!r}") from exc


def parse_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"t range must be start:end, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad t range {text!r}") from exc


@contextmanager
def open_output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _csv_writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_json(doc, path: str | None) -> None:
    with open_output(path) as fh:
        fh.write(json.dumps(doc, indent=2) + "\n")


def cmd_spectrum(args) -> int:
    model = RunConfig("spectrum", args.J, args.G).model()
    if args.steps < 2:
        raise ConfigError("--steps must be >= 2")
    t_start, t_end = args.t
    samples = scan(model, t_start, t_end, args.steps)
    failed = [s for s in samples if s.failed]
    with open_output(args.output) as fh:
        w = _csv_writer(fh)
        w.writerow(["t", "label", "re", "im"])
        for s in samples:
            for label, e in s.energies_by_label():
                w.writerow([fmt_num(s.t), label, fmt_num(e.real), fmt_num(e.imag)])
    if failed:
        print(f"root finder failed at {len(failed)} of {len(samples)} samples "
              f"(first at t={fmt_num(failed[0].t)})", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


def thresholds_document(model: ChainModel, search_max: float, t_high: float, t_low: float,
                        xtol: float = BISECT_XTOL) -> dict:
    xi_roots = []
    for n in range(1, model.J + 1):
        try:
            rep = xi_root(model, n, search_max, XI_GRID_CELLS, xtol)
        except NoRootInRange:
            xi_roots.append({"n": n, "status": "no_root_in_range"})
            continue
        xi_roots.append({"n": n, "status": "ok", "t": json_num(rep.t), "residual": json_num(rep.residual)})
    try:
        rep = qh_threshold(model, t_high, t_low, QH_GRID_CELLS, xtol)
        qh = {"status": "ok", "t": json_num(rep.t), "bracket": [json_num(b) for b in rep.bracket]}
    except PredicateNotBracketed:
        qh = {"status": "not_bracketed", "t_high": json_num(t_high), "t_low": json_num(t_low)}
    return {
        "J": model.J,
        "G": [json_num(g) for g in model.G],
        "xi_roots": xi_roots,
        "qh": qh,
    }


def cmd_thresholds(args) -> int:
    model = RunConfig("thresholds", args.J, args.G).model()
    if args.search_max <= 0:
        raise ConfigError("--search-max must be positive")
    doc = thresholds_document(model, args.search_max, args.t_high, args.t_low, args.xtol)
    write_json(doc, args.output)
    return 0


def classify_document(model: ChainModel, t_start: float, t_end: float, steps: int,
                      xtol: float = BISECT_XTOL) -> dict:
    result = classify_mergers(model, t_start, t_end, steps, xtol)
    events = []
    for ev in result.events:
        if not ev.pairs:
            events.append({"t": json_num(ev.t), "kind": ev.kind, "pair": None})
        for a, b in ev.pairs:
            events.append({"t": json_num(ev.t), "kind": ev.kind, "pair": [a, b]})
    return {
        "J": model.J,
        "G": [json_num(g) for g in model.G],
        "t_start": json_num(t_start),
        "t_end": json_num(t_end),
        "steps": steps,
        "events": events,
        "pattern": result.pattern.shorthand(),
        "complete": result.pattern.complete,
        "degenerate": result.pattern.degenerate,
    }


def cmd_classify(args) -> int:
    model = RunConfig("classify", args.J, args.G).model()
    if args.steps < 2:
        raise ConfigError("--steps must be >= 2")
    t_start, t_end = args.t
    try:
        doc = classify_document(model, t_start, t_end, args.steps, args.xtol)
    except NotQuasiHermitian as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    write_json(doc, args.output)
    return 0


def enumerate_rows(max_k: int, oracle: bool) -> list[dict]:
    table = enumerate_counts(max_k)
    rows = []
    for K in range(max_k + 1):
        row = {
            "K": K,
            "P4K": table.p4k[K],
            "P4K2": table.p4k2[K],
            "R": table.r[K],
            "RminusS": table.r_minus_s[K],
        }
        if oracle:
            if 4 * K + 2 <= BRUTE_FORCE_MAX_N:
                b4 = brute_force_count(2 * K) if K > 0 else 1
                b42 = brute_force_count(2 * K + 1)
                row.update(brute_4K=b4, brute_4K2=b42,
                           agreement=(b4 == table.p4k[K] and b42 == table.p4k2[K]))
            else:
                row.update(brute_4K=None, brute_4K2=None, agreement=None)
        rows.append(row)
    return rows


def cmd_enumerate(args) -> int:
    if args.max_k < 0:
        raise ConfigError("--max-k must be >= 0")
    rows = enumerate_rows(args.max_k, args.oracle)
    if args.format == "json":
        doc = {"max_k": args.max_k, "rows": [
            {k: (_json_rational(v) if isinstance(v, Fraction) else v) for k, v in row.items()} for row in rows
        ]}
        write_json(doc, args.output)
        return 0
    with open_output(args.output) as fh:
        w = _csv_writer(fh)
        header = list(rows[0].keys())
        w.writerow(header)
        for row in rows:
            cells = []
            for k in header:
                v = row[k]
                if isinstance(v, Fraction):
                    cells.append(fmt_rational(v))
                elif isinstance(v, bool):
                    cells.append("true" if v else "false")
                else:
                    cells.append("" if v is None else v)
            w.writerow(cells)
    return 0


def cmd_domain4(args) -> int:
    n = args.grid
    if n < 2:
        raise ConfigError("--grid must be >= 2")
    axis = [i / (n - 1) for i in range(n)]
    with open_output(args.output) as fh:
        w = _csv_writer(fh)
        if args.section in ("grid", "both"):
            w.writerow(["alpha", "beta", "inside"])
            for a in axis:
                for b in axis:
                    w.writerow([fmt_num(a), fmt_num(b), int(domain4_contains(a, b).inside)])
        if args.section == "both":
            fh.write("\n")
        if args.section in ("curves", "both"):
            w.writerow(["curve", "param", "alpha", "beta"])
            for a in axis:
                w.writerow([1, fmt_num(a), fmt_num(a), fmt_num((9 * a - a * a) / (9 + 3 * a))])
            for b in axis:
                w.writerow([2, fmt_num(b), fmt_num(b - b * b / 4), fmt_num(b)])
    return 0


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--J", type=int, required=True, help="half-dimension, N = 2J")
    p.add_argument("--G", type=parse_g, required=True,
                   help="comma-separated G_1..G_J, outermost coupling first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pseudochain", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energies along a t grid as CSV (t,label,re,im)")
    _add_model_args(p)
    p.add_argument("--t", type=parse_range, required=True, help="start:end, may decrease")
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("thresholds", help="xi_n = 1 roots and quasi-Hermiticity loss as JSON")
    _add_model_args(p)
    p.add_argument("--search-max", type=float, default=2.0)
    p.add_argument("--t-high", type=float, default=1.5, help="t with a real spectrum")
    p.add_argument("--t-low", type=float, default=-0.5, help="t with a complex spectrum")
    p.add_argument("--xtol", type=float, default=BISECT_XTOL, help="bisection bracket width")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("classify", help="merger events and pattern as JSON")
    _add_model_args(p)
    p.add_argument("--t", type=parse_range, required=True, help="start:end, spectrum real at start")
    p.add_argument("--steps", type=int, default=MERGER_STEPS)
    p.add_argument("--xtol", type=float, default=BISECT_XTOL, help="bisection bracket width")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="pattern-count table P^(N)")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="append brute-force counts for N <= 20")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("domain4", help="four-state reality domain on [0,1]^2 and its boundary curves")
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--section", choices=("grid", "curves", "both"), default="both")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_domain4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PseudoChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
