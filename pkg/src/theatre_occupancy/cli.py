"""Command-line front end.

Examples::

    theatre-occupancy exact --dist uniform --entrances 1 --p 0 --n 3
    theatre-occupancy sweep --dist zipf-right --p 0:0.9:0.1 --n 40
    theatre-occupancy simulate --dist geo-right --p 0.5 --n 50 --trials 100000 --seed 7
    theatre-occupancy theatre --layout lipari:20 --p 0.5 --trials 10000
    theatre-occupancy bounds --check r40 --plot
    theatre-occupancy poly --n 40

Exit status is 0 on success, 2 for invalid input and 1 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

from . import bounds
from .core import Entrances, RowSpec, SeatDistribution, check_probability
from .exact import exact_table
from .montecarlo import Semantics, simulate
from .output import emit_plot_data, emit_records, emit_reports, to_csv, to_json
from .poly import zipf_right_polynomial
from .theatre import lipari_leading_order, expected_theatre, parse_layout, simulate_theatre

COMMANDS = ("exact", "simulate", "bounds", "theatre", "sweep", "poly")
CHECKS = ("harmonic-sum", "interpolation", "tp", "zipf-right", "zipf-right-courteous", "r40")
GRID_TOL = 1e-12

DEFAULT_GRIDS = {
    "harmonic-sum": ("40:2000", None),
    "interpolation": (None, "0:0.95:0.05"),
    "tp": (None, "0:0.95:0.05"),
    "zipf-right": ("2000", None),
    "zipf-right-courteous": ("40", "0:0.99:0.01"),
    "r40": (None, "0:0.99:0.01"),
}


def parse_grid(text: str, integer: bool = False) -> list:
    """``v``, ``a,b,c`` or inclusive ``start:stop[:step]``."""
    text = str(text).strip()
    conv = int if integer else float
    try:
        if ":" not in text:
            return [conv(v) for v in text.split(",") if v.strip()]
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ValueError
        start, stop = conv(parts[0]), conv(parts[1])
        step = conv(parts[2]) if len(parts) == 3 else conv(1)
    except ValueError:
        raise ValueError(f"cannot parse grid {text!r}") from None
    if step <= 0 or stop < start:
        raise ValueError(f"grid {text!r} needs start <= stop and a positive step")
    if integer:
        return list(range(start, stop + 1, step))
    count = int(math.floor((stop - start) / step + GRID_TOL)) + 1
    return [round(start + i * step, 12) for i in range(count)]


@dataclass
class RunConfig:
    command: str
    n: list = field(default_factory=list)
    p: list = field(default_factory=list)
    dist: str = "uniform"
    entrances: int = 1
    trials: int | None = None
    seed: int = 0
    semantics: str = "model"
    layout: str | None = None
    check: str | None = None
    plot: bool = False
    format: str = "csv"
    out: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        SeatDistribution.parse(self.dist)
        Entrances.parse(self.entrances)
        Semantics.parse(self.semantics)
        for p in self.p:
            check_probability(p)
        if any(n < 1 for n in self.n):
            raise ValueError("seat counts must be positive")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.command == "theatre" and not self.layout:
            raise ValueError("theatre needs --layout lipari:N or a JSON layout file")
        if self.command == "bounds" and self.check not in CHECKS:
            raise ValueError(f"bounds needs --check, one of {', '.join(CHECKS)}")
        return self


def _default_seed() -> int:
    raw = os.environ.get("THEATRE_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"THEATRE_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dist", default="uniform",
                        choices=[d.value for d in SeatDistribution])
    common.add_argument("--entrances", type=int, choices=(1, 2), default=1)
    common.add_argument("--p", default=None, help="value, list a,b or grid start:stop:step")
    common.add_argument("--n", default=None, help="value, list or range start:stop[:step]")
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--seed", type=int, default=None, help="default: $THEATRE_SEED or 0")
    common.add_argument("--semantics", choices=("model", "physical"), default="model")
    common.add_argument("--layout", default=None, help="lipari:N or path to a JSON layout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--dry-run", action="store_true", help="print the parsed config and exit")

    parser = argparse.ArgumentParser(prog="theatre-occupancy",
                                     description="Expected occupancy of theatre rows.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("exact", "exact expectations from the recurrences"),
        ("simulate", "Monte Carlo estimates"),
        ("sweep", "exact (and optionally simulated) values over an (n, p) grid"),
        ("theatre", "whole-theatre totals for a layout"),
        ("poly", "coefficients of the zipf-right polynomial R_n(p)"),
    ):
        sub.add_parser(name, parents=[common], help=help_text)
    b = sub.add_parser("bounds", parents=[common], help="check bounds and constants")
    b.add_argument("--check", choices=CHECKS, required=True)
    b.add_argument("--plot", action="store_true", help="emit a plotting table instead of the report")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    n_text, p_text = args.n, args.p
    check = getattr(args, "check", None)
    if args.command == "bounds":
        dn, dp = DEFAULT_GRIDS[check]
        n_text = n_text if n_text is not None else dn
        p_text = p_text if p_text is not None else dp
    elif args.command == "poly":
        n_text = n_text if n_text is not None else "40"
    n_default = "10" if args.command != "theatre" else None
    n_text = n_text if n_text is not None else n_default
    p_text = p_text if p_text is not None else "0"
    trials = args.trials
    if args.command == "simulate" and trials is None:
        trials = 10_000
    config = RunConfig(
        command=args.command,
        n=parse_grid(n_text, integer=True) if n_text is not None else [],
        p=parse_grid(p_text),
        dist=args.dist,
        entrances=args.entrances,
        trials=trials,
        seed=args.seed if args.seed is not None else _default_seed(),
        semantics=args.semantics,
        layout=args.layout,
        check=check,
        plot=bool(getattr(args, "plot", False)),
        format=args.format,
        out=args.out,
    )
    return config.validate()


def _row_records(config: RunConfig, with_exact: bool, with_mc: bool) -> list[dict]:
    records = []
    for p in config.p:
        base = RowSpec(max(config.n), config.entrances, config.dist, p)
        table = exact_table(base) if with_exact else None
        for n in config.n:
            spec = base.with_seats(n)
            common = {"n": n, "p": p, "dist": config.dist, "entrances": config.entrances}
            if table is not None:
                records.append({**common, "method": "exact", "value": float(table[n])})
            if with_mc:
                s = simulate(spec, config.trials, config.seed, config.semantics)
                records.append({**common, "method": f"mc-{config.semantics}", "value": s.mean,
                                "std_error": s.std_error})
    return records


def _theatre_records(config: RunConfig) -> list[dict]:
    layout = parse_layout(config.layout)
    lipari_n = int(config.layout.split(":", 1)[1]) if config.layout.startswith("lipari:") else None
    records = []
    for p in config.p:
        common = {"n": layout.total_seats, "p": p, "dist": config.dist, "entrances": "layout"}
        try:
            value = expected_theatre(layout, p, config.dist)
        except ValueError:
            if not config.trials:
                raise
        else:
            records.append({**common, "method": "exact", "value": value})
        if lipari_n is not None and 0.0 < p < 1.0 and config.dist == "uniform":
            records.append({**common, "method": "leading-order", "value": lipari_leading_order(lipari_n, p)})
        if config.trials:
            s = simulate_theatre(layout, p, config.dist, config.trials, config.seed)
            records.append({**common, "method": "mc-model", "value": s.mean, "std_error": s.std_error})
    return records


def _bound_report(config: RunConfig) -> bounds.BoundReport:
    check = config.check
    if check == "harmonic-sum":
        return bounds.harmonic_difference_report([n for n in config.n if n >= 2])
    if check == "interpolation":
        return bounds.check_g_interpolation(config.p)
    if check == "tp":
        return bounds.t_p_sandwich(config.p)
    if check == "zipf-right":
        return bounds.zipf_right_sandwich(max(config.n))
    if check == "zipf-right-courteous":
        return bounds.zipf_right_courteous_sandwich(max(config.n), config.p)
    return bounds.r40_sandwich(config.p)


def run(config: RunConfig) -> str:
    """Execute a validated config and return the serialized output."""
    cmd, fmt = config.command, config.format
    if cmd in ("exact", "sweep"):
        with_mc = cmd == "sweep" and config.trials is not None
        return emit_records(_row_records(config, True, with_mc), fmt)
    if cmd == "simulate":
        return emit_records(_row_records(config, False, True), fmt)
    if cmd == "theatre":
        return emit_records(_theatre_records(config), fmt)
    if cmd == "poly":
        coeffs = zipf_right_polynomial(max(config.n)).to_list()
        if fmt == "json":
            return to_json(coeffs)
        return to_csv(("power", "coefficient"), enumerate(coeffs))
    report = _bound_report(config)
    if config.plot:
        return emit_plot_data(report, fmt)
    return emit_reports([report], fmt)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        if args.dry_run:
            sys.stdout.write(config.to_json() + "\n")
            return 0
        text = run(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
