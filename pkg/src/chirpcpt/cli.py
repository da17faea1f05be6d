"""Command-line front end: ``chirpcpt simulate|final|sweep|freq``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .output import Table
from .propagator import COHERENCE_INDEX, PropagationError, final_populations, propagate
from .pulse import envelope, instantaneous_frequency, resonance_crossings
from .sweep import AxisSpec, sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

POPULATION_COLUMNS = ["rho11", "rho22", "rho33", "rho44"]

log = logging.getLogger("chirpcpt")


def cmd_simulate(cfg: RunConfig) -> Table:
    """Full time series: populations, coherences and pulse diagnostics."""
    ts = propagate(cfg.system(), cfg.pulse(), cfg.simulation())
    columns = ["t"] + POPULATION_COLUMNS
    for i, j in COHERENCE_INDEX:
        columns += [f"re_rho{i + 1}{j + 1}", f"im_rho{i + 1}{j + 1}"]
    columns += ["envelope", "frequency"]
    coh = np.stack([part for k in range(3)
                    for part in (ts.coherences[:, k].real, ts.coherences[:, k].imag)], axis=1)
    data = np.column_stack([ts.times, ts.populations, coh, ts.envelope, ts.frequency])
    return Table("simulate", cfg.items(), columns, data.tolist())


def cmd_final(cfg: RunConfig) -> Table:
    pops = final_populations(propagate(cfg.system(), cfg.pulse(), cfg.simulation()))
    return Table("final", cfg.items(), POPULATION_COLUMNS, [pops.tolist()])


def cmd_sweep(cfg: RunConfig, axes, workers: int | None = None) -> Table:
    """Long-form grid: one row per lattice point with a status flag."""
    grid = sweep(cfg.system(), cfg.pulse(), cfg.simulation(), axes, workers=workers)
    columns = [ax.parameter for ax in grid.axes] + POPULATION_COLUMNS + ["status"]
    rows = []
    for index, values in grid.points():
        status = "ok" if grid.ok[index] else "failed"
        rows.append(list(values) + grid.populations[index].tolist() + [status])
    metadata = cfg.items() + [
        (f"axis{k + 1}", f"{ax.parameter}:{ax.min!r}:{ax.max!r}:{ax.count}")
        for k, ax in enumerate(grid.axes)
    ]
    table = Table("sweep", metadata, columns, rows)
    for index, message in sorted(grid.errors.items()):
        log.warning("sweep point %s failed: %s", index, message)
    return table


def cmd_freq(cfg: RunConfig) -> Table:
    """Instantaneous-frequency profile with resonance crossings for each transition."""
    pulse = cfg.pulse()
    times = cfg.simulation().sample_times()
    data = np.column_stack([times, instantaneous_frequency(times, pulse), envelope(times, pulse)])
    footer = {
        f"crossings_{name}": resonance_crossings(pulse, getattr(cfg, name))
        for name in ("omega21", "omega32", "omega42")
    }
    return Table("freq", cfg.items(), ["t", "frequency", "envelope"], data.tolist(), footer)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chirpcpt",
        description="Population transfer in a Y-type four-level atom driven by a chirped few-cycle pulse.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("simulate", "time series of populations, coherences and pulse diagnostics"),
        ("final", "final populations for one parameter set"),
        ("sweep", "final populations over a 1D/2D parameter lattice"),
        ("freq", "instantaneous frequency profile and resonance crossings"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", help="flat key = value configuration file")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="override one configuration value")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel workers for sweep (default: all cores)")
        if name == "sweep":
            p.add_argument("--axis", action="append", required=True,
                           metavar="PARAM:MIN:MAX:COUNT", help="sweep axis; give once or twice")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.overrides)
        axes = [AxisSpec.parse(a) for a in args.axis] if args.command == "sweep" else None
        if args.workers is not None and args.workers < 1:
            raise ConfigError("--workers must be at least 1")
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        if args.command == "simulate":
            table = cmd_simulate(cfg)
        elif args.command == "final":
            table = cmd_final(cfg)
        elif args.command == "freq":
            table = cmd_freq(cfg)
        else:
            table = cmd_sweep(cfg, axes, workers=args.workers)
    except PropagationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = table.render(args.format)
    try:
        if args.out:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.command == "sweep" and all(row[-1] == "failed" for row in table.rows):
        print("every sweep point failed", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
