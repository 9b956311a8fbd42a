"""Command line front end.

Subcommands: ``sweep`` (pump-power sweep to CSV, optionally SVG figures),
``witness`` (single-power entanglement table on stdout), ``plot`` (figure from
an existing CSV), ``check`` (physicality audit across the configured grid).

Exit codes: 0 success, 1 usage or configuration error, 2 model failure,
3 file I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from . import analysis
from .analysis import Family, classify, sweep_sigma
from .config import ConfigError, RunConfig, parse_config
from .errors import ModelError
from .gaussian import symplectic_eigenvalues
from .opo import apply_detection, output_covariance

CSV_FIELDS = ("sigma", "bipartition", "family", "nu_min", "log_neg", "physical_min_nu")

_ENTANGLED_TOL = 1e-9


class UsageError(Exception):
    """Bad command line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def write_sweep_csv(path: str, points) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_FIELDS)
        for point in points:
            if point.table is None:
                continue
            for b, entry in point.table.entries:
                writer.writerow(
                    [
                        _fmt(point.sigma),
                        b.label(),
                        classify(b).value,
                        _fmt(entry.nu_min),
                        _fmt(entry.log_negativity),
                        _fmt(point.table.physical_min_nu),
                    ]
                )


def read_sweep_csv(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_FIELDS:
            raise ConfigError(
                f"{path}: expected columns {','.join(CSV_FIELDS)}, "
                f"got {reader.fieldnames}"
            )
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            try:
                rows.append(
                    {
                        "sigma": float(raw["sigma"]),
                        "bipartition": raw["bipartition"],
                        "family": raw["family"],
                        "nu_min": float(raw["nu_min"]),
                        "log_neg": float(raw["log_neg"]),
                        "physical_min_nu": float(raw["physical_min_nu"]),
                    }
                )
            except (TypeError, ValueError):
                raise ConfigError(f"{path}: malformed row at line {lineno}") from None
    return rows


def _check_writable(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
        raise OSError(f"output directory not writable: {parent}")


def _cmd_sweep(config: RunConfig) -> int:
    _check_writable(config.output_path)
    points = sweep_sigma(
        config.effective_params(),
        config.sigma_grid,
        with_detection=config.include_detection,
    )
    failures = [p for p in points if p.error is not None]
    for p in failures:
        print(f"sigma={p.sigma:.6g}: {p.error}", file=sys.stderr)
    write_sweep_csv(config.output_path, points)
    done = len(points) - len(failures)
    print(f"wrote {config.output_path}: {done} of {len(points)} grid points")
    if config.emit_plots:
        from .plotting import plot_witness_curves

        rows = read_sweep_csv(config.output_path)
        stem, _ = os.path.splitext(config.output_path)
        families = sorted({row["family"] for row in rows})
        for family in families:
            figure_path = f"{stem}_{family}.svg"
            plot_witness_curves(rows, figure_path, family=family)
            print(f"wrote {figure_path}")
    return 2 if failures else 0


def _cmd_witness(config: RunConfig, sigma: float | None) -> int:
    params = config.effective_params()
    if sigma is not None:
        params = params.at_sigma(sigma)
    table = analysis.evaluate_point(
        params, params.sigma, with_detection=config.include_detection
    )
    entries = sorted(table.entries, key=lambda kv: (kv[1].nu_min, kv[0].label()))
    print(f"sigma = {params.sigma:.6g}   physical min nu = {table.physical_min_nu:.6f}")
    print(f"{'bipartition':<16}{'family':<16}{'nu_min':>10}{'log_neg':>10}")
    n_entangled = 0
    for b, entry in entries:
        flag = ""
        if entry.nu_min < 1.0 - _ENTANGLED_TOL:
            flag = "  ENTANGLED"
            n_entangled += 1
        print(
            f"{b.label():<16}"
            f"{classify(b).value:<16}{entry.nu_min:>10.6f}{entry.log_negativity:>10.6f}{flag}"
        )
    print(f"{n_entangled} of {len(entries)} bipartitions certified entangled")
    return 0


def _cmd_plot(csv_path: str, family: str | None, output: str | None) -> int:
    if family is not None:
        known = [f.value for f in Family]
        if family not in known:
            raise ConfigError(f"unknown family {family!r}; choose from {', '.join(known)}")
    rows = read_sweep_csv(csv_path)
    if not rows:
        raise ConfigError(f"{csv_path}: no data rows")
    if output is None:
        stem, _ = os.path.splitext(csv_path)
        output = f"{stem}_{family or 'all'}.svg"
    _check_writable(output)
    from .plotting import plot_witness_curves

    n = plot_witness_curves(rows, output, family=family)
    if n == 0:
        raise ConfigError(f"{csv_path}: no rows with family {family!r}")
    print(f"wrote {output} ({n} curves)")
    return 0


def _cmd_check(config: RunConfig) -> int:
    params = config.effective_params()
    worst = None
    failed = False
    for sigma in config.sigma_grid:
        point_params = params.at_sigma(sigma)
        try:
            v = output_covariance(point_params)
            if config.include_detection:
                v = apply_detection(v, point_params)
            nu = symplectic_eigenvalues(v)[0]
        except (ModelError, ValueError) as exc:
            print(f"sigma={sigma:.6g}: FAIL ({exc})")
            failed = True
            continue
        ok = nu >= 1.0 - 1e-6
        print(f"sigma={sigma:.6g}: min nu = {nu:.9f} {'ok' if ok else 'FAIL'}")
        failed = failed or not ok
        worst = nu if worst is None else min(worst, nu)
    if worst is not None:
        print(f"worst case min nu = {worst:.9f}")
    print("physicality check " + ("FAILED" if failed else "passed"))
    return 2 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="opo-sidebands",
        description="Sideband entanglement analysis for a driven three-mode cavity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the configured pump-power sweep")
    p_sweep.add_argument("config", help="path to an INI configuration file")

    p_witness = sub.add_parser("witness", help="print the witness table at one power")
    p_witness.add_argument("config", help="path to an INI configuration file")
    p_witness.add_argument("--sigma", type=float, default=None, help="pump power override")

    p_plot = sub.add_parser("plot", help="render curves from an existing sweep CSV")
    p_plot.add_argument("csv", help="CSV produced by the sweep subcommand")
    p_plot.add_argument("--family", default=None, help="restrict to one bipartition family")
    p_plot.add_argument("--output", default=None, help="SVG path (derived from CSV if omitted)")

    p_check = sub.add_parser("check", help="audit state physicality across the grid")
    p_check.add_argument("config", help="path to an INI configuration file")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sweep":
            return _cmd_sweep(parse_config(args.config))
        if args.command == "witness":
            return _cmd_witness(parse_config(args.config), args.sigma)
        if args.command == "plot":
            return _cmd_plot(args.csv, args.family, args.output)
        if args.command == "check":
            return _cmd_check(parse_config(args.config))
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except ModelError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
