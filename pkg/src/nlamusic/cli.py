"""Command-line entry point for Monte-Carlo sweeps.

Results go to ``--out-csv`` or, when absent, to standard output. Logs and the
summary table go to standard error.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from .harness import (DEFAULT_GROWTH, ExperimentConfig, GeometrySpec, emit_csv,
                      emit_spectrum, load_config, run_experiment, summary_table,
                      write_csv)
from .signal import SourceScenario, trial_rng

log = logging.getLogger("nlamusic")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nlamusic",
        description="MUSIC DOA Monte-Carlo sweep over uniform and progressively spaced linear arrays.",
    )
    ap.add_argument("--config", type=Path, help="JSON experiment file; flags below override it")
    ap.add_argument("--theta-deg", type=float)
    ap.add_argument("--snr-db", type=float, action="append", help="repeatable")
    ap.add_argument("--sensors", type=int, action="append",
                    help="repeatable; M = length-hw + 1 gives the uniform array, others use --scheme")
    ap.add_argument("--length-hw", type=float, help="array length in half-wavelengths")
    ap.add_argument("--scheme", choices=["uniform", "arithmetic", "geometric"])
    ap.add_argument("--growth", type=float)
    ap.add_argument("--snapshots", type=int)
    ap.add_argument("--trials", type=int)
    ap.add_argument("--resolution-deg", type=float)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--rmse-mode", choices=["paper", "standard", "both"])
    ap.add_argument("--workers", type=int)
    ap.add_argument("--out-csv", type=Path)
    ap.add_argument("--dump-spectrum", type=Path,
                    help="write the first-trial spectrum of every (geometry, SNR) cell")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _geometries_from_flags(args, base):
    sensors = args.sensors
    length = args.length_hw
    if sensors is None and length is None and args.scheme is None and args.growth is None:
        return base
    if sensors is None:
        if not base:
            raise ValueError("--sensors is required when no config file supplies geometries")
        sensors = [g.M for g in base]
    if length is None:
        if base:
            length = base[0].array_length_half_wavelengths
        else:
            length = max(sensors) - 1
    growth = args.growth if args.growth is not None else DEFAULT_GROWTH
    specs = []
    for M in sensors:
        if args.scheme == "uniform" or (args.scheme is None and M - 1 == length):
            specs.append(GeometrySpec("uniform", M, length))
        else:
            specs.append(GeometrySpec(args.scheme or "geometric", M, length, growth))
    return specs


def config_from_args(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig(geometries=[])
    cfg.geometries = _geometries_from_flags(args, cfg.geometries)
    overrides = {
        "theta_true_deg": args.theta_deg,
        "snr_db_list": args.snr_db,
        "snapshots": args.snapshots,
        "trials": args.trials,
        "resolution_deg": args.resolution_deg,
        "master_seed": args.seed,
        "rmse_mode": args.rmse_mode,
        "workers": args.workers,
    }
    for k, v in overrides.items():
        if v is not None:
            setattr(cfg, k, v)
    cfg.snr_db_list = [float(s) for s in cfg.snr_db_list]
    return cfg


def _dump_spectra(cfg, target: Path):
    cells = [(gi, si, g, snr) for gi, g in enumerate(cfg.geometries)
             for si, snr in enumerate(cfg.snr_db_list)]
    theta = math.radians(cfg.theta_true_deg)
    for gi, si, g, snr in cells:
        path = target
        if len(cells) > 1:
            path = target.with_name(f"{target.stem}_{g.name}_snr{snr:g}{target.suffix}")
        scen = SourceScenario((theta,), snr, cfg.snapshots)
        # trial 0 of the cell, so the dump matches the first sweep trial
        emit_spectrum(g.build(), scen, path, cfg.resolution_deg,
                      rng=trial_rng(cfg.master_seed, gi, si, 0))
        log.info("spectrum written to %s", path)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = config_from_args(args)
        if not cfg.geometries:
            raise ValueError("no geometries given; pass --config or --sensors")
        cfg.validate()
        results = run_experiment(cfg)
        if args.out_csv:
            emit_csv(results, args.out_csv)
        else:
            write_csv(results, sys.stdout)
        if args.dump_spectrum:
            _dump_spectra(cfg, args.dump_spectrum)
    except (ValueError, OSError) as exc:
        print(f"nlamusic: error: {exc}", file=sys.stderr)
        return 2
    print(summary_table(results, cfg.modes[0]), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
