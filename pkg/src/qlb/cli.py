"""``qlb simulate|refine|stability|check --config <path> [--out <dir>] [--seed <u64>]``."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import List, Optional

from . import kernels
from .checks import run_battery
from .config import ConfigError, RunConfig, load_config
from .harness import (
    StudyConfig,
    consistency_study,
    manufactured_pair,
    plane_wave_pair,
    self_convergence_study,
    shift_stability_refinement,
    streaming_pair,
)
from .lattice import Grid, charge, sample_initial, write_snapshot
from .stepper import evolve

CONSISTENCY_MIN_SLOPE = 0.9
STABILITY_MAX_SPREAD = 2.0


def _study_config(cfg: RunConfig) -> StudyConfig:
    return StudyConfig(cfg.params, cfg.T, cfg.h_list, cfg.sampling, cfg.quadrature_order, cfg.K, cfg.convention)


def cmd_simulate(cfg: RunConfig, out: str) -> int:
    if cfg.initial.support_hint is None:
        raise ConfigError("initial data has no support")
    a, b = cfg.initial.support_hint
    f0 = sample_initial(cfg.initial, Grid.covering(a, b, cfg.h), cfg.sampling)
    q0 = charge(f0)
    snap_levels = sorted({int(round(t / cfg.h)) for t in cfg.snapshot_times})
    rows = [f"0,{0.0!r},{q0!r},{0.0!r}"]

    def snap(k, f):
        if k in snap_levels:
            write_snapshot(f, os.path.join(out, f"snapshot_k{k:06d}.csv"))

    def observe(k, f, report):
        drift = (report.charge_after - q0) / q0 if q0 > 0 else report.charge_after
        rows.append(f"{k},{f.t!r},{report.charge_after!r},{drift!r}")
        snap(k, f)

    snap(0, f0)
    final, _ = evolve(f0, cfg.params, cfg.steps, observers=[observe])
    with open(os.path.join(out, "charge.csv"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("k,t,charge,relative_drift\n" + "\n".join(rows) + "\n")
    drift = abs(charge(final) - q0) / q0 if q0 > 0 else 0.0
    print(f"simulated {cfg.steps} steps to t={final.t!r}; charge {q0!r}, relative drift {drift!r}")
    return 0


def _pair(cfg: RunConfig):
    if cfg.pair == "plane-wave":
        return plane_wave_pair(cfg.params.m)
    if cfg.pair == "streaming":
        return streaming_pair()
    return manufactured_pair(cfg.params, cfg.convention)


def _print_table(tab) -> None:
    slope = tab.fitted_slope()
    print(f"{tab.metric}; fitted slope {'n/a' if slope is None else f'{slope:.4f}'}")
    for h, e, o in zip(tab.h, tab.error, tab.observed_order):
        h, e = float(h), float(e)
        print(f"  h={h!r:<24} error={e!r:<24} order={'' if math.isnan(o) else f'{o:.4f}'}")


def cmd_refine(cfg: RunConfig, out: str) -> int:
    study = _study_config(cfg)
    ok = True
    if cfg.study in ("self", "both"):
        tab = self_convergence_study(cfg.initial, study)
        tab.to_csv(os.path.join(out, "self_convergence.csv"))
        _print_table(tab)
        ok &= tab.strictly_decreasing
        print(f"strictly decreasing: {'yes' if tab.strictly_decreasing else 'no'}")
    if cfg.study in ("consistency", "both"):
        pair = _pair(cfg)
        tab = consistency_study(pair, study)
        tab.to_csv(os.path.join(out, "consistency.csv"))
        _print_table(tab)
        slope = tab.fitted_slope()
        if slope is not None:
            ok &= slope >= CONSISTENCY_MIN_SLOPE
    return 0 if ok else 1


def cmd_stability(cfg: RunConfig, out: str) -> int:
    study = _study_config(cfg)
    studies, spread = shift_stability_refinement(cfg.initial, cfg.n0, study, x1=cfg.apex)
    for i, s in enumerate(studies):
        s.trace.to_csv(
            os.path.join(out, f"trace_{i}.csv"),
            [f"h={s.h!r}", f"n0={s.n0}", f"K={s.trace.K!r}", "fit: max_k F1(k) / F1(k0)"],
        )
        print(f"h={s.h!r}: max F1(k)/F1(k0) = {float(s.ratio)!r}, max rho = {s.trace.max_rho!r}")
    print(f"spread of fitted constants across h: {spread!r}")
    return 0 if spread <= STABILITY_MAX_SPREAD else 1


def cmd_check(cfg: RunConfig, out: str, seed: int) -> int:
    print(f"backend: {kernels.BACKEND}; seed: {seed}")
    failed = None
    for res in run_battery(cfg, seed):
        print(res.line())
        if not res.passed and failed is None:
            failed = res
    if failed is None:
        print("all properties passed")
        return 0
    path = os.path.join(out, "check_failure.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"property": failed.name, **(failed.case or {})}, fh, indent=1)
    print(f"first failure ({failed.name}) written to {path}", file=sys.stderr)
    return 1


COMMANDS = ("simulate", "refine", "stability", "check")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qlb", description="Lattice solver and verification studies for 1+1D nonlinear Dirac systems.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True, help="key = value configuration file")
    p.add_argument("--out", help="output directory (overrides the config)")
    p.add_argument("--seed", type=int, help="u64 seed for randomized checks (overrides the config)")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, ConfigError) as exc:
        print(f"qlb: {exc}", file=sys.stderr)
        return 2
    seed = cfg.seed if args.seed is None else args.seed
    if not 0 <= seed < 2**64:
        print("qlb: seed must be a 64-bit unsigned integer", file=sys.stderr)
        return 2
    out = args.out or cfg.out
    if cfg.preset:
        print(f"preset: {cfg.preset}")
    try:
        os.makedirs(out, exist_ok=True)
        if args.command == "simulate":
            return cmd_simulate(cfg, out)
        if args.command == "refine":
            return cmd_refine(cfg, out)
        if args.command == "stability":
            return cmd_stability(cfg, out)
        return cmd_check(cfg, out, seed)
    except OSError as exc:
        print(f"qlb: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"qlb: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
