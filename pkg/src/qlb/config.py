"""Line-oriented ``key = value`` run configuration.

Blank lines and ``#`` comments are ignored.  Unknown or repeated keys are
errors; every error names the offending line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .catalog import parse_initial
from .lattice import InitialData, ModelParams, _parse_method

__all__ = ["ConfigError", "RunConfig", "parse_config", "load_config", "REQUIRED", "DEFAULTS"]

REQUIRED = ("m", "alpha", "beta", "h", "T", "initial")

DEFAULTS: Dict[str, str] = {
    "sampling": "cell-average(4)",
    "levels": "4",
    "h_list": "",
    "K": "10",
    "quadrature_order": "6",
    "convention": "scheme",
    "snapshot_times": "",
    "out": ".",
    "seed": "0",
    "study": "self",
    "pair": "manufactured",
    "n0": "1",
    "apex": "",
    "samples": "100000",
    "trials": "100",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    h: float
    T: float
    initial: InitialData
    initial_text: str
    sampling: str = DEFAULTS["sampling"]
    h_list: Tuple[float, ...] = ()
    K: float = 10.0
    quadrature_order: int = 6
    convention: str = "scheme"
    snapshot_times: Tuple[float, ...] = ()
    out: str = "."
    seed: int = 0
    study: str = "self"
    pair: str = "manufactured"
    n0: int = 1
    apex: Optional[float] = None
    samples: int = 100000
    trials: int = 100
    source: Dict[str, int] = dc_field(default_factory=dict, compare=False)

    @property
    def steps(self) -> int:
        return int(round(self.T / self.h))

    @property
    def preset(self) -> Optional[str]:
        return self.params.preset


def _divides(T: float, h: float) -> bool:
    return abs(T / h - round(T / h)) <= 1e-12 * max(1.0, T / h)


def parse_config(text: str) -> RunConfig:
    raw: Dict[str, Tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        if key not in REQUIRED and key not in DEFAULTS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} (first set on line {raw[key][1]})")
        raw[key] = (value, lineno)
    missing = [k for k in REQUIRED if k not in raw]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")

    def get(key: str) -> Tuple[str, int]:
        return raw.get(key, (DEFAULTS.get(key, ""), 0))

    def fail(key: str, msg: str):
        line = raw[key][1] if key in raw else 0
        where = f"line {line}" if line else f"default for {key}"
        raise ConfigError(f"{where}: {msg}")

    def real(key: str) -> float:
        text, _ = get(key)
        try:
            value = float(text)
        except ValueError:
            fail(key, f"{key} must be a real number, got {text!r}")
        if not math.isfinite(value):
            fail(key, f"{key} must be finite")
        return value

    def integer(key: str, minimum: int = None) -> int:
        text, _ = get(key)
        try:
            value = int(text, 0)
        except ValueError:
            fail(key, f"{key} must be an integer, got {text!r}")
        if minimum is not None and value < minimum:
            fail(key, f"{key} must be >= {minimum}")
        return value

    def reals(key: str) -> List[float]:
        text, _ = get(key)
        try:
            return [float(x) for x in text.replace(",", " ").split()]
        except ValueError:
            fail(key, f"{key} must be a list of real numbers, got {text!r}")

    m, alpha, beta = real("m"), real("alpha"), real("beta")
    if m < 0:
        fail("m", "m must be non-negative")
    h = real("h")
    if not h > 0:
        fail("h", "h must be positive")
    T = real("T")
    if not T > 0:
        fail("T", "T must be positive")
    if not _divides(T, h):
        fail("h", f"h = {h!r} does not divide T = {T!r}")

    text, _ = get("initial")
    try:
        initial = parse_initial(text)
    except ValueError as exc:
        fail("initial", str(exc))
    sampling, _ = get("sampling")
    try:
        _parse_method(sampling)
    except ValueError as exc:
        fail("sampling", str(exc))

    levels = integer("levels", 2)
    h_list = reals("h_list")
    if h_list:
        if any(not x > 0 for x in h_list):
            fail("h_list", "h_list entries must be positive")
        if any(b >= a for a, b in zip(h_list, h_list[1:])):
            fail("h_list", "h_list must be strictly decreasing")
        if not all(_divides(T, x) for x in h_list):
            fail("h_list", "every h in h_list must divide T")
    else:
        h_list = [h / 2**i for i in range(levels)]

    K = real("K")
    if not K > 0:
        fail("K", "K must be positive")
    quad = integer("quadrature_order", 2)
    convention, _ = get("convention")
    if convention not in ("scheme", "potential"):
        fail("convention", "convention must be 'scheme' or 'potential'")
    snaps = reals("snapshot_times") or [0.0, T]
    for t in snaps:
        if not 0 <= t <= T * (1 + 1e-12):
            fail("snapshot_times", f"snapshot time {t!r} outside [0, T]")
        if not _divides(t, h) and t != 0:
            fail("snapshot_times", f"snapshot time {t!r} is not a multiple of h")
    study, _ = get("study")
    if study not in ("self", "consistency", "both"):
        fail("study", "study must be 'self', 'consistency' or 'both'")
    pair, _ = get("pair")
    if pair not in ("manufactured", "plane-wave", "streaming"):
        fail("pair", "pair must be 'manufactured', 'plane-wave' or 'streaming'")
    seed = integer("seed", 0)
    if seed >= 2**64:
        fail("seed", "seed must fit in 64 bits")
    apex_text, _ = get("apex")
    apex = real("apex") if apex_text else None

    return RunConfig(
        params=ModelParams(m, alpha, beta),
        h=h,
        T=T,
        initial=initial,
        initial_text=text,
        sampling=sampling,
        h_list=tuple(h_list),
        K=K,
        quadrature_order=quad,
        convention=convention,
        snapshot_times=tuple(snaps),
        out=get("out")[0],
        seed=seed,
        study=study,
        pair=pair,
        n0=integer("n0"),
        apex=apex,
        samples=integer("samples", 1),
        trials=integer("trials", 1),
        source={k: v[1] for k, v in raw.items()},
    )


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
