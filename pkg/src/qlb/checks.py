"""Randomized property battery behind ``qlb check``.

Every property returns a :class:`CheckResult` with its worst observed slack
(nonnegative means the property held) and, on failure, the first failing
case in a JSON-friendly form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from . import kernels
from .functionals import TriangleDomain, bony_lemma_check, random_bony_instance, triangle_balance
from .lattice import Grid, ModelParams, SpinorField, charge
from .stepper import ForcingLevel, run_trajectory, step_forced, step_homogeneous

__all__ = ["CheckResult", "node_ensemble", "random_field", "run_battery", "PROPERTIES"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str = ""
    case: Optional[Dict[str, object]] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: worst slack {self.worst!r}"
        return f"{text} ({self.detail})" if self.detail else text


def _cplx(z) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


def node_ensemble(rng: np.random.Generator, n: int, amp: float = 1e3, coupling: float = 10.0):
    """Random node states and parameters.

    Moduli are log-uniform in ``[1e-4 amp, amp]`` with uniform phases;
    ``m`` is uniform in ``[0, coupling]``, ``alpha`` and ``beta`` in
    ``[-coupling, coupling]`` and ``h`` in ``(0, 1)``.
    """

    def cplx():
        r = amp * 10.0 ** rng.uniform(-4, 0, n)
        return r * np.exp(2j * np.pi * rng.random(n))

    u, v = cplx(), cplx()
    m = rng.uniform(0, coupling, n)
    alpha = rng.uniform(-coupling, coupling, n)
    beta = rng.uniform(-coupling, coupling, n)
    h = rng.uniform(np.finfo(float).tiny, 1.0, n)
    return u, v, m, alpha, beta, h


def random_field(rng: np.random.Generator, h: float, width: int, amp: float = 1.0, n_min: int = None) -> SpinorField:
    n_min = -(width // 2) if n_min is None else n_min
    grid = Grid(h, n_min, n_min + width - 1)
    u = amp * (rng.standard_normal(width) + 1j * rng.standard_normal(width))
    v = amp * (rng.standard_normal(width) + 1j * rng.standard_normal(width))
    return SpinorField(grid, u, v)


def _node_case(seed, i, u, v, m, alpha, beta, h):
    return {
        "seed": seed,
        "params": {"m": float(m[i]), "alpha": float(alpha[i]), "beta": float(beta[i]), "h": float(h[i])},
        "state": {"u": _cplx(u[i]), "v": _cplx(v[i])},
    }


def check_determinant(rng, seed, config) -> CheckResult:
    u, v, m, alpha, beta, h = node_ensemble(rng, config.samples)
    zero = np.zeros_like(u)
    _, _, det2 = kernels.node_update(u, v, zero, zero, h, m, alpha, beta)
    slack = det2 - (1.0 - 1e-12)
    i = int(np.argmin(slack))
    ok = bool(slack[i] >= 0)
    return CheckResult(
        "determinant-bound", ok, float(det2[i] - 1.0), f"min |J|^2 = {float(det2[i])!r}",
        None if ok else _node_case(seed, i, u, v, m, alpha, beta, h),
    )


def check_node_conservation(rng, seed, config, tol: float = 1e-13) -> CheckResult:
    u, v, m, alpha, beta, h = node_ensemble(rng, config.samples)
    zero = np.zeros_like(u)
    uh, vh, _ = kernels.node_update(u, v, zero, zero, h, m, alpha, beta)
    before = np.abs(u) ** 2 + np.abs(v) ** 2
    after = np.abs(uh) ** 2 + np.abs(vh) ** 2
    rel = np.abs(after - before) / before
    i = int(np.argmax(rel))
    ok = bool(rel[i] <= tol)
    return CheckResult(
        "node-conservation", ok, float(tol - rel[i]), f"max relative violation {float(rel[i])!r}",
        None if ok else _node_case(seed, i, u, v, m, alpha, beta, h),
    )


def _field_case(seed, f: SpinorField, params: ModelParams, extra=None) -> Dict[str, object]:
    case = {
        "seed": seed,
        "params": {"m": params.m, "alpha": params.alpha, "beta": params.beta, "h": f.h},
        "state": {
            "n_min": f.grid.n_min,
            "k": f.k,
            "u": [_cplx(z) for z in f.u],
            "v": [_cplx(z) for z in f.v],
        },
    }
    if extra:
        case.update(extra)
    return case


def check_streaming(rng, seed, config, steps: int = 50) -> CheckResult:
    params = ModelParams(0.0, 0.0, 0.0)
    f0 = random_field(rng, config.h, 32)
    traj = run_trajectory(f0, params, steps)
    for f in traj[1:]:
        s = f.k
        u, _ = f.window(f0.grid.n_min + s, f0.grid.n_max + s)
        _, v = f.window(f0.grid.n_min - s, f0.grid.n_max - s)
        if not (np.array_equal(u, f0.u) and np.array_equal(v, f0.v)):
            dev = float(max(np.max(np.abs(u - f0.u)), np.max(np.abs(v - f0.v))))
            return CheckResult("streaming-exactness", False, -dev, f"step {s}", _field_case(seed, f0, params, {"step": s}))
    return CheckResult("streaming-exactness", True, 0.0, f"{steps} steps bit-exact")


def check_forced_identity(rng, seed, config, trials: int = 20, tol: float = 1e-11) -> CheckResult:
    worst = math.inf
    for _ in range(trials):
        f = random_field(rng, config.h, 24)
        g = ForcingLevel(
            f.grid,
            rng.standard_normal(f.grid.size) + 1j * rng.standard_normal(f.grid.size),
            rng.standard_normal(f.grid.size) + 1j * rng.standard_normal(f.grid.size),
        )
        _, rep = step_forced(f, g, config.params)
        bound = tol * max(1.0, charge(f) / f.h)
        slack = bound - rep.forced_charge_identity_residual
        worst = min(worst, slack / bound)
        if slack < 0:
            case = _field_case(seed, f, config.params, {"g1": [_cplx(z) for z in g.g1], "g2": [_cplx(z) for z in g.g2]})
            return CheckResult("forced-charge-identity", False, worst, "", case)
    return CheckResult("forced-charge-identity", True, worst, f"{trials} forced steps")


def check_bony(rng, seed, config, max_levels: int = 32) -> CheckResult:
    worst = math.inf
    for trial in range(config.trials):
        levels = int(rng.integers(1, max_levels + 1))
        a, b, c, d = random_bony_instance(rng, levels)
        rep = bony_lemma_check(a, b, c, d)
        worst = min(worst, rep.worst)
        if not rep.ok:
            case = {"seed": seed, "trial": trial, "a": a.tolist(), "b": b.tolist(), "c": c.tolist(), "d": d.tolist()}
            return CheckResult("bony-lemma", False, worst, "", case)
    return CheckResult("bony-lemma", True, worst, f"{config.trials} instances, normalized")


def check_triangle_balance(rng, seed, config, max_height: int = 50) -> CheckResult:
    worst = math.inf
    trials = max(1, config.trials // 5)
    for trial in range(trials):
        f0 = random_field(rng, config.h, int(rng.integers(4, 40)))
        k0 = int(rng.integers(0, 6))
        k1 = k0 + int(rng.integers(0, max_height + 1))
        n1 = int(rng.integers(f0.grid.n_min - 5, f0.grid.n_max + 6))
        traj = run_trajectory(f0, config.params, k1 + 1)
        rep = triangle_balance(traj, TriangleDomain(n1, k1, k0))
        scale = max(rep.base, np.finfo(float).tiny)
        slack = min(rep.tol - rep.max_relative_residual, rep.min_slack / scale + rep.tol)
        worst = min(worst, slack)
        if not rep.ok:
            case = _field_case(seed, f0, config.params, {"triangle": [n1, k1, k0]})
            return CheckResult("triangle-balance", False, worst, "", case)
    return CheckResult("triangle-balance", True, worst, f"{trials} trajectories")


PROPERTIES: Dict[str, Callable] = {
    "determinant-bound": check_determinant,
    "node-conservation": check_node_conservation,
    "streaming-exactness": check_streaming,
    "forced-charge-identity": check_forced_identity,
    "bony-lemma": check_bony,
    "triangle-balance": check_triangle_balance,
}


def run_battery(config, seed: int) -> List[CheckResult]:
    """Run every property with its own generator derived from ``seed``."""
    results = []
    for i, (name, fn) in enumerate(PROPERTIES.items()):
        rng = np.random.default_rng([seed, i])
        results.append(fn(rng, seed, config))
    return results
