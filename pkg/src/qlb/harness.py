"""Residual forcing, consistency and convergence studies.

A :class:`SmoothPair` is a pair of smooth functions ``u(x, t)``, ``v(x, t)``.
Sampled at lattice points it satisfies the forced scheme exactly once the
forcing is the discrete residual; for solutions of the continuum system

    u_t + u_x = i m v + i N1 + F1,    v_t - v_x = i m u + i N2 + F2

with ``N1 = a u |v|^2 + b G v`` and ``N2 = a v |u|^2 + b G u`` that residual
tends to ``(F1, F2)`` at rate ``h``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .functionals import FunctionalTrace, PointwiseReport, SolutionPair, TriangleDomain, glimm_trace, pointwise_bound_check
from .lattice import Grid, InitialData, ModelParams, SpinorField, l2_distance_pc, sample_initial, shift_field
from .stepper import ForcingLevel, evolve, run_trajectory, step_forced

__all__ = [
    "SmoothPair",
    "StudyConfig",
    "ConvergenceTable",
    "ShiftStudy",
    "sample_pair",
    "discrete_residual",
    "characteristic_residual",
    "round_trip_error",
    "consistency_study",
    "self_convergence_study",
    "shift_stability_study",
    "shift_stability_refinement",
    "characteristic_modulus",
    "pointwise_refinement",
    "plane_wave_pair",
    "streaming_pair",
    "manufactured_pair",
    "nonsolution_pairs",
]

CONVENTIONS = {"scheme": 1.0, "potential": 2.0}


@dataclass(frozen=True)
class SmoothPair:
    """Smooth ``u(x, t)``, ``v(x, t)`` accepting broadcastable numpy arrays.

    ``source1``/``source2`` are the extra continuum sources ``F1``, ``F2``
    (``None`` means the pair solves the unforced system).  ``support`` is an
    interval at ``t = 0`` outside which both components are negligible.
    """

    u: Callable
    v: Callable
    descriptor: str
    support: Tuple[float, float]
    source1: Optional[Callable] = None
    source2: Optional[Callable] = None


def _eval(f: Callable, x, t) -> np.ndarray:
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    return np.broadcast_to(np.asarray(f(x, t), dtype=np.complex128), x.shape)


def _steps(T: float, h: float) -> int:
    steps = int(round(T / h))
    if abs(T / h - steps) > 1e-12 * max(1.0, T / h):
        raise ValueError(f"h = {h!r} does not divide T = {T!r}")
    return steps


@dataclass(frozen=True)
class StudyConfig:
    params: ModelParams
    T: float
    h_list: Tuple[float, ...]
    sampling: str = "cell-average(4)"
    quadrature_order: int = 6
    K: float = 10.0
    convention: str = "scheme"

    def __post_init__(self):
        object.__setattr__(self, "h_list", tuple(float(h) for h in self.h_list))
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T}")
        if not self.h_list:
            raise ValueError("h_list is empty")
        for h in self.h_list:
            if not h > 0:
                raise ValueError(f"h must be positive, got {h}")
            _steps(self.T, h)
        if any(b >= a for a, b in zip(self.h_list, self.h_list[1:])):
            raise ValueError("h_list must be strictly decreasing")
        if self.quadrature_order < 2:
            raise ValueError("quadrature_order must be >= 2")
        if not self.K > 0:
            raise ValueError(f"K must be positive, got {self.K}")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {sorted(CONVENTIONS)}")

    def steps(self, h: float) -> int:
        return _steps(self.T, h)

    @property
    def is_halving(self) -> bool:
        return all(abs(b - a / 2) <= 1e-12 * a for a, b in zip(self.h_list, self.h_list[1:]))

    def describe(self) -> Dict[str, object]:
        p = self.params
        return {
            "m": p.m,
            "alpha": p.alpha,
            "beta": p.beta,
            "T": self.T,
            "sampling": self.sampling,
            "K": self.K,
            "quadrature_order": self.quadrature_order,
            "convention": self.convention,
        }


@dataclass
class ConvergenceTable:
    metric: str
    h: np.ndarray
    steps: np.ndarray
    error: np.ndarray
    meta: Dict[str, object] = dc_field(default_factory=dict)

    @property
    def observed_order(self) -> np.ndarray:
        """``log2(e(h) / e(h/2))``, stored on the finer row; ``nan`` elsewhere."""
        out = np.full(len(self.h), np.nan)
        for i in range(1, len(self.h)):
            halved = abs(self.h[i] - self.h[i - 1] / 2) <= 1e-12 * self.h[i - 1]
            if halved and self.error[i] > 0 and self.error[i - 1] > 0:
                out[i] = math.log2(self.error[i - 1] / self.error[i])
        return out

    def fitted_slope(self, floor: float = 1e-12) -> Optional[float]:
        """Least-squares slope of ``log e`` against ``log h`` over errors above ``floor``."""
        keep = self.error > floor
        if keep.sum() < 2:
            return None
        return float(np.polyfit(np.log(self.h[keep]), np.log(self.error[keep]), 1)[0])

    @property
    def strictly_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.error) < 0))

    def to_csv(self, path) -> None:
        slope = self.fitted_slope()
        lines = [f"# metric={self.metric}"]
        lines += [f"# {k}={v!r}" if isinstance(v, float) else f"# {k}={v}" for k, v in self.meta.items()]
        lines.append(f"# fitted_slope={'n/a' if slope is None else repr(slope)}")
        lines.append("h,steps,error,observed_order")
        for h, s, e, o in zip(self.h, self.steps, self.error, self.observed_order):
            lines.append(f"{float(h)!r},{int(s)},{float(e)!r},{float(o)!r}")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Residuals


def sample_pair(pair: SmoothPair, h: float, k: int, n_lo: int, n_hi: int) -> SpinorField:
    """Point values ``(u(n h, k h), v(n h, k h))`` on ``n_lo..n_hi``."""
    x = np.arange(n_lo, n_hi + 1) * h
    t = k * h
    return SpinorField(Grid(h, n_lo, n_hi, k), _eval(pair.u, x, t), _eval(pair.v, x, t))


def _abs2(z):
    return z.real**2 + z.imag**2


def discrete_residual(field_k: SpinorField, field_k1: SpinorField, params: ModelParams, h: float = None) -> ForcingLevel:
    """Forcing under which the scheme maps ``field_k`` exactly onto ``field_k1``.

    ``field_k1`` must sit on the level-``k`` window widened by one cell per
    side, as produced by a step.
    """
    g = field_k.grid
    if h is not None and h != g.h:
        raise ValueError(f"h = {h!r} does not match the field mesh {g.h!r}")
    if (field_k1.grid.n_min, field_k1.grid.n_max) != (g.n_min - 1, g.n_max + 1) or field_k1.h != g.h:
        raise ValueError(
            f"window mismatch: level k+1 covers [{field_k1.grid.n_min}, {field_k1.grid.n_max}], "
            f"expected [{g.n_min - 1}, {g.n_max + 1}]"
        )
    if field_k1.k != g.k + 1:
        raise ValueError(f"levels are not consecutive: {g.k} and {field_k1.k}")
    h = g.h
    u, v = field_k.u, field_k.v
    uh = field_k1.u[2:]
    vh = field_k1.v[: g.size]
    m, a, b = params.m, params.alpha, params.beta
    G = 2.0 * (u.real * v.real + u.imag * v.imag)
    su, sv = uh + u, vh + v
    g1 = (uh - u) / h - 0.5j * m * sv - 0.5j * a * su * _abs2(v) - 0.5j * b * sv * G
    g2 = (vh - v) / h - 0.5j * m * su - 0.5j * a * sv * _abs2(u) - 0.5j * b * su * G
    return ForcingLevel(g, g1, g2)


def _nonlinear(u, v, params: ModelParams, convention: str):
    bf = CONVENTIONS[convention] * params.beta
    G = 2.0 * (u.real * v.real + u.imag * v.imag)
    n1 = params.alpha * u * _abs2(v) + bf * G * v
    n2 = params.alpha * v * _abs2(u) + bf * G * u
    return n1, n2


def characteristic_residual(
    pair: SmoothPair,
    params: ModelParams,
    grid: Grid,
    k: int,
    quadrature_order: int = 6,
    convention: str = "scheme",
    include_source: bool = True,
) -> ForcingLevel:
    """Residual from the integral of the right-hand side along characteristics.

    ``g1`` is the Gauss-Legendre average of ``i m v + i N1 (+ F1)`` over
    ``((n + s) h, (k + s) h)``, ``0 <= s <= 1``, minus the midpoint terms
    of the scheme; ``g2`` uses ``((n - s) h, (k + s) h)``.  For a solution of
    the continuum system this matches :func:`discrete_residual` up to the
    quadrature error.
    """
    if quadrature_order < 2:
        raise ValueError("quadrature_order must be >= 2")
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {sorted(CONVENTIONS)}")
    h = grid.h
    n = grid.indices().astype(float)
    xi, wi = np.polynomial.legendre.leggauss(quadrature_order)
    s = 0.5 * (xi + 1.0)
    w = 0.5 * wi
    tt = (k + s[None, :]) * h
    m = params.m

    xu = (n[:, None] + s[None, :]) * h
    uu, vu = _eval(pair.u, xu, tt), _eval(pair.v, xu, tt)
    n1, _ = _nonlinear(uu, vu, params, convention)
    rhs1 = 1j * m * vu + 1j * n1
    xv = (n[:, None] - s[None, :]) * h
    uv, vv = _eval(pair.u, xv, tt), _eval(pair.v, xv, tt)
    _, n2 = _nonlinear(uv, vv, params, convention)
    rhs2 = 1j * m * uv + 1j * n2
    if include_source:
        if pair.source1 is not None:
            rhs1 = rhs1 + _eval(pair.source1, xu, tt)
        if pair.source2 is not None:
            rhs2 = rhs2 + _eval(pair.source2, xv, tt)
    I1 = rhs1 @ w
    I2 = rhs2 @ w

    f0 = sample_pair(pair, h, k, grid.n_min, grid.n_max)
    f1 = sample_pair(pair, h, k + 1, grid.n_min - 1, grid.n_max + 1)
    u, v = f0.u, f0.v
    uh, vh = f1.u[2:], f1.v[: grid.size]
    G = 2.0 * (u.real * v.real + u.imag * v.imag)
    a, b = params.alpha, params.beta
    su, sv = uh + u, vh + v
    g1 = I1 - 0.5j * m * sv - 0.5j * a * su * _abs2(v) - 0.5j * b * sv * G
    g2 = I2 - 0.5j * m * su - 0.5j * a * sv * _abs2(u) - 0.5j * b * su * G
    return ForcingLevel(Grid(h, grid.n_min, grid.n_max, k), g1, g2)


def _base_window(pair: SmoothPair, h: float, margin: int = 2) -> Tuple[int, int]:
    a, b = pair.support
    return math.floor(a / h) - margin, math.ceil(b / h) + margin


def round_trip_error(pair: SmoothPair, params: ModelParams, h: float, steps: int) -> float:
    """Chain ``steps`` forced steps driven by the discrete residual of ``pair``.

    Returns the largest deviation from the sampled levels relative to the
    largest sampled amplitude.
    """
    lo, hi = _base_window(pair, h)
    s_k = sample_pair(pair, h, 0, lo, hi)
    f = s_k
    worst = 0.0
    for k in range(steps):
        s_k1 = sample_pair(pair, h, k + 1, lo - k - 1, hi + k + 1)
        f, _ = step_forced(f, discrete_residual(s_k, s_k1, params), params)
        scale = max(float(np.max(np.abs(s_k1.u))), float(np.max(np.abs(s_k1.v))), np.finfo(float).tiny)
        dev = max(float(np.max(np.abs(f.u - s_k1.u))), float(np.max(np.abs(f.v - s_k1.v))))
        worst = max(worst, dev / scale)
        s_k = s_k1
    return worst


def consistency_study(pair: SmoothPair, config: StudyConfig) -> ConvergenceTable:
    """Largest ``|g - F(midpoint)|`` over all levels up to ``T``, for each ``h``.

    ``g`` is the discrete residual and ``F`` the pair's continuum source,
    taken at the midpoint of the characteristic each component follows.
    """
    params = config.params
    errors, steps_col = [], []
    for h in config.h_list:
        steps = config.steps(h)
        lo, hi = _base_window(pair, h)
        s_k = sample_pair(pair, h, 0, lo, hi)
        err = 0.0
        for k in range(steps):
            s_k1 = sample_pair(pair, h, k + 1, lo - k - 1, hi + k + 1)
            g = discrete_residual(s_k, s_k1, params)
            n = s_k.grid.indices()
            tm = (k + 0.5) * h
            F1 = _eval(pair.source1, (n + 0.5) * h, tm) if pair.source1 is not None else 0.0
            F2 = _eval(pair.source2, (n - 0.5) * h, tm) if pair.source2 is not None else 0.0
            err = max(err, float(np.max(np.abs(g.g1 - F1))), float(np.max(np.abs(g.g2 - F2))))
            s_k = s_k1
        errors.append(err)
        steps_col.append(steps)
    meta = dict(config.describe(), pair=pair.descriptor)
    return ConvergenceTable(
        "max|g - F(midpoint)|", np.array(config.h_list), np.array(steps_col), np.array(errors), meta
    )


# ---------------------------------------------------------------------------
# Evolution studies


SAMPLE_TIMES = 17


def _support(data: InitialData) -> Tuple[float, float]:
    if data.support_hint is None:
        raise ValueError("initial data needs a support hint to size the lattice window")
    return data.support_hint


def _initial_field(data: InitialData, h: float, sampling: str) -> SpinorField:
    a, b = _support(data)
    return sample_initial(data, Grid.covering(a, b, h), sampling)


def _sample_levels(steps: int) -> List[int]:
    if steps % (SAMPLE_TIMES - 1):
        raise ValueError(f"{steps} steps cannot be split into {SAMPLE_TIMES - 1} equal intervals")
    return [j * steps // (SAMPLE_TIMES - 1) for j in range(SAMPLE_TIMES)]


def _snapshots(field0: SpinorField, params: ModelParams, steps: int, levels: Sequence[int]) -> List[SpinorField]:
    wanted = set(levels)
    out = {0: field0}

    def grab(k, f, report):
        if k in wanted:
            out[k] = f

    evolve(field0, params, steps, observers=[grab])
    return [out[k] for k in levels]


def self_convergence_study(data: InitialData, config: StudyConfig) -> ConvergenceTable:
    """Sup over 17 equispaced times of the L2 distance between runs at ``h`` and ``h/2``.

    The row for ``h`` holds ``e(h)``; the finest mesh only serves as a partner.
    """
    if len(config.h_list) < 2 or not config.is_halving:
        raise ValueError("self-convergence needs a halving chain of at least two meshes")
    snaps = []
    for h in config.h_list:
        steps = config.steps(h)
        snaps.append(_snapshots(_initial_field(data, h, config.sampling), config.params, steps, _sample_levels(steps)))
    errors = [
        max(l2_distance_pc(f, g) for f, g in zip(coarse, fine)) for coarse, fine in zip(snaps, snaps[1:])
    ]
    hs = np.array(config.h_list[:-1])
    meta = dict(config.describe(), data=data.name, times=SAMPLE_TIMES)
    return ConvergenceTable(
        "sup_t L2 distance between h and h/2",
        hs,
        np.array([config.steps(h) for h in hs]),
        np.array(errors),
        meta,
    )


@dataclass
class ShiftStudy:
    h: float
    n0: int
    trace: FunctionalTrace
    strip_times: np.ndarray
    strip_ratio: np.ndarray

    @property
    def ratio(self) -> float:
        """Fitted stability constant ``max_k F1(k) / F1(k0)``."""
        return self.trace.growth_ratio


def shift_stability_study(
    data: InitialData, n0: int, config: StudyConfig, delta: Optional[TriangleDomain] = None, h: float = None
) -> ShiftStudy:
    """Compare the solution with its own translate by ``n0`` cells.

    Runs at ``h`` (default ``config.h_list[0]``).  Without ``delta`` the
    triangle has its apex at ``T`` above the center of the data support and
    its base at ``t = 0``.  Also reports the whole-line ratio
    ``||f(t) - f(t)(. + n0 h)|| / ||f(0) - f(0)(. + n0 h)||`` at 17 times.
    """
    h = config.h_list[0] if h is None else h
    steps = config.steps(h)
    if delta is None:
        a, b = _support(data)
        delta = TriangleDomain.from_physical(0.5 * (a + b), config.T, 0.0, h)
    if delta.k1 > steps:
        raise ValueError(f"triangle apex k1={delta.k1} is beyond the horizon ({steps} steps)")
    traj = run_trajectory(_initial_field(data, h, config.sampling), config.params, steps)
    pair = SolutionPair(traj, traj.shifted(n0))
    trace = glimm_trace(pair, delta, config.K)
    trace.meta.update(config.describe(), n0=n0, h=h)
    levels = [round(j * steps / (SAMPLE_TIMES - 1)) for j in range(SAMPLE_TIMES)]
    dist = np.array([l2_distance_pc(traj.level(k), shift_field(traj.level(k), n0)) for k in levels])
    ratio = dist / dist[0] if dist[0] > 0 else np.zeros_like(dist)
    return ShiftStudy(h, n0, trace, np.array(levels) * h, ratio)


def shift_stability_refinement(
    data: InitialData,
    n0: int,
    config: StudyConfig,
    x1: float = None,
    t1: float = None,
    t0: float = 0.0,
) -> Tuple[List[ShiftStudy], float]:
    """Shift study on the same physical triangle for every ``h`` in the config.

    Returns the studies and the spread ``max ratio / min ratio`` of their
    fitted constants.
    """
    if x1 is None:
        a, b = _support(data)
        x1 = 0.5 * (a + b)
    t1 = config.T if t1 is None else t1
    studies = [
        shift_stability_study(data, n0, config, TriangleDomain.from_physical(x1, t1, t0, h), h)
        for h in config.h_list
    ]
    ratios = [s.ratio for s in studies]
    lo, hi = min(ratios), max(ratios)
    spread = 1.0 if hi == lo else (math.inf if lo == 0 else hi / lo)
    return studies, spread


def _level_index(t: float, h: float, name: str) -> int:
    k = int(round(t / h))
    if abs(t / h - k) > 1e-9 * max(1.0, abs(t / h)):
        raise ValueError(f"{name} = {t!r} is not a multiple of h = {h!r}")
    return k


def characteristic_modulus(data: InitialData, config: StudyConfig, t0: float, t1: float, h: float = None) -> Tuple[float, float]:
    """``(int |u(x, t1) - u(x - d, t0)|^2 dx, int |v(x, t1) - v(x + d, t0)|^2 dx)``, ``d = t1 - t0``."""
    h = config.h_list[0] if h is None else h
    k0 = _level_index(t0, h, "t0")
    k1 = _level_index(t1, h, "t1")
    if not 0 <= k0 <= k1 <= config.steps(h):
        raise ValueError(f"need 0 <= t0 <= t1 <= T, got t0={t0}, t1={t1}")
    d = k1 - k0
    snaps = _snapshots(_initial_field(data, h, config.sampling), config.params, k1, [k0, k1])
    f0, f1 = snaps
    lo = min(f1.grid.n_min, f0.grid.n_min - d)
    hi = max(f1.grid.n_max, f0.grid.n_max + d)
    u1, v1 = f1.window(lo, hi)
    u0, _ = f0.window(lo - d, hi - d)
    _, v0 = f0.window(lo + d, hi + d)
    return h * math.fsum(_abs2(u1 - u0)), h * math.fsum(_abs2(v1 - v0))


def pointwise_refinement(data: InitialData, config: StudyConfig) -> List[PointwiseReport]:
    """Empirical pointwise-bound constant for each ``h`` of the config."""
    out = []
    for h in config.h_list:
        traj = run_trajectory(_initial_field(data, h, config.sampling), config.params, config.steps(h))
        out.append(pointwise_bound_check(traj))
    return out


# ---------------------------------------------------------------------------
# Pair catalog


def plane_wave_pair(m: float = 1.0, kappa: float = 2.0, window: Tuple[float, float] = (-1.0, 1.0)) -> SmoothPair:
    """Linear plane wave ``(A, B) exp(i (kappa x - omega t))``, ``omega^2 = kappa^2 + m^2``.

    Solves the system with ``alpha = beta = 0`` and mass ``m``.  It is not
    decaying, so ``window`` just names the study interval.
    """
    omega = math.sqrt(kappa * kappa + m * m)
    A = 1.0
    B = (kappa - omega) * A / m if m > 0 else 0.0

    def phase(x, t):
        return np.exp(1j * (kappa * x - omega * t))

    return SmoothPair(
        lambda x, t: A * phase(x, t),
        lambda x, t: B * phase(x, t),
        f"plane-wave(m={m}, kappa={kappa}, omega={omega})",
        window,
    )


def streaming_pair(
    phi: Callable = None, psi: Callable = None, support: Tuple[float, float] = (-6.0, 6.0)
) -> SmoothPair:
    """``u = phi(x - t)``, ``v = psi(x + t)``: exact for ``m = alpha = beta = 0``."""
    phi = phi or (lambda s: np.exp(-(s**2)) * (1 + 0.5j))
    psi = psi or (lambda s: 0.5 * np.exp(-((s - 0.5) ** 2)))
    return SmoothPair(lambda x, t: phi(x - t), lambda x, t: psi(x + t), "streaming-profile", support)


_MANUFACTURED = dict(
    u=dict(amp=0.8, center=-0.5, width=0.6, drift=0.3, k=1.0, omega=0.5),
    v=dict(amp=0.6, center=0.5, width=0.5, drift=-0.4, k=-0.7, omega=0.3),
)


def manufactured_pair(params: ModelParams, convention: str = "scheme") -> SmoothPair:
    """Drifting Gaussian wave packets with sources derived symbolically.

    Each component is ``amp exp(-((x - center - drift t) / width)^2)
    exp(i (k x - omega t))``; the sources make the pair an exact solution of
    the forced continuum system for ``params`` (nonlinearity per
    ``convention``).
    """
    import sympy as sp

    x, t = sp.symbols("x t", real=True)

    def packet(c):
        env = sp.exp(-(((x - c["center"] - c["drift"] * t) / c["width"]) ** 2))
        return c["amp"] * env * sp.exp(sp.I * (c["k"] * x - c["omega"] * t))

    u = packet(_MANUFACTURED["u"])
    v = packet(_MANUFACTURED["v"])
    uc, vc = sp.conjugate(u), sp.conjugate(v)
    G = uc * v + u * vc
    bf = CONVENTIONS[convention] * params.beta
    N1 = params.alpha * u * v * vc + bf * G * v
    N2 = params.alpha * v * u * uc + bf * G * u
    F1 = sp.diff(u, t) + sp.diff(u, x) - sp.I * params.m * v - sp.I * N1
    F2 = sp.diff(v, t) - sp.diff(v, x) - sp.I * params.m * u - sp.I * N2
    fns = [sp.lambdify((x, t), e, modules="numpy", cse=True) for e in (u, v, F1, F2)]
    cut = 6.5
    lo = min(c["center"] - cut * c["width"] for c in _MANUFACTURED.values())
    hi = max(c["center"] + cut * c["width"] for c in _MANUFACTURED.values())
    return SmoothPair(fns[0], fns[1], f"manufactured-gaussian({convention})", (lo, hi), fns[2], fns[3])


def nonsolution_pairs() -> List[SmoothPair]:
    """Three smooth pairs that solve nothing in particular."""
    return [
        SmoothPair(
            lambda x, t: np.exp(-((x - 0.5 * t) ** 2) + 1j * (2 * x - t)),
            lambda x, t: 0.7 * np.exp(-((x + 0.3 * t) ** 2) / 0.5 - 1j * x),
            "gaussian-packets",
            (-7.0, 7.0),
        ),
        SmoothPair(
            lambda x, t: (1 + 0.5 * np.sin(3 * t)) * np.exp(-(x**2)) * (1 + 1j * x),
            lambda x, t: np.cos(2 * t) * np.exp(-((x - 0.2) ** 2)),
            "modulated-gaussians",
            (-7.0, 7.0),
        ),
        SmoothPair(
            lambda x, t: 1.5 / np.cosh(2 * (x - 0.2 * t)) * np.exp(1j * t),
            lambda x, t: 0.5j / np.cosh(3 * (x + 0.1 * t)) ** 2,
            "sech-profiles",
            (-18.0, 18.0),
        ),
    ]
