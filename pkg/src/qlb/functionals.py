"""Triangle-domain functionals for one solution and for pairs of solutions.

Rows of the characteristic triangle ``Delta(n1, k1; k0)`` are
``n1 - k1 + k <= n <= n1 + k1 - k`` for ``k0 <= k <= k1``.  Values outside a
stored field window read as zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .lattice import SpinorField
from .stepper import ForcingLevel, Trajectory

__all__ = [
    "TriangleDomain",
    "SolutionPair",
    "FunctionalTrace",
    "BonyReport",
    "BalanceReport",
    "PointwiseReport",
    "l0",
    "d0",
    "lg",
    "l1",
    "d1",
    "q1",
    "f1",
    "bony_lemma_check",
    "random_bony_instance",
    "glimm_trace",
    "triangle_balance",
    "pointwise_bound_check",
]

DEFAULT_K = 10.0


@dataclass(frozen=True)
class TriangleDomain:
    n1: int
    k1: int
    k0: int

    def __post_init__(self):
        if not 0 <= self.k0 <= self.k1:
            raise ValueError(f"need 0 <= k0 <= k1, got k0={self.k0}, k1={self.k1}")

    @classmethod
    def from_physical(cls, x1: float, t1: float, t0: float, h: float) -> "TriangleDomain":
        """Triangle with apex near ``(x1, t1)`` and base at time ``t0``."""
        return cls(int(round(x1 / h)), int(round(t1 / h)), int(round(t0 / h)))

    def row(self, k: int) -> Tuple[int, int]:
        if not self.k0 <= k <= self.k1:
            raise ValueError(f"level {k} outside [{self.k0}, {self.k1}]")
        return self.n1 - self.k1 + k, self.n1 + self.k1 - k

    def levels(self) -> range:
        return range(self.k0, self.k1 + 1)


Levelled = Union[SpinorField, Trajectory]


def _level(obj, k: int):
    if isinstance(obj, Trajectory):
        return obj.level(k)
    if isinstance(obj, (list, tuple)):
        return obj[k]
    return obj


def _abs2(z: np.ndarray) -> np.ndarray:
    return z.real**2 + z.imag**2


def _row_values(obj, delta: TriangleDomain, k: int):
    lo, hi = delta.row(k)
    return _level(obj, k).window(lo, hi)


def l0(field: Levelled, delta: TriangleDomain, k: int) -> float:
    u, v = _row_values(field, delta, k)
    return math.fsum(_abs2(u) + _abs2(v))


def d0(field: Levelled, delta: TriangleDomain, k: int) -> float:
    u, v = _row_values(field, delta, k)
    return math.fsum(_abs2(u) * _abs2(v))


def lg(forcing, delta: TriangleDomain, k: int) -> float:
    """Row sum of ``|g1|^2 + |g2|^2``; ``None`` forcing counts as zero."""
    level = _level(forcing, k) if forcing is not None else None
    if level is None:
        return 0.0
    lo, hi = delta.row(k)
    g1, g2 = level.window(lo, hi)
    return math.fsum(_abs2(g1) + _abs2(g2))


@dataclass
class SolutionPair:
    """A reference solution, a second solution and the second one's forcing.

    ``forcing`` is ``None`` (homogeneous) or a sequence of
    :class:`ForcingLevel` aligned with the levels of ``secondary``.
    """

    primary: Trajectory
    secondary: Trajectory
    forcing: Optional[Sequence[Optional[ForcingLevel]]] = None

    def __post_init__(self):
        if self.primary.h != self.secondary.h:
            raise ValueError("trajectories must share h")
        if (self.primary.k_start, self.primary.k_end) != (
            self.secondary.k_start,
            self.secondary.k_end,
        ):
            raise ValueError("trajectories must cover the same levels")

    @property
    def h(self) -> float:
        return self.primary.h

    def forcing_at(self, k: int) -> Optional[ForcingLevel]:
        if self.forcing is None:
            return None
        i = k - self.secondary.k_start
        if 0 <= i < len(self.forcing):
            return self.forcing[i]
        return None


def _pair_rows(pair: SolutionPair, delta: TriangleDomain, k: int):
    u, v = _row_values(pair.primary, delta, k)
    ut, vt = _row_values(pair.secondary, delta, k)
    A = _abs2(ut - u)  # |U|^2
    C = _abs2(vt - v)  # |V|^2
    B = _abs2(v) + _abs2(vt)
    D = _abs2(u) + _abs2(ut)
    return A, B, C, D


def l1(pair: SolutionPair, delta: TriangleDomain, k: int) -> float:
    A, _, C, _ = _pair_rows(pair, delta, k)
    return math.fsum(A + C)


def d1(pair: SolutionPair, delta: TriangleDomain, k: int) -> float:
    A, B, C, D = _pair_rows(pair, delta, k)
    return math.fsum(A * B + C * D)


def _ordered_pair_sum(a: np.ndarray, b: np.ndarray) -> float:
    """``sum_{n <= l} a_n b_l`` in linear time."""
    if len(a) == 0:
        return 0.0
    suffix = np.cumsum(b[::-1])[::-1]
    return math.fsum(a * suffix)


def q1(pair: SolutionPair, delta: TriangleDomain, k: int) -> float:
    A, B, C, D = _pair_rows(pair, delta, k)
    # sum_{n<=l} A_n B_l + C_l D_n; the second term is the same ordering with D leading
    return _ordered_pair_sum(A, B) + _ordered_pair_sum(D, C)


def f1(pair: SolutionPair, delta: TriangleDomain, k: int, K: float = DEFAULT_K) -> float:
    if not K > 0:
        raise ValueError(f"K must be positive, got {K}")
    h = pair.h
    return l1(pair, delta, k) * h + K * q1(pair, delta, k) * h * h


# ---------------------------------------------------------------------------
# Bony-type combinatorial inequality


@dataclass
class BonyReport:
    slack: np.ndarray  # E(k-1) - [Q(k) - Q(k-1) + D(k-1)], k = 1..L-1
    scale: np.ndarray
    Q: np.ndarray
    D: np.ndarray
    E: np.ndarray
    tol: float = 1e-12

    @property
    def worst(self) -> float:
        """Most negative normalized slack (0 when there are no steps)."""
        if len(self.slack) == 0:
            return 0.0
        return float(np.min(self.slack / self.scale))

    @property
    def ok(self) -> bool:
        return bool(np.all(self.slack >= -self.tol * self.scale))


def _triangle_mask(levels: int) -> np.ndarray:
    width = 2 * levels - 1
    cols = np.arange(width)
    rows = np.arange(levels)[:, None]
    return (cols >= rows) & (cols <= width - 1 - rows)


def bony_lemma_check(a, b, c, d, tol: float = 1e-12) -> BonyReport:
    """Check the Q/D/E interaction inequality on a triangle of nonnegative data.

    The arrays have shape ``(L, 2L - 1)``; row ``i`` holds one level of the
    triangle in columns ``i .. 2L - 2 - i`` (other entries are ignored).
    ``a`` moves right (``a[i, j] <= a[i-1, j-1] + c[i-1, j-1]``) and ``b``
    moves left (``b[i, j] <= b[i-1, j+1] + d[i-1, j+1]``).
    """
    a, b, c, d = (np.asarray(x, dtype=np.float64) for x in (a, b, c, d))
    if a.ndim != 2 or a.shape[1] != 2 * a.shape[0] - 1:
        raise ValueError(f"arrays must have shape (L, 2L-1), got {a.shape}")
    for name, x in zip("bcd", (b, c, d)):
        if x.shape != a.shape:
            raise ValueError(f"{name} has shape {x.shape}, expected {a.shape}")
    levels = a.shape[0]
    mask = _triangle_mask(levels)
    for name, x in zip("abcd", (a, b, c, d)):
        bad = np.argwhere(mask & ~(x >= 0))
        if len(bad):
            i, j = bad[0]
            raise ValueError(f"precondition: {name}[{i}, {j}] = {x[i, j]!r} is negative")
    for i in range(1, levels):
        cols = np.arange(i, 2 * levels - 1 - i)
        bad = np.nonzero(a[i, cols] > a[i - 1, cols - 1] + c[i - 1, cols - 1])[0]
        if len(bad):
            j = cols[bad[0]]
            raise ValueError(
                f"precondition: a[{i}, {j}] > a[{i-1}, {j-1}] + c[{i-1}, {j-1}] (right-mover recurrence)"
            )
        bad = np.nonzero(b[i, cols] > b[i - 1, cols + 1] + d[i - 1, cols + 1])[0]
        if len(bad):
            j = cols[bad[0]]
            raise ValueError(
                f"precondition: b[{i}, {j}] > b[{i-1}, {j+1}] + d[{i-1}, {j+1}] (left-mover recurrence)"
            )

    Q = np.zeros(levels)
    D = np.zeros(levels)
    E = np.zeros(levels)
    for i in range(levels):
        row = slice(i, 2 * levels - 1 - i)
        ai, bi, ci, di = a[i, row], b[i, row], c[i, row], d[i, row]
        Q[i] = _ordered_pair_sum(ai, bi)
        D[i] = math.fsum(ai * bi)
        La, Lb, Lc, Ld = (math.fsum(x) for x in (ai, bi, ci, di))
        E[i] = La * Ld + Lb * Lc + Lc * Ld
    lhs = Q[1:] - Q[:-1] + D[:-1]
    slack = E[:-1] - lhs
    scale = np.maximum.reduce([Q[1:], Q[:-1], D[:-1], E[:-1], np.full(levels - 1, np.finfo(float).tiny)])
    return BonyReport(slack, scale, Q, D, E, tol)


def random_bony_instance(rng: np.random.Generator, levels: int, exact: bool = False):
    """Random admissible ``(a, b, c, d)`` for :func:`bony_lemma_check`.

    Each recurrence holds with a random multiplicative slack in ``[0, 1]``
    (or with equality when ``exact``); ``c`` and ``d`` are sparse-ish
    nonnegative sources.
    """
    width = 2 * levels - 1
    a = np.zeros((levels, width))
    b = np.zeros((levels, width))
    c = rng.random((levels, width)) * (rng.random((levels, width)) < 0.3)
    d = rng.random((levels, width)) * (rng.random((levels, width)) < 0.3)
    scale = 10.0 ** rng.uniform(-3, 3)
    c *= scale * rng.random()
    d *= scale * rng.random()
    a[0] = rng.random(width) * scale
    b[0] = rng.random(width) * scale
    for i in range(1, levels):
        cols = np.arange(i, width - i)
        ta = 1.0 if exact else rng.random(len(cols))
        tb = 1.0 if exact else rng.random(len(cols))
        a[i, cols] = (a[i - 1, cols - 1] + c[i - 1, cols - 1]) * ta
        b[i, cols] = (b[i - 1, cols + 1] + d[i - 1, cols + 1]) * tb
    mask = _triangle_mask(levels)
    for x in (a, b, c, d):
        x[~mask] = 0.0
    return a, b, c, d


# ---------------------------------------------------------------------------
# Glimm-type functional trace

TRACE_COLUMNS = ("k", "t", "L0", "L0_tilde", "Lg", "D0", "D0_tilde", "L1", "Q1", "D1", "F1", "Lambda", "rho")


@dataclass
class FunctionalTrace:
    h: float
    K: float
    k: np.ndarray
    L0: np.ndarray
    L0_tilde: np.ndarray
    Lg: np.ndarray
    D0: np.ndarray
    D0_tilde: np.ndarray
    L1: np.ndarray
    Q1: np.ndarray
    D1: np.ndarray
    F1: np.ndarray
    Lambda: np.ndarray
    rho: np.ndarray
    domain: Optional[TriangleDomain] = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def t(self) -> np.ndarray:
        return self.k * self.h

    @property
    def max_rho(self) -> float:
        return float(np.max(self.rho)) if len(self.rho) else 0.0

    @property
    def growth_ratio(self) -> float:
        """``max_k F1(k) / F1(k0)``; ``0`` for an identically zero trace."""
        base = self.F1[0]
        top = float(np.max(self.F1))
        if base == 0.0:
            return 0.0 if top == 0.0 else math.inf
        return float(top / base)

    def rows(self) -> List[tuple]:
        cols = [self.k, self.t] + [getattr(self, c) for c in TRACE_COLUMNS[2:]]
        return list(zip(*cols))

    def to_csv(self, path, comments: Sequence[str] = ()) -> None:
        lines = [f"# {c}" for c in comments]
        lines.append(",".join(TRACE_COLUMNS))
        for row in self.rows():
            lines.append(",".join([str(int(row[0]))] + [repr(float(x)) for x in row[1:]]))
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")


def glimm_trace(pair: SolutionPair, delta: TriangleDomain, K: float = DEFAULT_K) -> FunctionalTrace:
    """All functionals on every level of ``delta`` plus the per-step growth ratio.

    ``rho_k = (F1(k) - F1(k-1)) / (h^2 (Lg + L1) + h^3 Lambda L1)`` with the
    denominator evaluated at ``k - 1``; ``0/0`` is reported as 0.  The largest
    ``rho_k`` is an empirical value for the per-step growth constant.
    """
    if not K > 0:
        raise ValueError(f"K must be positive, got {K}")
    if delta.k0 < pair.primary.k_start or delta.k1 > pair.primary.k_end:
        raise ValueError(
            f"trajectories cover [{pair.primary.k_start}, {pair.primary.k_end}], "
            f"triangle needs [{delta.k0}, {delta.k1}]"
        )
    h = pair.h
    ks = np.arange(delta.k0, delta.k1 + 1)
    cols = {name: np.zeros(len(ks)) for name in TRACE_COLUMNS[2:]}
    for i, k in enumerate(ks):
        k = int(k)
        cols["L0"][i] = l0(pair.primary, delta, k)
        cols["L0_tilde"][i] = l0(pair.secondary, delta, k)
        cols["Lg"][i] = lg(pair.forcing_at(k), delta, k) if pair.forcing_at(k) is not None else 0.0
        cols["D0"][i] = d0(pair.primary, delta, k)
        cols["D0_tilde"][i] = d0(pair.secondary, delta, k)
        cols["L1"][i] = l1(pair, delta, k)
        cols["Q1"][i] = q1(pair, delta, k)
        cols["D1"][i] = d1(pair, delta, k)
    cols["F1"] = cols["L1"] * h + K * cols["Q1"] * h * h
    cols["Lambda"] = cols["D0"] + cols["D0_tilde"] + cols["Lg"]
    rho = np.zeros(len(ks))
    for i in range(1, len(ks)):
        num = cols["F1"][i] - cols["F1"][i - 1]
        den = h * h * (cols["Lg"][i - 1] + cols["L1"][i - 1]) + h**3 * cols["Lambda"][i - 1] * cols["L1"][i - 1]
        if den > 0:
            rho[i] = num / den
        else:
            rho[i] = 0.0 if num <= 0 else math.inf
    cols["rho"] = rho
    return FunctionalTrace(h=h, K=float(K), k=ks, domain=delta, **cols)


# ---------------------------------------------------------------------------
# Single-solution checks


@dataclass
class BalanceReport:
    base: float
    image: np.ndarray  # per k in [k0, k1]
    edges: np.ndarray
    residual: np.ndarray  # |edges + image - base|
    slack_edge: np.ndarray  # base - (outer characteristic edge sum)
    slack_image: np.ndarray  # base - image
    tol: float = 1e-11

    @property
    def max_relative_residual(self) -> float:
        if self.base == 0.0:
            return float(np.max(self.residual)) if len(self.residual) else 0.0
        return float(np.max(self.residual)) / self.base

    @property
    def min_slack(self) -> float:
        return float(min(np.min(self.slack_edge), np.min(self.slack_image)))

    @property
    def ok(self) -> bool:
        scale = max(self.base, np.finfo(float).tiny)
        return self.max_relative_residual <= self.tol and self.min_slack >= -self.tol * scale


def _dens_u(f: SpinorField, lo: int, hi: int) -> np.ndarray:
    return _abs2(f.window(lo, hi)[0])


def _dens_v(f: SpinorField, lo: int, hi: int) -> np.ndarray:
    return _abs2(f.window(lo, hi)[1])


def triangle_balance(trajectory: Trajectory, delta: TriangleDomain, tol: float = 1e-11) -> BalanceReport:
    """Sum node-wise charge conservation over the rows ``k0..k`` of ``delta``.

    For each ``k`` the charge of the base row equals what leaves through the
    two characteristic edges plus the image of row ``k`` at level ``k + 1``.
    Also reports the slack of the two inequalities obtained by dropping terms
    (outer edge points only; image of row ``k`` only).  Needs levels
    ``k0 .. k1 + 1``.
    """
    if delta.k0 < trajectory.k_start or delta.k1 + 1 > trajectory.k_end:
        raise ValueError(
            f"trajectory covers [{trajectory.k_start}, {trajectory.k_end}], "
            f"balance needs [{delta.k0}, {delta.k1 + 1}]"
        )
    n1, k1, k0 = delta.n1, delta.k1, delta.k0
    lo0, hi0 = delta.row(k0)
    f0 = trajectory.level(k0)
    base = math.fsum(np.concatenate([_dens_u(f0, lo0, hi0), _dens_v(f0, lo0, hi0)]))

    # edge terms leaving between levels j and j + 1
    inner, outer = [], []
    for j in range(k0, k1):
        f = trajectory.level(j + 1)
        inner.append(
            _dens_u(f, n1 + k1 - j, n1 + k1 - j)[0] + _dens_v(f, n1 - k1 + j, n1 - k1 + j)[0]
        )
        outer.append(
            _dens_u(f, n1 + k1 - j + 1, n1 + k1 - j + 1)[0]
            + _dens_v(f, n1 - k1 + j - 1, n1 - k1 + j - 1)[0]
        )

    levels = list(delta.levels())
    image = np.zeros(len(levels))
    edges = np.zeros(len(levels))
    residual = np.zeros(len(levels))
    slack_edge = np.zeros(len(levels))
    slack_image = np.zeros(len(levels))
    for i, k in enumerate(levels):
        f = trajectory.level(k + 1)
        img_u = _dens_u(f, n1 - k1 + k + 1, n1 + k1 - k + 1)
        img_v = _dens_v(f, n1 - k1 + k - 1, n1 + k1 - k - 1)
        image[i] = math.fsum(np.concatenate([img_u, img_v]))
        edge_terms = inner[:i] + outer[:i]
        edges[i] = math.fsum(edge_terms)
        residual[i] = abs(math.fsum(edge_terms + list(img_u) + list(img_v) + [-base]))
        # outer points of levels k0+1..k, plus the outer ends of the image row
        outer_k = outer[:i] + [img_u[-1], img_v[0]]
        slack_edge[i] = math.fsum([base] + [-x for x in outer_k])
        slack_image[i] = base - image[i]
    return BalanceReport(base, image, edges, residual, slack_edge, slack_image, tol)


@dataclass
class PointwiseReport:
    c1: float  # max ratio over u and v
    c1_u: float
    c1_v: float
    per_level: np.ndarray
    c1_fit: Optional[float] = None

    @property
    def finite(self) -> bool:
        return math.isfinite(self.c1)

    @property
    def within_fit(self) -> Optional[bool]:
        if self.c1_fit is None:
            return None
        return self.c1 <= self.c1_fit


def pointwise_bound_check(trajectory: Trajectory, C1_fit: Optional[float] = None) -> PointwiseReport:
    """Empirical constant in ``|u^{k+1}_{n+1}| <= C (|u^0_{n-k}| + sqrt((k+1) h))``.

    The ratio ``|u^{k+1}_{n+1}| / (|u^0_{n-k}| + sqrt((k+1) h) + eps)`` is
    maximized over the trajectory, and likewise for ``v`` along left-moving
    characteristics.
    """
    if trajectory.k_start != 0:
        raise ValueError("trajectory must start at level 0")
    h = trajectory.h
    eps = np.finfo(float).eps
    f0 = trajectory.level(0)
    per_level = np.zeros(max(len(trajectory) - 1, 0))
    cu = cv = 0.0
    for k in range(0, trajectory.k_end):
        f = trajectory.level(k + 1)
        lo, hi = f.grid.n_min, f.grid.n_max
        uk, vk = f.window(lo, hi)
        # u at index n+1 traces back to u^0_{n-k}: shift by k+1
        u0, _ = f0.window(lo - k - 1, hi - k - 1)
        _, v0 = f0.window(lo + k + 1, hi + k + 1)
        floor = math.sqrt((k + 1) * h) + eps
        ru = float(np.max(np.abs(uk) / (np.abs(u0) + floor)))
        rv = float(np.max(np.abs(vk) / (np.abs(v0) + floor)))
        cu, cv = max(cu, ru), max(cv, rv)
        per_level[k] = max(ru, rv)
    return PointwiseReport(max(cu, cv), cu, cv, per_level, C1_fit)
