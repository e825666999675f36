"""Grids, spinor fields, initial-data sampling and L2 geometry.

A :class:`SpinorField` is a finite window ``n_min..n_max`` of lattice values;
everything outside the window is zero.  The field stands for the piecewise
constant function equal to ``(u_n, v_n)`` on ``[n h, (n + 1) h)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Tuple

import numpy as np

__all__ = [
    "ModelParams",
    "Grid",
    "SpinorField",
    "InitialData",
    "g_bilinear",
    "sample_initial",
    "charge",
    "l2_distance_pc",
    "shift_field",
    "write_snapshot",
    "read_snapshot",
]


@dataclass(frozen=True)
class ModelParams:
    """Mass ``m`` and the couplings of the quartic nonlinearity.

    ``alpha`` multiplies ``|u|^2 |v|^2`` and ``beta`` multiplies
    ``(conj(u) v + u conj(v))^2``.
    """

    m: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        for name in ("m", "alpha", "beta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.m < 0:
            raise ValueError(f"m must be non-negative, got {self.m}")

    @classmethod
    def thirring(cls, m: float = 1.0) -> "ModelParams":
        return cls(m=m, alpha=1.0, beta=0.0)

    @classmethod
    def gross_neveu(cls, m: float = 1.0) -> "ModelParams":
        return cls(m=m, alpha=0.0, beta=0.25)

    @property
    def preset(self) -> Optional[str]:
        if self.alpha == 1.0 and self.beta == 0.0:
            return "thirring"
        if self.alpha == 0.0 and self.beta == 0.25:
            return "gross-neveu"
        return None


@dataclass(frozen=True)
class Grid:
    """Square lattice: space step equals time step ``h``."""

    h: float
    n_min: int
    n_max: int
    k: int = 0

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError(f"h must be positive, got {self.h}")
        if self.n_min > self.n_max:
            raise ValueError(f"empty window n_min={self.n_min} > n_max={self.n_max}")
        if self.k < 0:
            raise ValueError(f"time index must be >= 0, got {self.k}")

    @property
    def size(self) -> int:
        return self.n_max - self.n_min + 1

    @property
    def t(self) -> float:
        return self.k * self.h

    def indices(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    def nodes(self) -> np.ndarray:
        return self.indices() * self.h

    @classmethod
    def covering(cls, a: float, b: float, h: float, k: int = 0) -> "Grid":
        """Smallest window whose cells cover ``[a, b]``."""
        n_min = math.floor(a / h)
        n_max = max(n_min, math.ceil(b / h) - 1)
        return cls(h=h, n_min=n_min, n_max=n_max, k=k)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpinorField:
    grid: Grid
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = _frozen(self.u)
        v = _frozen(self.v)
        if u.shape != (self.grid.size,) or v.shape != (self.grid.size,):
            raise ValueError(
                f"u, v must have length {self.grid.size}, got {u.shape} and {v.shape}"
            )
        if not (np.isfinite(u).all() and np.isfinite(v).all()):
            raise ValueError("nonfinite state")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @classmethod
    def zeros(cls, grid: Grid) -> "SpinorField":
        z = np.zeros(grid.size, dtype=np.complex128)
        return cls(grid, z, z)

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def k(self) -> int:
        return self.grid.k

    @property
    def t(self) -> float:
        return self.grid.t

    def window(self, n_lo: int, n_hi: int) -> Tuple[np.ndarray, np.ndarray]:
        """Values on ``n_lo..n_hi`` (inclusive), zero outside the stored window."""
        width = n_hi - n_lo + 1
        u = np.zeros(max(width, 0), dtype=np.complex128)
        v = np.zeros_like(u)
        lo = max(n_lo, self.grid.n_min)
        hi = min(n_hi, self.grid.n_max)
        if lo <= hi:
            src = slice(lo - self.grid.n_min, hi - self.grid.n_min + 1)
            dst = slice(lo - n_lo, hi - n_lo + 1)
            u[dst] = self.u[src]
            v[dst] = self.v[src]
        return u, v

    def at(self, n: int) -> Tuple[complex, complex]:
        if self.grid.n_min <= n <= self.grid.n_max:
            i = n - self.grid.n_min
            return complex(self.u[i]), complex(self.v[i])
        return 0j, 0j

    def regrid(self, n_min: int, n_max: int) -> "SpinorField":
        u, v = self.window(n_min, n_max)
        return SpinorField(Grid(self.h, n_min, n_max, self.k), u, v)


@dataclass(frozen=True)
class InitialData:
    """Initial profiles ``u0(x)``, ``v0(x)``.

    The callables should accept numpy arrays; scalar-only callables are
    vectorized on the fly.
    """

    u0: Callable
    v0: Callable
    support_hint: Optional[Tuple[float, float]] = None
    name: str = dc_field(default="custom", compare=False)


def g_bilinear(u: complex, v: complex) -> float:
    """``conj(u) v + u conj(v)``, which is ``2 Re(conj(u) v)``."""
    u = complex(u)
    v = complex(v)
    return 2.0 * (u.real * v.real + u.imag * v.imag)


def _evaluate(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(f(x), dtype=np.complex128)
    except TypeError:
        out = None
    if out is None or out.shape != x.shape:
        out = np.vectorize(lambda s: complex(f(float(s))), otypes=[np.complex128])(x)
    return out


def _parse_method(method) -> Tuple[str, int]:
    if isinstance(method, tuple):
        name, q = method
        return name, int(q)
    text = str(method).strip().lower().replace("_", "-")
    if text in ("point", "point-sample"):
        return "point", 0
    if text.startswith("cell-average"):
        q = 4
        if "(" in text:
            q = int(text[text.index("(") + 1 : text.rindex(")")])
        if q < 1:
            raise ValueError(f"quadrature order must be >= 1, got {q}")
        return "cell-average", q
    raise ValueError(f"unknown sampling method {method!r}")


def _cell_mean(vals: np.ndarray, w: np.ndarray) -> np.ndarray:
    # weights do not sum to 1 in binary64, so cells that are constant keep their value
    out = vals @ w
    const = np.all(vals == vals[:, :1], axis=1)
    out[const] = vals[const, 0]
    return out


def sample_initial(data: InitialData, grid: Grid, method="cell-average(4)") -> SpinorField:
    """Sample initial data onto ``grid``.

    ``method`` is ``"point"`` (value at ``x = n h``) or ``"cell-average(q)"``
    (q-point Gauss-Legendre mean over ``[n h, (n + 1) h)``).
    """
    if data.support_hint is not None:
        a, b = data.support_hint
        lo = grid.n_min * grid.h
        hi = (grid.n_max + 1) * grid.h
        if a < lo or b > hi:
            raise ValueError(
                f"truncated support: window [{lo}, {hi}) does not cover [{a}, {b}]"
            )
    name, q = _parse_method(method)
    x0 = grid.nodes()
    if name == "point":
        u = _evaluate(data.u0, x0)
        v = _evaluate(data.v0, x0)
    else:
        xi, wi = np.polynomial.legendre.leggauss(q)
        offsets = 0.5 * (xi + 1.0) * grid.h
        pts = x0[:, None] + offsets[None, :]
        w = 0.5 * wi
        u = _cell_mean(_evaluate(data.u0, pts), w)
        v = _cell_mean(_evaluate(data.v0, pts), w)
    return SpinorField(grid, u, v)


def charge(f: SpinorField) -> float:
    """``h * sum(|u|^2 + |v|^2)`` with correctly rounded summation."""
    dens = f.u.real**2 + f.u.imag**2 + f.v.real**2 + f.v.imag**2
    return f.h * math.fsum(dens)


def _breakpoints(f: SpinorField) -> np.ndarray:
    return np.arange(f.grid.n_min, f.grid.n_max + 2) * f.h


def _lookup(f: SpinorField, mids: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    idx = np.floor(mids / f.h).astype(np.int64) - f.grid.n_min
    ok = (idx >= 0) & (idx < f.grid.size)
    u = np.zeros(len(mids), dtype=np.complex128)
    v = np.zeros_like(u)
    u[ok] = f.u[idx[ok]]
    v[ok] = f.v[idx[ok]]
    return u, v


def l2_distance_pc(f: SpinorField, g: SpinorField) -> float:
    """Exact L2(R) distance between two piecewise-constant spinor fields.

    The mesh sizes may differ.  The integral is taken over the common
    refinement of both breakpoint sets, with zero outside each window.
    """
    if f.h == g.h:
        lo = min(f.grid.n_min, g.grid.n_min)
        hi = max(f.grid.n_max, g.grid.n_max)
        fu, fv = f.window(lo, hi)
        gu, gv = g.window(lo, hi)
        du, dv = fu - gu, fv - gv
        dens = du.real**2 + du.imag**2 + dv.real**2 + dv.imag**2
        return math.sqrt(f.h * math.fsum(dens))
    pts = np.union1d(_breakpoints(f), _breakpoints(g))
    lengths = np.diff(pts)
    mids = 0.5 * (pts[:-1] + pts[1:])
    fu, fv = _lookup(f, mids)
    gu, gv = _lookup(g, mids)
    du, dv = fu - gu, fv - gv
    dens = (du.real**2 + du.imag**2 + dv.real**2 + dv.imag**2) * lengths
    return math.sqrt(math.fsum(dens))


def shift_field(f: SpinorField, n0: int) -> SpinorField:
    """Field with values ``(u_{n+n0}, v_{n+n0})`` at index ``n``."""
    n0 = int(n0)
    grid = Grid(f.h, f.grid.n_min - n0, f.grid.n_max - n0, f.k)
    return SpinorField(grid, f.u, f.v)


def _fmt(x: float) -> str:
    return repr(float(x))


def write_snapshot(f: SpinorField, path) -> None:
    """CSV snapshot: ``# t=<t> h=<h>`` comment, then ``n,x,re_u,im_u,re_v,im_v``."""
    lines = [f"# t={_fmt(f.t)} h={_fmt(f.h)}", "n,x,re_u,im_u,re_v,im_v"]
    for n, u, v in zip(f.grid.indices(), f.u, f.v):
        lines.append(
            ",".join(
                [str(int(n)), _fmt(n * f.h), _fmt(u.real), _fmt(u.imag), _fmt(v.real), _fmt(v.imag)]
            )
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_snapshot(path) -> SpinorField:
    h = t = None
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("n,"):
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    key, _, val = tok.partition("=")
                    if key == "h":
                        h = float(val)
                    elif key == "t":
                        t = float(val)
                continue
            rows.append(line.split(","))
    if h is None or t is None:
        raise ValueError(f"{path}: missing '# t=... h=...' header")
    if not rows:
        raise ValueError(f"{path}: no data rows")
    n = np.array([int(r[0]) for r in rows])
    if np.any(np.diff(n) != 1):
        raise ValueError(f"{path}: indices must be consecutive")
    u = np.array([complex(float(r[2]), float(r[3])) for r in rows])
    v = np.array([complex(float(r[4]), float(r[5])) for r in rows])
    return SpinorField(Grid(h, int(n[0]), int(n[-1]), int(round(t / h))), u, v)
