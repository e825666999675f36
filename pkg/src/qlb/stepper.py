"""Implicit QLB time step and the evolution driver.

At each node the pair ``(u_n, v_n)`` is mapped to ``(u_hat, v_hat)`` by a
2x2 linear solve; ``u_hat`` streams to ``n + 1`` and ``v_hat`` to ``n - 1``.
With ``p = a h |v|^2 / 2``, ``q = a h |u|^2 / 2`` and ``s = h (m + b G) / 2``
the node system is ``(I - iA) x_hat = (I + iA) x + h g`` with the real
symmetric ``A = [[p, s], [s, q]]``, so the homogeneous map is a Cayley
transform and conserves ``|u|^2 + |v|^2`` node by node.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .lattice import Grid, ModelParams, SpinorField, charge, g_bilinear

__all__ = [
    "InvariantViolation",
    "NodeSystem",
    "ForcingLevel",
    "StepReport",
    "Trajectory",
    "build_node_system",
    "solve_node",
    "step_homogeneous",
    "step_forced",
    "evolve",
    "run_trajectory",
]

class InvariantViolation(RuntimeError):
    """An internal invariant failed; this signals a bug, not bad input."""


@dataclass(frozen=True)
class NodeSystem:
    """The 2x2 complex system at one node.

    ``a11..a22`` and ``r1, r2`` are the coefficients and right-hand side of
    the nodal scheme; ``J`` its determinant.  The originating state and
    forcing are kept so the solve can use the midpoint form.
    """

    a11: complex
    a12: complex
    a21: complex
    a22: complex
    r1: complex
    r2: complex
    J: complex
    u: complex = 0j
    v: complex = 0j
    g1: complex = 0j
    g2: complex = 0j
    h: float = 0.0

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=np.complex128)

    @property
    def rhs(self) -> np.ndarray:
        return np.array([self.r1, self.r2], dtype=np.complex128)


def build_node_system(u, v, params: ModelParams, h: float, forcing=None) -> NodeSystem:
    """Assemble the node system for state ``(u, v)`` and optional ``(g1, g2)``."""
    if not h > 0:
        raise ValueError(f"h must be positive, got {h}")
    u, v = complex(u), complex(v)
    g1, g2 = (0j, 0j) if forcing is None else (complex(forcing[0]), complex(forcing[1]))
    if not all(map(math.isfinite, (u.real, u.imag, v.real, v.imag))):
        raise ValueError("nonfinite state")
    if not all(map(math.isfinite, (g1.real, g1.imag, g2.real, g2.imag))):
        raise ValueError("nonfinite forcing")
    uu = abs(u) ** 2
    vv = abs(v) ** 2
    G = g_bilinear(u, v)
    a11 = 1 - 0.5j * params.alpha * h * vv
    a22 = 1 - 0.5j * params.alpha * h * uu
    a12 = a21 = -0.5j * h * (params.m + params.beta * G)
    r1 = u * (1 + 0.5j * params.alpha * h * vv) + 0.5j * h * (params.m + params.beta * G) * v + h * g1
    r2 = v * (1 + 0.5j * params.alpha * h * uu) + 0.5j * h * (params.m + params.beta * G) * u + h * g2
    J = a11 * a22 - a12 * a21
    return NodeSystem(a11, a12, a21, a22, r1, r2, J, u, v, g1, g2, float(h))


def solve_node(sys: NodeSystem) -> Tuple[complex, complex]:
    """Solve a node system by Cramer's rule.

    The solve is done for the midpoint ``w = (x_hat + x) / 2``, which satisfies
    ``M w = x + h g / 2`` for the same matrix ``M``; then ``x_hat = 2 w - x``.
    This is algebraically identical to solving ``M x_hat = r`` directly but
    keeps the conservation identity at round-off level when ``|J|`` is large.
    """
    J = sys.J
    if abs(J) < 1.0 - 1e-12:
        raise InvariantViolation(f"|J| = {abs(J)!r} < 1 for a QLB node system")
    b1 = sys.u + 0.5 * sys.h * sys.g1
    b2 = sys.v + 0.5 * sys.h * sys.g2
    w1 = (b1 * sys.a22 - sys.a12 * b2) / J
    w2 = (sys.a11 * b2 - sys.a21 * b1) / J
    return 2 * w1 - sys.u, 2 * w2 - sys.v


@dataclass(frozen=True)
class ForcingLevel:
    """Source terms ``g1``, ``g2`` at one time level, on a field window."""

    grid: Grid
    g1: np.ndarray
    g2: np.ndarray

    def __post_init__(self):
        g1 = np.array(self.g1, dtype=np.complex128)
        g2 = np.array(self.g2, dtype=np.complex128)
        if g1.shape != (self.grid.size,) or g2.shape != (self.grid.size,):
            raise ValueError("forcing arrays must match the window length")
        if not (np.isfinite(g1).all() and np.isfinite(g2).all()):
            raise ValueError("nonfinite forcing")
        g1.setflags(write=False)
        g2.setflags(write=False)
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)

    @classmethod
    def zeros(cls, grid: Grid) -> "ForcingLevel":
        z = np.zeros(grid.size, dtype=np.complex128)
        return cls(grid, z, z)

    def norm2(self) -> np.ndarray:
        """``|g|^2 = |g1|^2 + |g2|^2`` per node."""
        return self.g1.real**2 + self.g1.imag**2 + self.g2.real**2 + self.g2.imag**2

    def window(self, n_lo: int, n_hi: int) -> Tuple[np.ndarray, np.ndarray]:
        return SpinorField(self.grid, self.g1, self.g2).window(n_lo, n_hi)


@dataclass(frozen=True)
class StepReport:
    charge_before: float
    charge_after: float
    forced_charge_identity_residual: float
    max_abs_J_minus: float


def _advance(field: SpinorField, params: ModelParams, g1, g2) -> Tuple[SpinorField, StepReport]:
    g = field.grid
    u_out, v_out, worst = kernels.collide_stream(
        field.u, field.v, g1, g2, g.h, params.m, params.alpha, params.beta
    )
    out = SpinorField(Grid(g.h, g.n_min - 1, g.n_max + 1, g.k + 1), u_out, v_out)
    before = charge(field)
    after = charge(out)
    residual = 0.0
    if g1 is not None:
        n = g.size
        uh = u_out[2:]
        vh = v_out[:n]
        work = g1 * np.conj(uh + field.u) + g2 * np.conj(vh + field.v)
        residual = abs(
            math.fsum(
                np.concatenate(
                    [
                        uh.real**2 + uh.imag**2 + vh.real**2 + vh.imag**2,
                        -(field.u.real**2 + field.u.imag**2 + field.v.real**2 + field.v.imag**2),
                        -g.h * work.real,
                    ]
                )
            )
        )
    return out, StepReport(before, after, residual, worst)


def step_homogeneous(field: SpinorField, params: ModelParams) -> Tuple[SpinorField, StepReport]:
    """Advance one level with no source; the window grows by one cell per side."""
    return _advance(field, params, None, None)


def step_forced(
    field: SpinorField, forcing: ForcingLevel, params: ModelParams
) -> Tuple[SpinorField, StepReport]:
    """Advance one level with source ``h * g`` added to the nodal right-hand side."""
    if (forcing.grid.n_min, forcing.grid.n_max) != (field.grid.n_min, field.grid.n_max):
        raise ValueError(
            "window mismatch: forcing covers "
            f"[{forcing.grid.n_min}, {forcing.grid.n_max}], field covers "
            f"[{field.grid.n_min}, {field.grid.n_max}]"
        )
    return _advance(field, params, forcing.g1, forcing.g2)


ForcingSource = Callable[[int, SpinorField], Optional[ForcingLevel]]
Observer = Callable[[int, SpinorField, StepReport], object]


def evolve(
    field0: SpinorField,
    params: ModelParams,
    steps: int,
    forcing_source: Optional[ForcingSource] = None,
    observers: Iterable[Observer] = (),
) -> Tuple[SpinorField, List[list]]:
    """Apply ``steps`` steps, calling every observer after each one.

    ``forcing_source(k, field)`` returns the forcing for the step from level
    ``k`` (or ``None`` for a homogeneous step).  Returns the final field and
    one list of observer return values per observer.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    observers = list(observers)
    collected: List[list] = [[] for _ in observers]
    f = field0
    for _ in range(steps):
        forcing = forcing_source(f.k, f) if forcing_source is not None else None
        if forcing is None:
            f, report = step_homogeneous(f, params)
        else:
            f, report = step_forced(f, forcing, params)
        for obs, out in zip(observers, collected):
            out.append(obs(f.k, f, report))
    return f, collected


class Trajectory(Sequence):
    """Consecutive levels of one solution, indexed by absolute time index."""

    def __init__(self, fields: Sequence[SpinorField]):
        fields = list(fields)
        if not fields:
            raise ValueError("empty trajectory")
        k0 = fields[0].k
        for i, f in enumerate(fields):
            if f.k != k0 + i or f.h != fields[0].h:
                raise ValueError("trajectory levels must be consecutive with a common h")
        self._fields = fields
        self.k_start = k0

    @property
    def h(self) -> float:
        return self._fields[0].h

    @property
    def k_end(self) -> int:
        return self.k_start + len(self._fields) - 1

    def __len__(self) -> int:
        return len(self._fields)

    def __getitem__(self, i):
        return self._fields[i]

    def level(self, k: int) -> SpinorField:
        if not self.k_start <= k <= self.k_end:
            raise IndexError(f"level {k} outside [{self.k_start}, {self.k_end}]")
        return self._fields[k - self.k_start]

    def shifted(self, n0: int) -> "Trajectory":
        from .lattice import shift_field

        return Trajectory([shift_field(f, n0) for f in self._fields])


def run_trajectory(
    field0: SpinorField,
    params: ModelParams,
    steps: int,
    forcing_source: Optional[ForcingSource] = None,
) -> Trajectory:
    """All levels ``field0.k .. field0.k + steps`` of the solution."""
    fields = [field0]
    evolve(field0, params, steps, forcing_source, [lambda k, f, r: fields.append(f)])
    return Trajectory(fields)
