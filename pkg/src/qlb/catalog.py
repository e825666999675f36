"""Named initial-data profiles and a parser for their text form.

Text form is ``name(key=value, ...)``, for example ``gaussian(amp=0.5,
width=0.3)``, or ``piecewise(a, b, u, v; a, b, u, v; ...)`` for
piecewise-constant data on half-open intervals ``[a, b)``.  Complex values
use Python syntax (``0.5+1j``).
"""
from __future__ import annotations

import math
import re
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .lattice import InitialData

__all__ = ["box", "gaussian", "thirring_bump", "piecewise", "parse_initial", "CATALOG"]

# a Gaussian tail exp(-s^2) is below 1e-27 beyond s = 8
_GAUSS_CUT = 8.0


def box(a: float = 0.0, b: float = 1.0, u: complex = 1.0, v: complex = 0.0) -> InitialData:
    """Constant values ``u``, ``v`` on ``[a, b)``."""
    if not b > a:
        raise ValueError(f"box needs b > a, got a={a}, b={b}")
    u, v = complex(u), complex(v)

    def ind(x):
        x = np.asarray(x, dtype=float)
        return ((x >= a) & (x < b)).astype(np.complex128)

    return InitialData(lambda x: u * ind(x), lambda x: v * ind(x), (a, b), f"box({a},{b})")


def gaussian(
    amp: float = 1.0,
    center: float = 0.0,
    width: float = 0.5,
    k: float = 0.0,
    amp_v: float = None,
    phase_v: float = 0.0,
) -> InitialData:
    """Gaussian envelope ``amp exp(-((x - center) / width)^2) e^{i k x}``.

    ``v`` uses amplitude ``amp_v`` (default ``amp``) and an extra constant
    phase ``phase_v``.
    """
    if not width > 0:
        raise ValueError(f"width must be positive, got {width}")
    amp_v = amp if amp_v is None else amp_v
    rot = complex(math.cos(phase_v), math.sin(phase_v))

    def env(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-(((x - center) / width) ** 2) + 1j * k * x)

    support = (center - _GAUSS_CUT * width, center + _GAUSS_CUT * width)
    return InitialData(lambda x: amp * env(x), lambda x: amp_v * rot * env(x), support, "gaussian")


def thirring_bump(amp: float = 1.0, center: float = 0.0, width: float = 1.0) -> InitialData:
    """Compactly supported smooth bump in both components.

    ``u = amp * phi((x - center) / width)`` with
    ``phi(s) = exp(1 - 1 / (1 - s^2))`` on ``|s| < 1``; ``v = i * u``.
    """
    if not width > 0:
        raise ValueError(f"width must be positive, got {width}")

    def bump(x):
        s = (np.asarray(x, dtype=float) - center) / width
        out = np.zeros(s.shape)
        inside = np.abs(s) < 1
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - s[inside] ** 2))
        return amp * out.astype(np.complex128)

    return InitialData(bump, lambda x: 1j * bump(x), (center - width, center + width), "thirring-bump")


def piecewise(segments: Sequence[Tuple[float, float, complex, complex]]) -> InitialData:
    """Piecewise-constant data; later segments override earlier ones on overlap."""
    segs = [(float(a), float(b), complex(u), complex(v)) for a, b, u, v in segments]
    if not segs:
        raise ValueError("piecewise data needs at least one segment")
    for a, b, _, _ in segs:
        if not b > a:
            raise ValueError(f"segment [{a}, {b}) is empty")

    def make(component):
        def f(x):
            x = np.asarray(x, dtype=float)
            out = np.zeros(x.shape, dtype=np.complex128)
            for seg in segs:
                out[(x >= seg[0]) & (x < seg[1])] = seg[component]
            return out

        return f

    support = (min(s[0] for s in segs), max(s[1] for s in segs))
    return InitialData(make(2), make(3), support, "piecewise")


CATALOG = {"box": box, "gaussian": gaussian, "thirring-bump": thirring_bump}

_CALL = re.compile(r"^\s*([A-Za-z][\w-]*)\s*(?:\((.*)\))?\s*$", re.S)


def _number(text: str):
    text = text.strip().replace(" ", "")
    try:
        return float(text)
    except ValueError:
        return complex(text)


def parse_initial(text: str) -> InitialData:
    """Build initial data from its text form (see module docstring)."""
    m = _CALL.match(text)
    if not m:
        raise ValueError(f"cannot parse initial data {text!r}")
    name, body = m.group(1).lower(), (m.group(2) or "").strip()
    if name == "piecewise":
        segs: List[tuple] = []
        for part in filter(None, (p.strip() for p in body.split(";"))):
            fields = [f for f in part.split(",")]
            if len(fields) != 4:
                raise ValueError(f"piecewise segment {part!r} needs 'a, b, u, v'")
            a, b = float(fields[0]), float(fields[1])
            segs.append((a, b, _number(fields[2]), _number(fields[3])))
        return piecewise(segs)
    if name not in CATALOG:
        raise ValueError(f"unknown initial profile {name!r}; known: {', '.join(sorted(CATALOG))}, piecewise")
    kwargs: Dict[str, object] = {}
    for item in filter(None, (p.strip() for p in body.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value in {item!r}")
        key = key.strip()
        value = _number(val)
        if isinstance(value, complex) and key not in ("u", "v"):
            raise ValueError(f"{key} must be real")
        kwargs[key] = value
    try:
        data = CATALOG[name](**kwargs)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None
    return data
