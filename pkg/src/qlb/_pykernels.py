"""Numpy implementation of the per-node collision kernel.

Used when the compiled extension is unavailable, and as the reference the
compiled kernel is benchmarked and cross-checked against.  The arithmetic is
written out in real components in the same order as ``_ckernels.pyx`` so both
backends round identically on IEEE hardware without fused multiply-add.
"""
import numpy as np


def node_update(u, v, g1, g2, h, m, alpha, beta):
    """Solve the implicit 2x2 node system for every entry of ``u``, ``v``.

    ``h``, ``m``, ``alpha``, ``beta`` may be scalars or arrays broadcastable
    against ``u``.  ``g1``/``g2`` are the forcing terms or ``None``.

    Returns ``(u_hat, v_hat, det2)`` with ``det2 = |J|**2`` per node.
    """
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    ur, ui = u.real, u.imag
    vr, vi = v.real, v.imag

    uu = ur * ur + ui * ui
    vv = vr * vr + vi * vi
    G = 2.0 * (ur * vr + ui * vi)
    hh = 0.5 * np.asarray(h, dtype=np.float64)
    p = hh * alpha * vv
    q = hh * alpha * uu
    s = hh * (m + beta * G)

    # midpoint system (I - iA) w = x + h g / 2, then x_hat = 2 w - x
    if g1 is None:
        b1r, b1i, b2r, b2i = ur, ui, vr, vi
    else:
        g1 = np.asarray(g1, dtype=np.complex128)
        g2 = np.asarray(g2, dtype=np.complex128)
        b1r = ur + hh * g1.real
        b1i = ui + hh * g1.imag
        b2r = vr + hh * g2.real
        b2i = vi + hh * g2.imag

    Jr = 1.0 - p * q + s * s
    Ji = -(p + q)
    d = Jr * Jr + Ji * Ji

    n1r = b1r + q * b1i - s * b2i
    n1i = b1i - q * b1r + s * b2r
    n2r = b2r + p * b2i - s * b1i
    n2i = b2i - p * b2r + s * b1r

    w1r = (n1r * Jr + n1i * Ji) / d
    w1i = (n1i * Jr - n1r * Ji) / d
    w2r = (n2r * Jr + n2i * Ji) / d
    w2i = (n2i * Jr - n2r * Ji) / d

    u_hat = np.empty(np.broadcast(u, d).shape, dtype=np.complex128)
    v_hat = np.empty_like(u_hat)
    u_hat.real = 2.0 * w1r - ur
    u_hat.imag = 2.0 * w1i - ui
    v_hat.real = 2.0 * w2r - vr
    v_hat.imag = 2.0 * w2i - vi
    return u_hat, v_hat, d


def collide_stream(u, v, g1, g2, h, m, alpha, beta):
    """One full lattice step on a window of ``N`` nodes.

    Returns ``(u_out, v_out, worst)`` where the outputs have length ``N + 2``
    (window widened by one cell per side): ``u_hat`` of input node ``i`` lands
    at output slot ``i + 2`` and ``v_hat`` at slot ``i``.  ``worst`` is
    ``max(0, 1 - |J|^2)`` over the nodes.
    """
    n = len(u)
    u_hat, v_hat, d = node_update(u, v, g1, g2, h, m, alpha, beta)
    u_out = np.zeros(n + 2, dtype=np.complex128)
    v_out = np.zeros(n + 2, dtype=np.complex128)
    u_out[2:] = u_hat
    v_out[:n] = v_hat
    worst = float(max(0.0, 1.0 - d.min())) if n else 0.0
    return u_out, v_out, worst
