# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled per-node collision kernel (see ``_pykernels`` for the contract)."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline void _solve(double ur, double ui, double vr, double vi,
                        double g1r, double g1i, double g2r, double g2i, bint forced,
                        double h, double m, double alpha, double beta,
                        double* out) noexcept nogil:
    cdef double uu = ur * ur + ui * ui
    cdef double vv = vr * vr + vi * vi
    cdef double G = 2.0 * (ur * vr + ui * vi)
    cdef double hh = 0.5 * h
    cdef double p = hh * alpha * vv
    cdef double q = hh * alpha * uu
    cdef double s = hh * (m + beta * G)
    cdef double b1r, b1i, b2r, b2i
    if forced:
        b1r = ur + hh * g1r
        b1i = ui + hh * g1i
        b2r = vr + hh * g2r
        b2i = vi + hh * g2i
    else:
        b1r = ur
        b1i = ui
        b2r = vr
        b2i = vi
    cdef double Jr = 1.0 - p * q + s * s
    cdef double Ji = -(p + q)
    cdef double d = Jr * Jr + Ji * Ji
    cdef double n1r = b1r + q * b1i - s * b2i
    cdef double n1i = b1i - q * b1r + s * b2r
    cdef double n2r = b2r + p * b2i - s * b1i
    cdef double n2i = b2i - p * b2r + s * b1r
    out[0] = 2.0 * ((n1r * Jr + n1i * Ji) / d) - ur
    out[1] = 2.0 * ((n1i * Jr - n1r * Ji) / d) - ui
    out[2] = 2.0 * ((n2r * Jr + n2i * Ji) / d) - vr
    out[3] = 2.0 * ((n2i * Jr - n2r * Ji) / d) - vi
    out[4] = d


def _as_param(x, Py_ssize_t n):
    a = np.ascontiguousarray(np.broadcast_to(np.asarray(x, dtype=np.float64), (n,)))
    return a


def node_update(u, v, g1, g2, h, m, alpha, beta):
    cdef const double complex[::1] uv = np.ascontiguousarray(u, dtype=np.complex128).ravel()
    cdef const double complex[::1] vv = np.ascontiguousarray(v, dtype=np.complex128).ravel()
    cdef Py_ssize_t n = uv.shape[0]
    cdef bint forced = g1 is not None
    cdef const double complex[::1] g1v
    cdef const double complex[::1] g2v
    if forced:
        g1v = np.ascontiguousarray(g1, dtype=np.complex128).ravel()
        g2v = np.ascontiguousarray(g2, dtype=np.complex128).ravel()
    cdef const double[::1] hv = _as_param(h, n)
    cdef const double[::1] mv = _as_param(m, n)
    cdef const double[::1] av = _as_param(alpha, n)
    cdef const double[::1] bv = _as_param(beta, n)
    u_hat = np.empty(n, dtype=np.complex128)
    v_hat = np.empty(n, dtype=np.complex128)
    det2 = np.empty(n, dtype=np.float64)
    cdef double complex[::1] uo = u_hat
    cdef double complex[::1] vo = v_hat
    cdef double[::1] do = det2
    cdef double out[5]
    cdef Py_ssize_t i
    cdef double g1r = 0.0, g1i = 0.0, g2r = 0.0, g2i = 0.0
    with nogil:
        for i in range(n):
            if forced:
                g1r = g1v[i].real
                g1i = g1v[i].imag
                g2r = g2v[i].real
                g2i = g2v[i].imag
            _solve(uv[i].real, uv[i].imag, vv[i].real, vv[i].imag,
                   g1r, g1i, g2r, g2i, forced,
                   hv[i], mv[i], av[i], bv[i], out)
            uo[i].real = out[0]
            uo[i].imag = out[1]
            vo[i].real = out[2]
            vo[i].imag = out[3]
            do[i] = out[4]
    return u_hat, v_hat, det2


def collide_stream(u, v, g1, g2, double h, double m, double alpha, double beta):
    cdef const double complex[::1] uv = np.ascontiguousarray(u, dtype=np.complex128)
    cdef const double complex[::1] vv = np.ascontiguousarray(v, dtype=np.complex128)
    cdef Py_ssize_t n = uv.shape[0]
    cdef bint forced = g1 is not None
    cdef const double complex[::1] g1v
    cdef const double complex[::1] g2v
    if forced:
        g1v = np.ascontiguousarray(g1, dtype=np.complex128)
        g2v = np.ascontiguousarray(g2, dtype=np.complex128)
    u_out = np.zeros(n + 2, dtype=np.complex128)
    v_out = np.zeros(n + 2, dtype=np.complex128)
    cdef double complex[::1] uo = u_out
    cdef double complex[::1] vo = v_out
    cdef double out[5]
    cdef double dmin = 1.0
    cdef Py_ssize_t i
    cdef double g1r = 0.0, g1i = 0.0, g2r = 0.0, g2i = 0.0
    with nogil:
        for i in range(n):
            if forced:
                g1r = g1v[i].real
                g1i = g1v[i].imag
                g2r = g2v[i].real
                g2i = g2v[i].imag
            _solve(uv[i].real, uv[i].imag, vv[i].real, vv[i].imag,
                   g1r, g1i, g2r, g2i, forced, h, m, alpha, beta, out)
            uo[i + 2].real = out[0]
            uo[i + 2].imag = out[1]
            vo[i].real = out[2]
            vo[i].imag = out[3]
            if out[4] < dmin:
                dmin = out[4]
    return u_out, v_out, max(0.0, 1.0 - dmin)
