"""Hypothesis properties of the scheme and functionals, run on every backend."""
import cmath
import contextlib
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlb import kernels
from qlb.functionals import SolutionPair, TriangleDomain, bony_lemma_check, d1, q1, random_bony_instance
from qlb.harness import discrete_residual
from qlb.lattice import Grid, ModelParams, SpinorField, charge, l2_distance_pc, shift_field
from qlb.stepper import Trajectory, step_forced, step_homogeneous

BACKENDS = kernels.available_backends()

finite = dict(allow_nan=False, allow_infinity=False, allow_subnormal=False)
amp = st.floats(-1e3, 1e3, **finite)
small = st.floats(-4.0, 4.0, **finite)
params_st = st.builds(
    ModelParams,
    st.floats(0.0, 10.0, **finite),
    st.floats(-10.0, 10.0, **finite),
    st.floats(-10.0, 10.0, **finite),
)
h_st = st.floats(1e-3, 0.999, **finite)


@contextlib.contextmanager
def on_backend(name):
    previous = kernels.use_backend(name)
    try:
        yield
    finally:
        kernels.use_backend(previous)


@st.composite
def nodes(draw, max_size=16):
    n = draw(st.integers(1, max_size))
    vals = draw(st.lists(amp, min_size=4 * n, max_size=4 * n))
    z = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return z[:n], z[n:]


@st.composite
def fields(draw, h=None, width=None, n_min=None):
    h = draw(h_st) if h is None else h
    width = draw(st.integers(1, 12)) if width is None else width
    n_min = draw(st.integers(-20, 20)) if n_min is None else n_min
    vals = draw(st.lists(small, min_size=4 * width, max_size=4 * width))
    z = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return SpinorField(Grid(h, n_min, n_min + width - 1), z[:width], z[width:])


def node_arrays(u, p, h):
    n = len(u)
    zero = np.zeros(n, dtype=complex)
    return zero, np.full(n, h), np.full(n, p.m), np.full(n, p.alpha), np.full(n, p.beta)


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=200, deadline=None)
@given(state=nodes(), p=params_st, h=h_st)
def test_node_conservation(name, state, p, h):
    u, v = state
    zero, hh, m, a, b = node_arrays(u, p, h)
    with on_backend(name):
        uh, vh, _ = kernels.node_update(u, v, zero, zero, hh, m, a, b)
    before = np.abs(u) ** 2 + np.abs(v) ** 2
    after = np.abs(uh) ** 2 + np.abs(vh) ** 2
    assert np.all(np.abs(after - before) <= 1e-13 * before + 1e-300)


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=200, deadline=None)
@given(state=nodes(), p=params_st, h=h_st)
def test_determinant_bound(name, state, p, h):
    u, v = state
    zero, hh, m, a, b = node_arrays(u, p, h)
    with on_backend(name):
        _, _, det2 = kernels.node_update(u, v, zero, zero, hh, m, a, b)
    assert np.all(det2 >= 1.0 - 1e-12)


@settings(max_examples=100, deadline=None)
@given(state=nodes(), p=params_st, h=h_st)
def test_backends_agree_bitwise(state, p, h):
    if len(BACKENDS) < 2:
        return
    u, v = state
    zero, hh, m, a, b = node_arrays(u, p, h)
    results = []
    for name in BACKENDS:
        with on_backend(name):
            results.append(kernels.node_update(u, v, zero, zero, hh, m, a, b))
    for x, y in zip(*results):
        np.testing.assert_array_equal(x, y)


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=100, deadline=None)
@given(f=fields(), p=params_st, theta=st.floats(0.0, 2 * math.pi, **finite))
def test_gauge_covariance(name, f, p, theta):
    rot = cmath.exp(1j * theta)
    with on_backend(name):
        a, _ = step_homogeneous(f, p)
        b, _ = step_homogeneous(SpinorField(f.grid, rot * f.u, rot * f.v), p)
    scale = max(np.max(np.abs(a.u)), np.max(np.abs(a.v)), np.finfo(float).tiny)
    assert np.max(np.abs(b.u - rot * a.u)) <= 1e-13 * scale
    assert np.max(np.abs(b.v - rot * a.v)) <= 1e-13 * scale


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=100, deadline=None)
@given(data=st.data(), p=params_st)
def test_forced_round_trip(name, data, p):
    f = data.draw(fields(h=0.05))
    target = data.draw(fields(h=0.05, width=f.grid.size + 2, n_min=f.grid.n_min - 1))
    # the outer cells of a stepped level are empty by construction
    u, v = target.u.copy(), target.v.copy()
    u[:2] = 0
    v[-2:] = 0
    target = SpinorField(Grid(0.05, target.grid.n_min, target.grid.n_max, f.k + 1), u, v)
    with on_backend(name):
        out, _ = step_forced(f, discrete_residual(f, target, p), p)
    scale = max(1.0, np.max(np.abs(u)), np.max(np.abs(v)))
    assert np.max(np.abs(out.u - target.u)) <= 1e-12 * scale
    assert np.max(np.abs(out.v - target.v)) <= 1e-12 * scale


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=50, deadline=None)
@given(f=fields(h=0.125), steps=st.integers(1, 40))
def test_streaming_translation(name, f, steps):
    with on_backend(name):
        g = f
        for _ in range(steps):
            g, _ = step_homogeneous(g, ModelParams())
    u, _ = g.window(f.grid.n_min + steps, f.grid.n_max + steps)
    _, v = g.window(f.grid.n_min - steps, f.grid.n_max - steps)
    np.testing.assert_array_equal(u, f.u)
    np.testing.assert_array_equal(v, f.v)


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_q1_dominates_d1(data):
    f = data.draw(fields(h=0.1, width=9, n_min=-4))
    g = data.draw(fields(h=0.1, width=9, n_min=-4))
    pair = SolutionPair(Trajectory([f]), Trajectory([g]))
    delta = TriangleDomain(0, 4, 0)
    assert q1(pair, delta, 0) >= d1(pair, delta, 0) * (1 - 1e-15)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), levels=st.integers(1, 32), exact=st.booleans())
def test_bony_lemma(seed, levels, exact):
    a, b, c, d = random_bony_instance(np.random.default_rng(seed), levels, exact)
    assert bony_lemma_check(a, b, c, d).ok


@settings(max_examples=100, deadline=None)
@given(
    f=fields(h=0.5),
    g=fields(h=0.25),
    k=fields(h=0.125),
)
def test_l2_pseudometric(f, g, k):
    assert l2_distance_pc(f, f) == 0.0
    assert l2_distance_pc(f, g) == l2_distance_pc(g, f)
    assert l2_distance_pc(f, k) <= (l2_distance_pc(f, g) + l2_distance_pc(g, k)) * (1 + 1e-12) + 1e-300


@settings(max_examples=100, deadline=None)
@given(f=fields(), s=st.integers(-1000, 1000))
def test_charge_shift_invariant(f, s):
    assert charge(shift_field(f, s)) == charge(f)


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=100, deadline=None)
@given(state=nodes(), p=params_st, h=h_st, turns=st.integers(1, 3))
def test_quarter_turn_gauge_exact(name, state, p, h, turns):
    # rotations by i^k are exact in binary64, so covariance holds bit for bit
    u, v = state
    rot = 1j**turns
    zero, hh, m, a, b = node_arrays(u, p, h)
    with on_backend(name):
        uh, vh, _ = kernels.node_update(u, v, zero, zero, hh, m, a, b)
        ur, vr, _ = kernels.node_update(rot * u, rot * v, zero, zero, hh, m, a, b)
    np.testing.assert_array_equal(ur, rot * uh)
    np.testing.assert_array_equal(vr, rot * vh)
