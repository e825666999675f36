import numpy as np
import pytest

from qlb import _pykernels, kernels


def states(rng, n):
    u = 10.0 ** rng.uniform(-3, 3, n) * np.exp(2j * np.pi * rng.random(n))
    v = 10.0 ** rng.uniform(-3, 3, n) * np.exp(2j * np.pi * rng.random(n))
    g1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    g2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return u, v, g1, g2


def test_default_backend_is_known():
    assert kernels.BACKEND in kernels.available_backends()
    assert "python" in kernels.available_backends()


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")
def test_backends_bitwise_equal(rng):
    from qlb import _ckernels

    u, v, g1, g2 = states(rng, 5000)
    h = rng.uniform(1e-3, 1, 5000)
    m = rng.uniform(0, 10, 5000)
    a = rng.uniform(-10, 10, 5000)
    b = rng.uniform(-10, 10, 5000)
    for args in [(u, v, g1, g2, h, m, a, b), (u, v, None, None, 0.3, 1.0, 2.0, -0.5)]:
        for x, y in zip(_ckernels.node_update(*args), _pykernels.node_update(*args)):
            np.testing.assert_array_equal(x, y)
    for x, y in zip(
        _ckernels.collide_stream(u, v, g1, g2, 0.1, 1.0, 0.5, 0.25),
        _pykernels.collide_stream(u, v, g1, g2, 0.1, 1.0, 0.5, 0.25),
    ):
        np.testing.assert_array_equal(x, y)


def test_collide_stream_layout(backend, rng):
    u, v, _, _ = states(rng, 6)
    uo, vo, worst = kernels.collide_stream(u, v, None, None, 0.5, 0.0, 0.0, 0.0)
    assert uo.shape == vo.shape == (8,)
    np.testing.assert_array_equal(uo[2:], u)
    np.testing.assert_array_equal(vo[:6], v)
    assert worst == 0.0


def test_node_update_broadcasts(backend):
    uh, vh, det2 = kernels.node_update(np.array([1 + 0j, 0j]), np.array([0j, 1 + 0j]), None, None, 0.5, 1.0, 0.0, 0.0)
    assert det2.shape == (2,)
    assert det2[0] == pytest.approx(1.0625**2, rel=1e-15)
