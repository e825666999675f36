"""Backend selection for the hot per-node kernel.

The compiled Cython module is used when it was built; otherwise the numpy
implementation is used.  ``use_backend`` switches at runtime (tests and the
benchmark exercise both).
"""
from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"
_impl = _BACKENDS[BACKEND]


def available_backends():
    return sorted(_BACKENDS)


def use_backend(name):
    """Select the kernel backend by name; returns the previously active name."""
    global BACKEND, _impl
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    previous = BACKEND
    BACKEND, _impl = name, _BACKENDS[name]
    return previous


def node_update(u, v, g1, g2, h, m, alpha, beta):
    return _impl.node_update(u, v, g1, g2, h, m, alpha, beta)


def collide_stream(u, v, g1, g2, h, m, alpha, beta):
    return _impl.collide_stream(u, v, g1, g2, h, m, alpha, beta)
