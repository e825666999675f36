import time
from contextlib import contextmanager

import numpy as np
import pytest

from qlb import kernels

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run the test once per compiled/pure kernel backend."""
    previous = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Context manager that times one acceptance criterion and logs its verdict.

    The body sets ``rec["passed"]`` and ``rec["detail"]``; an exception counts
    as a failure.  Lines are printed immediately and again in the summary.
    """
    log = request.config.stash[_ACCEPTANCE]

    @contextmanager
    def run(label):
        rec = {"label": label, "passed": False, "detail": ""}
        start = time.perf_counter()
        try:
            yield rec
        except BaseException as exc:
            rec["passed"] = False
            rec["detail"] = rec["detail"] or f"{type(exc).__name__}: {exc}"
            raise
        finally:
            rec["runtime"] = time.perf_counter() - start
            status = "PASS" if rec["passed"] else "FAIL"
            rec["line"] = f"{status} {label}: {rec['detail']} [{rec['runtime']:.2f} s, backend {kernels.BACKEND}]"
            log.append(rec)
            print(rec["line"])

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash[_ACCEPTANCE]
    if log:
        terminalreporter.section("acceptance criteria")
        for rec in sorted(log, key=lambda r: r["label"]):
            terminalreporter.write_line(rec["line"])
