import numpy as np
import pytest

from umeb import BipartiteDims, StateSet, StateVector, construct_prop1, construct_prop2
from umeb._backend import compiled_kernel
from umeb.linalg import bell_basis

BACKENDS = ["python"] + (["cython"] if compiled_kernel is not None else [])


def rectangular_dims(max_dim=8):
    return [BipartiteDims(d, dp) for dp in range(3, max_dim + 1) for d in range(2, dp)]


def random_state(rng, dims):
    v = rng.standard_normal(dims.size) + 1j * rng.standard_normal(dims.size)
    return StateVector.normalized(dims, v)


def random_unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def bell():
    return bell_basis()


@pytest.fixture
def three_bell(bell):
    return StateSet.imported(BipartiteDims(2, 2), bell[:3], ["bell0", "bell1", "bell2"])


@pytest.fixture
def prop1_2x5():
    return construct_prop1(BipartiteDims(2, 5))


@pytest.fixture
def prop2_2x4():
    return construct_prop2(BipartiteDims(2, 4), 3)


@pytest.fixture
def prop2_3x6_m5():
    return construct_prop2(BipartiteDims(3, 6), 5)


@pytest.fixture
def prop2_3x6_m4():
    return construct_prop2(BipartiteDims(3, 6), 4)


ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, title)(passed, detail)``."""

    def start(number, title):
        def finish(passed, detail=""):
            ACCEPTANCE_RESULTS[number] = (bool(passed), title, detail)
            return passed

        return finish

    return start


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, title, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} {detail}".rstrip())
