import numpy as np
import pytest

from wmcompress import _backend
from wmcompress.fixtures import load_fixture

BACKENDS = _backend.available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per importable kernel backend."""
    monkeypatch.setattr(_backend, "kernels", _backend.load_kernels(request.param))
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def camera():
    return load_fixture("camera_256")


@pytest.fixture(scope="session")
def noise_host():
    return load_fixture("noise_64")


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_results():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
