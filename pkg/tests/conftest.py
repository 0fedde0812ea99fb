import sys
from pathlib import Path

import pytest

from contactgeom.geometry import SurfaceSampling
from contactgeom.surface import get_builtin

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"
TRANSCRIPTIONS = {
    "legendrian-torus": DATA / "legendrian_torus.surf",
    "generalized-clifford": DATA / "generalized_clifford.surf",
    "clifford": DATA / "clifford.surf",
}

_cache = {}


def sampled(name, size=64):
    key = (name, size)
    if key not in _cache:
        _cache[key] = SurfaceSampling(get_builtin(name), size)
    return _cache[key]


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(params=["legendrian-torus", "generalized-clifford", "clifford"])
def torus_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
