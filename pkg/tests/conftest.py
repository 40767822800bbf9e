import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hyperspectra import _backend, bounds, spectral, tensor  # noqa: E402

BACKENDS = ["python"] + (["compiled"] if _backend.COMPILED_AVAILABLE else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    mod = _backend.get(request.param)
    for target in (tensor, spectral, bounds):
        monkeypatch.setattr(target, "kernels", mod)
    return request.param


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
