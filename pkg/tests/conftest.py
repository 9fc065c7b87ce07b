import pytest
from hypothesis import settings, strategies as st

from dpdistinct import Dataset, _backend, _pure

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

BACKENDS = {"python": _pure}
try:
    from dpdistinct import _kernels
    BACKENDS["cython"] = _kernels
except ImportError:  # pragma: no cover - exercised only without a compiler
    pass


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run a test once per kernel implementation."""
    mod = BACKENDS[request.param]
    monkeypatch.setattr(_backend, "max_matching", mod.max_matching)
    monkeypatch.setattr(_backend, "greedy_curve", mod.greedy_curve)
    return request.param


def datasets(max_people=5, max_items=4, alphabet="abcdef"):
    person = st.lists(st.sampled_from(alphabet), max_size=max_items, unique=True)
    return st.lists(person, max_size=max_people).map(Dataset.from_lists)


_ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Collects one status line per acceptance criterion for the terminal summary."""
    def add(criterion, ok, detail):
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        return ok
    return add


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
