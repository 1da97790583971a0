import time
from contextlib import contextmanager

import pytest

from ns_sigma import NSCurve, compute

_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def data_25():
    return compute(NSCurve.symbolic(2, 5), 12)


@pytest.fixture(scope="session")
def data_23():
    return compute(NSCurve.symbolic(2, 3), 10)


@pytest.fixture(scope="session")
def data_elliptic():
    return compute(NSCurve.symbolic(2, 3, [(0, 0), (1, 0)]), 13)


@pytest.fixture(scope="session")
def data_34():
    return compute(NSCurve.symbolic(3, 4), 10)


@pytest.fixture
def criterion():
    """Context manager that times one acceptance criterion and logs PASS/FAIL."""

    @contextmanager
    def run(number: int, title: str, budget: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget:.0f}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s)"
            _ACCEPTANCE.append(line)
            print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
