import time
from contextlib import contextmanager

import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Context manager timing one acceptance criterion and recording PASS/FAIL."""

    @contextmanager
    def run(num, title, limit=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - t0
            assert limit is None or elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            budget = f" (limit {limit}s)" if limit else ""
            line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.1f}s{budget}]"
            _LINES.append((num, line))
            print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_LINES):
            terminalreporter.write_line(line)
