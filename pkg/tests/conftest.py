from __future__ import annotations

from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = getattr(report, "criterion", None)
    if number is None:
        return
    title = report.criterion_title
    status = "PASS" if report.outcome == "passed" else "FAIL"
    _criteria[number] = (status, title)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = mark.args[0]
        report.criterion_title = mark.args[1]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"{status} criterion {number}: {title}")


def brute_top_masks(m: int, n: int) -> list[int]:
    """All (m+n)-bit masks with exactly m bits set, by exhaustive scan."""
    return [mask for mask in range(1 << (m + n)) if bin(mask).count("1") == m]


def brute_total(m: int, n: int) -> dict[tuple[int, int], int]:
    """Total exponents straight from the definition, independent of the package."""
    size = m + n
    out: dict[tuple[int, int], int] = {}
    for mask in brute_top_masks(m, n):
        top = [(mask >> k) & 1 for k in range(size)]  # top[k] for triangle k+1
        for i in range(1, size):
            for j in range(i, size):
                flips = sum(top[k - 1] != top[k] for k in range(i, j + 1))
                out[(i, j)] = out.get((i, j), 0) + (-1) ** flips
    return out
