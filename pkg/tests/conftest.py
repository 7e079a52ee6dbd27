from __future__ import annotations

import pytest

from chenruan.sectors import enumerate_tricyclic_hypersurface
from chenruan.toric import mirror_quintic_fan, projective_space_fan

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def quintic():
    return mirror_quintic_fan()


@pytest.fixture(scope="session")
def p4():
    return projective_space_fan()


@pytest.fixture(scope="session")
def tricyclic(quintic):
    return enumerate_tricyclic_hypersurface(quintic)


@pytest.fixture
def record_criterion():
    """Record (and print) one pass/fail line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str):
        prev = _CRITERIA.get(number)
        ok = ok and (prev is None or prev[0])
        detail = detail if prev is None else f"{prev[1]}; {detail}"
        _CRITERIA[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
