"""Shared pytest setup: collects one summary line per acceptance criterion."""

from __future__ import annotations

import pytest

_ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Call ``acceptance(k, ok, detail)`` once per criterion; the line is printed
    immediately and repeated in the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[number])
