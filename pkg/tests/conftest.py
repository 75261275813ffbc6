"""Shared test plumbing: the acceptance-criteria summary section.

Acceptance tests record one line per criterion through the ``acceptance``
fixture; the terminal summary prints them in order so a full run ends with
an explicit PASS/FAIL verdict for every criterion, including any criterion
that is expected to fail and carried as a non-strict xfail.
"""
from __future__ import annotations

import pytest

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class _Recorder:
    @staticmethod
    def record(number: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE[number] = (bool(ok), detail)


@pytest.fixture(scope="session")
def acceptance() -> _Recorder:
    return _Recorder()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {number}: {verdict} - {detail}")
