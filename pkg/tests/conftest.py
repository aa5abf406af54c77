"""Pytest configuration: prints one PASS/FAIL line per acceptance criterion.

Tests named ``test_criterion_<NN>_<slug>`` in ``test_acceptance.py`` are
collected into a summary so the acceptance verdicts are visible in one
block at the end of the run, whatever capture settings are in effect.
"""

from __future__ import annotations

import re

_CRITERION = re.compile(r"test_criterion_(\d+[a-z]?)_([a-z0-9_]+)")

_results: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match or report.when != "call":
        return
    number, slug = match.groups()
    if hasattr(report, "wasxfail"):
        outcome = "FAIL (expected; see the test's xfail reason)"
    elif report.passed:
        outcome = "PASS"
    else:
        outcome = "FAIL"
    _results[number] = (slug, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    def order(number: str):
        digits = number.rstrip("abcdefghijklmnopqrstuvwxyz")
        return (int(digits), number[len(digits):])

    for number in sorted(_results, key=order):
        slug, outcome = _results[number]
        terminalreporter.write_line(
            f"criterion {number} [{slug.replace('_', ' ')}]: {outcome}"
        )
