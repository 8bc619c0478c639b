import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


@pytest.fixture
def grid():
    from helpers import desk_grid

    return desk_grid()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion, printed after the run."""
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _ACCEPTANCE_PATTERN.search(report.nodeid)
            if match:
                number, slug = match.groups()
                status = "PASS" if outcome == "passed" else "FAIL"
                lines[int(number)] = f"criterion {int(number):2d} ({slug.replace('_', '-')}): {status}"
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
