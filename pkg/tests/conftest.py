import numpy as np
import pytest

OUTLIER_X = np.array([[2.0, 0, 0, 1], [0, 2, 0, 1], [0, 0, 2.2, 0]])


@pytest.fixture
def outlier_matrix():
    """Two pure columns, one large-norm outlier (column 2) and their midpoint."""
    return OUTLIER_X.copy()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, with the measured values."""
    status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    lines = []
    for outcome, tag in status.items():
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if rep.when == "call" or outcome == "skipped":
                detail = dict(getattr(rep, "user_properties", [])).get("detail", "")
                lines.append(f"[{tag}] {nodeid.split('::')[-1]}: {detail}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split("] ", 1)[1]):
            terminalreporter.write_line(line)
