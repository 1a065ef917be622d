import pytest

from bplab.drawing import compute_crossings
from bplab.harness.generators import random_segments

ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, passed: bool, detail: str) -> None:
    line = f"acceptance {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def random_abstract(n, m, seed, bend_prob=0.5):
    return compute_crossings(random_segments(n, m, seed, bend_prob))


@pytest.fixture
def k6_abstract():
    from bplab.harness.generators import k6_figure1
    return compute_crossings(k6_figure1())
