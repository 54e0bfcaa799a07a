from pathlib import Path

import pytest

from grcat.group import GroupSpec

GOLDEN_PATH = Path(__file__).parent / "data" / "classify_braided_2_2.json"


def specs_up_to(order: int, cyclic_too: bool = True) -> list[GroupSpec]:
    out = []
    for m in range(1, order + 1):
        for n in range(1, order // m + 1):
            if cyclic_too or (m > 1 and n > 1):
                out.append(GroupSpec(m, n))
    return out


@pytest.fixture
def z2z2():
    return GroupSpec(2, 2)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
