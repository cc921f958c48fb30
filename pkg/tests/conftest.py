import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lie2local.core import build  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"

NILPOTENT_SPECS = (
    ["abelian:2", "abelian:3", "abelian:4"]
    + [f"heisenberg:{k}" for k in (1, 2, 3)]
    + [f"filiform:{n}" for n in (3, 4, 5, 6)]
)
ALL_SPECS = ["sl:2", "sl:3", "sl:4", "abelian:1"] + NILPOTENT_SPECS


@pytest.fixture(scope="session")
def algebras():
    return {spec: build(spec) for spec in ALL_SPECS}


ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}")
