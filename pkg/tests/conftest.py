from importlib import resources

import pytest

from tuckervol.io import InstanceFile

FIGURE1 = resources.files("tuckervol") / "data" / "figure1.json"


@pytest.fixture(scope="session")
def figure1_path():
    with resources.as_file(FIGURE1) as p:
        yield p


@pytest.fixture
def figure1(figure1_path):
    return InstanceFile.load(figure1_path)


# criterion number -> (title, passed, detail), filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
