import pytest

from cybel.chevalley import build_algebra

CORE_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("D", 4), ("G", 2)]

ACCEPTANCE = {}


def record(number: int, description: str, passed: bool) -> None:
    ACCEPTANCE[number] = (description, passed)


@pytest.fixture(scope="session")
def algebras():
    return {f"{k}{n}": build_algebra(k, n) for k, n in CORE_TYPES}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        description, passed = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {description}")
