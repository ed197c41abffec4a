import pytest

from wikisem import build_graph, data_path, parse_dump
from wikisem.store import Dictionary

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def fixture_dump_bytes():
    return data_path("fixture_dump.txt").read_bytes()


@pytest.fixture(scope="session")
def fixture_parsed(fixture_dump_bytes):
    return parse_dump(fixture_dump_bytes)


@pytest.fixture(scope="session")
def fixture_dict(fixture_parsed):
    return Dictionary(fixture_parsed.entries)


@pytest.fixture(scope="session")
def ru_graph(fixture_dict):
    return build_graph(fixture_dict, "ru")


@pytest.fixture
def acceptance_record():
    """Call with (name, passed, detail) to print a line in the session summary."""

    def record(name, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
