import sys
from pathlib import Path

import pytest
from hypothesis import settings

from sctestgen import build_graph, parse_model, parse_scenarios, prefix_suite

# random charts can be dense; timing varies too much for per-example deadlines
settings.register_profile("default", deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def rtvm_text():
    return (FIXTURES / "rtvm.scm").read_text()


@pytest.fixture(scope="session")
def rtvm(rtvm_text):
    return parse_model(rtvm_text)


@pytest.fixture(scope="session")
def rtvm_graph(rtvm):
    return build_graph(rtvm)


@pytest.fixture(scope="session")
def rtvm_suite(rtvm_graph):
    return prefix_suite(rtvm_graph)


@pytest.fixture(scope="session")
def rtvm_scenarios(rtvm):
    text = (FIXTURES / "rtvm_scenarios.txt").read_text()
    return {s.name: s for s in parse_scenarios(text, rtvm)}


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.line(n))
