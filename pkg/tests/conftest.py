import pytest

from pndead.net import build_net


@pytest.fixture
def chain():
    return build_net(["p1", "p2"], ["t1"], [("p1", "t1"), ("t1", "p2")], {"p1": 1})


@pytest.fixture
def fork():
    return build_net(["p0", "p1", "p2"], ["t"], [("p0", "t"), ("t", "p1"), ("t", "p2")], {"p0": 1})


@pytest.fixture
def chain_isolated():
    """Chain net plus an unmarked place nothing feeds."""
    return build_net(["p1", "p2", "p3"], ["t1"], [("p1", "t1"), ("t1", "p2")], {"p1": 1})


def pytest_terminal_summary(terminalreporter):
    from verdicts import VERDICTS

    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
