import io
import re
import subprocess
import sys

import pytest

from pndead.cli import TIMEOUT_ENV, run

CHAIN_PNML = """<pnml><net id="n"><page id="g">
<place id="p1"><initialMarking><text>1</text></initialMarking></place>
<place id="p2"/>
<transition id="t1"/>
<arc id="a" source="p1" target="t1"/><arc id="b" source="t1" target="p2"/>
</page></net></pnml>
"""
FORK_TEXT = "place p0 1\nplace p1\nplace p2\ntrans t\narc p0 t\narc t p1\narc t p2\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "chain.pnml").write_text(CHAIN_PNML)
    (tmp_path / "fork.net").write_text(FORK_TEXT)
    return tmp_path


def call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_dead_places_file(files):
    code, _, err = call(["--dead-places", str(files / "chain.pnml"), "-o", str(files)])
    assert code == 0
    assert (files / "chain.dp").read_bytes() == b"00\n"
    assert "dead-places: 1=0 0=2 .=0" in err


def test_budgeted_matrix_has_unknowns(files):
    code, _, _ = call(["--concurrent-places", "--max-states", "1", str(files / "fork.net"), "-o", str(files)])
    assert code == 2
    assert "." in (files / "fork.cp").read_text()


@pytest.mark.parametrize("engine", ["explicit", "bdd", "auto"])
def test_three_analyses_one_exploration(files, engine):
    argv = ["--dead-places", "--dead-transitions", "--concurrent-places", "--engine", engine,
            str(files / "fork.net"), "-o", str(files)]
    code, _, err = call(argv)
    assert code == 0
    states = re.findall(r"states=(\d+)", err)
    assert states == ["2", "2", "2"]
    assert (files / "fork.dp").read_text() == "000\n"
    assert (files / "fork.dt").read_text() == "0\n"
    assert (files / "fork.cp").read_text() == "1\n01\n011\n"


def test_stdin_goes_to_stdout():
    code, out, _ = call(["--dead-places", "--concurrent-places"], stdin=FORK_TEXT)
    assert code == 0
    assert out == "# dead-places\n000\n# concurrent-places\n1\n01\n011\n"


@pytest.mark.parametrize("argv", [
    [],
    ["--dead-places", "--bogus"],
    ["--dead-places", "--max-states", "0"],
    ["--dead-places", "--engine", "sat"],
    ["--dead-places", "/nonexistent/net.pnml"],
])
def test_usage_errors_exit_1(argv):
    code, _, err = call(argv)
    assert code == 1
    assert err.startswith("pndead:")


def test_parse_error_exit_1():
    code, _, err = call(["--dead-places"], stdin="place p\nplace p\n")
    assert code == 1 and "redefinition" in err


def test_bdd_on_weighted_net_exit_1():
    code, _, err = call(["--dead-places", "--engine", "bdd"], stdin="place p 2\ntrans t\narc p t 2\n")
    assert code == 1 and "non-ordinary" in err


def test_env_timeout(monkeypatch):
    monkeypatch.setenv(TIMEOUT_ENV, "nope")
    assert call(["--dead-places"], stdin=FORK_TEXT)[0] == 1
    monkeypatch.setenv(TIMEOUT_ENV, "30")
    assert call(["--dead-places"], stdin=FORK_TEXT)[0] == 0


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "pndead.cli", "--dead-transitions", "fork.net"],
                          cwd=files, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (files / "fork.dt").read_text() == "0\n"
