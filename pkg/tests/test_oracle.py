import pytest

from netgen import bounded_nets
from pndead.net import build_net
from pndead.oracle import OracleCapExceeded, oracle_analyze


def test_chain(chain):
    a = oracle_analyze(chain)
    assert len(a.markings) == 2
    assert a.dead_places == [False, False] and a.dead_transitions == [False]
    assert a.concurrent[1][0] is False


def test_fork(fork):
    a = oracle_analyze(fork)
    assert len(a.markings) == 2
    assert a.concurrent[2][1] is True


def test_isolated_place_dead(chain_isolated):
    assert oracle_analyze(chain_isolated).dead_places == [False, False, True]


def test_cap():
    net = build_net(["p"], ["t"], [("t", "p")])
    with pytest.raises(OracleCapExceeded):
        oracle_analyze(net, hard_cap=50)


@pytest.mark.parametrize("net,answer", bounded_nets(seed=3, count=40))
def test_self_consistent(net, answer):
    assert [not row[i] for i, row in enumerate(answer.concurrent)] == answer.dead_places
    keys = {frozenset(m.items()) for m in answer.markings}
    assert len(keys) == len(answer.markings)
