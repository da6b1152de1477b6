import random

import numpy as np
import pytest

from netgen import bounded_nets, random_safe_net
from pndead.analysis import (AnalysisReport, analyze, is_quasi_live, report_from_observations,
                             structural_dead)
from pndead.bdd import NotApplicable
from pndead.explicit import Budget, explore
from pndead.net import build_net
from pndead.tristate import SoundnessError, TriState, to_text

NO, YES, UNK = TriState.NO, TriState.YES, TriState.UNKNOWN


def rows(report):
    return [to_text(r) for r in report.concurrent_rows()]


class TestStructural:
    def test_isolated_place(self, chain_isolated):
        facts = structural_dead(chain_isolated)
        assert facts.dead_places.tolist() == [False, False, True]
        assert facts.dead_transitions.tolist() == [False]

    def test_propagation(self, chain_isolated):
        net = build_net(["p1", "p2", "p3", "q"], ["t1", "t"],
                        [("p1", "t1"), ("t1", "p2"), ("p3", "t"), ("t", "q")], {"p1": 1})
        facts = structural_dead(net)
        assert facts.dead_places.tolist() == [False, False, True, True]
        assert facts.dead_transitions.tolist() == [False, True]

    def test_chain_nothing_dead(self, chain):
        facts = structural_dead(chain)
        assert not facts.dead_places.any() and not facts.dead_transitions.any()

    def test_weight_above_initial_without_producer(self):
        net = build_net(["p"], ["t"], [("p", "t", 2)], {"p": 1})
        assert structural_dead(net).dead_transitions.tolist() == [True]

    def test_self_loop_on_unmarked_place(self):
        net = build_net(["p"], ["t"], [("p", "t"), ("t", "p")])
        facts = structural_dead(net)
        assert facts.dead_places.all() and facts.dead_transitions.all()

    @pytest.mark.parametrize("net,answer", bounded_nets(seed=11, count=150))
    def test_sound(self, net, answer):
        facts = structural_dead(net)
        assert all(a for a, f in zip(answer.dead_places, facts.dead_places) if f)
        assert all(a for a, f in zip(answer.dead_transitions, facts.dead_transitions) if f)


class TestAnalyze:
    def test_chain(self, chain):
        r = analyze(chain, "explicit")
        assert to_text(r.dead_places) == "00"
        assert to_text(r.dead_transitions) == "0"
        assert rows(r) == ["1", "01"]
        assert r.complete

    def test_chain_isolated_partial(self, chain_isolated):
        r = analyze(chain_isolated, "explicit", Budget(max_states=1))
        assert r.dead_places.tolist() == [NO, UNK, YES]
        assert not r.complete
        assert rows(r) == ["1", "..", "000"]

    @pytest.mark.parametrize("engine", ["explicit", "bdd", "auto"])
    def test_fork(self, fork, engine):
        r = analyze(fork, engine)
        assert rows(r) == ["1", "01", "011"]
        assert r.engine == ("explicit" if engine == "explicit" else "bdd")

    def test_auto_falls_back(self):
        net = build_net(["p", "q"], ["t"], [("p", "t", 2), ("t", "q")], {"p": 2})
        r = analyze(net, "auto")
        assert r.engine == "explicit"
        assert any("declined" in n for n in r.notes)
        with pytest.raises(NotApplicable):
            analyze(net, "bdd")

    def test_unknown_engine(self, chain):
        with pytest.raises(ValueError):
            analyze(chain, "sat")

    def test_soundness_breach_is_loud(self, chain_isolated):
        obs = explore(chain_isolated)
        obs.place_seen_marked[2] = True
        with pytest.raises(SoundnessError):
            report_from_observations(obs, structural_dead(chain_isolated))

    def test_quasi_liveness(self, chain):
        assert is_quasi_live(analyze(chain)) == YES
        dead = analyze(build_net(["p"], ["t"], [("p", "t")]))
        assert is_quasi_live(dead) == NO
        unknown = AnalysisReport(np.array([UNK], np.int8), np.array([UNK], np.int8),
                                 np.array([UNK], np.int8), False)
        assert is_quasi_live(unknown) == UNK


class TestReportCheck:
    def make(self, dp, conc, complete=False):
        return AnalysisReport(np.array(dp, np.int8), np.array([], np.int8), np.array(conc, np.int8), complete)

    def test_diagonal_law(self):
        with pytest.raises(SoundnessError, match="itself"):
            self.make([YES], [YES]).check()

    def test_concurrent_implies_alive(self):
        with pytest.raises(SoundnessError, match="alive"):
            self.make([NO, UNK], [YES, YES, UNK]).check()

    def test_dead_row_zero(self):
        with pytest.raises(SoundnessError, match="dead place"):
            self.make([NO, YES], [YES, UNK, NO]).check()

    def test_complete_without_unknowns(self):
        with pytest.raises(SoundnessError, match="unknown"):
            self.make([UNK], [UNK], complete=True).check()


@pytest.mark.parametrize("seed", range(60))
def test_engines_agree_on_safe_nets(seed):
    net = random_safe_net(random.Random(1000 + seed))
    a, b = analyze(net, "explicit"), analyze(net, "bdd")
    assert a.complete and b.complete
    for field in ("dead_places", "dead_transitions", "concurrent"):
        assert np.array_equal(getattr(a, field), getattr(b, field))
    assert a.states_visited == b.states_visited
