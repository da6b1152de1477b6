import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netgen import random_safe_net
from pndead.bdd import FALSE, TRUE, BddStore, NodeLimitExceeded, NotApplicable, query_r, symbolic_reach
from pndead.explicit import Budget, explore, reachable_markings
from pndead.net import build_net
from pndead.tristate import TriState


class TestAlgebra:
    def test_var_hash_consed(self):
        s = BddStore(3)
        assert s.mk_var(0) == s.mk_var(0)

    def test_contradiction_and_tautology(self):
        s = BddStore(2)
        x = s.mk_var(1)
        assert s.and_(x, s.not_(x)) == FALSE
        assert s.or_(x, s.not_(x)) == TRUE

    def test_restrict_exists_idempotence(self):
        s = BddStore(2)
        x, y = s.mk_var(0), s.mk_var(1)
        xy = s.apply("and", x, y)
        assert s.restrict(xy, 0, True) == y
        assert s.restrict(xy, 0, False) == FALSE
        assert s.exists(xy, 0) == y
        assert s.apply("and", x, x) == x
        assert s.apply("or", xy, xy) == xy

    def test_node_limit(self):
        s = BddStore(10, node_limit=6)
        with pytest.raises(NodeLimitExceeded):
            s.cube((v, True) for v in range(10))

    def test_sat_count(self):
        s = BddStore(4)
        assert s.sat_count(TRUE) == 16
        assert s.sat_count(FALSE) == 0
        assert s.sat_count(s.mk_var(2)) == 8
        assert s.sat_count(s.or_(s.mk_var(0), s.mk_var(3))) == 12

    @pytest.mark.parametrize("reverse", [False, True])
    def test_iter_sat_and_evaluate(self, reverse):
        s = BddStore(3, reverse=reverse)
        f = s.or_(s.and_(s.mk_var(0), s.mk_nvar(1)), s.mk_var(2))
        sols = set(s.iter_sat(f))
        expect = {v for v in itertools.product((0, 1), repeat=3) if (v[0] and not v[1]) or v[2]}
        assert sols == expect
        assert all(s.evaluate(f, list(map(bool, v))) == (v in expect) for v in itertools.product((0, 1), repeat=3))


def _formulas(n):
    leaf = st.integers(0, n - 1).map(lambda v: ("var", v))
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            st.tuples(st.just("not"), kids),
            st.tuples(st.sampled_from(["and", "or"]), kids, kids),
            st.tuples(st.just("exists"), kids, st.integers(0, n - 1)),
            st.tuples(st.just("restrict"), kids, st.integers(0, n - 1), st.booleans()),
        ),
        max_leaves=12,
    )


def _build(s, f):
    op = f[0]
    if op == "var":
        return s.mk_var(f[1])
    if op == "not":
        return s.not_(_build(s, f[1]))
    if op == "exists":
        return s.exists(_build(s, f[1]), f[2])
    if op == "restrict":
        return s.restrict(_build(s, f[1]), f[2], f[3])
    return s.apply(op, _build(s, f[1]), _build(s, f[2]))


def _truth(f, v):
    op = f[0]
    if op == "var":
        return v[f[1]]
    if op == "not":
        return not _truth(f[1], v)
    if op == "and":
        return _truth(f[1], v) and _truth(f[2], v)
    if op == "or":
        return _truth(f[1], v) or _truth(f[2], v)
    if op == "exists":
        lo, hi = list(v), list(v)
        lo[f[2]], hi[f[2]] = False, True
        return _truth(f[1], lo) or _truth(f[1], hi)
    w = list(v)
    w[f[2]] = f[3]
    return _truth(f[1], w)


N_VARS = 5


@settings(max_examples=300, deadline=None)
@given(_formulas(N_VARS), _formulas(N_VARS), st.booleans())
def test_canonicity_against_truth_tables(f, g, reverse):
    s = BddStore(N_VARS, reverse=reverse)
    a, b = _build(s, f), _build(s, g)
    rows = list(itertools.product((False, True), repeat=N_VARS))
    ta = [_truth(f, v) for v in rows]
    tb = [_truth(g, v) for v in rows]
    assert (a == b) == (ta == tb)
    assert s.sat_count(a) == sum(ta)
    # structural invariants over the whole node table
    seen = set()
    for u in range(2, len(s)):
        key = (s.level(u), s.low(u), s.high(u))
        assert key not in seen
        seen.add(key)
        assert s.low(u) != s.high(u)
        assert s.level(u) < s.level(s.low(u)) and s.level(u) < s.level(s.high(u))


class TestSymbolicReach:
    def test_chain(self, chain):
        s = BddStore(2)
        r = symbolic_reach(s, chain)
        assert r.complete
        assert set(s.iter_sat(r.reach)) == {(1, 0), (0, 1)}

    def test_fork(self, fork):
        s = BddStore(3)
        r = symbolic_reach(s, fork)
        assert r.complete
        assert set(s.iter_sat(r.reach)) == {(1, 0, 0), (0, 1, 1)}

    def test_rejects_weighted(self):
        net = build_net(["p"], ["t"], [("p", "t", 2)], {"p": 1})
        with pytest.raises(NotApplicable, match="non-ordinary"):
            symbolic_reach(BddStore(1), net)

    def test_rejects_unsafe(self):
        net = build_net(["p", "q"], ["t"], [("p", "t"), ("t", "p"), ("t", "q")], {"p": 1})
        with pytest.raises(NotApplicable, match="1-safe"):
            symbolic_reach(BddStore(2), net)

    def test_queries_chain(self, chain):
        s = BddStore(2)
        r = symbolic_reach(s, chain)
        assert query_r(s, r, [0]) == TriState.YES
        assert query_r(s, r, [0, 1]) == TriState.NO

    def test_budget_cut_after_initial_marking(self, chain):
        s = BddStore(2)
        r = symbolic_reach(s, chain, Budget(max_states=1))
        assert not r.complete
        assert r.count() == 1
        assert query_r(s, r, [1]) == TriState.UNKNOWN
        assert query_r(s, r, [0]) == TriState.YES

    def test_node_limit_gives_partial(self):
        rng = random.Random(3)
        net = random_safe_net(rng)
        while explore(net).states_visited < 6:
            net = random_safe_net(rng)
        full = set(reachable_markings(net))
        partial = 0
        for limit in range(2, 300):
            s = BddStore(net.n_places, node_limit=limit)
            try:
                r = symbolic_reach(s, net)
            except NodeLimitExceeded:
                continue  # not even the initial set fits
            assert set(s.iter_sat(r.reach)) <= full
            if r.complete:
                assert set(s.iter_sat(r.reach)) == full
            partial += not r.complete
        assert partial > 0


@pytest.mark.parametrize("seed", range(40))
@pytest.mark.parametrize("reverse", [False, True])
def test_reach_equals_explicit_reachable_set(seed, reverse):
    net = random_safe_net(random.Random(seed))
    s = BddStore(net.n_places, reverse=reverse)
    r = symbolic_reach(s, net)
    assert r.complete
    assert set(s.iter_sat(r.reach)) == set(reachable_markings(net))
    assert r.count() == explore(net).states_visited


@settings(max_examples=200, deadline=None)
@given(_formulas(N_VARS), st.booleans(), st.sets(st.integers(0, N_VARS - 1), max_size=3))
def test_path_queries_match_enumeration(f, reverse, required):
    s = BddStore(N_VARS, reverse=reverse)
    a = _build(s, f)
    before = len(s)
    sols = list(s.iter_sat(a))
    assert s.sat_with(a, required) == any(all(v[r] for r in required) for v in sols)
    ones = s.ones_mask(a)
    expect = 0
    for v in sols:
        expect |= sum(bit << k for k, bit in enumerate(v))
    assert ones == (expect if sols else None)
    rows = s.co_ones_masks(a)
    for k in range(N_VARS):
        with_k = [v for v in sols if v[k]]
        mask = 0
        for v in with_k:
            mask |= sum(bit << j for j, bit in enumerate(v))
        assert rows[k] == (mask if with_k else None)
    assert len(s) == before
