"""A small reduced ordered BDD package and symbolic reachability for safe nets.

Nodes live in parallel lists indexed by integer handles.  Handles 0 and 1
are the constant functions; every other handle is a hash-consed
``(level, low, high)`` triple, so two handles are equal exactly when they
denote the same boolean function.  There are no complement edges and no
garbage collection.

One boolean variable stands for each place ("holds a token").  The
variable order defaults to place declaration order.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Iterable

from .explicit import Budget
from .net import PetriNet
from .tristate import TriState

FALSE = 0
TRUE = 1

DEFAULT_NODE_LIMIT = 2_000_000
CACHE_HIGH_WATER = 500_000


class NodeLimitExceeded(MemoryError):
    """The node table grew past its configured limit."""


class NotApplicable(ValueError):
    """The symbolic engine cannot handle this net (non-ordinary or not 1-safe)."""


class BddStore:
    def __init__(self, n_vars: int, node_limit: int | None = None, reverse: bool = False):
        self.n_vars = n_vars
        self.node_limit = DEFAULT_NODE_LIMIT if node_limit is None else node_limit
        # level of each variable; smaller levels sit closer to the root
        self.level_of = [n_vars - 1 - v for v in range(n_vars)] if reverse else list(range(n_vars))
        self.var_at = [0] * n_vars
        for v, lvl in enumerate(self.level_of):
            self.var_at[lvl] = v
        # terminals carry level n_vars so they sort below every variable
        self._level = [n_vars, n_vars]
        self._low = [0, 1]
        self._high = [0, 1]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._cache: dict[tuple, int] = {}
        self._prefix = [0]
        for lvl in range(n_vars):
            self._prefix.append(self._prefix[-1] | (1 << self.var_at[lvl]))
        limit = sys.getrecursionlimit()
        if limit < 4 * n_vars + 1000:
            sys.setrecursionlimit(4 * n_vars + 1000)

    def __len__(self) -> int:
        return len(self._level)

    def level(self, u: int) -> int:
        return self._level[u]

    def low(self, u: int) -> int:
        return self._low[u]

    def high(self, u: int) -> int:
        return self._high[u]

    def var(self, u: int) -> int:
        """Variable tested at node ``u`` (not defined on terminals)."""
        return self.var_at[self._level[u]]

    def _mk(self, lvl: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (lvl, lo, hi)
        u = self._unique.get(key)
        if u is None:
            if len(self._level) >= self.node_limit:
                raise NodeLimitExceeded(f"more than {self.node_limit} BDD nodes")
            u = len(self._level)
            self._level.append(lvl)
            self._low.append(lo)
            self._high.append(hi)
            self._unique[key] = u
        return u

    def _store(self, key: tuple, u: int) -> int:
        if len(self._cache) >= CACHE_HIGH_WATER:
            self._cache.clear()
        self._cache[key] = u
        return u

    def mk_var(self, v: int) -> int:
        """Projection function of variable ``v`` (0-based place index)."""
        if not 0 <= v < self.n_vars:
            raise IndexError(f"variable {v} out of range")
        return self._mk(self.level_of[v], FALSE, TRUE)

    def mk_nvar(self, v: int) -> int:
        return self._mk(self.level_of[v], TRUE, FALSE)

    def cube(self, literals: Iterable[tuple[int, bool]]) -> int:
        """Conjunction of literals ``(var, value)``."""
        lits = sorted(((self.level_of[v], val) for v, val in literals), reverse=True)
        u = TRUE
        for lvl, val in lits:
            u = self._mk(lvl, FALSE, u) if val else self._mk(lvl, u, FALSE)
        return u

    def apply(self, op: str, a: int, b: int) -> int:
        if op == "and":
            return self.and_(a, b)
        if op == "or":
            return self.or_(a, b)
        raise ValueError(f"unsupported operator {op!r}")

    def and_(self, a: int, b: int) -> int:
        if a == FALSE or b == FALSE:
            return FALSE
        if a == TRUE:
            return b
        if b == TRUE or a == b:
            return a
        if a > b:
            a, b = b, a
        key = ("and", a, b)
        r = self._cache.get(key)
        if r is not None:
            return r
        la, lb = self._level[a], self._level[b]
        lvl = min(la, lb)
        a0, a1 = (self._low[a], self._high[a]) if la == lvl else (a, a)
        b0, b1 = (self._low[b], self._high[b]) if lb == lvl else (b, b)
        r = self._mk(lvl, self.and_(a0, b0), self.and_(a1, b1))
        return self._store(key, r)

    def or_(self, a: int, b: int) -> int:
        if a == TRUE or b == TRUE:
            return TRUE
        if a == FALSE:
            return b
        if b == FALSE or a == b:
            return a
        if a > b:
            a, b = b, a
        key = ("or", a, b)
        r = self._cache.get(key)
        if r is not None:
            return r
        la, lb = self._level[a], self._level[b]
        lvl = min(la, lb)
        a0, a1 = (self._low[a], self._high[a]) if la == lvl else (a, a)
        b0, b1 = (self._low[b], self._high[b]) if lb == lvl else (b, b)
        r = self._mk(lvl, self.or_(a0, b0), self.or_(a1, b1))
        return self._store(key, r)

    def not_(self, a: int) -> int:
        if a <= TRUE:
            return 1 - a
        key = ("not", a)
        r = self._cache.get(key)
        if r is not None:
            return r
        r = self._mk(self._level[a], self.not_(self._low[a]), self.not_(self._high[a]))
        return self._store(key, r)

    def restrict(self, a: int, v: int, value: bool) -> int:
        """Cofactor of ``a`` with variable ``v`` fixed to ``value``."""
        target = self.level_of[v]
        return self._restrict(a, target, bool(value))

    def _restrict(self, a: int, target: int, value: bool) -> int:
        lvl = self._level[a]
        if lvl > target:
            return a
        if lvl == target:
            return self._high[a] if value else self._low[a]
        key = ("restrict", a, target, value)
        r = self._cache.get(key)
        if r is not None:
            return r
        r = self._mk(lvl, self._restrict(self._low[a], target, value),
                     self._restrict(self._high[a], target, value))
        return self._store(key, r)

    def exists(self, a: int, v: int) -> int:
        return self.or_(self.restrict(a, v, False), self.restrict(a, v, True))

    def exists_many(self, a: int, variables: Iterable[int]) -> int:
        for v in variables:
            a = self.exists(a, v)
        return a

    def transfer(self, a: int, changes: list[tuple[int, bool]], tag) -> int:
        """``exists vars(changes). a`` conjoined with the literals of ``changes``,
        in one traversal.  ``tag`` identifies ``changes`` in the operation cache.
        """
        steps = sorted((self.level_of[v], val) for v, val in changes)
        return self._transfer(a, steps, 0, tag)

    def _transfer(self, u: int, steps: list[tuple[int, bool]], k: int, tag) -> int:
        if u == FALSE:
            return FALSE
        if k == len(steps):
            return u
        key = ("xfer", tag, u, k)
        r = self._cache.get(key)
        if r is not None:
            return r
        target, value = steps[k]
        lvl = self._level[u]
        if lvl < target:
            r = self._mk(lvl, self._transfer(self._low[u], steps, k, tag),
                         self._transfer(self._high[u], steps, k, tag))
        else:
            if lvl > target:
                sub = u  # variable absent: quantifying it out changes nothing
            else:
                lo, hi = self._low[u], self._high[u]
                sub = hi if lo == FALSE else lo if hi == FALSE else self.or_(lo, hi)
            rest = self._transfer(sub, steps, k + 1, tag)
            r = self._mk(target, FALSE, rest) if value else self._mk(target, rest, FALSE)
        return self._store(key, r)

    def sat_count(self, a: int) -> int:
        """Number of satisfying valuations over the store's variables."""
        memo: dict[int, int] = {}

        def count(u: int) -> int:
            # valuations of the variables at levels >= level(u)
            if u == FALSE:
                return 0
            if u == TRUE:
                return 1
            c = memo.get(u)
            if c is None:
                lvl = self._level[u]
                lo, hi = self._low[u], self._high[u]
                c = (count(lo) << (self._level[lo] - lvl - 1)) + (count(hi) << (self._level[hi] - lvl - 1))
                memo[u] = c
            return c

        return count(a) << self._level[a]

    def sat_with(self, a: int, variables: Iterable[int]) -> bool:
        """Does ``a`` have a satisfying valuation setting all ``variables`` to 1?

        Walks the graph without creating nodes.
        """
        need = sorted({self.level_of[v] for v in variables})
        memo: dict[tuple[int, int], bool] = {}

        def walk(u: int, k: int) -> bool:
            # k: index of the first required level not yet fixed
            while k < len(need) and need[k] < self._level[u]:
                k += 1  # skipped level, free to be 1
            if u == FALSE:
                return False
            if k == len(need) or u == TRUE:
                return True
            key = (u, k)
            r = memo.get(key)
            if r is None:
                if self._level[u] == need[k]:
                    r = walk(self._high[u], k + 1)
                else:
                    r = walk(self._high[u], k) or walk(self._low[u], k)
                memo[key] = r
            return r

        return walk(a, 0)

    def _free_mask(self, lo_level: int, hi_level: int) -> int:
        """Bitmask, indexed by variable, of the levels lo_level .. hi_level - 1."""
        return self._prefix[hi_level] ^ self._prefix[lo_level]

    def _ones_below(self, u: int, memo: dict[int, int]) -> int:
        # variables at levels >= level(u) that are 1 in some satisfying path of u
        if u == TRUE:
            return 0
        r = memo.get(u)
        if r is None:
            lvl = self._level[u]
            lo, hi = self._low[u], self._high[u]
            r = 0
            if lo != FALSE:
                r |= self._free_mask(lvl + 1, self._level[lo]) | self._ones_below(lo, memo)
            if hi != FALSE:
                r |= (1 << self.var_at[lvl]) | self._free_mask(lvl + 1, self._level[hi]) | self._ones_below(hi, memo)
            memo[u] = r
        return r

    def ones_mask(self, a: int) -> int | None:
        """Variables set to 1 by at least one satisfying valuation of ``a``.

        An int bitmask indexed by variable, or None when ``a`` is FALSE.
        """
        if a == FALSE:
            return None
        return self._free_mask(0, self._level[a]) | self._ones_below(a, {})

    def co_ones_masks(self, a: int) -> list[int | None]:
        """For each variable v, the variables that are 1 together with v in
        some satisfying valuation of ``a`` (v included), or None when no
        satisfying valuation sets v.  Creates no nodes.
        """
        plain: dict[int, int] = {}
        out: list[int | None] = []
        for v in range(self.n_vars):
            target = self.level_of[v]
            memo: dict[int, int | None] = {}

            def edge(parent_level: int, child: int) -> int | None:
                # ones over levels parent_level+1 and below, on paths through child with v = 1
                if child == FALSE:
                    return None
                free = self._free_mask(parent_level + 1, self._level[child])
                if target < self._level[child]:
                    return free | self._ones_below(child, plain)  # v sits in the skipped levels
                below = with_v(child)
                return None if below is None else free | below

            def with_v(u: int) -> int | None:
                if u in memo:
                    return memo[u]
                lvl = self._level[u]
                if lvl == target:
                    hi = self._high[u]
                    r = None if hi == FALSE else (
                        (1 << v) | self._free_mask(lvl + 1, self._level[hi]) | self._ones_below(hi, plain))
                else:
                    lo_m = edge(lvl, self._low[u])
                    hi_m = edge(lvl, self._high[u])
                    r = lo_m
                    if hi_m is not None:
                        r = (r or 0) | hi_m | (1 << self.var_at[lvl])
                memo[u] = r
                return r

            out.append(edge(-1, a))
        return out

    def evaluate(self, a: int, valuation: dict[int, bool] | list[bool]) -> bool:
        u = a
        while u > TRUE:
            u = self._high[u] if valuation[self.var(u)] else self._low[u]
        return u == TRUE

    def iter_sat(self, a: int):
        """Yield every satisfying valuation as a tuple of 0/1 per variable."""
        n = self.n_vars

        def walk(u: int, lvl: int, acc: list[int]):
            if u == FALSE:
                return
            if lvl == n:
                vals = [0] * n
                for level, bit in enumerate(acc):
                    vals[self.var_at[level]] = bit
                yield tuple(vals)
                return
            if self._level[u] == lvl:
                yield from walk(self._low[u], lvl + 1, acc + [0])
                yield from walk(self._high[u], lvl + 1, acc + [1])
            else:
                yield from walk(u, lvl + 1, acc + [0])
                yield from walk(u, lvl + 1, acc + [1])

        yield from walk(a, 0, [])


@dataclass
class SymbolicResult:
    reach: int
    complete: bool
    iterations: int
    store: BddStore
    note: str = ""

    def count(self) -> int:
        return self.store.sat_count(self.reach)


def check_applicable(net: PetriNet) -> None:
    if not net.is_ordinary():
        raise NotApplicable("non-ordinary net: some arc weight exceeds 1")
    if any(k > 1 for k in net.initial):
        raise NotApplicable("not 1-safe: the initial marking holds more than one token in a place")


def symbolic_reach(store: BddStore, net: PetriNet, budget: Budget | None = None) -> SymbolicResult:
    """Least fixpoint of the per-transition image starting from the initial marking.

    Raises :class:`NotApplicable` for non-ordinary nets and as soon as some
    reached marking would put a second token in a place.  Budget exhaustion
    (node limit, wall clock, reached-set size) returns the last complete
    iterate with ``complete=False``.
    """
    check_applicable(net)
    if store.n_vars != net.n_places:
        raise ValueError("store and net disagree on the number of places")
    budget = budget or Budget()
    deadline = None if budget.wall_clock is None else time.monotonic() + budget.wall_clock

    init = store.cube((p, bool(k)) for p, k in enumerate(net.initial))

    steps = []
    for t in range(net.n_transitions):
        pre = {p for p, _ in net.pre[t]}
        post = {p for p, _ in net.post[t]}
        guard = store.cube((p, True) for p in pre)
        changes = [(p, False) for p in pre - post] + [(p, True) for p in post - pre]
        steps.append((t, guard, changes, sorted(post - pre)))

    def image(s: int) -> int:
        out = FALSE
        for t, guard, changes, fresh in steps:
            g = store.and_(s, guard)
            if g == FALSE:
                continue
            ones = store.ones_mask(g) if fresh else 0
            for q in fresh:
                if ones >> q & 1:
                    raise NotApplicable(
                        f"not 1-safe: transition {net.transition_ids[t]!r} can put a second "
                        f"token in place {net.place_ids[q]!r}")
            out = store.or_(out, store.transfer(g, changes, t))
        return out

    reach = init
    iterations = 0
    while True:
        if deadline is not None and time.monotonic() >= deadline:
            return SymbolicResult(reach, False, iterations, store, "wall-clock budget exhausted")
        try:
            nxt = store.or_(reach, image(reach))
        except NodeLimitExceeded as exc:
            return SymbolicResult(reach, False, iterations, store, str(exc))
        if nxt == reach:
            return SymbolicResult(reach, True, iterations, store)
        if budget.max_states is not None and store.sat_count(nxt) > budget.max_states:
            return SymbolicResult(reach, False, iterations, store, "state budget exhausted")
        reach = nxt
        iterations += 1


def query_r(store: BddStore, result: SymbolicResult, places: Iterable[int]) -> TriState:
    """Is there a reached marking in which every place of ``places`` is marked?

    NO is only returned after a complete run; an interrupted run cannot
    refute and answers UNKNOWN instead.
    """
    places = list(places)
    if not places:
        raise ValueError("place set must be non-empty")
    if store.sat_with(result.reach, places):
        return TriState.YES
    return TriState.NO if result.complete else TriState.UNKNOWN
