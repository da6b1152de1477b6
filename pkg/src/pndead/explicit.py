"""Breadth-first explicit-state exploration.

Only three families of facts are kept while exploring: which places were
ever marked, which transitions were ever enabled, and which place pairs
were ever marked together.  That is enough to answer the dead-place,
dead-transition and concurrent-place questions once exploration ends.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .net import Marking, PetriNet, TokenCapExceeded, enabled, fire

# how many expanded states between two wall-clock checks
CLOCK_CHECK_INTERVAL = 256


def tri_index(i: int, j: int) -> int:
    """Flat offset of cell (i, j), j <= i, in a row-major lower half-matrix."""
    if j > i:
        i, j = j, i
    return i * (i + 1) // 2 + j


def tri_size(n: int) -> int:
    return n * (n + 1) // 2


@dataclass(frozen=True)
class Budget:
    """Resource limits; ``None`` means unlimited."""

    max_states: int | None = None
    wall_clock: float | None = None
    max_bdd_nodes: int | None = None

    def __post_init__(self):
        for name in ("max_states", "wall_clock", "max_bdd_nodes"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass
class Observations:
    place_seen_marked: np.ndarray
    trans_seen_enabled: np.ndarray
    pair_seen_together: np.ndarray  # flat lower half-matrix, see tri_index
    complete: bool = False
    states_visited: int = 0
    cap_overflow: bool = False
    notes: list[str] = field(default_factory=list)

    @classmethod
    def empty(cls, n_places: int, n_transitions: int) -> "Observations":
        return cls(
            np.zeros(n_places, dtype=bool),
            np.zeros(n_transitions, dtype=bool),
            np.zeros(tri_size(n_places), dtype=bool),
        )

    def pair(self, i: int, j: int) -> bool:
        return bool(self.pair_seen_together[tri_index(i, j)])


def visited_count(obs: Observations) -> int:
    return obs.states_visited


def explore(net: PetriNet, budget: Budget | None = None) -> Observations:
    budget = budget or Budget()
    obs = Observations.empty(net.n_places, net.n_transitions)
    place_seen = obs.place_seen_marked
    trans_seen = obs.trans_seen_enabled
    pairs = obs.pair_seen_together
    n_trans = net.n_transitions

    deadline = None if budget.wall_clock is None else time.monotonic() + budget.wall_clock
    max_states = budget.max_states

    m0 = net.initial
    visited: set[Marking] = {m0}
    # queue entries: (marking, places whose count rose from 0 versus the parent)
    frontier: deque[tuple[Marking, list[int]]] = deque([(m0, [p for p, k in enumerate(m0) if k])])
    cut = False

    while frontier:
        if max_states is not None and obs.states_visited >= max_states:
            cut = True
            break
        if deadline is not None and obs.states_visited % CLOCK_CHECK_INTERVAL == 0:
            if time.monotonic() >= deadline:
                cut = True
                obs.notes.append("wall-clock budget exhausted")
                break

        m, fresh = frontier.popleft()
        obs.states_visited += 1

        # a pair not co-marked in the parent has at least one freshly marked member
        if fresh:
            marked_now = [p for p, k in enumerate(m) if k]
            for p in fresh:
                place_seen[p] = True
                base = p * (p + 1) // 2
                for q in marked_now:
                    if q <= p:
                        pairs[base + q] = True
                    else:
                        pairs[q * (q + 1) // 2 + p] = True

        for t in range(n_trans):
            if not enabled(net, m, t):
                continue
            trans_seen[t] = True
            try:
                succ = fire(net, m, t)
            except TokenCapExceeded as exc:
                if not obs.cap_overflow:
                    obs.notes.append(f"token cap exceeded: {exc}")
                obs.cap_overflow = True
                continue
            if succ in visited:
                continue
            visited.add(succ)
            frontier.append((succ, [p for p, k in enumerate(succ) if k and not m[p]]))

    obs.complete = not cut and not frontier and not obs.cap_overflow
    return obs


def reachable_markings(net: PetriNet, max_states: int | None = None) -> list[Marking]:
    """Markings in BFS order; used for cross-checks and small demos."""
    seen = {net.initial}
    order = [net.initial]
    i = 0
    while i < len(order):
        if max_states is not None and i >= max_states:
            break
        m = order[i]
        i += 1
        for t in range(net.n_transitions):
            if enabled(net, m, t):
                s = fire(net, m, t)
                if s not in seen:
                    seen.add(s)
                    order.append(s)
    return order
