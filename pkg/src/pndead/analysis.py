"""Dead places, dead transitions and concurrent places as tri-state reports.

A report combines two sources of definite answers:

* an engine run (explicit or BDD).  Anything it saw marked/enabled is
  certainly alive; if the run was complete, everything else is dead.
* a structural pass that proves some places and transitions dead without
  exploring, which keeps those cells definite when the run is cut short.

Cells that neither source settles are UNKNOWN.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bdd
from .explicit import Budget, Observations, explore, tri_index, tri_size
from .net import PetriNet
from .tristate import SoundnessError, TriState

NO, YES, UNKNOWN = TriState.NO, TriState.YES, TriState.UNKNOWN

ENGINES = ("explicit", "bdd", "auto")


@dataclass(frozen=True)
class StructuralFacts:
    dead_places: np.ndarray
    dead_transitions: np.ndarray


def structural_dead(net: PetriNet) -> StructuralFacts:
    """Places and transitions that are dead for purely structural reasons.

    Computes the least set of places/transitions that *might* become
    marked/enabled: a place may be marked if it starts marked or some
    possibly-enabled transition feeds it; a transition may be enabled if
    each input place may be marked and, for each input arc of weight w,
    the place starts with w tokens or has a possibly-enabled producer.
    Everything outside that set is dead.
    """
    place_live = np.array([k > 0 for k in net.initial], dtype=bool)
    trans_live = np.zeros(net.n_transitions, dtype=bool)
    fed = np.zeros(net.n_places, dtype=bool)  # some live transition produces into p

    changed = True
    while changed:
        changed = False
        for t in range(net.n_transitions):
            if trans_live[t]:
                continue
            if all(place_live[p] and (net.initial[p] >= w or fed[p]) for p, w in net.pre[t]):
                trans_live[t] = True
                changed = True
                for p, _ in net.post[t]:
                    fed[p] = True
                    place_live[p] = True
    return StructuralFacts(~place_live, ~trans_live)


@dataclass
class AnalysisReport:
    dead_places: np.ndarray  # TriState codes, YES = dead
    dead_transitions: np.ndarray  # TriState codes, YES = dead
    concurrent: np.ndarray  # flat lower half-matrix of TriState codes, YES = concurrent
    complete: bool
    engine: str = ""
    states_visited: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def n_places(self) -> int:
        return len(self.dead_places)

    def concurrent_cell(self, i: int, j: int) -> TriState:
        return TriState(int(self.concurrent[tri_index(i, j)]))

    def concurrent_rows(self):
        """Rows of the half-matrix: row i holds cells (i, 0) .. (i, i)."""
        for i in range(self.n_places):
            start = i * (i + 1) // 2
            yield self.concurrent[start:start + i + 1]

    def check(self) -> None:
        """Raise SoundnessError if the report breaks a structural law."""
        n = self.n_places
        if len(self.concurrent) != tri_size(n):
            raise SoundnessError("matrix size does not match the number of places")
        diag = self.concurrent[[tri_index(i, i) for i in range(n)]]
        dp = self.dead_places
        if np.any((dp == YES) != (diag == NO)) or np.any((dp == NO) != (diag == YES)):
            raise SoundnessError("a place must be dead exactly when it is not concurrent with itself")
        for i, row in enumerate(self.concurrent_rows()):
            cols = np.flatnonzero(row == YES)
            if len(cols) and (dp[i] != NO or np.any(dp[cols] != NO)):
                raise SoundnessError(f"place {i + 1} is concurrent with a place not known to be alive")
            if dp[i] == YES and np.any(row != NO):
                raise SoundnessError(f"dead place {i + 1} has a row cell other than 0")
        dead_cols = np.flatnonzero(dp == YES)
        for j in dead_cols:
            column = self.concurrent[[tri_index(i, j) for i in range(j, n)]]
            if np.any(column != NO):
                raise SoundnessError(f"dead place {j + 1} has a column cell other than 0")
        if self.complete:
            for arr in (self.dead_places, self.dead_transitions, self.concurrent):
                if np.any(arr == UNKNOWN):
                    raise SoundnessError("complete report contains unknown cells")

    def counts(self, which: str) -> dict[str, int]:
        arr = {"dead-places": self.dead_places,
               "dead-transitions": self.dead_transitions,
               "concurrent-places": self.concurrent}[which]
        return {c: int(np.count_nonzero(arr == code)) for code, c in enumerate("01.")}


def _combine_vector(seen: np.ndarray, complete: bool, struct_dead: np.ndarray, what: str) -> np.ndarray:
    if np.any(seen & struct_dead):
        k = int(np.argmax(seen & struct_dead))
        raise SoundnessError(f"{what} {k + 1} is structurally dead but was observed alive")
    # YES means dead, so a complete run leaves every unseen item dead
    out = np.full(len(seen), YES if complete else UNKNOWN, dtype=np.int8)
    out[struct_dead] = YES
    out[seen] = NO
    return out


def report_from_observations(obs: Observations, facts: StructuralFacts, engine: str = "explicit") -> AnalysisReport:
    n = len(obs.place_seen_marked)
    complete = obs.complete
    dead_places = _combine_vector(obs.place_seen_marked, complete, facts.dead_places, "place")
    dead_trans = _combine_vector(obs.trans_seen_enabled, complete, facts.dead_transitions, "transition")

    conc = np.full(tri_size(n), NO if complete else UNKNOWN, dtype=np.int8)
    dead_idx = np.flatnonzero(dead_places == YES)
    if len(dead_idx) and not complete:
        is_dead = dead_places == YES
        for i in range(n):
            start = i * (i + 1) // 2
            if is_dead[i]:
                conc[start:start + i + 1] = NO
            else:
                conc[start + dead_idx[dead_idx <= i]] = NO
    conc[obs.pair_seen_together] = YES

    report = AnalysisReport(dead_places, dead_trans, conc, complete, engine, obs.states_visited, list(obs.notes))
    report.check()
    return report


def observations_from_symbolic(net: PetriNet, result: bdd.SymbolicResult) -> Observations:
    """Translate a symbolic run into the explicit engine's observation bits."""
    store = result.store
    obs = Observations.empty(net.n_places, net.n_transitions)
    # place i marked with j in some reached marking <=> bit j of rows[i]
    rows = store.co_ones_masks(result.reach)
    for i, mask in enumerate(rows):
        if mask is None:
            continue
        obs.place_seen_marked[i] = True
        start = i * (i + 1) // 2
        for j in range(i + 1):
            if mask >> j & 1:
                obs.pair_seen_together[start + j] = True
    for t in range(net.n_transitions):
        pre = [p for p, _ in net.pre[t]]
        obs.trans_seen_enabled[t] = not pre or bdd.query_r(store, result, pre) == YES
    obs.complete = result.complete
    obs.states_visited = result.count()
    if result.note:
        obs.notes.append(result.note)
    return obs


def analyze(net: PetriNet, engine: str = "auto", budget: Budget | None = None,
            reverse_order: bool = False) -> AnalysisReport:
    """Run structural pre-analysis and one engine, and merge both into a report.

    ``engine="auto"`` tries the BDD engine first and falls back to explicit
    exploration when the net is non-ordinary or turns out not to be 1-safe.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
    budget = budget or Budget()
    facts = structural_dead(net)
    notes: list[str] = []
    if engine in ("bdd", "auto"):
        store = bdd.BddStore(net.n_places, budget.max_bdd_nodes, reverse=reverse_order)
        try:
            result = bdd.symbolic_reach(store, net, budget)
        except (bdd.NotApplicable, bdd.NodeLimitExceeded) as exc:
            if engine == "bdd":
                raise
            notes.append(f"bdd engine declined ({exc}); using explicit exploration")
        else:
            report = report_from_observations(observations_from_symbolic(net, result), facts, "bdd")
            report.notes[:0] = notes
            return report
    report = report_from_observations(explore(net, budget), facts, "explicit")
    report.notes[:0] = notes
    return report


def is_quasi_live(report: AnalysisReport) -> TriState:
    dt = report.dead_transitions
    if np.any(dt == YES):
        return NO
    if np.all(dt == NO):
        return YES
    return UNKNOWN
