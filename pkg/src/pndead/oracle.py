"""Brute-force reference answers for small nets.

Kept deliberately unlike the explicit engine: markings are sparse
``{place id: tokens}`` maps keyed by identifier, enumeration is
depth-first, and the three answers are computed afterwards from the
stored marking list instead of during exploration.  Test use only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .net import PetriNet


class OracleCapExceeded(RuntimeError):
    pass


@dataclass
class OracleAnswer:
    markings: list[dict[str, int]]
    dead_places: list[bool]
    dead_transitions: list[bool]
    concurrent: list[list[bool]]  # concurrent[i][j] for j <= i


def _arcs_by_id(net: PetriNet):
    inputs, outputs = {}, {}
    for t, tid in enumerate(net.transition_ids):
        inputs[tid] = {net.place_ids[p]: w for p, w in net.pre[t]}
        outputs[tid] = {net.place_ids[p]: w for p, w in net.post[t]}
    return inputs, outputs


def _can_fire(marking: dict[str, int], needs: dict[str, int]) -> bool:
    for pid, w in needs.items():
        if marking.get(pid, 0) < w:
            return False
    return True


def oracle_analyze(net: PetriNet, hard_cap: int = 10_000) -> OracleAnswer:
    inputs, outputs = _arcs_by_id(net)
    start = {pid: k for pid, k in zip(net.place_ids, net.initial) if k > 0}

    def key(m: dict[str, int]) -> frozenset:
        return frozenset(m.items())

    seen = {key(start)}
    found = [start]
    stack = [start]
    while stack:
        m = stack.pop()
        for tid in reversed(net.transition_ids):
            if not _can_fire(m, inputs[tid]):
                continue
            nxt = dict(m)
            for pid, w in inputs[tid].items():
                nxt[pid] -= w
                if nxt[pid] == 0:
                    del nxt[pid]
            for pid, w in outputs[tid].items():
                nxt[pid] = nxt.get(pid, 0) + w
            k = key(nxt)
            if k in seen:
                continue
            if len(seen) >= hard_cap:
                raise OracleCapExceeded(f"more than {hard_cap} reachable markings")
            seen.add(k)
            found.append(nxt)
            stack.append(nxt)

    ids = net.place_ids
    dead_places = [not any(m.get(pid, 0) >= 1 for m in found) for pid in ids]
    dead_transitions = [not any(_can_fire(m, inputs[tid]) for m in found) for tid in net.transition_ids]
    concurrent = [
        [any(m.get(ids[i], 0) >= 1 and m.get(ids[j], 0) >= 1 for m in found) for j in range(i + 1)]
        for i in range(len(ids))
    ]
    return OracleAnswer(found, dead_places, dead_transitions, concurrent)
