"""Place/transition nets with firing semantics.

Places and transitions are numbered densely from 1 in declaration order.
Internally everything is stored 0-based; the public ``place``/``transition``
arguments of :func:`enabled`, :func:`fire` and :func:`preset` are 0-based
indices as well, and only the textual outputs use the 1-based numbering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_TOKEN_CAP = 2**20

Marking = tuple[int, ...]


class NetError(ValueError):
    """Raised for an ill-formed net declaration."""


class TokenCapExceeded(ArithmeticError):
    """Firing would push a place above the configured token cap."""

    def __init__(self, place: int, tokens: int, cap: int):
        super().__init__(f"place {place + 1} would hold {tokens} tokens (cap {cap})")
        self.place = place
        self.tokens = tokens
        self.cap = cap


@dataclass(frozen=True)
class PetriNet:
    place_ids: tuple[str, ...]
    transition_ids: tuple[str, ...]
    # pre[t] / post[t]: sorted tuples of (place index, weight)
    pre: tuple[tuple[tuple[int, int], ...], ...]
    post: tuple[tuple[tuple[int, int], ...], ...]
    initial: Marking
    token_cap: int = DEFAULT_TOKEN_CAP

    @property
    def n_places(self) -> int:
        return len(self.place_ids)

    @property
    def n_transitions(self) -> int:
        return len(self.transition_ids)

    def is_ordinary(self) -> bool:
        """True when every arc has weight 1."""
        return all(w == 1 for arcs in (self.pre + self.post) for _, w in arcs)

    def place_index(self, ident: str) -> int:
        return self.place_ids.index(ident)

    def transition_index(self, ident: str) -> int:
        return self.transition_ids.index(ident)


def build_net(
    places: Sequence[str],
    transitions: Sequence[str],
    arcs: Iterable[tuple[str, str] | tuple[str, str, int]],
    initial: dict[str, int] | None = None,
    token_cap: int = DEFAULT_TOKEN_CAP,
) -> PetriNet:
    """Validate declarations and build an immutable net.

    ``arcs`` holds ``(source, target)`` or ``(source, target, weight)``;
    the direction follows from which endpoint is a place.  Parallel arcs
    are merged by summing their weights.
    """
    p_index: dict[str, int] = {}
    for ident in places:
        if ident in p_index:
            raise NetError(f"duplicate place id {ident!r}")
        p_index[ident] = len(p_index)
    t_index: dict[str, int] = {}
    for ident in transitions:
        if ident in t_index:
            raise NetError(f"duplicate transition id {ident!r}")
        if ident in p_index:
            raise NetError(f"id {ident!r} names both a place and a transition")
        t_index[ident] = len(t_index)

    pre: list[dict[int, int]] = [{} for _ in transitions]
    post: list[dict[int, int]] = [{} for _ in transitions]
    for arc in arcs:
        src, dst = arc[0], arc[1]
        weight = arc[2] if len(arc) > 2 else 1
        if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
            raise NetError(f"arc {src}->{dst}: weight must be a positive integer, got {weight!r}")
        if src in p_index and dst in t_index:
            side, p, t = pre, p_index[src], t_index[dst]
        elif src in t_index and dst in p_index:
            side, p, t = post, p_index[dst], t_index[src]
        else:
            for end in (src, dst):
                if end not in p_index and end not in t_index:
                    raise NetError(f"arc {src}->{dst} references unknown id {end!r}")
            raise NetError(f"arc {src}->{dst} must connect a place and a transition")
        side[t][p] = side[t].get(p, 0) + weight

    tokens = [0] * len(p_index)
    for ident, count in (initial or {}).items():
        if ident not in p_index:
            raise NetError(f"initial marking names unknown place {ident!r}")
        if not isinstance(count, int) or count < 0:
            raise NetError(f"place {ident!r}: initial tokens must be a non-negative integer")
        if count > token_cap:
            raise NetError(f"place {ident!r}: initial tokens exceed the cap {token_cap}")
        tokens[p_index[ident]] = count

    return PetriNet(
        place_ids=tuple(places),
        transition_ids=tuple(transitions),
        pre=tuple(tuple(sorted(d.items())) for d in pre),
        post=tuple(tuple(sorted(d.items())) for d in post),
        initial=tuple(tokens),
        token_cap=token_cap,
    )


def enabled(net: PetriNet, marking: Marking, t: int) -> bool:
    return all(marking[p] >= w for p, w in net.pre[t])


def fire(net: PetriNet, marking: Marking, t: int) -> Marking:
    """Successor of ``marking`` by ``t``; raises if ``t`` is not enabled."""
    if not enabled(net, marking, t):
        raise ValueError(f"transition {net.transition_ids[t]!r} is not enabled")
    tokens = list(marking)
    for p, w in net.pre[t]:
        tokens[p] -= w
    for p, w in net.post[t]:
        tokens[p] += w
        if tokens[p] > net.token_cap:
            raise TokenCapExceeded(p, tokens[p], net.token_cap)
    return tuple(tokens)


def preset(net: PetriNet, t: int) -> frozenset[int]:
    return frozenset(p for p, _ in net.pre[t])


def postset(net: PetriNet, t: int) -> frozenset[int]:
    return frozenset(p for p, _ in net.post[t])


def marked(marking: Marking) -> list[int]:
    return [p for p, k in enumerate(marking) if k >= 1]
