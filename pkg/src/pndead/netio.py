"""Reading nets from PNML and from a small line-oriented text format.

Text format, one declaration per line::

    # comment
    place <id> [<tokens>]
    trans <id>
    arc <id> <id> [<weight>]

Identifiers must be declared before an arc uses them.  In PNML the
P/T core is read (places, transitions, arcs, initial markings and
inscriptions); pages are flattened in document order and everything
else is ignored.
"""

from __future__ import annotations

import os
import xml.etree.ElementTree as ET

from .net import DEFAULT_TOKEN_CAP, NetError, PetriNet, build_net


class ParseError(NetError):
    pass


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _child(elem: ET.Element, name: str) -> ET.Element | None:
    for c in elem:
        if _local(c.tag) == name:
            return c
    return None


def _label_int(elem: ET.Element, label: str, default: int, what: str) -> int:
    node = _child(elem, label)
    if node is None:
        return default
    text_node = _child(node, "text")
    raw = text_node.text if text_node is not None else node.text
    raw = (raw or "").strip()
    if not raw:
        return default
    try:
        value = int(raw, 10)
    except ValueError:
        raise ParseError(f"{what}: {label} {raw!r} is not an integer") from None
    if value < 0:
        raise ParseError(f"{what}: {label} {raw!r} is negative")
    return value


_SKIPPED = {"toolspecific", "graphics", "name"}


def _walk(elem: ET.Element):
    """Document-order walk that flattens pages and skips decorations."""
    for c in elem:
        if _local(c.tag) in _SKIPPED:
            continue
        yield c
        yield from _walk(c)


def parse_pnml(source: str | bytes, token_cap: int = DEFAULT_TOKEN_CAP) -> PetriNet:
    if isinstance(source, str):
        source = source.encode("utf-8")
    try:
        root = ET.fromstring(source)
    except ET.ParseError as exc:
        raise ParseError(f"malformed XML: {exc}") from None

    nets = [e for e in root.iter() if _local(e.tag) == "net"]
    if len(nets) != 1:
        raise ParseError(f"expected exactly one <net> element, found {len(nets)}")

    places: list[str] = []
    transitions: list[str] = []
    initial: dict[str, int] = {}
    arcs: list[tuple[str, str, int]] = []

    for elem in _walk(nets[0]):
        kind = _local(elem.tag)
        if kind not in ("place", "transition", "arc"):
            continue
        ident = elem.get("id")
        if kind == "arc":
            src, dst = elem.get("source"), elem.get("target")
            if src is None or dst is None:
                raise ParseError(f"arc {ident!r} lacks a source or target")
            weight = _label_int(elem, "inscription", 1, f"arc {ident!r}")
            if weight == 0:
                raise ParseError(f"arc {ident!r}: inscription must be positive")
            arcs.append((src, dst, weight))
            continue
        if ident is None:
            raise ParseError(f"<{kind}> element without an id")
        if kind == "place":
            places.append(ident)
            tokens = _label_int(elem, "initialMarking", 0, f"place {ident!r}")
            if tokens:
                initial[ident] = tokens
        else:
            transitions.append(ident)

    try:
        return build_net(places, transitions, arcs, initial, token_cap)
    except ParseError:
        raise
    except NetError as exc:
        raise ParseError(str(exc)) from None


def parse_text(source: str | bytes, token_cap: int = DEFAULT_TOKEN_CAP) -> PetriNet:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    places: list[str] = []
    transitions: list[str] = []
    kinds: dict[str, str] = {}
    initial: dict[str, int] = {}
    arcs: list[tuple[str, str, int]] = []

    def number(tok: str, lineno: int) -> int:
        if not tok.isdigit():
            raise ParseError(f"line {lineno}: expected a non-negative integer, got {tok!r}")
        return int(tok)

    for lineno, line in enumerate(source.splitlines(), 1):
        words = line.split("#", 1)[0].split()
        if not words:
            continue
        key, args = words[0], words[1:]
        if key in ("place", "trans"):
            if len(args) not in ((1, 2) if key == "place" else (1,)):
                raise ParseError(f"line {lineno}: wrong number of fields for {key!r}")
            ident = args[0]
            if ident in kinds:
                raise ParseError(f"line {lineno}: redefinition of {ident!r}")
            kinds[ident] = key
            if key == "place":
                places.append(ident)
                if len(args) == 2 and number(args[1], lineno):
                    initial[ident] = number(args[1], lineno)
            else:
                transitions.append(ident)
        elif key == "arc":
            if len(args) not in (2, 3):
                raise ParseError(f"line {lineno}: arc needs two endpoints and an optional weight")
            src, dst = args[0], args[1]
            for end in (src, dst):
                if end not in kinds:
                    raise ParseError(f"line {lineno}: {end!r} used before declaration")
            if kinds[src] == kinds[dst]:
                what = "places" if kinds[src] == "place" else "transitions"
                raise ParseError(f"line {lineno}: arc between two {what}")
            weight = number(args[2], lineno) if len(args) == 3 else 1
            if weight == 0:
                raise ParseError(f"line {lineno}: arc weight must be positive")
            arcs.append((src, dst, weight))
        else:
            raise ParseError(f"line {lineno}: unknown keyword {key!r}")

    try:
        return build_net(places, transitions, arcs, initial, token_cap)
    except NetError as exc:
        raise ParseError(str(exc)) from None


def detect_format(data: bytes) -> str:
    head = data.lstrip(b"\xef\xbb\xbf").lstrip()
    return "pnml" if head.startswith(b"<") else "text"


def parse(data: str | bytes, fmt: str | None = None, token_cap: int = DEFAULT_TOKEN_CAP) -> PetriNet:
    """Parse ``data``; the format is guessed from the first byte unless given."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    fmt = fmt or detect_format(data)
    if fmt == "pnml":
        return parse_pnml(data, token_cap)
    if fmt == "text":
        return parse_text(data, token_cap)
    raise ValueError(f"unknown net format {fmt!r}")


def load(path: str | os.PathLike, fmt: str | None = None, token_cap: int = DEFAULT_TOKEN_CAP) -> PetriNet:
    with open(path, "rb") as fh:
        return parse(fh.read(), fmt, token_cap)


def format_text(net: PetriNet) -> str:
    """Render ``net`` in the text format; parse_text reads it back unchanged."""
    lines = []
    for ident, tokens in zip(net.place_ids, net.initial):
        lines.append(f"place {ident} {tokens}" if tokens else f"place {ident}")
    lines += [f"trans {ident}" for ident in net.transition_ids]
    for t, ident in enumerate(net.transition_ids):
        for p, w in net.pre[t]:
            lines.append(f"arc {net.place_ids[p]} {ident}" + (f" {w}" if w != 1 else ""))
        for p, w in net.post[t]:
            lines.append(f"arc {ident} {net.place_ids[p]}" + (f" {w}" if w != 1 else ""))
    return "\n".join(lines) + "\n"
