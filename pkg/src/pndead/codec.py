"""Run-length compressed status lines and the files built from them.

A status line is a string over ``0``, ``1`` and ``.``.  Compression
replaces every maximal run of more than three identical characters ``c``
of length ``n`` by ``c(n)``; shorter runs stay as they are.

Vector files hold one compressed line.  Matrix files hold the lower half
of a symmetric matrix, one compressed line per row, row ``i`` having
``i`` cells.
"""

from __future__ import annotations

import math
import re
from typing import IO, Iterable, Sequence

import numpy as np

from .tristate import from_text, to_text

ALPHABET = frozenset("01.")
MIN_RUN = 4

_TOKEN = re.compile(r"([01.])(?:\(([0-9]+)\))?")
_COUNT = re.compile(r"\(([0-9]+)\)")
_STRIP_ALPHABET = str.maketrans("", "", "01.")

_IN_ALPHABET = np.zeros(256, dtype=bool)
_IN_ALPHABET[list(b"01.")] = True


class CodecError(ValueError):
    pass


def _as_bytes(line: str) -> np.ndarray:
    try:
        raw = line.encode("ascii")
    except UnicodeEncodeError:
        raise CodecError("characters outside the status alphabet") from None
    return np.frombuffer(raw, dtype=np.uint8)


def compress(line: str) -> str:
    arr = _as_bytes(line)
    if not _IN_ALPHABET[arr].all():
        bad = sorted(set(line) - ALPHABET)
        raise CodecError(f"characters outside the status alphabet: {''.join(bad)!r}")
    n = len(arr)
    if n < MIN_RUN:
        return line
    starts = np.flatnonzero(np.concatenate(([True], arr[1:] != arr[:-1])))
    lengths = np.diff(np.append(starts, n))
    long = np.flatnonzero(lengths >= MIN_RUN)
    if not len(long):
        return line
    out = []
    prev = 0
    for s, k in zip(starts[long].tolist(), lengths[long].tolist()):
        out.append(line[prev:s])
        out.append(f"{line[s]}({k})")
        prev = s + k
    out.append(line[prev:])
    return "".join(out)


def decompress(line: str) -> str:
    """Expand ``c(n)`` groups.  Counts below 4 are accepted here."""
    pieces = line.split("(")
    out = [pieces[0]]
    ok = True
    for piece in pieces[1:]:
        close = piece.find(")")
        count = piece[:close]
        if (close < 1 or not out[-1] or not count.isdigit() or not count.isascii()
                or count[0] == "0"):
            ok = False
            break
        out.append(out[-1][-1] * (int(count) - 1))
        out.append(piece[close + 1:])
    if ok and not "".join(out[::2]).translate(_STRIP_ALPHABET):
        return "".join(out)
    _diagnose(line)
    raise CodecError(f"malformed compressed line {line[:40]!r}")


def _diagnose(line: str) -> None:
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:
            c = line[pos]
            if c in "()":
                raise CodecError(f"unexpected {c!r} at offset {pos}")
            if c not in ALPHABET:
                raise CodecError(f"character outside the status alphabet: {c!r}")
            raise CodecError(f"malformed input at offset {pos}")
        count = m.group(2)
        end = m.end()
        if count is None and end < len(line) and line[end] == "(":
            raise CodecError(f"malformed or unbalanced count at offset {end}")
        if count is not None and count.startswith("0"):
            raise CodecError(f"count with leading zero at offset {m.start(2)}")
        pos = end


def is_canonical(compressed: str) -> bool:
    """True when ``compressed`` is exactly what :func:`compress` would emit.

    That is: no verbatim run of four or more, no abbreviation of three or
    fewer, and no abbreviation touching another copy of its character.
    """
    if any(int(n) < MIN_RUN for n in _COUNT.findall(compressed)):
        return False
    marked = _as_bytes(_COUNT.sub("#", compressed))
    same = marked[1:] == marked[:-1]
    if np.any(same[:-2] & same[1:-1] & same[2:]):
        return False
    groups = np.flatnonzero(marked == ord("#"))
    if len(groups) and groups[0] == 0:
        return False
    before = groups[groups >= 2]
    if np.any(marked[before - 1] == marked[before - 2]):
        return False
    after = groups[groups + 1 < len(marked)]
    return not np.any(marked[after - 1] == marked[after + 1])


def _lines(text: str) -> list[str]:
    # accept LF or CRLF; a single trailing terminator closes the last line
    lines = text.replace("\r\n", "\n").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def write_vector(codes: Sequence[int] | np.ndarray, sink: IO[str]) -> None:
    sink.write(compress(to_text(codes)) + "\n")


def vector_text(codes: Sequence[int] | np.ndarray) -> str:
    return compress(to_text(codes)) + "\n"


def read_vector(source: IO[str] | str, length: int | None = None) -> np.ndarray:
    text = source if isinstance(source, str) else source.read()
    lines = _lines(text)
    if len(lines) != 1:
        raise CodecError(f"vector file must hold exactly one line, found {len(lines)}")
    line = decompress(lines[0])
    if length is not None and len(line) != length:
        raise CodecError(f"vector has {len(line)} cells, expected {length}")
    return from_text(line)


def matrix_rows(flat: np.ndarray) -> Iterable[np.ndarray]:
    n = (math.isqrt(8 * len(flat) + 1) - 1) // 2
    if n * (n + 1) // 2 != len(flat):
        raise CodecError(f"{len(flat)} cells do not form a half-matrix")
    for i in range(n):
        start = i * (i + 1) // 2
        yield flat[start:start + i + 1]


def write_matrix(flat: np.ndarray, sink: IO[str]) -> None:
    """Write a flat lower half-matrix (see ``tri_index``) row by row."""
    if len(flat) == 0:
        raise CodecError("matrix must have at least one row")
    for row in matrix_rows(flat):
        sink.write(compress(to_text(row)) + "\n")


def matrix_text(flat: np.ndarray) -> str:
    return "".join(compress(to_text(row)) + "\n" for row in matrix_rows(flat))


def read_matrix(source: IO[str] | str) -> np.ndarray:
    text = source if isinstance(source, str) else source.read()
    rows = []
    for i, line in enumerate(_lines(text), 1):
        row = decompress(line)
        if len(row) != i:
            raise CodecError(f"row {i} has {len(row)} cells, expected {i}")
        rows.append(from_text(row))
    if not rows:
        raise CodecError("empty matrix file")
    return np.concatenate(rows)
