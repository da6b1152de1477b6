from __future__ import annotations

from enum import IntEnum

import numpy as np


class SoundnessError(AssertionError):
    """Two sources disagree on a definite answer.  Always a bug."""


class TriState(IntEnum):
    NO = 0
    YES = 1
    UNKNOWN = 2

    @property
    def char(self) -> str:
        return "01."[self]

    @classmethod
    def from_char(cls, c: str) -> "TriState":
        try:
            return cls("01.".index(c))
        except ValueError:
            raise ValueError(f"not a status character: {c!r}") from None

    def merge(self, other: "TriState") -> "TriState":
        """Definite values win over UNKNOWN; YES against NO is a soundness breach."""
        if self == TriState.UNKNOWN:
            return other
        if other == TriState.UNKNOWN or other == self:
            return self
        raise SoundnessError("conflicting definite answers")


# byte lookup for rendering arrays of TriState codes
STATUS_BYTES = np.frombuffer(b"01.", dtype=np.uint8)


def to_text(codes: np.ndarray) -> str:
    return STATUS_BYTES[np.asarray(codes, dtype=np.intp)].tobytes().decode("ascii")


def from_text(line: str) -> np.ndarray:
    raw = np.frombuffer(line.encode("ascii"), dtype=np.uint8)
    codes = np.full(raw.shape, -1, dtype=np.int8)
    for code, byte in enumerate(b"01."):
        codes[raw == byte] = code
    if (codes < 0).any():
        bad = line[int(np.argmax(codes < 0))]
        raise ValueError(f"not a status character: {bad!r}")
    return codes
