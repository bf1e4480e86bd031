"""Reduced words in the generators of a group ``<g_0, ..., g_{h-1}>``.

A word is stored as a tuple of syllables ``(generator, exponent)``.  Generator
indices are 0-based; letters ``a, b, c, ...`` are used for display, so
``Word.parse("a b^2 a^-1")`` is ``g_0 g_1^2 g_0^-1``.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

Syllable = Tuple[int, int]

_LETTERS = string.ascii_lowercase
_TOKEN = re.compile(r"\s*([a-z])(?:\^?(-?\d+))?\s*")


def _reduce(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        for gen, exp in self.syllables:
            if gen < 0:
                raise ValueError(f"negative generator index {gen}")
            if exp == 0:
                raise ValueError("zero exponent in syllable")
        for (g1, _), (g2, _) in zip(self.syllables, self.syllables[1:]):
            if g1 == g2:
                raise ValueError("adjacent syllables share a generator; use Word.reduced")

    @classmethod
    def reduced(cls, syllables: Iterable[Syllable]) -> "Word":
        """Freely reduce an arbitrary syllable sequence."""
        return cls(_reduce(syllables))

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> "Word":
        return cls.reduced([(index, exponent)])

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"a b^2 a^-1"``, ``"ab2a-1"`` or ``"1"`` (the empty word)."""
        text = text.strip()
        if text in ("", "1", "e", "id"):
            return cls()
        pos = 0
        syllables = []
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse word {text!r} at offset {pos}")
            syllables.append((_LETTERS.index(m.group(1)), int(m.group(2) or 1)))
            pos = m.end()
        return cls.reduced(syllables)

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return Word.reduced(self.syllables + other.syllables)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** -n
        return Word.reduced(self.syllables * n)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def conjugate_by(self, g: "Word") -> "Word":
        """``g * self * g^-1``."""
        return g * self * g.inverse()

    def generators(self) -> frozenset[int]:
        return frozenset(g for g, _ in self.syllables)

    def is_cyclically_reduced(self) -> bool:
        return len(self.syllables) < 2 or self.syllables[0][0] != self.syllables[-1][0]

    def rotations(self) -> list["Word"]:
        s = self.syllables
        return [Word(s[i:] + s[:i]) for i in range(max(len(s), 1))]

    def sort_key(self) -> tuple:
        return (len(self.syllables),) + tuple((g, abs(e), e < 0) for g, e in self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            letter = _LETTERS[g] if g < len(_LETTERS) else f"g{g}"
            parts.append(letter if e == 1 else f"{letter}^{e}")
        return " ".join(parts)

    def to_json(self) -> list[list[int]]:
        return [[g, e] for g, e in self.syllables]

    @classmethod
    def from_json(cls, data) -> "Word":
        return cls.reduced((int(g), int(e)) for g, e in data)


def commutator(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()
