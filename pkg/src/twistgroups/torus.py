"""Simple closed curves on the torus and Dehn twists as SL(2,Z) matrices.

A curve is a primitive integer pair ``(p, q)`` up to sign.  The twist about
``(p, q)`` acts on column vectors by

    I + n * [[p*q, -p*p], [q*q, -p*q]]

which gives ``[[1,-1],[0,1]]``, ``[[1,0],[1,1]]`` and ``[[2,-1],[1,0]]`` for
the curves ``(1,0)``, ``(0,1)`` and ``(1,1)``.  A word ``w = s_1 s_2 ... s_k``
evaluates to the matrix product ``S_1 S_2 ... S_k``, so the last syllable acts
first, as for composition of maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence, Union

from .errors import InvalidCurveError
from .words import Word


@dataclass(frozen=True, order=True)
class Slope:
    """Unoriented essential simple closed curve on the torus.

    The constructor normalises to ``q > 0`` or ``(p, q) == (1, 0)`` and
    rejects pairs that are zero or not primitive.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if (p, q) == (0, 0) or gcd(p, q) != 1:
            raise InvalidCurveError(f"({p},{q}) is not a primitive integer pair")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def height(self) -> int:
        return max(abs(self.p), abs(self.q))

    def __iter__(self):
        return iter((self.p, self.q))

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


def canonicalize(p: int, q: int) -> Slope:
    return Slope(p, q)


def as_slope(x) -> Slope:
    if isinstance(x, Slope):
        return x
    p, q = x
    return Slope(p, q)


def intersection(x: Slope, y: Slope) -> int:
    return abs(x.p * y.q - x.q * y.p)


@dataclass(frozen=True)
class UnimodularMatrix:
    """2x2 integer matrix ``[[a, b], [c, d]]`` with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls) -> "UnimodularMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "UnimodularMatrix":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "UnimodularMatrix":
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "UnimodularMatrix":
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "UnimodularMatrix":
        base = self if n >= 0 else self.inverse()
        result = UnimodularMatrix.identity()
        for _ in range(abs(n)):
            result = result @ base
        return result

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def is_central(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def twist_matrix(c: Slope, n: int) -> UnimodularMatrix:
    p, q = c.p, c.q
    return UnimodularMatrix(1 + n * p * q, -n * p * p, n * q * q, 1 - n * p * q)


def apply(m: UnimodularMatrix, x: Slope) -> Slope:
    return Slope(m.a * x.p + m.b * x.q, m.c * x.p + m.d * x.q)


def word_matrix(w: Word, curves: Sequence[Slope], exponents: Sequence[int] | None = None) -> UnimodularMatrix:
    """Matrix of ``w`` where generator ``i`` is the twist about ``curves[i]``
    raised to ``exponents[i]`` (default 1)."""
    if exponents is None:
        exponents = [1] * len(curves)
    result = UnimodularMatrix.identity()
    for gen, e in w:
        if not 0 <= gen < len(curves):
            raise IndexError(f"generator {gen} out of range for {len(curves)} curves")
        result = result @ twist_matrix(curves[gen], exponents[gen] * e)
    return result


def enumerate_slopes(height: int) -> list[Slope]:
    """All curves with ``max(|p|, |q|) <= height``, ordered by height, then q, then p."""
    if height < 1:
        raise ValueError("height must be at least 1")
    out = [Slope(1, 0)]
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            if gcd(p, q) == 1:
                out.append(Slope(p, q))
    out.sort(key=lambda s: (s.height, s.q, s.p))
    return out


class _AllSlopes:
    """Marker returned when a matrix fixes every curve (``+I`` or ``-I``)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ALL_SLOPES"

    __str__ = __repr__

    def __reduce__(self):
        return (_AllSlopes, ())


ALL_SLOPES = _AllSlopes()

FixedSlope = Union[Slope, _AllSlopes, None]


def fixed_slope(m: UnimodularMatrix) -> FixedSlope:
    """Curve fixed by ``m``: ``ALL_SLOPES`` for ``+-I``, the unique fixed curve of a
    parabolic matrix, otherwise ``None``."""
    if m.is_central():
        return ALL_SLOPES
    t = m.trace
    if abs(t) != 2:
        return None
    # m - (t/2) I is nonzero nilpotent; its kernel is the fixed line
    s = t // 2
    a, b, c = m.a - s, m.b, m.c
    if b != 0 or a != 0:
        p, q = -b, a
    else:
        p, q = -(m.d - s), c
    g = gcd(p, q)
    x = Slope(p // g, q // g)
    assert apply(m, x) == x
    return x
