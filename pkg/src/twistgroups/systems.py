"""Curve systems described by their intersection numbers.

A :class:`CurveSystem` holds the symmetric matrix of pairwise intersection
numbers of ``h`` curves.  It may carry a realisation as torus slopes, in which
case every entry is recomputed and checked.  Systems without a realisation
are trusted as given; nothing here checks that a matrix is realisable on
some surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence, Union

from .errors import InputError, NotApplicableError
from .torus import Slope, as_slope, intersection

Profile = Sequence[int]


@dataclass(frozen=True)
class CurveSystem:
    inter: tuple[tuple[int, ...], ...]
    torus_slopes: Optional[tuple[Slope, ...]] = None
    punctured: bool = False
    pairwise_filling: bool = False

    def __post_init__(self):
        inter = tuple(tuple(int(v) for v in row) for row in self.inter)
        object.__setattr__(self, "inter", inter)
        h = len(inter)
        if h < 2:
            raise InputError("a curve system needs at least 2 curves")
        for i, row in enumerate(inter):
            if len(row) != h:
                raise InputError(f"intersection row {i} has length {len(row)}, expected {h}")
            if row[i] != 0:
                raise InputError(f"intersection[{i}][{i}] must be 0")
            for j, v in enumerate(row):
                if v < 0:
                    raise InputError(f"intersection[{i}][{j}] is negative")
                if inter[j][i] != v:
                    raise InputError(f"intersection matrix not symmetric at ({i},{j})")
        if self.torus_slopes is not None:
            slopes = tuple(as_slope(s) for s in self.torus_slopes)
            object.__setattr__(self, "torus_slopes", slopes)
            if len(slopes) != h:
                raise InputError(f"{len(slopes)} torus slopes given for h={h}")
            for i in range(h):
                for j in range(h):
                    if intersection(slopes[i], slopes[j]) != inter[i][j]:
                        raise InputError(
                            f"intersection[{i}][{j}]={inter[i][j]} but slopes "
                            f"{slopes[i]},{slopes[j]} meet {intersection(slopes[i], slopes[j])} times"
                        )
            if self.pairwise_filling and len(set(slopes)) != h:
                raise InputError("pairwise_filling requires distinct torus slopes")

    @classmethod
    def from_slopes(cls, slopes, punctured: bool = False) -> "CurveSystem":
        """Torus realisation; any two distinct slopes fill the torus."""
        slopes = tuple(as_slope(s) for s in slopes)
        inter = tuple(tuple(intersection(x, y) for y in slopes) for x in slopes)
        return cls(inter, slopes, punctured, len(set(slopes)) == len(slopes))

    @property
    def h(self) -> int:
        return len(self.inter)

    @property
    def realized(self) -> bool:
        return self.torus_slopes is not None

    def profile(self, x: Union[Slope, Profile]) -> tuple[int, ...]:
        """Intersection numbers of ``x`` with each curve of the system."""
        if isinstance(x, Slope):
            if not self.realized:
                raise InputError("a slope was given for a system without torus realisation")
            return tuple(intersection(x, a) for a in self.torus_slopes)
        prof = tuple(int(v) for v in x)
        if len(prof) != self.h:
            raise InputError(f"profile has length {len(prof)}, expected {self.h}")
        if any(v < 0 for v in prof):
            raise InputError("profile entries must be nonnegative")
        return prof

    def curve_norm(self, i: int) -> int:
        """``||a_i||_A``."""
        return sum(self.inter[i])

    def off_diagonal(self) -> list[int]:
        return [self.inter[i][j] for i in range(self.h) for j in range(self.h) if i != j]


def norm(x: Union[Slope, Profile], system: CurveSystem) -> int:
    return sum(system.profile(x))


def lemma11_interval(ab: int, ac: int, bc: int, n: int) -> tuple[int, int]:
    """Interval containing ``(D_a^{+-n}(b), c)`` given the three pairwise
    intersection numbers and ``n >= 0``."""
    centre = n * ab * ac
    return centre - bc, centre + bc


def cauchy_schwarz_check(c1: Slope, c2: Slope, system: CurveSystem, punctured: Optional[bool] = None) -> bool:
    """Whether ``(c1, c2) <= k ||c1||_A ||c2||_A`` with ``k = 2`` on punctured
    surfaces and ``k = 1`` otherwise.  ``system`` must fill the torus."""
    if not system.realized:
        raise NotApplicableError("Cauchy-Schwarz check needs a torus realisation")
    if len(set(system.torus_slopes)) < 2:
        raise NotApplicableError("curves do not fill the torus")
    if punctured is None:
        punctured = system.punctured
    factor = 2 if punctured else 1
    return intersection(c1, c2) <= factor * norm(c1, system) * norm(c2, system)


@dataclass(frozen=True)
class SystemStats:
    m: int
    M: int
    M0: Optional[Fraction]

    def __iter__(self):
        return iter((self.m, self.M, self.M0))


def stats(system: CurveSystem) -> SystemStats:
    """Minimum and maximum pairwise intersection and the spread ratio
    ``M0 = max (a_i,a_k) / ((a_i,a_j)(a_j,a_k))`` over distinct ``i, j, k``."""
    off = system.off_diagonal()
    if min(off) == 0:
        raise NotApplicableError("some pair of curves is disjoint")
    inter = system.inter
    m0 = None
    for i, j, k in permutations(range(system.h), 3):
        r = Fraction(inter[i][k], inter[i][j] * inter[j][k])
        if m0 is None or r > m0:
            m0 = r
    return SystemStats(min(off), max(off), m0)
