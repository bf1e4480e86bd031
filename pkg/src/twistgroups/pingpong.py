"""Ping-pong regions and bounded verification of the ping-pong lemmas.

For curves ``a_0, ..., a_{h-1}`` and parameters ``mu``, ``lam`` the region of
generator ``i`` is the set of curves ``x`` with

    (x, a_i) < mu[i][j] * (x, a_j)                                for j != i
    (x, a_k) / (x, a_j) < lam[i][j][k] * (a_i, a_k) / (a_i, a_j)  for distinct i, j, k

An infinite ``lam`` entry (stored as ``None``) drops its ratio condition.  For
two curves only the first condition exists and ``mu[0][1]`` is the usual
``lambda`` of the two-curve regions.

The verifiers enumerate every slope up to a height bound and check the
ping-pong inclusions for all powers up to ``power_bound``.  A clean report is
evidence over a finite set of curves, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Optional, Sequence, Union

from .errors import NotApplicableError, OutsideDomainError
from .systems import CurveSystem, Profile
from .torus import Slope, apply, enumerate_slopes, twist_matrix
from .words import Word

Rational = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use Fraction or 'p/q' strings")
    return Fraction(x)


@dataclass(frozen=True)
class PingPongParams:
    """``mu[i][j]`` for ``i != j`` with ``mu[j][i] == 1/mu[i][j]``; ``lam[i][j][k]``
    for distinct indices, ``None`` meaning infinity.

    ``ratios_implied`` records that the regions are known to coincide with the
    regions built from ``mu`` alone, so that exponent bounds need not keep the
    ratio conditions invariant.
    """

    mu: tuple[tuple[Fraction, ...], ...]
    lam: tuple[tuple[tuple[Optional[Fraction], ...], ...], ...]
    ratios_implied: bool = False

    def __post_init__(self):
        h = len(self.mu)
        mu = tuple(tuple(Fraction(1) if i == j else _frac(v) for j, v in enumerate(row))
                   for i, row in enumerate(self.mu))
        object.__setattr__(self, "mu", mu)
        for i in range(h):
            if len(mu[i]) != h:
                raise ValueError("mu must be square")
            for j in range(h):
                if i != j:
                    if mu[i][j] <= 0:
                        raise ValueError(f"mu[{i}][{j}] must be positive")
                    if mu[j][i] != 1 / mu[i][j]:
                        raise ValueError(f"mu[{j}][{i}] must equal 1/mu[{i}][{j}]")
        lam = tuple(tuple(tuple(None if v is None else _frac(v) for v in row) for row in plane)
                    for plane in self.lam)
        object.__setattr__(self, "lam", lam)
        if len(lam) != h or any(len(p) != h or any(len(r) != h for r in p) for p in lam):
            raise ValueError("lam must be an h x h x h tensor")
        for i, j, k in permutations(range(h), 3):
            v = lam[i][j][k]
            if v is not None and v <= 1:
                raise ValueError(f"lam[{i}][{j}][{k}] must exceed 1")

    @property
    def h(self) -> int:
        return len(self.mu)

    @classmethod
    def from_mu(cls, h: int, entries: Optional[Mapping[tuple[int, int], Rational]] = None,
                lam=None, ratios_implied: bool = False) -> "PingPongParams":
        """Build ``mu`` from the entries given (reciprocals filled in, the rest 1).

        ``lam`` is ``None`` (all infinite), a single value, or a callable
        ``lam(i, j, k, mu) -> value``.
        """
        mu = [[Fraction(1)] * h for _ in range(h)]
        for (i, j), v in (entries or {}).items():
            if i == j:
                raise ValueError("mu is only defined off the diagonal")
            v = _frac(v)
            if v <= 0:
                raise ValueError(f"mu[{i}][{j}] must be positive")
            mu[i][j] = v
            mu[j][i] = 1 / v
        for (i, j), v in (entries or {}).items():
            if mu[i][j] != _frac(v):
                raise ValueError(f"conflicting entries for mu[{i}][{j}] and mu[{j}][{i}]")
        tensor = [[[None] * h for _ in range(h)] for _ in range(h)]
        for i, j, k in permutations(range(h), 3):
            if callable(lam):
                tensor[i][j][k] = lam(i, j, k, mu)
            elif lam is not None:
                tensor[i][j][k] = _frac(lam)
        return cls(tuple(map(tuple, mu)), tuple(tuple(map(tuple, p)) for p in tensor), ratios_implied)

    @classmethod
    def triangle(cls, entries: Optional[Mapping[tuple[int, int], Rational]] = None) -> "PingPongParams":
        """Three curves meeting pairwise once on the torus: ``lam_ijk = 1 + mu_ij``.

        The regions then agree with the ``mu``-only regions whenever
        ``mu_ji + mu_ki >= 1`` for every ``i``; this is checked.
        """
        p = cls.from_mu(3, entries, lam=lambda i, j, k, mu: 1 + mu[i][j], ratios_implied=True)
        for i, j, k in permutations(range(3), 3):
            if p.mu[j][i] + p.mu[k][i] < 1:
                raise NotApplicableError(f"mu[{j}][{i}] + mu[{k}][{i}] < 1")
        return p

    def without_lambda(self) -> "PingPongParams":
        h = self.h
        none = tuple(tuple((None,) * h for _ in range(h)) for _ in range(h))
        return PingPongParams(self.mu, none, True)


def lemma34_lambda(system: CurveSystem, params: PingPongParams) -> PingPongParams:
    """Ratio parameters making the full regions equal to the ``mu``-only ones
    when every pair of curves fills the surface."""
    if not system.pairwise_filling:
        raise NotApplicableError("every pair of curves must fill the surface")
    inter = system.inter
    if min(system.off_diagonal()) == 0:
        raise NotApplicableError("some pair of curves is disjoint")

    def lam(i, j, k, mu):
        return 2 * inter[i][j] * (1 + Fraction(inter[k][j], inter[i][k])) * (mu[i][j] + 1)

    return PingPongParams.from_mu(system.h, {(i, j): params.mu[i][j]
                                              for i in range(system.h) for j in range(i + 1, system.h)},
                                  lam=lam, ratios_implied=True)


class Regions:
    """Region membership for a fixed system and parameters, in integer arithmetic."""

    def __init__(self, system: CurveSystem, params: PingPongParams):
        if params.h != system.h:
            raise ValueError(f"parameters are for h={params.h}, system has h={system.h}")
        self.system = system
        self.params = params
        h = system.h
        inter = system.inter
        self._mu = [[(params.mu[i][j].numerator, params.mu[i][j].denominator) for j in range(h)]
                    for i in range(h)]
        # (j, k, num, den): v_k * den * inter[i][j] < num * v_j * inter[i][k]
        self._ratios: list[list[tuple[int, int, int, int]]] = [[] for _ in range(h)]
        for i, j, k in permutations(range(h), 3):
            lam = params.lam[i][j][k]
            if lam is None:
                continue
            if inter[i][j] == 0 or inter[i][k] == 0:
                raise NotApplicableError("finite ratio parameters need positive intersections")
            self._ratios[i].append((j, k, lam.numerator * inter[i][k], lam.denominator * inter[i][j]))

    def profile(self, x: Union[Slope, Profile]) -> tuple[int, ...]:
        return self.system.profile(x)

    def contains(self, x: Union[Slope, Profile], i: int) -> bool:
        v = self.profile(x)
        if sum(v) == 0:
            raise OutsideDomainError("curve is disjoint from every curve of the system")
        return self._contains(v, i)

    def _contains(self, v: Sequence[int], i: int) -> bool:
        vi = v[i]
        for j, (num, den) in enumerate(self._mu[i]):
            if j != i and not vi * den < num * v[j]:
                return False
        for j, k, num, den in self._ratios[i]:
            if not v[k] * den < num * v[j]:
                return False
        return True

    def which(self, x: Union[Slope, Profile]) -> Optional[int]:
        """Index of the region containing ``x``, or ``None``."""
        v = self.profile(x)
        if sum(v) == 0:
            raise OutsideDomainError("curve is disjoint from every curve of the system")
        for i in range(len(v)):
            if self._contains(v, i):
                return i
        return None

    def members(self, x: Union[Slope, Profile]) -> list[int]:
        v = self.profile(x)
        if sum(v) == 0:
            raise OutsideDomainError("curve is disjoint from every curve of the system")
        return [i for i in range(len(v)) if self._contains(v, i)]


def region_membership(x: Union[Slope, Profile], i: int, system: CurveSystem, params: PingPongParams) -> bool:
    return Regions(system, params).contains(x, i)


def _require_realized(system: CurveSystem) -> None:
    if not system.realized:
        raise NotApplicableError("bounded verification needs a torus realisation")


def exceptional_curves(system: CurveSystem, params: PingPongParams, height: int) -> list[Slope]:
    """Curves of height at most ``height`` and positive norm lying in no region."""
    _require_realized(system)
    regions = Regions(system, params)
    out = []
    for x in enumerate_slopes(height):
        v = regions.profile(x)
        if sum(v) and regions.which(v) is None:
            out.append(x)
    return sorted(out)


@dataclass(frozen=True)
class WPPConfig:
    n0: int
    height: int

    def __post_init__(self):
        if self.n0 < 1 or self.height < 1:
            raise ValueError("n0 and height must be positive")


@dataclass(frozen=True)
class Violation:
    kind: str  # "ping-pong", "norm" or "wpp"
    curve: Slope
    word: Word
    image: Slope
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "curve": [self.curve.p, self.curve.q], "word": str(self.word),
                "image": [self.image.p, self.image.q], "detail": self.detail}


@dataclass
class VerificationReport:
    mode: str
    height: int
    power_bound: int
    n0: Optional[int] = None
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    uncovered: list[Slope] = field(default_factory=list)
    empty_regions: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.violations or self.uncovered or self.empty_regions)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "height": self.height,
            "power_bound": self.power_bound,
            "n0": self.n0,
            "checked": self.checked,
            "passed": self.passed,
            "violations": [v.to_json() for v in self.violations],
            "uncovered": [[s.p, s.q] for s in self.uncovered],
            "empty_regions": self.empty_regions,
        }


def _moves(system: CurveSystem, exponents: Sequence[int], power_bound: int):
    """``moves[i]`` lists ``(step, matrix)`` for ``(D_{a_i}^{n_i})^step``, ``0 < |step| <= power_bound``."""
    if len(exponents) != system.h:
        raise ValueError(f"{len(exponents)} exponents given for h={system.h}")
    if any(n < 1 for n in exponents):
        raise ValueError("exponents must be positive")
    if power_bound < 1:
        raise ValueError("power_bound must be positive")
    steps = [s for t in range(1, power_bound + 1) for s in (t, -t)]
    return [[(s, twist_matrix(a, n * s)) for s in steps]
            for a, n in zip(system.torus_slopes, exponents)]


def _ping_pong(system, exponents, params, height, power_bound, *, mode, check_norm,
               require_cover) -> tuple[VerificationReport, Regions, list]:
    _require_realized(system)
    regions = Regions(system, params)
    moves = _moves(system, exponents, power_bound)
    report = VerificationReport(mode, height, power_bound)
    counts = [0] * system.h
    for x in enumerate_slopes(height):
        v = regions.profile(x)
        if not sum(v):
            continue
        r = regions.which(v)
        if r is None:
            report.uncovered.append(x)
            continue
        counts[r] += 1
        size = sum(v)
        for i in range(system.h):
            if i == r:
                continue
            for s, m in moves[i]:
                y = apply(m, x)
                w = regions.profile(y)
                report.checked += 1
                if not regions._contains(w, i):
                    report.violations.append(Violation("ping-pong", x, Word.gen(i, s), y,
                                                       f"image not in region {i}"))
                if check_norm and not sum(w) > size:
                    report.violations.append(Violation("norm", x, Word.gen(i, s), y,
                                                       f"norm {sum(w)} <= {size}"))
    report.empty_regions = [i for i, c in enumerate(counts) if c == 0]
    exceptional = report.uncovered
    if not require_cover:
        report.uncovered = []
    return report, regions, exceptional


def verify_ppl(system: CurveSystem, exponents: Sequence[int], params: PingPongParams,
               height: int, power_bound: int = 5, check_norm: bool = False) -> VerificationReport:
    """Check that every power of generator ``i`` maps every other region into
    region ``i``.  Curves outside all regions are ignored.  With
    ``check_norm`` the norm must also grow strictly on every checked move."""
    report, _, _ = _ping_pong(system, exponents, params, height, power_bound,
                              mode="ppl", check_norm=check_norm, require_cover=False)
    return report


def verify_ppwtc(system: CurveSystem, exponents: Sequence[int], params: PingPongParams,
                 height: int, power_bound: int = 5) -> VerificationReport:
    """Ping-pong with strict norm growth; curves in no region are reported as
    non-coverage and make the check fail."""
    report, _, _ = _ping_pong(system, exponents, params, height, power_bound,
                              mode="ppwtc", check_norm=True, require_cover=True)
    return report


def verify_wpp(system: CurveSystem, exponents: Sequence[int], params: PingPongParams,
               config: WPPConfig, power_bound: int = 5) -> VerificationReport:
    """Weak ping-pong.

    Covered curves get the same checks as :func:`verify_ppwtc`.  Every curve
    left uncovered must be absorbed by each reduced word of ``n0`` syllables:
    reading the word from the right, some suffix ``g_k^* ... `` has to carry
    the curve into the region of its leading generator ``g_k``.  Once that
    happens the remaining syllables keep it in the regions by ping-pong.
    """
    report, regions, exceptional = _ping_pong(system, exponents, params, config.height, power_bound,
                                              mode="wpp", check_norm=True, require_cover=False)
    report.n0 = config.n0
    moves = _moves(system, exponents, power_bound)
    h = system.h

    def absorb(x0: Slope, y: Slope, last: Optional[int], applied: list) -> None:
        for g in range(h):
            if g == last:
                continue
            for s, m in moves[g]:
                z = apply(m, y)
                report.checked += 1
                trail = applied + [(g, s)]
                if regions._contains(regions.profile(z), g):
                    continue
                if len(trail) == config.n0:
                    report.violations.append(Violation(
                        "wpp", x0, Word(tuple(reversed(trail))), z,
                        "no suffix lands in the region of its leading generator"))
                else:
                    absorb(x0, z, g, trail)

    for x in exceptional:
        absorb(x, x, None, [])
    return report
