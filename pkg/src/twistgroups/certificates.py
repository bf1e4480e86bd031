"""Closed-form classifiers and exponent bounds for groups generated by powers
of Dehn twists.

Every classifier returns a :class:`Verdict`.  A ``yes`` backed by a theorem
records the hypothesis values that were checked; a ``no`` carries a
:class:`Witness` that is re-verified on a torus realisation before it is
returned.

Theorem tags used in payloads:

``ping-pong-two``        two curves, ping-pong on ``(x,a) < lam (x,b)`` regions
``braid-relations``      the two-curve relations at intersection number 1
``disjoint-commute``     twists about disjoint curves commute
``pure-two``             two curves, ping-pong with strict norm growth
``spread-bound``         all spread ratios at most 1/6, exponents 1
``spread-exponent``      uniform exponent ``ceil(6 M0)``
``filling-relpa``        pairwise filling curves, uniform exponent bound
``torus-triple-free``    three curves meeting pairwise once, sum of 1/n_i <= 1
``torus-triple-relpa``   same, sum of 1/n_i < 1
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Optional, Sequence

from .errors import NotApplicableError
from .pingpong import PingPongParams, lemma34_lambda
from .systems import CurveSystem, stats
from .torus import (ALL_SLOPES, FixedSlope, Slope, UnimodularMatrix, apply, fixed_slope,
                    word_matrix)
from .words import Word, commutator

__all__ = [
    "Verdict", "Witness", "lemma21_min_exponents", "classify_free_2", "classify_relpa_2",
    "nonfree_witness_2", "lemma31_terms", "lemma31_bound", "lemma31_min_exponent",
    "lemma31_exponents", "lemma34_lambda", "lemma35_bound", "lemma35_min_exponent",
    "thm32_check", "thm33_exponent", "thm36_exponent", "thm36_verdict",
    "torus_triple_certificate", "torus_triple_relpa", "TORUS_TRIPLE", "STANDARD_PAIRS",
]

FREENESS = "freeness"
RELPA = "relative-pA"

TORUS_TRIPLE = (Slope(1, 0), Slope(0, 1), Slope(1, 1))
STANDARD_PAIRS = {
    0: (Slope(1, 0), Slope(1, 0)),
    1: (Slope(1, 0), Slope(0, 1)),
    2: (Slope(1, 0), Slope(1, 2)),
    3: (Slope(1, 0), Slope(1, 3)),
    4: (Slope(1, 0), Slope(1, 4)),
}


@dataclass(frozen=True)
class Witness:
    """A word in the generators ``D_{curves[i]}^{exponents[i]}``.

    ``kind == "relation"``: the word is nontrivial and evaluates to the identity.
    ``kind == "reducible"``: the word evaluates to ``+-I`` or a parabolic matrix
    fixing ``fixed``.
    """

    kind: str
    word: Word
    curves: tuple[Slope, ...]
    exponents: tuple[int, ...]
    fixed: FixedSlope = None
    note: str = ""

    @property
    def matrix(self) -> UnimodularMatrix:
        return word_matrix(self.word, self.curves, self.exponents)

    def verify(self) -> bool:
        m = self.matrix
        if not self.word.syllables:
            return False
        if self.kind == "relation":
            return m.is_identity()
        if self.kind == "reducible":
            if len(self.word.generators()) < 2:
                return False
            f = fixed_slope(m)
            if f is None or f != self.fixed:
                return False
            return f is ALL_SLOPES or apply(m, f) == f
        return False


@dataclass(frozen=True)
class Verdict:
    question: str  # "freeness" or "relative-pA"
    status: str  # "yes", "no" or "unknown"
    certificate_kind: str  # "theorem", "bounded-verification" or "witness"
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.question not in (FREENESS, RELPA):
            raise ValueError(f"unknown question {self.question!r}")
        if self.status not in ("yes", "no", "unknown"):
            raise ValueError(f"unknown status {self.status!r}")
        if self.certificate_kind not in ("theorem", "bounded-verification", "witness"):
            raise ValueError(f"unknown certificate kind {self.certificate_kind!r}")

    @property
    def witness(self) -> Optional[Witness]:
        return self.payload.get("witness")


def _checked(w: Witness) -> Witness:
    if not w.verify():
        raise AssertionError(f"witness {w.word} failed verification")
    return w


def _ceil(x: Fraction) -> int:
    return max(1, math.ceil(x))


# ---------------------------------------------------------------- two curves

def lemma21_min_exponents(m: int, lam) -> tuple[int, int]:
    """Smallest exponents ``(n_a, n_b)`` with ``m n_a >= 2/lam`` and ``m n_b >= 2 lam``."""
    lam = Fraction(lam)
    if m < 1 or lam <= 0:
        raise ValueError("need m >= 1 and lam > 0")
    return math.ceil(Fraction(2) / (lam * m)), math.ceil(2 * lam / m)


def _lambda_for(m: int, n1: int, n2: int, choices) -> Optional[Fraction]:
    for lam in choices:
        na, nb = lemma21_min_exponents(m, lam)
        if n1 >= na and n2 >= nb:
            return Fraction(lam)
    return None


def nonfree_witness_2(n: int) -> tuple[Word, Word]:
    """Relation ``lhs == rhs`` in ``<D_a, D_b^n>`` for curves meeting once,
    written with ``a = D_a`` and ``b = D_b`` (index 0 and 1)."""
    a, b = Word.gen(0), Word.gen(1)
    if n == 1:
        return a * b * a, b * a * b
    if n in (2, 3):
        k = {2: 4, 3: 3}[n]
        u = (a * b ** n) ** k
        return u * a, a * u
    raise ValueError("relations are only known for n in {1, 2, 3}")


def _to_generators(w: Word, steps: Sequence[int]) -> Word:
    """Rewrite a word in twists as a word in ``D_i^{steps[i]}``."""
    out = []
    for g, e in w:
        if e % steps[g]:
            raise ValueError(f"exponent {e} of generator {g} not divisible by {steps[g]}")
        out.append((g, e // steps[g]))
    return Word.reduced(out)


def _relation_m1(n1: int, n2: int) -> Optional[Witness]:
    small, big = sorted((n1, n2))
    if small != 1 or big > 3:
        return None
    # role a is the generator with exponent 1
    a_idx = 0 if n1 == 1 else 1
    b_idx = 1 - a_idx
    lhs, rhs = nonfree_witness_2(big)
    relabel = {0: a_idx, 1: b_idx}
    twist_rel = Word.reduced((relabel[g], e) for g, e in (lhs * rhs.inverse()))
    steps = (n1, n2)
    word = _to_generators(twist_rel, steps)
    return _checked(Witness("relation", word, STANDARD_PAIRS[1], steps,
                            note=f"{lhs} = {rhs} with a = D_{'ab'[a_idx]}, b = D_{'ab'[b_idx]}"))


def classify_free_2(m: int, n1: int, n2: int) -> Verdict:
    """Is ``<D_a^{n1}, D_b^{n2}>`` free of rank 2 when ``(a, b) = m``?"""
    if m < 0 or n1 < 1 or n2 < 1:
        raise ValueError("need m >= 0 and positive exponents")
    hyp = {"m": m, "exponents": [n1, n2]}
    if m == 0:
        w = _checked(Witness("relation", commutator(Word.gen(0), Word.gen(1)),
                             STANDARD_PAIRS[0], (n1, n2), note="twists about disjoint curves commute"))
        return Verdict(FREENESS, "no", "witness", {"theorem": "disjoint-commute", **hyp, "witness": w})
    if m == 1:
        w = _relation_m1(n1, n2)
        if w is not None:
            return Verdict(FREENESS, "no", "witness", {"theorem": "braid-relations", **hyp, "witness": w})
    lam = _lambda_for(m, n1, n2, (1, 2, Fraction(1, 2)))
    assert lam is not None
    return Verdict(FREENESS, "yes", "theorem", {
        "theorem": "ping-pong-two", **hyp, "lambda": lam,
        "required": list(lemma21_min_exponents(m, lam)),
    })


_RELPA_LAMBDAS = (Fraction(4, 3), Fraction(3, 4), Fraction(9, 4), Fraction(4, 9))


def _reducible_m1(n1: int, n2: int) -> Optional[Witness]:
    pattern = tuple(sorted((n1, n2)))
    a_idx = 0 if n1 <= n2 else 1
    b_idx = 1 - a_idx
    curves = STANDARD_PAIRS[1]
    x, y = Word.gen(a_idx), Word.gen(b_idx)
    if pattern == (1, 1) or pattern == (1, 2):
        k = 3 if pattern == (1, 1) else 2
        word, note = (x * y) ** k, "power of a finite-order element equal to -I"
    elif pattern == (1, 3):
        word, note = x * y * x * y ** 2, "parabolic element"
    elif pattern == (2, 2):
        word, note = y * x, "D_b^2 D_a^2 is parabolic"
    elif pattern == (1, 4):
        word, note = y * x, "D_b^4 D_a is parabolic"
    else:
        return None
    m = word_matrix(word, curves, (n1, n2))
    return _checked(Witness("reducible", word, curves, (n1, n2), fixed_slope(m), note))


def classify_relpa_2(m: int, n1: int, n2: int) -> Verdict:
    """Is ``<D_a^{n1}, D_b^{n2}>`` relatively pseudo-Anosov when ``(a, b) = m >= 1``?

    Exponents ``{1, 4}`` at ``m = 1`` are answered ``no``: ``D_b^4 D_a`` is
    parabolic on the torus and fixes ``(1,2)``.
    """
    if m < 1:
        raise NotApplicableError("relative pseudo-Anosov question needs (a,b) >= 1")
    if n1 < 1 or n2 < 1:
        raise ValueError("exponents must be positive")
    hyp = {"m": m, "exponents": [n1, n2]}
    if m == 2 and (n1, n2) == (1, 1):
        a, b = STANDARD_PAIRS[2]
        w = _checked(Witness("reducible", Word.gen(1) * Word.gen(0), (a, b), (1, 1), Slope(1, 1),
                             "D_b D_a fixes (1,1)"))
        return Verdict(RELPA, "no", "witness", {**hyp, "witness": w})
    if m == 1:
        w = _reducible_m1(n1, n2)
        if w is not None:
            return Verdict(RELPA, "no", "witness", {**hyp, "witness": w})
    lam = _lambda_for(m, n1, n2, _RELPA_LAMBDAS)
    assert lam is not None, (m, n1, n2)
    return Verdict(RELPA, "yes", "theorem", {
        "theorem": "pure-two", **hyp, "lambda": lam,
        "required": list(lemma21_min_exponents(m, lam)),
    })


# ------------------------------------------------------------ h >= 3 bounds

def _positive(system: CurveSystem) -> None:
    if min(system.off_diagonal()) == 0:
        raise NotApplicableError("all pairwise intersection numbers must be positive")


def _lam(params: PingPongParams, i: int, j: int, k: int) -> Fraction:
    v = params.lam[i][j][k]
    if v is None:
        raise NotApplicableError(f"lam[{i}][{j}][{k}] must be finite for this bound")
    return v


def lemma31_terms(i: int, j: int, system: CurveSystem, params: PingPongParams) -> list[tuple[str, Fraction]]:
    """Lower bounds on ``n`` making ``D_{a_i}^{+-n}`` map region ``j`` into region ``i``.

    Each term is labelled ``family:indices``.  The three families that keep
    the ratio conditions of region ``i`` are skipped when
    ``params.ratios_implied`` is set or the relevant ``lam`` is infinite.
    """
    _positive(system)
    if i == j:
        raise ValueError("i and j must differ")
    I, mu = system.inter, params.mu
    others = [k for k in range(system.h) if k not in (i, j)]
    terms = [(f"1:{j}", Fraction(2) / (mu[i][j] * I[i][j]))]
    for k in others:
        terms.append((f"2:{k}", 1 / (mu[i][k] * I[i][k])
                      + _lam(params, j, i, k) * Fraction(I[j][k], I[i][j] * I[i][k])))
    if params.ratios_implied:
        return terms
    for k, l in permutations(others, 2):
        lkl = params.lam[i][k][l]
        if lkl is None:
            continue
        terms.append((f"3:{k},{l}",
                      _lam(params, j, i, l) / (lkl - 1) * Fraction(I[j][l], I[i][l] * I[j][i])
                      + lkl * _lam(params, j, i, k) / (lkl - 1) * Fraction(I[j][k], I[j][i] * I[i][k])))
    for k in others:
        lkj = params.lam[i][k][j]
        if lkj is None:
            continue
        terms.append((f"4:{k}",
                      1 / ((lkj - 1) * mu[i][j] * I[i][j])
                      + lkj * _lam(params, j, i, k) / (lkj - 1) * Fraction(I[j][k], I[j][i] * I[i][k])))
    for l in others:
        ljl = params.lam[i][j][l]
        if ljl is None:
            continue
        terms.append((f"5:{l}",
                      ljl / ((ljl - 1) * mu[i][j] * I[i][j])
                      + _lam(params, j, i, l) / (ljl - 1) * Fraction(I[j][l], I[j][i] * I[i][l])))
    return terms


def lemma31_bound(i: int, j: int, system: CurveSystem, params: PingPongParams) -> Fraction:
    return max(t for _, t in lemma31_terms(i, j, system, params))


def lemma31_min_exponent(i: int, system: CurveSystem, params: PingPongParams) -> tuple[Fraction, int]:
    """Exact bound over all ``j != i`` and the least integer exponent meeting it."""
    bound = max(lemma31_bound(i, j, system, params) for j in range(system.h) if j != i)
    return bound, _ceil(bound)


def lemma31_exponents(system: CurveSystem, params: PingPongParams) -> tuple[int, ...]:
    return tuple(lemma31_min_exponent(i, system, params)[1] for i in range(system.h))


def lemma35_bound(i: int, j: int, system: CurveSystem, params: PingPongParams) -> Fraction:
    """Bound on ``n`` for strict norm growth of ``D_{a_i}^{+-n}`` on region ``j``."""
    _positive(system)
    I = system.inter
    total = params.mu[j][i]
    for k in range(system.h):
        if k not in (i, j):
            total += _lam(params, j, i, k) * Fraction(I[j][k], I[j][i])
    return Fraction(2, system.curve_norm(i)) * total


def lemma35_min_exponent(i: int, j: int, system: CurveSystem, params: PingPongParams) -> int:
    return _ceil(lemma35_bound(i, j, system, params))


def thm32_check(system: CurveSystem) -> Verdict:
    """Freeness of ``<D_{a_1}, ..., D_{a_h}>`` from the spread ratios."""
    if system.h < 3:
        raise NotApplicableError("needs at least three curves")
    st = stats(system)
    hyp = {"m": st.m, "M": st.M, "M0": st.M0, "bound": Fraction(1, 6),
           "M_le_m2_over_6": 6 * st.M <= st.m ** 2, "exponents": [1] * system.h}
    if st.M0 <= Fraction(1, 6):
        params = PingPongParams.from_mu(system.h, lam=2)
        hyp["ping_pong_exponents"] = list(lemma31_exponents(system, params))
        return Verdict(FREENESS, "yes", "theorem", {"theorem": "spread-bound", **hyp})
    return Verdict(FREENESS, "unknown", "theorem", {"theorem": "spread-bound", **hyp})


def thm33_exponent(system: CurveSystem) -> int:
    """Least ``n`` with ``n >= 6 M0``; ``<D_{a_i}^n>`` is then free."""
    if system.h < 3:
        raise NotApplicableError("needs at least three curves")
    return _ceil(6 * stats(system).M0)


def thm36_exponent(system: CurveSystem) -> int:
    """Least uniform exponent with ``n >= 6M/m`` and ``n >= 4M/m + 5``."""
    if not system.pairwise_filling:
        raise NotApplicableError("every pair of curves must fill the surface")
    st = stats(system)
    if st.m < 2:
        raise NotApplicableError("minimum intersection number must be at least 2")
    return max(_ceil(Fraction(6 * st.M, st.m)), _ceil(Fraction(4 * st.M, st.m) + 5))


def thm36_verdict(system: CurveSystem, n: Optional[int] = None) -> Verdict:
    need = thm36_exponent(system)
    st = stats(system)
    payload = {"theorem": "filling-relpa", "m": st.m, "M": st.M, "required": need}
    if n is None:
        n = need
    payload["exponent"] = n
    return Verdict(RELPA, "yes" if n >= need else "unknown", "theorem", payload)


# ------------------------------------------------------------ torus triple

# mu entries (mu_21, mu_31, mu_32) with 1-based role indices
_TRIPLE_FAMILIES = (
    (Fraction(1), Fraction(1), Fraction(1)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(1)),
    (Fraction(2, 3), Fraction(1, 3), Fraction(1, 2)),
)


def _triple_params(family, roles) -> PingPongParams:
    """Family assigned so that role r (0, 1, 2) sits on generator ``roles[r]``."""
    m21, m31, m32 = family
    return PingPongParams.triangle({
        (roles[1], roles[0]): m21,
        (roles[2], roles[0]): m31,
        (roles[2], roles[1]): m32,
    })


def _triple_sum(n) -> Fraction:
    return sum(Fraction(1, k) for k in n)


def _validate_triple(n):
    if len(n) != 3 or any(k < 1 for k in n):
        raise ValueError("need three positive exponents")


def torus_triple_certificate(n1: int, n2: int, n3: int) -> Verdict:
    """Freeness of ``<D_{a_i}^{n_i}>`` for three curves meeting pairwise once."""
    n = (n1, n2, n3)
    _validate_triple(n)
    system = CurveSystem.from_slopes(TORUS_TRIPLE)
    total = _triple_sum(n)
    if total <= 1:
        for family in _TRIPLE_FAMILIES:
            for roles in permutations(range(3)):
                params = _triple_params(family, roles)
                need = lemma31_exponents(system, params)
                if all(a >= b for a, b in zip(n, need)):
                    return Verdict(FREENESS, "yes", "theorem", {
                        "theorem": "torus-triple-free", "exponents": list(n), "sum": total,
                        "mu": [[params.mu[i][j] for j in range(3)] for i in range(3)],
                        "required": list(need),
                    })
        raise AssertionError(f"no mu family covers {n}")
    for i, j in ((0, 1), (0, 2), (1, 2)):
        w = _relation_m1(n[i], n[j])
        if w is None:
            continue
        remap = {0: i, 1: j}
        word = Word.reduced((remap[g], e) for g, e in w.word)
        embedded = _checked(Witness("relation", word, TORUS_TRIPLE, n,
                                    note=f"relation between generators {i} and {j}: {w.note}"))
        return Verdict(FREENESS, "no", "witness", {
            "theorem": "braid-relations", "exponents": list(n), "sum": total, "witness": embedded,
        })
    return Verdict(FREENESS, "unknown", "theorem", {"exponents": list(n), "sum": total})


def _triple_reducible(n, pattern) -> Witness:
    """Word ``D_b^* D_a^* D_c^*`` with roles a, b, c placed on generators whose
    exponents read ``pattern``; role placements and signs are searched in a
    fixed order, all-positive signs first."""
    for roles in permutations(range(3)):
        if tuple(n[r] for r in roles) != pattern:
            continue
        a, b, c = roles
        for sa, sb, sc in product((1, -1), repeat=3):
            word = Word(((b, sb), (a, sa), (c, sc)))
            f = fixed_slope(word_matrix(word, TORUS_TRIPLE, n))
            if f is not None:
                return _checked(Witness("reducible", word, TORUS_TRIPLE, tuple(n), f))
    raise AssertionError(f"no reducible word found for {n}")


def torus_triple_relpa(n1: int, n2: int, n3: int) -> Verdict:
    """Relative pseudo-Anosov question for three curves meeting pairwise once."""
    n = (n1, n2, n3)
    _validate_triple(n)
    total = _triple_sum(n)
    hyp = {"exponents": list(n), "sum": total}
    if total < 1:
        return Verdict(RELPA, "yes", "theorem", {"theorem": "torus-triple-relpa", **hyp})
    s = tuple(sorted(n))
    if s[:2] == (2, 2) or s in ((2, 3, 6), (2, 4, 4)):
        return Verdict(RELPA, "no", "witness", {**hyp, "witness": _triple_reducible(n, s)})
    return Verdict(RELPA, "unknown", "theorem", hyp)
