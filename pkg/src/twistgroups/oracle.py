"""Brute-force ground truth on the torus.

Words are enumerated over generator syllables ``(D_{a_i}^{n_i})^t`` with
``0 < |t| <= max_step``.  The searches evaluate every reduced syllable
sequence level by level with numpy (exact ``int64`` when an a-priori bound on
the entries allows it, Python integers otherwise), keep the cyclically
reduced hits and report one representative per class of cyclic rotation and
inversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import NotApplicableError
from .systems import CurveSystem
from .torus import (ALL_SLOPES, FixedSlope, Slope, apply, fixed_slope, intersection,
                    twist_matrix, word_matrix)
from .words import Word

_INT64_SAFE = 2 ** 62


def cyclic_reduce(w: Word) -> Word:
    """Cancel or merge the first and last syllables until they use different generators."""
    s = list(w.syllables)
    while len(s) >= 2 and s[0][0] == s[-1][0]:
        g = s[0][0]
        e = s[0][1] + s[-1][1]
        s = s[1:-1]
        if e:
            # the merged syllable sits at either end; keep it in front
            s = [(g, e)] + s
            s = list(Word.reduced(s).syllables)
    return Word(tuple(s))


def canonical(w: Word) -> Word:
    """Least word, by ``Word.sort_key``, among rotations of ``w`` and of its inverse."""
    candidates = w.rotations() + w.inverse().rotations()
    return min(candidates, key=Word.sort_key)


def _steps(max_step: int) -> list[int]:
    return [s for t in range(1, max_step + 1) for s in (t, -t)]


def enumerate_words(h: int, max_syllables: int, max_step: int) -> Iterator[Word]:
    """Nontrivial cyclically reduced words up to rotation and inversion, in
    order of length and then ``Word.sort_key``."""
    if h < 1 or max_syllables < 1 or max_step < 1:
        raise ValueError("bounds must be positive")
    steps = _steps(max_step)
    syllables = [(g, s) for g in range(h) for s in steps]
    for length in range(1, max_syllables + 1):
        found = set()
        for seq in product(syllables, repeat=length):
            if any(seq[k][0] == seq[k + 1][0] for k in range(length - 1)):
                continue
            w = Word(seq)
            if not w.is_cyclically_reduced():
                continue
            if canonical(w) == w:
                found.add(w)
        yield from sorted(found, key=Word.sort_key)


@dataclass(frozen=True)
class _Level:
    mats: np.ndarray  # (N, 4) row-major entries
    first: np.ndarray  # generator of first syllable
    last: np.ndarray  # generator of last syllable
    parent: np.ndarray  # index into previous level, -1 at level 1
    syl: np.ndarray  # syllable id appended at this level


def _search(curves: Sequence[Slope], exponents: Sequence[int], max_syllables: int, max_step: int,
            hit: Callable[[np.ndarray], np.ndarray]) -> list[Word]:
    if len(curves) != len(exponents):
        raise ValueError("one exponent per curve is required")
    if max_syllables < 1 or max_step < 1:
        raise ValueError("bounds must be positive")
    h = len(curves)
    syllables = [(g, s) for g in range(h) for s in _steps(max_step)]
    gens = [twist_matrix(curves[g], exponents[g] * s) for g, s in syllables]
    bound = max(max(abs(m.a) + abs(m.b), abs(m.c) + abs(m.d)) for m in gens) ** max_syllables
    dtype = np.int64 if bound < _INT64_SAFE else object
    gen_arr = np.array([[m.a, m.b, m.c, m.d] for m in gens], dtype=dtype)
    syl_gen = np.array([g for g, _ in syllables])

    levels: list[_Level] = []
    level = _Level(gen_arr.copy(), syl_gen.copy(), syl_gen.copy(),
                   np.full(len(gens), -1), np.arange(len(gens)))
    hits: set[Word] = set()
    for depth in range(1, max_syllables + 1):
        levels.append(level)
        if depth >= 2:
            mask = (level.first != level.last) & hit(level.mats)
            for idx in np.nonzero(mask)[0]:
                hits.add(canonical(_rebuild(levels, depth, int(idx), syllables)))
        if depth == max_syllables:
            break
        parts = []
        for k, (g, _) in enumerate(syllables):
            sel = np.nonzero(level.last != g)[0]
            m, b = level.mats[sel], gen_arr[k]
            prod_ = np.empty_like(m)
            prod_[:, 0] = m[:, 0] * b[0] + m[:, 1] * b[2]
            prod_[:, 1] = m[:, 0] * b[1] + m[:, 1] * b[3]
            prod_[:, 2] = m[:, 2] * b[0] + m[:, 3] * b[2]
            prod_[:, 3] = m[:, 2] * b[1] + m[:, 3] * b[3]
            parts.append((prod_, level.first[sel], np.full(len(sel), g), sel, np.full(len(sel), k)))
        level = _Level(*(np.concatenate([p[i] for p in parts]) for i in range(5)))
    return sorted(hits, key=Word.sort_key)


def _rebuild(levels: list[_Level], depth: int, idx: int, syllables) -> Word:
    seq = []
    for d in range(depth - 1, -1, -1):
        lv = levels[d]
        seq.append(syllables[int(lv.syl[idx])])
        idx = int(lv.parent[idx])
    return Word(tuple(reversed(seq)))


def _is_identity(m: np.ndarray) -> np.ndarray:
    return (m[:, 0] == 1) & (m[:, 1] == 0) & (m[:, 2] == 0) & (m[:, 3] == 1)


def _trace_two(m: np.ndarray) -> np.ndarray:
    t = m[:, 0] + m[:, 3]
    return (t == 2) | (t == -2)


def _curves_of(system_or_curves) -> tuple[Slope, ...]:
    if isinstance(system_or_curves, CurveSystem):
        if not system_or_curves.realized:
            raise NotApplicableError("oracle search needs a torus realisation")
        return system_or_curves.torus_slopes
    return tuple(system_or_curves)


def find_relations(curves, exponents: Sequence[int], max_syllables: int = 6,
                   max_step: int = 3) -> list[Word]:
    """Cyclically reduced words (one per rotation/inversion class) that
    evaluate to the identity matrix."""
    curves = _curves_of(curves)
    found = _search(curves, exponents, max_syllables, max_step, _is_identity)
    # single-syllable words never evaluate to I; searched from length 2
    return [w for w in found if word_matrix(w, curves, exponents).is_identity()]


def find_reducibles(curves, exponents: Sequence[int], max_syllables: int = 6,
                    max_step: int = 3) -> list[tuple[Word, FixedSlope]]:
    """Cyclically reduced words on at least two generators whose matrix is
    ``+-I`` or parabolic, each with the curve it fixes (``ALL_SLOPES`` for ``+-I``)."""
    curves = _curves_of(curves)
    out = []
    for w in _search(curves, exponents, max_syllables, max_step, _trace_two):
        f = fixed_slope(word_matrix(w, curves, exponents))
        assert f is not None
        out.append((w, f))
    return out


def fixes_by_rotation(w: Word, curves, exponents, target: Slope) -> bool:
    """Whether some rotation of ``w`` or of its inverse fixes ``target``."""
    curves = _curves_of(curves)
    for r in w.rotations() + w.inverse().rotations():
        f = fixed_slope(word_matrix(r, curves, exponents))
        if f is ALL_SLOPES or f == target:
            return True
    return False


def _complement(c: Slope) -> Slope:
    """A curve meeting ``c`` exactly once (``p s - q r = 1``)."""
    def egcd(x, y):
        if y == 0:
            return (1 if x >= 0 else -1), 0
        u, v = egcd(y, x % y)
        return v, u - (x // y) * v

    s, t = egcd(c.p, c.q)  # c.p * s + c.q * t == 1
    r0, s0 = -t, s
    # all solutions are (r0, s0) + k c; take the lowest one
    k_max = max(abs(r0), abs(s0)) + 1
    out = min((Slope(r0 + k * c.p, s0 + k * c.q) for k in range(-k_max, k_max + 1)),
              key=lambda x: (x.height, abs(x.p), x.q, x.p))
    assert intersection(out, c) == 1
    return out


def construct_nonfree_triple(a: Slope, b: Slope, g: Word, base: int = 0) -> tuple[CurveSystem, Word, Slope]:
    """Non-free triple ``<D_a, D_b, D_c>`` from a curve of the twist set.

    ``c1 = g(a)`` (or ``g(b)`` with ``base=1``) for a word ``g`` in ``D_a, D_b``;
    ``c`` meets ``c1`` once.  Since ``D_{c1} = g D_a g^-1`` (resp. ``g D_b g^-1``),
    the braid relation between ``D_c`` and ``D_{c1}`` is a relation among the
    generators ``a, b, c`` (indices 0, 1, 2).  Returns the system, the relation
    word and ``c1``.
    """
    if intersection(a, b) < 2:
        raise NotApplicableError("needs (a,b) >= 2")
    if g.generators() - {0, 1}:
        raise ValueError("g must be a word in generators 0 and 1")
    m = word_matrix(g, (a, b))
    c1 = apply(m, (a, b)[base])
    c = _complement(c1)
    d_c1 = Word.gen(base).conjugate_by(g)
    d_c = Word.gen(2)
    relation = (d_c * d_c1 * d_c) * (d_c1 * d_c * d_c1).inverse()
    system = CurveSystem.from_slopes((a, b, c))
    if not word_matrix(relation, system.torus_slopes).is_identity():
        raise AssertionError("braid relation failed to evaluate to the identity")
    return system, relation, c1
