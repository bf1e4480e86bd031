"""Reference computations written independently of the library.

Twists are built from the transvection formula ``v -> v + n det[v|c] c``
rather than the library's closed matrix, words are multiplied as plain
nested tuples, and every bound is re-derived straight from its defining
inequalities with ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import ceil, gcd

Mat = tuple[tuple[int, int], tuple[int, int]]

ID: Mat = ((1, 0), (0, 1))
NEG_ID: Mat = ((-1, 0), (0, -1))


def det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def ref_intersection(x, y) -> int:
    return abs(det2(x, y))


def ref_twist(c, n) -> Mat:
    """Columns are the images of e1 and e2 under ``v + n det[v|c] c``."""
    c = tuple(c)

    def img(v):
        k = n * det2(v, c)
        return (v[0] + k * c[0], v[1] + k * c[1])

    c1, c2 = img((1, 0)), img((0, 1))
    return ((c1[0], c2[0]), (c1[1], c2[1]))


def mul(x: Mat, y: Mat) -> Mat:
    return tuple(tuple(sum(x[r][t] * y[t][s] for t in range(2)) for s in range(2)) for r in range(2))


def ref_word(syllables, curves, exponents=None) -> Mat:
    """Product of the syllable matrices, left to right."""
    if exponents is None:
        exponents = [1] * len(curves)
    out = ID
    for g, e in syllables:
        out = mul(out, ref_twist(curves[g], exponents[g] * e))
    return out


def act(m: Mat, v):
    x, y = m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    return (x, y)


def canon(p, q):
    if q < 0 or (q == 0 and p < 0):
        return (-p, -q)
    return (p, q)


def slopes_up_to(height):
    out = set()
    for p in range(-height, height + 1):
        for q in range(-height, height + 1):
            if (p, q) != (0, 0) and gcd(p, q) == 1:
                out.add(canon(p, q))
    return sorted(out)


def ref_fixes(m: Mat, v) -> bool:
    return act(m, v) == canon(*v)


# ------------------------------------------------------------ regions

def ref_in_region(profile, i, inter, mu, lam) -> bool:
    h = len(inter)
    for j in range(h):
        if j != i and not Fraction(profile[i]) < mu[i][j] * profile[j]:
            return False
    for j, k in permutations([t for t in range(h) if t != i], 2):
        bound = lam[i][j][k]
        if bound is None:
            continue
        # (x,a_k)/(x,a_j) < lam (a_i,a_k)/(a_i,a_j), with (x,a_j) = 0 read as +infinity
        if profile[j] == 0:
            if profile[k] > 0:
                return False
            continue
        if not Fraction(profile[k], profile[j]) < bound * Fraction(inter[i][k], inter[i][j]):
            return False
    return True


# ------------------------------------------------------------ bounds

def ref_lemma31_lower_bounds(i, inter, mu, lam, implied=False):
    """All lower bounds on ``n`` for generator ``i``, one list per target ``j``."""
    A = lambda s, t: Fraction(inter[s][t])
    h = len(inter)
    out = {}
    for j in range(h):
        if j == i:
            continue
        ks = [k for k in range(h) if k not in (i, j)]
        b = [2 / (mu[i][j] * A(i, j))]
        for k in ks:
            b.append(1 / (mu[i][k] * A(i, k)) + lam[j][i][k] * A(j, k) / (A(i, j) * A(i, k)))
        if not implied:
            for k in ks:
                for l in ks:
                    if k != l and lam[i][k][l] is not None:
                        L = lam[i][k][l]
                        b.append(lam[j][i][l] / (L - 1) * A(j, l) / (A(i, l) * A(j, i))
                                 + L * lam[j][i][k] / (L - 1) * A(j, k) / (A(j, i) * A(i, k)))
            for k in ks:
                if lam[i][k][j] is not None:
                    L = lam[i][k][j]
                    b.append(1 / ((L - 1) * mu[i][j] * A(i, j))
                             + L * lam[j][i][k] / (L - 1) * A(j, k) / (A(j, i) * A(i, k)))
            for l in ks:
                if lam[i][j][l] is not None:
                    L = lam[i][j][l]
                    b.append(L / ((L - 1) * mu[i][j] * A(i, j))
                             + lam[j][i][l] / (L - 1) * A(j, l) / (A(j, i) * A(i, l)))
        out[j] = b
    return out


def ref_lemma35(i, j, inter, mu, lam) -> Fraction:
    h = len(inter)
    s = mu[j][i] + sum((lam[j][i][k] * Fraction(inter[j][k], inter[j][i])
                        for k in range(h) if k not in (i, j)), Fraction(0))
    return Fraction(2, sum(inter[i])) * s


def satisfies_all(n, bounds) -> bool:
    return all(n >= b for bs in bounds.values() for b in bs)


def ref_stats(inter):
    h = len(inter)
    off = [inter[i][j] for i in range(h) for j in range(h) if i != j]
    m0 = max((Fraction(inter[i][k], inter[i][j] * inter[j][k])
              for i in range(h) for j in range(h) for k in range(h) if len({i, j, k}) == 3), default=None)
    return min(off), max(off), m0


def ref_ceil(x: Fraction) -> int:
    return max(1, ceil(x))


# ------------------------------------------------------------ closed-form tables

def ref_free_2(m, n1, n2) -> bool:
    if m == 0:
        return False
    if m >= 2:
        return True
    return sorted((n1, n2)) not in ([1, 1], [1, 2], [1, 3])


def ref_relpa_2(m, n1, n2) -> bool:
    """The closed-form table as printed: m >= 3 always; m = 2 unless (1,1);
    m = 1 unless {n1,n2} in {{1,1},{1,2},{1,3},{2,2}}."""
    if m >= 3:
        return True
    if m == 2:
        return (n1, n2) != (1, 1)
    return sorted((n1, n2)) not in ([1, 1], [1, 2], [1, 3], [2, 2])


def ref_triple_sum(n) -> Fraction:
    return sum(Fraction(1, k) for k in n)
