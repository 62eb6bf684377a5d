"""Independent brute-force oracles used by the unit and acceptance tests.

Nothing here shares logic with the library's closed-form paths: Hilbert
symbols are decided by primitive-solution searches modulo prime powers,
finite-field isometry by explicit change-of-basis search, and quadratic-form
classes in characteristic 2 by counting zeros.
"""

from fractions import Fraction
from itertools import product


def hilbert_brute(a, b, place, precision=None):
    """(a,b)_v by brute force: solvability of z^2 = a x^2 + b y^2.

    At the real place this is a sign test.  At a finite place v = p we search
    for a primitive solution modulo p^k; by Hensel's lemma this decides
    Q_p-solvability once k exceeds twice the coefficient valuations plus one
    (callers pass squarefree-part inputs, so the defaults suffice).
    """
    a, b = Fraction(a), Fraction(b)
    if place == "real":
        return 1 if a > 0 or b > 0 else -1
    p = place
    # Clear denominators and square factors out of the search.
    an = a.numerator * a.denominator
    bn = b.numerator * b.denominator
    k = precision or (6 if p == 2 else 3)
    M = p**k
    an %= M
    bn %= M
    sq_all = {z * z % M for z in range(M)}
    sq_unit = {z * z % M for z in range(M) if z % p}
    for x in range(M):
        axx = an * x * x % M
        x_unit = x % p != 0
        for y in range(M):
            v = (axx + bn * y * y) % M
            if x_unit or y % p:
                if v in sq_all:
                    return 1
            elif v in sq_unit:
                return 1
    return -1


def fp_isometric_brute(field, d1, d2):
    """Decide congruence of two diagonal forms over F_p by basis search.

    Searches column by column for an invertible P with P^T D1 P = D2, pruning
    on the Gram conditions as each column is added.  Intended for dim <= 3.
    """
    dim = len(d1)
    if len(d2) != dim:
        return False
    p = field.p
    vectors = list(product(range(p), repeat=dim))[1:]  # nonzero columns

    def q(v):
        return sum(d1[i] * v[i] * v[i] for i in range(dim)) % p

    def b(v, w):
        return sum(d1[i] * v[i] * w[i] for i in range(dim)) % p

    by_value = {}
    for v in vectors:
        by_value.setdefault(q(v), []).append(v)

    def independent(cols, v):
        # Rank check over F_p on the candidate column set.
        rows = [list(c) for c in cols] + [list(v)]
        m = [r[:] for r in rows]
        rank = 0
        for col in range(dim):
            piv = next((r for r in range(rank, len(m)) if m[r][col] % p), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = pow(m[rank][col], -1, p)
            for r in range(len(m)):
                if r != rank and m[r][col] % p:
                    c = m[r][col] * inv % p
                    m[r] = [(m[r][t] - c * m[rank][t]) % p for t in range(dim)]
            rank += 1
        return rank == len(rows)

    def extend(cols):
        j = len(cols)
        if j == dim:
            return True
        for v in by_value.get(d2[j] % p, ()):
            if all(b(c, v) == 0 for c in cols) and independent(cols, v):
                if extend(cols + [v]):
                    return True
        return False

    # Off-diagonal targets are zero because d2 is diagonal.
    return extend([])


def char2_zero_count(q):
    """Number of zeros of a characteristic-2 quadratic form, by enumeration."""
    F = q.field
    count = 0
    for vec in product(range(F.order), repeat=q.dim):
        if q.evaluate(vec) == 0:
            count += 1
    return count
