"""Quadratic forms over F_{2^e}: block decomposition, Arf invariant, and
the twisted invariant quadratic form on the degree-n module.

A quadratic form is stored as (polar Gram matrix, basis values): evaluation
uses q(sum c_i e_i) = sum c_i^2 q(e_i) + sum_{i<j} c_i c_j polar(i, j).
Only perfect coefficient fields are supported, so the quasilinear remainder
of a decomposition is at most one unary block.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import linalg
from .binomial import binom, ones_count
from .fields import BinaryField


@dataclass(frozen=True)
class QFormChar2:
    """Characteristic-2 quadratic form on a based space."""

    field: BinaryField
    polar: tuple       # symmetric matrix with zero diagonal
    values: tuple      # q(e_i)

    def __post_init__(self):
        P = tuple(tuple(row) for row in self.polar)
        object.__setattr__(self, "polar", P)
        object.__setattr__(self, "values", tuple(self.values))
        d = len(self.values)
        if len(P) != d or any(len(r) != d for r in P):
            raise ValueError("polar matrix size must match value count")
        for i in range(d):
            if P[i][i] != 0:
                raise ValueError("polar matrix must have zero diagonal")
            for j in range(i):
                if P[i][j] != P[j][i]:
                    raise ValueError("polar matrix must be symmetric")

    @property
    def dim(self) -> int:
        return len(self.values)

    def evaluate(self, vec) -> int:
        F = self.field
        s = 0
        d = self.dim
        for i in range(d):
            c = vec[i]
            if c:
                s ^= F.mul(F.mul(c, c), self.values[i])
        for i in range(d):
            ci = vec[i]
            if not ci:
                continue
            row = self.polar[i]
            for j in range(i + 1, d):
                if vec[j] and row[j]:
                    s ^= F.mul(F.mul(ci, vec[j]), row[j])
        return s

    def polar_pairing(self, x, y) -> int:
        F = self.field
        s = 0
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.polar[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    s ^= F.mul(F.mul(xi, yj), row[j])
        return s


@dataclass(frozen=True)
class Char2Class:
    """Classification data: zero part, hyperbolic pairs, quasilinear block,
    and the Arf bit (defined only when there is no quasilinear block)."""

    zeros: int
    pairs: int
    quasilinear: int
    arf: int | None

    def __post_init__(self):
        if self.quasilinear:
            object.__setattr__(self, "arf", None)

    @property
    def dim(self) -> int:
        return self.zeros + 2 * self.pairs + self.quasilinear

    def to_json(self) -> dict:
        return {"zeros": self.zeros, "pairs": self.pairs,
                "quasilinear": self.quasilinear, "arf": self.arf}


def nondefective_decompose(q: QFormChar2) -> Char2Class:
    """Split q as zero part + (at most one) unary block + hyperbolic-type
    pairs, and compute the Arf invariant of the pair part."""
    F = q.field
    d = q.dim
    P = [list(r) for r in q.polar]
    R, pivots = linalg.rref(F, P)
    rad = linalg.kernel_basis(F, P)
    # On the polar radical, x -> sqrt(q(x)) is a linear functional; its
    # kernel is the zero part and a nonzero value yields one unary block.
    lam = [F.sqrt(q.evaluate(v)) for v in rad]
    quasi = 1 if any(lam) else 0
    zeros = len(rad) - quasi

    # Complement of the radical: standard vectors at the pivot columns.
    comp = []
    for c in pivots:
        v = [0] * d
        v[c] = 1
        comp.append(v)

    pairs = []
    arf_sum = 0
    while comp:
        u = comp.pop(0)
        vi = next(i for i, w in enumerate(comp) if q.polar_pairing(u, w) != 0)
        v = comp.pop(vi)
        scale = F.inv(q.polar_pairing(u, v))
        v = [F.mul(scale, x) for x in v]
        for idx, w in enumerate(comp):
            cu = q.polar_pairing(w, v)
            cv = q.polar_pairing(w, u)
            if cu or cv:
                comp[idx] = [F.add(w[t], F.add(F.mul(cu, u[t]), F.mul(cv, v[t])))
                             for t in range(d)]
        qu, qv = q.evaluate(u), q.evaluate(v)
        pairs.append((qu, qv))
        arf_sum ^= F.mul(qu, qv)
    arf = F.trace(arf_sum)
    return Char2Class(zeros, len(pairs), quasi, arf)


def _submask_count_below(n: int, limit: int) -> int:
    """Number of m with m submask of n (digit-wise binary <=) and m < limit."""
    count = 0
    for bit in range(limit.bit_length() - 1, -1, -1):
        if limit >> bit & 1:
            # place 0 at this bit, free submask choice below
            count += 1 << bin(n & ((1 << bit) - 1)).count("1")
            if not n >> bit & 1:
                return count  # cannot match this 1-bit of limit, path ends
    return count


def phi_forms_char2(n: int) -> tuple[int, bool]:
    """(number of odd C(n, m) with even m < n/2,  all-odd-m-entries-even).

    Odd binomials correspond to binary submasks of n, so the count is a
    digit walk; for even n every submask is even, which is why the odd-index
    form vanishes identically mod 2.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be an even integer >= 2, got {n}")
    rank_even = _submask_count_below(n, n // 2)
    odd_is_zero = n % 2 == 0  # odd m is never a submask of even n
    return rank_even, odd_is_zero


def weyl_qform_char2(n: int, field: BinaryField) -> QFormChar2:
    """The halved invariant quadratic form on the degree-n module, mod 2:
    (C(n,n/2)/2) x_{n/2}^2 + sum over even m < n/2 of C(n,m) x_m x_{n-m}."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be an even integer >= 2, got {n}")
    d = n + 1
    P = [[0] * d for _ in range(d)]
    for m in range(d):
        if m != n // 2:
            P[m][n - m] = binom(n, m) % 2
    values = [0] * d
    values[n // 2] = (binom(n, n // 2) // 2) % 2
    return QFormChar2(field, tuple(map(tuple, P)), tuple(values))


def artin_schreier_trace_ok(a: int, field: BinaryField) -> bool:
    """Tr(a) = 1, i.e. the algebra k[x]/(x^2 + x - a) is a field."""
    return field.trace(a) == 1


def quaternion_char2_qprime(a: int, b: int, field: BinaryField) -> QFormChar2:
    """The trace-zero norm form [1] + <b>[1, a] of the quaternion algebra
    with i^2 + i = a, j^2 = b."""
    if b == 0:
        raise ValueError("b must be nonzero")
    if not artin_schreier_trace_ok(a, field):
        warnings.warn("Tr(a) = 0: the quadratic etale algebra is split", stacklevel=2)
    z = 0
    P = ((z, z, z), (z, z, b), (z, b, z))
    values = (1, b, field.mul(b, a))
    return QFormChar2(field, P, values)


# --- subfield embedding machinery ------------------------------------------

def quadratic_extension(field: BinaryField) -> BinaryField:
    """F_{2^{2e}} with its fixed default modulus."""
    return BinaryField(2 * field.e)


def embed_subfield(k: BinaryField, K: BinaryField):
    """(phi, table): a field embedding k -> K and its inverse lookup.

    Found by locating a root of k's modulus inside K and mapping the residue
    generator there; the fields are tiny, so exhaustive search is fine.
    """
    if K.e % k.e != 0:
        raise ValueError(f"{K} does not contain {k}")

    def eval_mod(r):
        # evaluate k.modulus (an F_2 polynomial bitmask) at r in K
        acc = 0
        power = 1
        m = k.modulus
        while m:
            if m & 1:
                acc ^= power
            power = K.mul(power, r)
            m >>= 1
        return acc

    root = next(r for r in K.elements() if eval_mod(r) == 0)

    def phi(x):
        acc = 0
        power = 1
        while x:
            if x & 1:
                acc ^= power
            power = K.mul(power, root)
            x >>= 1
        return acc

    table = {phi(c): c for c in k.elements()}
    return phi, table


def artin_schreier_root(K: BinaryField, a: int) -> int:
    """Some alpha in K with alpha^2 + alpha = a."""
    for x in K.elements():
        if K.mul(x, x) ^ x == a:
            return x
    raise ValueError(f"x^2 + x = {a} has no root in {K}")


def twisted_form_char2(n: int, a: int, b: int, field: BinaryField,
                       basis: str = "explicit") -> QFormChar2:
    """The invariant quadratic form of the twisted group over k = F_{2^e}.

    Works in K = F_{2^{2e}}: the cocycle image acts by e_m -> b^(m - n/2)
    e_{n-m}; composing with the K/k Frobenius gives a semilinear involution
    whose fixed k-space (dimension n+1) carries the restriction of the
    halved invariant quadratic form.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be an even integer >= 2, got {n}")
    if b == 0:
        raise ValueError("b must be nonzero")
    if not artin_schreier_trace_ok(a, field):
        raise ValueError("need Tr(a) = 1 so that the twisting datum is a field")
    k = field
    K = quadratic_extension(k)
    phi, table = embed_subfield(k, K)
    alpha = artin_schreier_root(K, phi(a))
    d = n + 1
    s = [k.pow(b, m - n // 2) for m in range(d)]
    S = [phi(x) for x in s]
    alpha_conj = K.conj(alpha)  # = alpha + 1

    if basis == "explicit":
        vectors = []
        for m in range(n // 2):
            v = [0] * d
            v[m] = 1
            v[n - m] = S[m]
            vectors.append(v)
            w = [0] * d
            w[m] = alpha
            w[n - m] = K.mul(alpha_conj, S[m])
            vectors.append(w)
        center = [0] * d
        center[n // 2] = 1
        vectors.append(center)
    elif basis == "kernel":
        # x = u + alpha w with u, w over k; fixed iff w = A w and u = A(u + w)
        A = [[0] * d for _ in range(d)]
        for m in range(d):
            A[n - m][m] = s[m]
        big = [[0] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            for j in range(d):
                big[i][j] = A[i][j] ^ (1 if i == j else 0)
                big[i][d + j] = A[i][j]
                big[d + i][d + j] = A[i][j] ^ (1 if i == j else 0)
        kern = linalg.kernel_basis(k, big)
        vectors = []
        for uv in kern:
            u, w = uv[:d], uv[d:]
            vectors.append([phi(u[t]) ^ K.mul(alpha, phi(w[t])) for t in range(d)])
    else:
        raise ValueError(f"unknown basis choice {basis!r}")

    if len(vectors) != d:
        raise RuntimeError(f"descent bug: fixed space has dimension {len(vectors)}, expected {d}")

    qK = weyl_qform_char2(n, K)

    def pull(x):
        if x not in table:
            raise RuntimeError("descent bug: restricted value escapes the base field")
        return table[x]

    P = [[0] * d for _ in range(d)]
    values = []
    for i, vi in enumerate(vectors):
        values.append(pull(qK.evaluate(vi)))
        for j in range(i + 1, d):
            P[i][j] = P[j][i] = pull(qK.polar_pairing(vi, vectors[j]))
    return QFormChar2(k, tuple(map(tuple, P)), tuple(values))


def expected_twisted_class(n: int) -> Char2Class:
    """The three-way classification the twisted form must match."""
    if n == 2:
        return Char2Class(0, 1, 1, None)
    if n & (n - 1) == 0:
        return Char2Class(n - 2, 1, 1, None)
    nondeg = 1 << (ones_count(n) - 1)
    return Char2Class(n + 1 - 2 * nondeg, nondeg, 0, 0)


def transport_qform(q: QFormChar2, M) -> QFormChar2:
    """The form v -> q(M v) in the original basis."""
    F = q.field
    d = q.dim
    cols = [[M[i][j] for i in range(d)] for j in range(d)]
    values = tuple(q.evaluate(col) for col in cols)
    P = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            P[i][j] = P[j][i] = q.polar_pairing(cols[i], cols[j])
    return QFormChar2(F, tuple(map(tuple, P)), values)


def invariant_qform_space_char2(n: int, field: BinaryField, sample) -> int:
    """Dimension of the space of quadratic forms invariant under the
    unipotent generators at the sampled parameters.  sample="generic"
    imposes invariance identically in the parameter (invariance under the
    algebraic group, which is stronger than invariance under the finitely
    many field points)."""
    from .descent import flatten_rows, generator_matrices

    d = n + 1
    pair_idx = {(i, j): k for k, (i, j) in
                enumerate((i, j) for i in range(d) for j in range(i + 1, d))}
    nunk = d + len(pair_idx)  # q values then polar entries
    R, gens = generator_matrices(n, field, sample)
    z, one = R.zero, R.one
    rows = []
    for M in gens:
        cols = [[M[i][j] for i in range(d)] for j in range(d)]
        # transported polar equals original polar
        for r in range(d):
            for sdx in range(r + 1, d):
                row = [z] * nunk
                for (i, j), kk in pair_idx.items():
                    row[d + kk] = R.add(R.mul(cols[r][i], cols[sdx][j]),
                                        R.mul(cols[r][j], cols[sdx][i]))
                kk = d + pair_idx[(r, sdx)]
                row[kk] = R.add(row[kk], one)
                rows.append(row)
        # transported values equal original values
        for r in range(d):
            row = [z] * nunk
            for i in range(d):
                c = cols[r][i]
                if c != z:
                    row[i] = R.mul(c, c)
            for (i, j), kk in pair_idx.items():
                row[d + kk] = R.add(row[d + kk], R.mul(cols[r][i], cols[r][j]))
            row[r] = R.add(row[r], one)
            rows.append(row)
    flat = flatten_rows(field, R, rows)
    if not flat:
        return nunk
    return len(linalg.kernel_basis(field, flat))
