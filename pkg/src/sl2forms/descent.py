"""The SL2 action on the degree-n module, cocycle twisting, and the
fixed-subspace computation that produces the twisted invariant form from
first principles.

The action matrix is computed in the divided-power normalization, where all
structure constants are integers; the basis e_m used throughout is a global
integer multiple of the divided-power basis, so the matrices coincide.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .binomial import binom
from .fields import Field, Rationals
from .forms import FormError, GramForm
from .catalog import weyl_form_gram


def sl2_action_matrix(n: int, g, field: Field):
    """Matrix of the action of g = ((A,B),(C,D)) on the e_m basis.

    Entry (r, m) is sum over i+j=r of
    C(n-r, n-m-i) * C(r, i) * A^(n-m-i) * C^i * B^(m-j) * D^j,
    which has integer structure constants in every characteristic.
    """
    (A, B), (C, D) = g
    det = field.sub(field.mul(A, D), field.mul(B, C))
    if det == field.zero:
        raise ValueError("singular matrix has no action")
    d = n + 1
    z = field.zero
    M = [[z] * d for _ in range(d)]

    def fpow(x, k):
        r = field.one
        for _ in range(k):
            r = field.mul(r, x)
        return r

    for m in range(d):
        for i in range(n - m + 1):
            pa = fpow(A, n - m - i)
            pc = fpow(C, i)
            left = field.mul(pa, pc)
            if left == z:
                continue
            for j in range(m + 1):
                r = i + j
                coeff = binom(n - r, n - m - i) * binom(r, i)
                c = field.from_int(coeff)
                if c == z:
                    continue
                term = field.mul(field.mul(left, field.mul(fpow(B, m - j), fpow(D, j))), c)
                M[r][m] = field.add(M[r][m], term)
    return M


def unipotent_upper(t, field: Field):
    return ((field.one, t), (field.zero, field.one))


def unipotent_lower(t, field: Field):
    return ((field.one, field.zero), (t, field.one))


def mat2_mul(g, h, field: Field):
    (a, b), (c, d) = g
    (e, f), (x, y) = h
    return ((field.add(field.mul(a, e), field.mul(b, x)),
             field.add(field.mul(a, f), field.mul(b, y))),
            (field.add(field.mul(c, e), field.mul(d, x)),
             field.add(field.mul(c, f), field.mul(d, y))))


def random_sl2(field: Field, rng, max_factors: int = 6, params=None):
    """Product of up to max_factors unipotent generators with small parameters."""
    if params is None:
        params = [field.from_int(v) for v in (-3, -2, -1, 1, 2, 3)]
        params = [p for p in params if p != field.zero]
    g = ((field.one, field.zero), (field.zero, field.one))
    for step in range(rng.randint(1, max_factors)):
        t = rng.choice(params)
        u = unipotent_upper(t, field) if (step % 2 == 0) else unipotent_lower(t, field)
        g = mat2_mul(g, u, field)
    return g


def check_invariance(n: int, g, field: Field) -> bool:
    """Exact check that the action of g preserves the invariant Gram matrix."""
    M = sl2_action_matrix(n, g, field)
    Fg = [list(r) for r in weyl_form_gram(n, field).gram]
    MtFM = linalg.mat_mul(field, linalg.mat_mul(field, linalg.transpose(M), Fg), M)
    return MtFM == Fg


def _twist_action_scalars(n: int, b: Fraction):
    """Scalars s_m with the cocycle image acting by e_m -> s_m e_{n-m}.

    This is the action of the normalized lift of the twisting element of the
    projective group; the sign and b-power land back in the base field.
    """
    sgn = -1 if (n // 2) % 2 else 1
    return [sgn * Fraction(b) ** (m - n // 2) for m in range(n + 1)]


def twisted_form(n: int, a, b, basis: str = "explicit") -> GramForm:
    """Gram matrix over Q of the invariant form of the twisted group.

    Computes, over Q(sqrt(a)), the semilinear involution given by the
    cocycle composed with conjugation, a Q-basis of its fixed space (which
    must have dimension n+1), and the restriction of the split-form Gram to
    that basis.  Only the cocycle definition is used, never the closed-form
    answer, so this is an independent oracle for it.

    basis="explicit" uses closed-form line/plane fixed vectors; basis="kernel"
    solves the rational kernel problem for the fixed space generically.
    """
    if n < 2 or n % 2:
        raise FormError(f"n must be an even integer >= 2, got {n}")
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        raise FormError("b must be nonzero")
    if Rationals().is_square(a):
        raise FormError(f"a={a} is a square; the twist needs a nonsquare")
    d = n + 1
    s = _twist_action_scalars(n, b)

    # Fixed vectors are stored as (u, w) pairs of rational coordinate vectors
    # meaning u + sqrt(a) * w.  The involution sends u + sqrt(a) w to
    # A u - sqrt(a) A w, with A the twist action matrix; the fixed space is
    # ker(A - I) + sqrt(a) * ker(A + I).
    zero = [Fraction(0)] * d

    def e(m, coeff=Fraction(1)):
        v = list(zero)
        v[m] = coeff
        return v

    if basis == "explicit":
        fixed = []
        for m in range(n // 2):
            u = e(m)
            u[n - m] = s[m]
            fixed.append((u, list(zero)))
            w = e(m)
            w[n - m] = -s[m]
            fixed.append((list(zero), w))
        if (n // 2) % 2 == 0:
            fixed.append((e(n // 2), list(zero)))
        else:
            fixed.append((list(zero), e(n // 2)))
    elif basis == "kernel":
        QQ = Rationals()
        A = [[Fraction(0)] * d for _ in range(d)]
        for m in range(d):
            A[n - m][m] = s[m]
        Aminus = [[A[i][j] - (1 if i == j else 0) for j in range(d)] for i in range(d)]
        Aplus = [[A[i][j] + (1 if i == j else 0) for j in range(d)] for i in range(d)]
        fixed = [(v, list(zero)) for v in linalg.kernel_basis(QQ, Aminus)]
        fixed += [(list(zero), v) for v in linalg.kernel_basis(QQ, Aplus)]
    else:
        raise ValueError(f"unknown basis choice {basis!r}")

    if len(fixed) != d:
        raise RuntimeError(f"descent bug: fixed space has dimension {len(fixed)}, expected {d}")

    fgram = [[Fraction(x) for x in row] for row in weyl_form_gram(n, Rationals()).gram]

    def f_bil(x, y):
        return sum(fgram[i][j] * x[i] * y[j]
                   for i in range(d) if x[i] for j in range(d) if y[j])

    rows = []
    for u1, w1 in fixed:
        row = []
        for u2, w2 in fixed:
            rational = f_bil(u1, u2) + a * f_bil(w1, w2)
            irr = f_bil(u1, w2) + f_bil(w1, u2)
            if irr != 0:
                raise RuntimeError("descent bug: restricted form has an irrational entry")
            row.append(rational)
        rows.append(tuple(row))
    return GramForm(Rationals(), tuple(rows))


def generator_matrices(n: int, field: Field, sample):
    """Action matrices of the unipotent generators at the sampled parameters.

    ``sample="generic"`` uses a polynomial indeterminate as the parameter, so
    downstream linear conditions become identities in the parameter (this is
    invariance under the algebraic group, not merely under the finitely many
    field points -- the two differ over small finite fields).
    """
    from .fields import PolynomialRing

    if sample == "generic":
        R = PolynomialRing(field)
        params = [R.gen]
    else:
        if not sample:
            raise ValueError("sample must be nonempty")
        R = field
        params = list(sample)
    mats = []
    for t in params:
        mats.append(sl2_action_matrix(n, unipotent_upper(t, R), R))
        mats.append(sl2_action_matrix(n, unipotent_lower(t, R), R))
    return R, mats


def flatten_rows(field: Field, R, rows):
    """Expand polynomial-context constraint rows into per-degree base rows."""
    from .fields import PolynomialRing

    if not isinstance(R, PolynomialRing):
        return [row for row in rows if any(x != field.zero for x in row)]
    out = []
    for row in rows:
        deg = max((len(x) for x in row), default=0)
        for k in range(deg):
            base_row = [R.coefficient(x, k) for x in row]
            if any(x != field.zero for x in base_row):
                out.append(base_row)
    return out


def invariant_form_space(n: int, field: Field, sample):
    """Dimension and basis of the space of symmetric matrices B invariant
    under the upper and lower unipotent generators at the sampled parameters
    (M^T B M = B for each generator matrix M).  sample="generic" imposes
    invariance identically in the parameter."""
    if field.characteristic == 2:
        raise FormError("use the char2 module for characteristic 2")
    d = n + 1
    unknowns = [(i, j) for i in range(d) for j in range(i, d)]
    index = {ij: k for k, ij in enumerate(unknowns)}

    def sym(i, j):
        return index[(i, j) if i <= j else (j, i)]

    R, gens = generator_matrices(n, field, sample)
    rows = []
    z = R.zero
    for M in gens:
        # (M^T B M)_{rs} - B_{rs} = 0, linear in the entries of B
        for r in range(d):
            for sdx in range(r, d):
                row = [z] * len(unknowns)
                for i in range(d):
                    if M[i][r] == z:
                        continue
                    for j in range(d):
                        if M[j][sdx] == z:
                            continue
                        k = sym(i, j)
                        row[k] = R.add(row[k], R.mul(M[i][r], M[j][sdx]))
                k = sym(r, sdx)
                row[k] = R.sub(row[k], R.one)
                rows.append(row)
    flat = flatten_rows(field, R, rows)
    if not flat:
        raise RuntimeError("no constraints generated")
    basis = linalg.kernel_basis(field, flat)
    grams = []
    for v in basis:
        gram = [[v[sym(i, j)] for j in range(d)] for i in range(d)]
        grams.append(GramForm(field, tuple(map(tuple, gram))))
    return len(basis), grams
