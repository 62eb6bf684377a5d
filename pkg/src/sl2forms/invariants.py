"""Classification of forms over Q and F_p: Hilbert symbols, Hasse
invariants, signatures, discriminants, and the Hasse-Minkowski isometry
decision.

Hilbert symbols are computed by closed-form residue rules on square-class
data (odd p: Legendre symbols on unit parts; p = 2: the mod-8 epsilon/omega
formulas; real place: sign test).  No p-adic numbers are ever constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .fields import Field, PrimeField, Rationals
from .forms import DiagonalForm, Form, diagonalize, nondegenerate_part

#: The archimedean place.
REAL = "real"

Place = int | str


@lru_cache(maxsize=None)
def _factor(n: int) -> dict:
    from sympy import factorint

    return dict(factorint(n))


def factor_rational(x) -> tuple[int, dict]:
    """(sign, {prime: exponent}) with exponents in Z (negative for denominator)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("cannot factor zero")
    sign = -1 if x < 0 else 1
    exps = dict(_factor(abs(x.numerator)))
    for p, k in _factor(x.denominator).items():
        exps[p] = exps.get(p, 0) - k
    return sign, {p: k for p, k in exps.items() if k}


def squarefree_part(x) -> int:
    """Signed squarefree representative of the square class of a rational."""
    sign, exps = factor_rational(x)
    out = sign
    for p, k in exps.items():
        if k % 2:
            out *= p
    return out


def support(x) -> frozenset:
    """Primes dividing the numerator or denominator of a nonzero rational."""
    return frozenset(factor_rational(x)[1])


@lru_cache(maxsize=None)
def _legendre(u: int, p: int) -> int:
    u %= p
    if u == 0:
        raise ValueError("unit expected")
    return 1 if pow(u, (p - 1) // 2, p) == 1 else -1


def _unit_part_mod(x: Fraction, p: int, modulus: int) -> int:
    """The p-free unit part of x, reduced modulo ``modulus``."""
    _, exps = factor_rational(x)
    val = Fraction(x) / Fraction(p) ** exps.get(p, 0)
    n, d = val.numerator, val.denominator
    return n * pow(d, -1, modulus) % modulus


def hilbert_symbol(a, b, place: Place) -> int:
    """(a, b)_v in {+1, -1}: solvability of z^2 = a x^2 + b y^2 at the place v."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    if place == REAL:
        return -1 if a < 0 and b < 0 else 1
    p = place
    _, ea = factor_rational(a)
    _, eb = factor_rational(b)
    alpha, beta = ea.get(p, 0), eb.get(p, 0)
    if p == 2:
        u = _unit_part_mod(a, 2, 8)
        w = _unit_part_mod(b, 2, 8)
        eps_u, eps_w = (u - 1) // 2 % 2, (w - 1) // 2 % 2
        om_u, om_w = (u * u - 1) // 8 % 2, (w * w - 1) // 8 % 2
        exp = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if exp % 2 else 1
    u = _unit_part_mod(a, p, p)
    w = _unit_part_mod(b, p, p)
    eps = (p - 1) // 2 % 2
    sym = 1
    if alpha % 2 and beta % 2 and eps:
        sym = -sym
    if beta % 2:
        sym *= _legendre(u, p)
    if alpha % 2:
        sym *= _legendre(w, p)
    return sym


def _place_data(x: Fraction, place: Place):
    """Per-entry bits that determine Hilbert symbols at the given place."""
    if place == REAL:
        return (1 if x < 0 else 0,)
    p = place
    alpha = factor_rational(x)[1].get(p, 0) % 2
    if p == 2:
        u = _unit_part_mod(x, 2, 8)
        return alpha, (u - 1) // 2 % 2, (u * u - 1) // 8 % 2
    u = _unit_part_mod(x, p, p)
    return alpha, 0 if _legendre(u, p) == 1 else 1


def hasse_invariant(form, place: Place) -> int:
    """Product of Hilbert symbols (a_i, a_j)_v over i < j (Lam's convention).

    Accepts a DiagonalForm over Q or a plain list of nonzero rationals.
    Computed in O(dim) per place via prefix sums of square-class bits.
    """
    entries = form.entries if isinstance(form, DiagonalForm) else tuple(form)
    entries = [Fraction(x) for x in entries]
    if any(x == 0 for x in entries):
        raise ValueError("hasse invariant needs a nondegenerate form; strip the radical")
    exp = 0
    if place == REAL:
        negs = sum(1 for x in entries if x < 0)
        exp = negs * (negs - 1) // 2
    elif place == 2:
        sa = se = so = 0  # prefix sums of (alpha, eps, omega) bits
        for x in entries:
            alpha, eps, om = _place_data(x, 2)
            # sum over previous j<i of eps_j*eps_i + alpha_j*om_i + alpha_i*om_j
            exp += se * eps + sa * om + alpha * so
            sa += alpha
            se += eps
            so += om
    else:
        p = place
        epsp = (p - 1) // 2 % 2
        sa = sl = 0  # prefix sums of (alpha, legendre) bits
        for x in entries:
            alpha, leg = _place_data(x, p)
            exp += epsp * sa * alpha + sl * alpha + sa * leg
            sa += alpha
            sl += leg
    return -1 if exp % 2 else 1


@dataclass(frozen=True)
class InvariantRecord:
    """Classification data deciding isometry (Hasse-Minkowski over Q)."""

    field: Field
    dim: int
    radical_dim: int
    signature: tuple | None = None        # (positives, negatives) over Q
    disc: int | None = None               # squarefree square class over Q
    hasse: tuple = ()                     # ((place, +-1), ...) over Q
    disc_is_square: bool | None = None    # residue bit over F_p

    def hasse_at(self, place: Place) -> int:
        for pl, s in self.hasse:
            if pl == place:
                return s
        return 1

    def to_json(self) -> dict:
        out = {"dim": self.dim, "radical": self.radical_dim}
        if isinstance(self.field, Rationals):
            out["signature"] = list(self.signature)
            out["disc"] = str(self.disc)
            out["hasse"] = {str(pl): s for pl, s in self.hasse}
        else:
            out["disc_square"] = self.disc_is_square
        return out


def _rational_entries(f: Form) -> list[Fraction]:
    diag = f if isinstance(f, DiagonalForm) else diagonalize(f)
    return [Fraction(x) for x in diag.entries]


def invariant_record(f: Form, places=None) -> InvariantRecord:
    """Full classification record over Q or F_p (odd p)."""
    F = f.field
    if isinstance(F, Rationals):
        entries = _rational_entries(f)
        nz = [x for x in entries if x != 0]
        rad = len(entries) - len(nz)
        pos = sum(1 for x in nz if x > 0)
        disc = squarefree_part(_product(nz)) if nz else 1
        if places is None:
            places = support_of_entries(nz)
        hasse = tuple(sorted(((pl, hasse_invariant(nz, pl)) for pl in places),
                             key=_place_key))
        return InvariantRecord(F, len(entries), rad, (pos, len(nz) - pos), disc, hasse)
    if isinstance(F, PrimeField):
        diag = f if isinstance(f, DiagonalForm) else diagonalize(f)
        nz = [x for x in diag.entries if x != F.zero]
        rad = diag.dim - len(nz)
        prod = F.one
        for x in nz:
            prod = F.mul(prod, x)
        return InvariantRecord(F, diag.dim, rad, disc_is_square=F.is_square(prod))
    raise ValueError(f"unsupported field for invariant records: {F}")


def _product(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out


def _place_key(item):
    pl = item[0]
    return (1, 0) if pl == REAL else (0, pl)


def support_of_entries(entries) -> frozenset:
    """Places where a Hasse symbol of a form with these entries can be -1."""
    primes = set()
    for x in entries:
        primes |= support(x)
    primes.add(2)
    return frozenset(primes) | {REAL}


def isometric(f1: Form, f2: Form) -> bool:
    """Isometry decision: Hasse-Minkowski over Q; rank + discriminant over F_p.

    Degenerate forms compare by radical dimension plus nondegenerate part.
    """
    if f1.field != f2.field:
        raise ValueError(f"field mismatch: {f1.field} vs {f2.field}")
    F = f1.field
    if isinstance(F, Rationals):
        e1, e2 = _rational_entries(f1), _rational_entries(f2)
        nz1 = [x for x in e1 if x != 0]
        nz2 = [x for x in e2 if x != 0]
        if len(e1) != len(e2) or len(nz1) != len(nz2):
            return False
        places = support_of_entries(nz1 + nz2)
        r1 = invariant_record(DiagonalForm(F, nz1), places)
        r2 = invariant_record(DiagonalForm(F, nz2), places)
        return (r1.signature == r2.signature and r1.disc == r2.disc
                and r1.hasse == r2.hasse)
    if isinstance(F, PrimeField):
        r1, r2 = invariant_record(f1), invariant_record(f2)
        return (r1.dim == r2.dim and r1.radical_dim == r2.radical_dim
                and r1.disc_is_square == r2.disc_is_square)
    raise ValueError(f"unsupported field for isometry decision: {F}")


def quaternion_is_split(a, b) -> bool:
    """True iff the quaternion algebra (a, b) over Q is the matrix algebra."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("quaternion parameters must be nonzero")
    places = support(a) | support(b) | {2, REAL}
    return all(hilbert_symbol(a, b, pl) == 1 for pl in places)
