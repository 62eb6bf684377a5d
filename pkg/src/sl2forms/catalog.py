"""Constructors for the named binomial-coefficient forms and for both sides
of the main isometry statements, over any coefficient field of
characteristic != 2.

Entries are built as exact integers first and then mapped into the target
field, so degenerate reductions (entries divisible by the characteristic)
come out as honest zero entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .binomial import binom
from .fields import Field, Rationals
from .forms import DiagonalForm, Form, FormError, GramForm, diagonal, orth_sum, scale, tensor


def _check_even(n: int):
    if n < 2 or n % 2:
        raise FormError(f"n must be an even integer >= 2, got {n}")


def _check_char(field: Field):
    if field.characteristic == 2:
        raise FormError("characteristic 2 is handled by the char2 module")


def phi_odd(n: int, field: Field) -> DiagonalForm:
    """<C(n,i) : i odd, 0 <= i < n/2>.  Empty (0-dimensional) for n = 2."""
    _check_even(n)
    _check_char(field)
    return diagonal(field, [binom(n, i) for i in range(1, n // 2, 2)])


def phi_even(n: int, field: Field) -> DiagonalForm:
    """<C(n,i) : i even, 0 <= i < n/2>."""
    _check_even(n)
    _check_char(field)
    return diagonal(field, [binom(n, i) for i in range(0, n // 2, 2)])


def weyl_form_gram(n: int, field: Field) -> GramForm:
    """The invariant form on the degree-n module in the e_m basis:
    antidiagonal entries (-1)^l * C(n, l)."""
    _check_even(n)
    _check_char(field)
    d = n + 1
    z = field.zero
    rows = [[z] * d for _ in range(d)]
    for l in range(d):
        c = binom(n, l)
        rows[l][n - l] = field.from_int(-c if l % 2 else c)
    return GramForm(field, tuple(map(tuple, rows)))


def is_weyl_irreducible(n: int, p: int) -> bool:
    """True iff n+1 = r * p^s with 0 <= r < p; equivalently all C(n, m) for
    1 <= m <= n are prime to p, i.e. the Gram matrix has zero radical mod p."""
    m = n + 1
    while m % p == 0:
        m //= p
    return m < p


@dataclass(frozen=True)
class QuaternionDescriptor:
    """Parameters (a, b) of the quaternion algebra with i^2=a, j^2=b, ij=-ji."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if a == 0 or b == 0:
            raise ValueError("quaternion parameters must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


SPLIT_QUATERNION = QuaternionDescriptor(Fraction(1), Fraction(1))


def quaternion_norm(qd: QuaternionDescriptor, field: Field) -> DiagonalForm:
    """The norm form <1, -a, -b, ab>."""
    _check_char(field)
    a, b = qd.a, qd.b
    return diagonal(field, [1, -a, -b, a * b])


def quaternion_norm_prime(qd: QuaternionDescriptor, field: Field) -> DiagonalForm:
    """The trace-zero restriction <-a, -b, ab> (norm = <1> + this)."""
    _check_char(field)
    a, b = qd.a, qd.b
    return diagonal(field, [-a, -b, a * b])


def theorem_a_rhs(n: int, qd: QuaternionDescriptor, field: Field) -> DiagonalForm:
    """<2> . phi_odd_n . Q  +  <C(n,n/2)> (n = 0 mod 4) or <C(n,n/2)>Q' (n = 2 mod 4)."""
    _check_even(n)
    _check_char(field)
    two = field.from_int(2)
    body = tensor(scale(two, phi_odd(n, field)), quaternion_norm(qd, field)) \
        if n > 2 else DiagonalForm(field, ())
    center = field.from_int(binom(n, n // 2))
    if n % 4 == 0:
        tail = DiagonalForm(field, (center,))
    else:
        tail = scale(center, quaternion_norm_prime(qd, field), allow_zero=True)
    return orth_sum(body, tail)


def theorem_b_rhs(n: int, field: Field) -> DiagonalForm:
    """phi_odd_n (n = 0 mod 4) or <2*C(n,n/2)> + phi_odd_n (n = 2 mod 4)."""
    _check_even(n)
    _check_char(field)
    odd = phi_odd(n, field)
    if n % 4 == 0:
        return odd
    head = diagonal(field, [2 * binom(n, n // 2)])
    return orth_sum(head, odd)


def desc_summ_form(n: int, qd: QuaternionDescriptor, field: Field) -> DiagonalForm:
    """Closed form of the twisted invariant form for a non-split algebra:

    4 | n:      <2><1,-a>[<-b> phi_odd + phi_even] + <C(n,n/2)>
    n = 2 mod 4: <2><1,-a>[<-b> phi_even + phi_odd] + <-a C(n,n/2)>
    """
    _check_even(n)
    _check_char(field)
    a, b = qd.a, qd.b
    if isinstance(field, Rationals) and Rationals().is_square(a):
        raise FormError("descent closed form needs a nonsquare a")
    fa = field.from_rational(a)
    fb = field.from_rational(b)
    neg_b = field.neg(fb)
    odd, even = phi_odd(n, field), phi_even(n, field)
    if n % 4 == 0:
        bracket = orth_sum(scale(neg_b, odd, allow_zero=True), even)
        tail = diagonal(field, [binom(n, n // 2)])
    else:
        bracket = orth_sum(scale(neg_b, even, allow_zero=True), odd)
        tail = scale(field.neg(fa), diagonal(field, [binom(n, n // 2)]), allow_zero=True)
    lens = DiagonalForm(field, (field.from_int(1), field.neg(fa)))
    body = scale(field.from_int(2), tensor(lens, bracket)) if bracket.dim else bracket
    return orth_sum(body, tail)
