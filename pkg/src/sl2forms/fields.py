"""Exact arithmetic over the supported coefficient fields.

Four field kinds are provided:

* ``Rationals`` -- elements are ``fractions.Fraction``.
* ``QuadraticField(a)`` -- Q(sqrt(a)) for a squarefree nonsquare integer a;
  elements are pairs ``(x, y)`` of Fractions meaning x + y*sqrt(a).
* ``PrimeField(p)`` -- F_p for an odd prime p; elements are ints in [0, p).
* ``BinaryField(e)`` -- F_{2^e}; elements are bitmasks of polynomial
  residues modulo a fixed irreducible polynomial (also a bitmask).

All values are immutable; every operation is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt

Rational = Fraction


class FieldArithmeticError(ZeroDivisionError):
    """Raised on inversion of zero."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface; elements are plain Python values comparable with ==."""

    characteristic: int

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def from_int(self, n: int):
        raise NotImplementedError

    def from_rational(self, r: Rational):
        r = Fraction(r)
        return self.div(self.from_int(r.numerator), self.from_int(r.denominator))

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def is_zero(self, x) -> bool:
        return x == self.zero

    def is_square(self, x) -> bool:
        raise NotImplementedError

    def conj(self, x):
        """Nontrivial involution where a quadratic-extension structure exists."""
        raise NotImplementedError(f"{self} carries no distinguished involution")

    def elt_str(self, x) -> str:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError


@dataclass(frozen=True)
class PolynomialRing(Field):
    """Univariate polynomials over a base field, as an arithmetic context.

    Elements are coefficient tuples (low degree first, trailing zeros
    stripped).  Division is unsupported; this exists so that group elements
    with an indeterminate parameter can flow through the same matrix code,
    turning sampled invariance conditions into identities in the parameter.
    """

    base: "Field"

    @property
    def characteristic(self):
        return self.base.characteristic

    def _norm(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == self.base.zero:
            c.pop()
        return tuple(c)

    def add(self, x, y):
        n = max(len(x), len(y))
        z = self.base.zero
        return self._norm([self.base.add(x[i] if i < len(x) else z,
                                         y[i] if i < len(y) else z)
                           for i in range(n)])

    def neg(self, x):
        return tuple(self.base.neg(c) for c in x)

    def mul(self, x, y):
        if not x or not y:
            return ()
        z = self.base.zero
        out = [z] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            if a == z:
                continue
            for j, b in enumerate(y):
                if b != z:
                    out[i + j] = self.base.add(out[i + j], self.base.mul(a, b))
        return self._norm(out)

    def inv(self, x):
        raise NotImplementedError("polynomial context has no division")

    def from_int(self, n):
        return self._norm([self.base.from_int(n)])

    @property
    def gen(self):
        return (self.base.zero, self.base.one)

    def coefficient(self, x, k: int):
        return x[k] if k < len(x) else self.base.zero

    def __str__(self):
        return f"{self.base}[t]"


@dataclass(frozen=True)
class Rationals(Field):
    characteristic: int = dc_field(default=0, init=False)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise FieldArithmeticError("inverse of zero")
        return 1 / Fraction(x)

    def from_int(self, n):
        return Fraction(n)

    def is_square(self, x) -> bool:
        x = Fraction(x)
        if x < 0:
            return False
        n, d = x.numerator, x.denominator
        return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d

    def elt_str(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, s: str):
        return Fraction(s)

    def __str__(self):
        return "Q"


def squarefree_int(a: int) -> int:
    """Squarefree part of a nonzero integer (sign retained)."""
    if a == 0:
        raise ValueError("zero has no squarefree part")
    # Local import: sympy is only needed on this path.
    from sympy import factorint

    out = -1 if a < 0 else 1
    for p, k in factorint(abs(a)).items():
        if k % 2:
            out *= p
    return out


@dataclass(frozen=True)
class QuadraticField(Field):
    """Q(sqrt(a)) with a a squarefree nonsquare integer."""

    a: int
    characteristic: int = dc_field(default=0, init=False)

    def __post_init__(self):
        if self.a != squarefree_int(self.a):
            raise ValueError(f"a={self.a} is not squarefree")
        if self.a == 1:
            raise ValueError("a must not be a square")

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def neg(self, x):
        return (-x[0], -x[1])

    def mul(self, x, y):
        return (x[0] * y[0] + self.a * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def inv(self, x):
        n = x[0] * x[0] - self.a * x[1] * x[1]
        if n == 0:
            raise FieldArithmeticError("inverse of zero")
        return (x[0] / n, -x[1] / n)

    def from_int(self, n):
        return (Fraction(n), Fraction(0))

    def from_pair(self, x, y):
        return (Fraction(x), Fraction(y))

    def conj(self, x):
        return (x[0], -x[1])

    @property
    def sqrt_gen(self):
        return (Fraction(0), Fraction(1))

    def elt_str(self, x) -> str:
        q = Rationals()
        return f"{q.elt_str(x[0])}+{q.elt_str(x[1])}*sqrt({self.a})"

    def parse(self, s: str):
        head, tail = s.split("+", 1)
        y = tail.split("*sqrt(")[0]
        return (Fraction(head), Fraction(y))

    def __str__(self):
        return f"Q(sqrt({self.a}))"


@dataclass(frozen=True)
class PrimeField(Field):
    """F_p for an odd prime p."""

    p: int

    def __post_init__(self):
        if self.p == 2 or not _is_prime(self.p):
            raise ValueError(f"p={self.p} is not an odd prime")

    @property
    def characteristic(self):
        return self.p

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise FieldArithmeticError("inverse of zero")
        return pow(x, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def is_square(self, x) -> bool:
        x %= self.p
        return x == 0 or pow(x, (self.p - 1) // 2, self.p) == 1

    def elements(self):
        return range(self.p)

    def elt_str(self, x) -> str:
        return str(x % self.p)

    def parse(self, s: str):
        return int(s) % self.p

    def __str__(self):
        return f"F{self.p}"


# --- GF(2)[x] bitmask polynomial helpers -----------------------------------

def _gf2_deg(a: int) -> int:
    return a.bit_length() - 1


def _gf2_mulmod(a: int, b: int, mod: int) -> int:
    r = 0
    deg = _gf2_deg(mod)
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= mod
    return r


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        while _gf2_deg(a) >= _gf2_deg(b) and a:
            a ^= b << (_gf2_deg(a) - _gf2_deg(b))
        a, b = b, a
    return a


def _gf2_powpow2(x: int, k: int, mod: int) -> int:
    """x^(2^k) modulo mod."""
    for _ in range(k):
        x = _gf2_mulmod(x, x, mod)
    return x


def _gf2_irreducible(mod: int) -> bool:
    """Rabin test for irreducibility of a GF(2) polynomial bitmask."""
    e = _gf2_deg(mod)
    if e < 1:
        return False
    x = 0b10 if e > 1 else 0b10 ^ mod  # residue of x mod the modulus
    if _gf2_powpow2(x, e, mod) != x:
        return False
    primes = set()
    ee, q = e, 2
    while ee > 1:
        while ee % q == 0:
            primes.add(q)
            ee //= q
        q += 1
    for q in primes:
        if _gf2_gcd(_gf2_powpow2(x, e // q, mod) ^ x, mod) != 1:
            return False
    return True


#: Fixed irreducible modulus per extension degree (bitmask, degree-e poly).
DEFAULT_MODULI = {
    1: 0b11,                 # x + 1
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b10011,              # x^4 + x + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    8: 0b100011011,          # x^8 + x^4 + x^3 + x + 1
}


@dataclass(frozen=True)
class BinaryField(Field):
    """F_{2^e} as polynomial residues modulo a fixed irreducible polynomial."""

    e: int
    modulus: int = 0

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("e must be >= 1")
        if self.modulus == 0:
            if self.e not in DEFAULT_MODULI:
                raise ValueError(f"no default modulus for e={self.e}; pass one")
            object.__setattr__(self, "modulus", DEFAULT_MODULI[self.e])
        if _gf2_deg(self.modulus) != self.e or not _gf2_irreducible(self.modulus):
            raise ValueError(f"modulus {bin(self.modulus)} is not irreducible of degree {self.e}")

    @property
    def characteristic(self):
        return 2

    @property
    def order(self):
        return 1 << self.e

    def add(self, x, y):
        return x ^ y

    def neg(self, x):
        return x

    def mul(self, x, y):
        return _gf2_mulmod(x, y, self.modulus)

    def inv(self, x):
        if x == 0:
            raise FieldArithmeticError("inverse of zero")
        return self.pow(x, self.order - 2)

    def pow(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            k >>= 1
        return r

    def from_int(self, n):
        return n % 2

    def is_square(self, x) -> bool:
        return True

    def sqrt(self, x):
        return self.pow(x, 1 << (self.e - 1))

    def frobenius(self, x, k: int = 1):
        for _ in range(k):
            x = self.mul(x, x)
        return x

    def trace(self, x):
        """Absolute trace to F_2, as an int in {0, 1}."""
        t = 0
        y = x
        for _ in range(self.e):
            t ^= y
            y = self.mul(y, y)
        return t

    def conj(self, x):
        """Frobenius generator of Gal over the index-2 subfield (e even)."""
        if self.e % 2:
            raise ValueError("conj needs even e (quadratic extension structure)")
        return self.frobenius(x, self.e // 2)

    def elements(self):
        return range(self.order)

    def elt_str(self, x) -> str:
        return format(x, "x")

    def parse(self, s: str):
        return int(s, 16)

    def __str__(self):
        return f"F{self.order}"
