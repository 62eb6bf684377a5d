"""Binomial coefficients and digit-wise divisibility machinery.

Valuations of C(n, m) are computed from base-p digits (carry counting),
never by factoring the big integer: every prime factor of C(n, m) is at
most n, and the carry count gives the exact p-adic valuation directly.
"""

from __future__ import annotations

from itertools import product
from math import comb


def binom(n: int, m: int) -> int:
    """Exact binomial coefficient C(n, m)."""
    if m < 0 or m > n:
        raise ValueError(f"require 0 <= m <= n, got n={n}, m={m}")
    return comb(n, m)


def base_p_digits(n: int, p: int) -> list[int]:
    """Base-p digits of n, least significant first.  Returns [] for 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return digits


def val_p_binom(n: int, m: int, p: int) -> int:
    """v_p(C(n, m)): the number of carries when adding m and n-m in base p."""
    if m < 0 or m > n:
        raise ValueError(f"require 0 <= m <= n, got n={n}, m={m}")
    carries = 0
    carry = 0
    a, b = m, n - m
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        carries += carry
        a //= p
        b //= p
    return carries


def kummer_divides(n: int, m: int, p: int) -> bool:
    """True iff p | C(n, m): some base-p digit of m exceeds the digit of n."""
    if m < 0 or m > n:
        raise ValueError(f"require 0 <= m <= n, got n={n}, m={m}")
    while m:
        if m % p > n % p:
            return True
        m //= p
        n //= p
    return False


def _digitwise_le_values(n: int, p: int):
    """All m with 0 <= m <= n whose base-p digits are digit-wise <= those of n.

    These are exactly the m with C(n, m) not divisible by p.  The count is
    the product of (digit + 1), which is small, so enumeration is cheap even
    for n in the thousands.
    """
    digits = base_p_digits(n, p)
    if not digits:
        yield 0
        return
    weights = [p**j for j in range(len(digits))]
    for choice in product(*(range(d + 1) for d in digits)):
        yield sum(c * w for c, w in zip(choice, weights))


def lemma_parity_counts(n: int, p: int) -> tuple[int, int]:
    """Counts of p-divisible entries in the two parity-split binomial lists.

    For n divisible by 4 the lists are C(n, m) for even m < n/2 and for odd
    m < n/2; for n = 2 mod 4 the second list additionally contains C(n, n/2).
    The two counts are equal (this fails for p = 2, which is rejected).
    """
    if n <= 0 or n % 2:
        raise ValueError("n must be a positive even integer")
    if p == 2 or p < 2:
        raise ValueError("p must be an odd prime")
    half = n // 2
    if n % 4 == 0:
        even_ms = range(0, half, 2)
        odd_ms = range(1, half, 2)
    else:
        even_ms = range(0, half, 2)        # even m <= n/2 - 1
        odd_ms = range(1, half + 1, 2)     # odd m <= n/2, includes n/2 itself
    n_even = len(even_ms)
    n_odd = len(odd_ms)
    # Count the non-divisible entries by enumerating digit-wise-bounded m.
    odd_bound = half if n % 4 else half - 1
    nondiv_even = nondiv_odd = 0
    for m in _digitwise_le_values(n, p):
        if m % 2 == 0:
            if m < half:
                nondiv_even += 1
        elif m <= odd_bound:
            nondiv_odd += 1
    return n_even - nondiv_even, n_odd - nondiv_odd


def ones_count(n: int) -> int:
    """s(n): the number of ones in the binary expansion of n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return bin(n).count("1")
