import random
from fractions import Fraction

import pytest

from oracles import fp_isometric_brute, hilbert_brute
from sl2forms.fields import PrimeField, Rationals
from sl2forms.forms import DiagonalForm, diagonal
from sl2forms.invariants import (
    REAL,
    hasse_invariant,
    hilbert_symbol,
    invariant_record,
    isometric,
    quaternion_is_split,
    squarefree_part,
    support,
    support_of_entries,
)

QQ = Rationals()

SMALL = [-10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10]


def test_hilbert_symbol_against_brute_force():
    rng = random.Random(2024)
    pairs = [(rng.choice(SMALL), rng.choice(SMALL)) for _ in range(25)]
    pairs += [(-1, -1), (2, 3), (-1, 3), (5, 7), (2, 2), (-2, -2)]
    for a, b in pairs:
        sa, sb = squarefree_part(a), squarefree_part(b)
        for place in (REAL, 2, 3, 5, 7):
            assert hilbert_symbol(a, b, place) == hilbert_brute(sa, sb, place), \
                (a, b, place)


def test_hilbert_symbol_identities():
    rng = random.Random(3)
    for _ in range(40):
        a = Fraction(rng.choice(SMALL), rng.choice([1, 2, 3, 5]))
        b = Fraction(rng.choice(SMALL), rng.choice([1, 2, 3, 5]))
        c = Fraction(rng.choice(SMALL))
        for place in (REAL, 2, 3, 5, 7, 11):
            # symmetry and bimultiplicativity
            assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)
            assert hilbert_symbol(a * c, b, place) == \
                hilbert_symbol(a, b, place) * hilbert_symbol(c, b, place)
            # square arguments are trivial
            assert hilbert_symbol(a * a, b, place) == 1
        # (a, -a) = 1 everywhere
        for place in (REAL, 2, 3, 5, 7):
            assert hilbert_symbol(a, -a, place) == 1


def test_hilbert_product_formula():
    rng = random.Random(17)
    for _ in range(60):
        a, b = rng.choice(SMALL), rng.choice(SMALL)
        places = support(Fraction(a)) | support(Fraction(b)) | {2, REAL}
        prod = 1
        for pl in places:
            prod *= hilbert_symbol(a, b, pl)
        assert prod == 1


def test_hasse_invariant_matches_pairwise_product():
    rng = random.Random(99)
    for _ in range(50):
        entries = [Fraction(rng.choice(SMALL)) for _ in range(rng.randint(1, 6))]
        for place in (REAL, 2, 3, 5, 7, 11, 13):
            slow = 1
            for i in range(len(entries)):
                for j in range(i + 1, len(entries)):
                    slow *= hilbert_symbol(entries[i], entries[j], place)
            assert hasse_invariant(entries, place) == slow


def test_invariant_record_over_q():
    rec = invariant_record(diagonal(QQ, [1, 15, 0, -6]))
    assert (rec.dim, rec.radical_dim) == (4, 1)
    assert rec.signature == (2, 1)
    assert rec.disc == -10
    data = rec.to_json()
    assert data["disc"] == "-10"


def test_isometry_is_an_equivalence_with_expected_moves():
    f = diagonal(QQ, [1, -2, 3])
    assert isometric(f, f)
    assert isometric(f, diagonal(QQ, [3, 1, -2]))          # permutation
    assert isometric(f, diagonal(QQ, [4, -2, 3]))          # square scaling
    assert isometric(f, diagonal(QQ, [Fraction(1, 9), -2, 3]))
    assert not isometric(f, diagonal(QQ, [1, 2, 3]))       # signature differs
    assert isometric(diagonal(QQ, [1, -1]), diagonal(QQ, [2, -2]))
    assert isometric(diagonal(QQ, [1, 1]), diagonal(QQ, [2, 2]))
    assert not isometric(diagonal(QQ, [1, 1]), diagonal(QQ, [1, 2]))
    # same signature and discriminant, Hasse invariant differs at 3:
    assert not isometric(diagonal(QQ, [3, 3]), diagonal(QQ, [1, 1]))
    # quaternary multiplicativity: <5,5,5,5> is a scaled sum of four squares
    assert isometric(diagonal(QQ, [1, 1, 1, 1]), diagonal(QQ, [5, 5, 5, 5]))


def test_isometry_tracks_radicals():
    assert isometric(diagonal(QQ, [0, 1, -1]), diagonal(QQ, [2, 0, -2]))
    assert not isometric(diagonal(QQ, [0, 1, -1]), diagonal(QQ, [1, 1, -1]))
    assert not isometric(diagonal(QQ, [0, 1]), diagonal(QQ, [1, 1]))


def test_fp_isometry_against_brute_force():
    rng = random.Random(5)
    for p in (3, 5, 7):
        F = PrimeField(p)
        for _ in range(30):
            dim = rng.randint(1, 3)
            d1 = [rng.randint(1, p - 1) for _ in range(dim)]
            d2 = [rng.randint(1, p - 1) for _ in range(dim)]
            fast = isometric(DiagonalForm(F, tuple(d1)), DiagonalForm(F, tuple(d2)))
            assert fast == fp_isometric_brute(F, d1, d2), (p, d1, d2)


def test_quaternion_splitness():
    assert quaternion_is_split(1, 1)
    assert quaternion_is_split(1, -7)
    assert quaternion_is_split(2, -1)       # 2 is a sum x^2 - y^2... norm of Q(i)? no:
    # (2,-1): z^2 = 2x^2 - y^2 has (x,y,z)=(1,1,1), so split everywhere.
    for a, b in [(-1, -1), (2, 3), (-1, 3), (5, 7)]:
        assert not quaternion_is_split(a, b)


def test_support_of_entries_always_has_two_and_real():
    s = support_of_entries([Fraction(1), Fraction(35)])
    assert 2 in s and REAL in s and 5 in s and 7 in s and 3 not in s


def test_hasse_invariant_rejects_degenerate():
    with pytest.raises(ValueError):
        hasse_invariant([Fraction(1), Fraction(0)], 2)
