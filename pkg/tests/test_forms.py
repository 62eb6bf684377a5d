import random
from fractions import Fraction

import pytest

from sl2forms import linalg
from sl2forms.fields import PrimeField, Rationals
from sl2forms.forms import (
    DiagonalForm,
    FormError,
    GramForm,
    diagonal,
    diagonalize,
    hyperbolic_plane,
    nondegenerate_part,
    orth_sum,
    parse_diagonal,
    radical_dim,
    scale,
    tensor,
)

QQ = Rationals()


def random_gram(field, dim, rng, max_entry=5):
    g = [[field.from_int(0)] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            v = field.from_int(rng.randint(-max_entry, max_entry))
            g[i][j] = g[j][i] = v
    return GramForm(field, tuple(map(tuple, g)))


@pytest.mark.parametrize("field", [QQ, PrimeField(5), PrimeField(11)], ids=str)
def test_diagonalize_congruence_witness(field):
    rng = random.Random(42)
    for dim in range(1, 6):
        for _ in range(10):
            f = random_gram(field, dim, rng)
            d, P = diagonalize(f, with_witness=True)
            assert linalg.is_invertible(field, P)
            G = [list(r) for r in f.gram]
            PtGP = linalg.mat_mul(field, linalg.mat_mul(field, linalg.transpose(P), G), P)
            for i in range(dim):
                for j in range(dim):
                    want = d.entries[i] if i == j else field.zero
                    assert PtGP[i][j] == want


def test_diagonalize_preserves_radical_dimension():
    rng = random.Random(7)
    for _ in range(20):
        f = random_gram(QQ, 5, rng, max_entry=2)
        d = diagonalize(f)
        assert radical_dim(d) == radical_dim(f)


def test_zero_entries_are_first_class():
    f = diagonal(QQ, [1, 0, -3, 0])
    assert f.dim == 4
    assert radical_dim(f) == 2
    assert nondegenerate_part(f).entries == (Fraction(1), Fraction(-3))


def test_orth_sum_and_radical_additivity():
    f1 = diagonal(QQ, [1, 0])
    f2 = diagonal(QQ, [0, 0, 5])
    s = orth_sum(f1, f2)
    assert s.dim == 5
    assert radical_dim(s) == radical_dim(f1) + radical_dim(f2)


def test_orth_sum_mixed_gram():
    h = hyperbolic_plane(QQ)
    s = orth_sum(h, diagonal(QQ, [3]))
    assert isinstance(s, GramForm)
    assert s.dim == 3
    assert radical_dim(s) == 0


def test_scale():
    f = diagonal(QQ, [1, -2])
    g = scale(QQ.from_int(3), f)
    assert g.entries == (Fraction(3), Fraction(-6))
    with pytest.raises(FormError):
        scale(QQ.zero, f)
    z = scale(QQ.zero, f, allow_zero=True)
    assert radical_dim(z) == 2


def test_tensor_dimensions_and_entries():
    f = diagonal(QQ, [1, 2])
    g = diagonal(QQ, [3, 5])
    t = tensor(f, g)
    assert t.dim == 4
    assert sorted(t.entries) == sorted(map(Fraction, (3, 5, 6, 10)))


def test_hyperbolic_plane_diagonalizes_to_plus_minus():
    d = diagonalize(hyperbolic_plane(QQ))
    prod = d.entries[0] * d.entries[1]
    assert prod < 0 and QQ.is_square(-prod)


def test_gram_form_requires_symmetry():
    with pytest.raises(FormError):
        GramForm(QQ, ((Fraction(0), Fraction(1)), (Fraction(2), Fraction(0))))


def test_parse_diagonal_round_trip():
    f = diagonal(QQ, [1, 0, -7])
    assert parse_diagonal(str(f), QQ).entries == f.entries
    with pytest.raises(FormError):
        parse_diagonal("1,2,3", QQ)


def test_diagonalize_zero_diagonal_nonzero_off_diagonal():
    # The v <- v + w trick must handle an all-zero diagonal.
    g = GramForm(QQ, ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))))
    d = diagonalize(g)
    assert radical_dim(d) == 0
    assert all(e != 0 for e in d.entries)


def test_diagonal_form_str():
    assert str(diagonal(QQ, [1, -2])) == "<1,-2>"
