"""Bilinear forms over fields of characteristic != 2.

Forms come in two shapes: ``DiagonalForm`` (ordered diagonal entries, zeros
permitted -- degenerate forms are first-class) and ``GramForm`` (symmetric
matrix on a based space).  Congruence diagonalization carries an explicit
change-of-basis witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .fields import Field


class FormError(ValueError):
    pass


def _check_same_field(f1, f2):
    if f1.field != f2.field:
        raise FormError(f"field mismatch: {f1.field} vs {f2.field}")


@dataclass(frozen=True)
class DiagonalForm:
    field: Field
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def radical_dim(self) -> int:
        z = self.field.zero
        return sum(1 for a in self.entries if a == z)

    def gram(self) -> "GramForm":
        z = self.field.zero
        d = self.dim
        rows = [[self.entries[i] if i == j else z for j in range(d)] for i in range(d)]
        return GramForm(self.field, tuple(map(tuple, rows)))

    def __str__(self):
        return "<" + ",".join(self.field.elt_str(a) for a in self.entries) + ">"


@dataclass(frozen=True)
class GramForm:
    field: Field
    gram: tuple

    def __post_init__(self):
        g = tuple(tuple(row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        for i, row in enumerate(g):
            if len(row) != len(g):
                raise FormError("Gram matrix must be square")
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise FormError("Gram matrix must be symmetric")

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def radical_dim(self) -> int:
        return self.dim - linalg.rank(self.field, [list(r) for r in self.gram])


Form = DiagonalForm | GramForm


def diagonal(field: Field, ints) -> DiagonalForm:
    """Diagonal form with integer (or rational) coefficients mapped into field."""
    from fractions import Fraction

    entries = []
    for c in ints:
        if isinstance(c, int):
            entries.append(field.from_int(c))
        else:
            entries.append(field.from_rational(Fraction(c)))
    return DiagonalForm(field, tuple(entries))


def hyperbolic_plane(field: Field) -> GramForm:
    z, o = field.zero, field.one
    return GramForm(field, ((z, o), (o, z)))


def orth_sum(f1: Form, f2: Form) -> Form:
    _check_same_field(f1, f2)
    if isinstance(f1, DiagonalForm) and isinstance(f2, DiagonalForm):
        return DiagonalForm(f1.field, f1.entries + f2.entries)
    g1 = f1.gram() if isinstance(f1, DiagonalForm) else f1
    g2 = f2.gram() if isinstance(f2, DiagonalForm) else f2
    F = f1.field
    z = F.zero
    d1, d2 = g1.dim, g2.dim
    rows = []
    for i in range(d1):
        rows.append(tuple(g1.gram[i]) + (z,) * d2)
    for i in range(d2):
        rows.append((z,) * d1 + tuple(g2.gram[i]))
    return GramForm(F, tuple(rows))


def scale(c, f: Form, allow_zero: bool = False) -> Form:
    F = f.field
    if c == F.zero and not allow_zero:
        raise FormError("scaling by zero (pass allow_zero=True if intended)")
    if isinstance(f, DiagonalForm):
        return DiagonalForm(F, tuple(F.mul(c, a) for a in f.entries))
    return GramForm(F, tuple(tuple(F.mul(c, x) for x in row) for row in f.gram))


def tensor(f1: Form, f2: Form) -> Form:
    _check_same_field(f1, f2)
    F = f1.field
    if isinstance(f1, DiagonalForm) and isinstance(f2, DiagonalForm):
        return DiagonalForm(F, tuple(F.mul(a, b) for a in f1.entries for b in f2.entries))
    g1 = f1.gram() if isinstance(f1, DiagonalForm) else f1
    g2 = f2.gram() if isinstance(f2, DiagonalForm) else f2
    d1, d2 = g1.dim, g2.dim
    rows = []
    for i1 in range(d1):
        for i2 in range(d2):
            rows.append(tuple(F.mul(g1.gram[i1][j1], g2.gram[i2][j2])
                              for j1 in range(d1) for j2 in range(d2)))
    return GramForm(F, tuple(rows))


def radical_dim(f: Form) -> int:
    return f.radical_dim


def diagonalize(f: Form, with_witness: bool = False):
    """Diagonal form congruent to f, for char != 2 fields.

    With ``with_witness=True`` also returns the change-of-basis matrix P
    satisfying P^T . gram . P = diag (columns of P are the new basis).
    """
    F = f.field
    if F.characteristic == 2:
        raise FormError("diagonalization requires characteristic != 2")
    if isinstance(f, DiagonalForm):
        if not with_witness:
            return f
        return f, linalg.identity(F, f.dim)
    d = f.dim
    G = [list(row) for row in f.gram]
    P = linalg.identity(F, d)
    z = F.zero

    def add_col(dst, src, c):
        # basis change v_dst <- v_dst + c * v_src (symmetric row+col update)
        for t in range(d):
            G[t][dst] = F.add(G[t][dst], F.mul(c, G[t][src]))
        for t in range(d):
            G[dst][t] = F.add(G[dst][t], F.mul(c, G[src][t]))
        for t in range(d):
            P[t][dst] = F.add(P[t][dst], F.mul(c, P[t][src]))

    def swap_cols(i, j):
        for t in range(d):
            G[t][i], G[t][j] = G[t][j], G[t][i]
        G[i], G[j] = G[j], G[i]
        for t in range(d):
            P[t][i], P[t][j] = P[t][j], P[t][i]

    for k in range(d):
        if G[k][k] == z:
            j = next((t for t in range(k + 1, d) if G[t][t] != z), None)
            if j is not None:
                swap_cols(k, j)
            else:
                j = next((t for t in range(k + 1, d) if G[k][t] != z), None)
                if j is None:
                    continue  # zero row: degenerate direction, entry stays 0
                add_col(k, j, F.one)  # b(v+w, v+w) = 2 b(v,w) != 0 in char != 2
        pivot_inv = F.inv(G[k][k])
        for j in range(k + 1, d):
            if G[k][j] != z:
                add_col(j, k, F.neg(F.mul(G[k][j], pivot_inv)))
    diag = DiagonalForm(F, tuple(G[i][i] for i in range(d)))
    if with_witness:
        return diag, P
    return diag


def nondegenerate_part(f: Form) -> DiagonalForm:
    F = f.field
    if F.characteristic == 2:
        raise FormError("use the char-2 module for characteristic 2")
    diag = f if isinstance(f, DiagonalForm) else diagonalize(f)
    z = F.zero
    return DiagonalForm(F, tuple(a for a in diag.entries if a != z))


def parse_diagonal(s: str, field: Field) -> DiagonalForm:
    """Parse the "<a1,a2,...>" textual form syntax."""
    s = s.strip()
    if not (s.startswith("<") and s.endswith(">")):
        raise FormError(f"bad form syntax: {s!r}")
    body = s[1:-1].strip()
    if not body:
        return DiagonalForm(field, ())
    return DiagonalForm(field, tuple(field.parse(t.strip()) for t in body.split(",")))
