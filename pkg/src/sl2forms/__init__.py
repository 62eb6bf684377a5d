"""Exact arithmetic for invariant bilinear and quadratic forms of twisted
SL2 representations, with classification over Q, F_p, and F_{2^e}."""

from .binomial import binom, kummer_divides, lemma_parity_counts, val_p_binom
from .fields import (
    BinaryField,
    Field,
    FieldArithmeticError,
    PolynomialRing,
    PrimeField,
    QuadraticField,
    Rationals,
)
from .forms import (
    DiagonalForm,
    FormError,
    GramForm,
    diagonal,
    diagonalize,
    orth_sum,
    parse_diagonal,
    scale,
    tensor,
)
from .invariants import (
    InvariantRecord,
    hasse_invariant,
    hilbert_symbol,
    invariant_record,
    isometric,
    quaternion_is_split,
)
from .catalog import (
    QuaternionDescriptor,
    desc_summ_form,
    phi_even,
    phi_odd,
    quaternion_norm,
    quaternion_norm_prime,
    theorem_a_rhs,
    theorem_b_rhs,
    weyl_form_gram,
)
from .descent import (
    check_invariance,
    invariant_form_space,
    sl2_action_matrix,
    twisted_form,
)
from .char2 import (
    Char2Class,
    QFormChar2,
    expected_twisted_class,
    invariant_qform_space_char2,
    nondefective_decompose,
    phi_forms_char2,
    quaternion_char2_qprime,
    twisted_form_char2,
    weyl_qform_char2,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
