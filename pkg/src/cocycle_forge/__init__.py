"""Exact cocycle lifting and quasi-invariant tensors for finite-dimensional
Lie algebras over the rationals."""

from .foundations import FreeCombo, TPoly, rat
from .lie_core import (
    BUILTIN_ALGEBRAS,
    BilinearForm,
    Cochain,
    LieAlgebra,
    abelian,
    bracket,
    cartan_cocycle,
    ce_diff_constant,
    check_invariant_form,
    dual_basis,
    heisenberg3,
    iterated_bracket,
    killing_form,
    sl2,
    sl2_bracket_classify,
    sl2_times_sl2,
    standard_r_matrix,
    tensor_action,
    validate_jacobi,
)
from .enveloping import PBWAlgebra, format_monomial, monomials_up_to, parse_word
from .homotopy import EulerianHomotopy, closed_form_idempotent, identity_suite
from .lifting import BTable, CocycleLift, abelian_lift_value, check_vanishing
from .representative import (
    AbelianRepresentative,
    ExtElement,
    MixedTensor,
    casimir_uniqueness_check,
)
from .report import Failure, failures_to_json

__version__ = "0.1.0"
