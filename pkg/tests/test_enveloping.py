from fractions import Fraction
from itertools import product

from hypothesis import given, settings, strategies as st

from cocycle_forge.foundations import FreeCombo
from cocycle_forge.lie_core import heisenberg3, sl2
from cocycle_forge.enveloping import (
    PBWAlgebra,
    format_monomial,
    hopf_suite,
    mono_degree,
    monomials_up_to,
    multiply_tensor2,
    parse_word,
    swap_tensor2,
    tensor_pair,
    unit_monomial,
    word_monomial,
)

Q = Fraction

X, Y, H = (1, 0, 0), (0, 1, 0), (0, 0, 1)
XY = (1, 1, 0)
UNIT = (0, 0, 0)


def test_straighten_golden(sl2_pbw):
    # YX = XY + [Y, X] = XY - H
    assert sl2_pbw.straighten_word((1, 0)) == FreeCombo({XY: 1, H: -1})
    # already ordered words pass through
    assert sl2_pbw.straighten_word((0, 1)) == FreeCombo({XY: 1})
    # HX = XH + [H, X] = XH + 2X
    assert sl2_pbw.straighten_word((2, 0)) == FreeCombo({(1, 0, 1): 1, X: 2})


def test_multiply_unit_and_golden(sl2_pbw):
    u = FreeCombo({XY: Q(2), H: Q(1, 3)})
    assert sl2_pbw.multiply(u, sl2_pbw.one()) == u
    assert sl2_pbw.multiply(sl2_pbw.one(), u) == u
    assert sl2_pbw.multiply(sl2_pbw.monomial(Y), sl2_pbw.monomial(X)) == FreeCombo({XY: 1, H: -1})
    # ordered concatenation: X * (Y H) = X Y H
    assert sl2_pbw.multiply(sl2_pbw.monomial(X), sl2_pbw.monomial((0, 1, 1))) == FreeCombo({(1, 1, 1): 1})


def test_augmentation(sl2_pbw):
    assert sl2_pbw.augmentation(sl2_pbw.one()) == 1
    assert sl2_pbw.augmentation(sl2_pbw.monomial(XY)) == 0
    assert sl2_pbw.augmentation(FreeCombo({UNIT: 3, XY: 2})) == 3


def test_coproduct_golden(sl2_pbw):
    assert sl2_pbw.coproduct_mono(X) == FreeCombo({(X, UNIT): 1, (UNIT, X): 1})
    assert sl2_pbw.coproduct_mono(XY) == FreeCombo({
        (XY, UNIT): 1, (X, Y): 1, (Y, X): 1, (UNIT, XY): 1})
    assert sl2_pbw.coproduct_mono((2, 0, 0)) == FreeCombo({
        ((2, 0, 0), UNIT): 1, (X, X): 2, (UNIT, (2, 0, 0)): 1})


def test_iterated_coproduct(sl2_pbw):
    assert sl2_pbw.iterated_coproduct_mono(X, 3) == FreeCombo({
        (X, UNIT, UNIT): 1, (UNIT, X, UNIT): 1, (UNIT, UNIT, X): 1})
    assert sl2_pbw.iterated_coproduct_mono(UNIT, 4) == FreeCombo({(UNIT,) * 4: 1})
    # XY into 3 slots: the 3 x 3 placements of X and Y
    terms = sl2_pbw.iterated_coproduct_mono(XY, 3)
    assert len(terms) == 9
    assert all(c == 1 for _, c in terms)
    # coassociativity against the closed form
    via_nested = FreeCombo.zero()
    for (a, b), c in sl2_pbw.coproduct_mono(XY):
        for (a1, a2), c2 in sl2_pbw.coproduct_mono(a):
            via_nested = via_nested.add_scaled(FreeCombo.single((a1, a2, b)), c * c2)
    assert via_nested == terms


def test_convolution_examples(sl2_pbw):
    U = sl2_pbw
    # eta.eps is the unit
    for m in monomials_up_to(3, 3):
        assert U.convolve(U.unit_counit_map, U.identity_map)(m) == U.monomial(m)
    # (Id * Id)(X) = 2X
    assert U.convolve(U.identity_map, U.identity_map)(X) == FreeCombo({X: 2})
    # ((Id - eta.eps) *2)(XY) = XY + YX = 2XY - H
    J = U.augmentation_complement_map
    assert U.convolve(J, J)(XY) == FreeCombo({XY: 2, H: -1})


def test_filtration(sl2_pbw):
    U = sl2_pbw
    J = U.augmentation_complement_map
    for m in monomials_up_to(3, 3):
        power = J
        for _ in range(mono_degree(m)):
            power = U.convolve(power, J)
        assert power(m) == FreeCombo.zero()  # k = degree + 1 annihilates


small_monos = st.tuples(*(st.integers(min_value=0, max_value=2) for _ in range(3))).filter(
    lambda m: sum(m) <= 3)


@settings(max_examples=60, deadline=None)
@given(small_monos, small_monos, small_monos)
def test_multiplication_associative(a, b, c):
    U = PBWAlgebra(sl2())
    lhs = U.multiply(U.multiply_mono(a, b), U.monomial(c))
    rhs = U.multiply(U.monomial(a), U.multiply_mono(b, c))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(small_monos, small_monos)
def test_coproduct_is_algebra_map(a, b):
    U = PBWAlgebra(sl2())
    lhs = U.coproduct(U.multiply_mono(a, b))
    rhs = multiply_tensor2(U, U.coproduct_mono(a), U.coproduct_mono(b))
    assert lhs == rhs


def test_cocommutativity_and_counit(sl2_pbw):
    U = sl2_pbw
    for m in monomials_up_to(3, 4):
        delta = U.coproduct_mono(m)
        assert swap_tensor2(delta) == delta
        left = FreeCombo({b: c for (a, b), c in delta if a == UNIT})
        right = FreeCombo({a: c for (a, b), c in delta if b == UNIT})
        assert left == U.monomial(m)
        assert right == U.monomial(m)


def test_parse_word_grammar(sl2_algebra):
    assert parse_word(sl2_algebra, "X Y^2 H") == [0, 1, 1, 2]
    assert parse_word(sl2_algebra, "X*Y") == [0, 1]
    assert parse_word(sl2_algebra, "1") == []
    assert parse_word(sl2_algebra, "Y X") == [1, 0]


def test_format_monomial(sl2_algebra):
    assert format_monomial(sl2_algebra, UNIT) == "1"
    assert format_monomial(sl2_algebra, (1, 2, 0)) == "X Y^2"


def test_hopf_suite_clean():
    assert hopf_suite(PBWAlgebra(sl2()), max_degree=3, samples=50) == []
    assert hopf_suite(PBWAlgebra(heisenberg3()), max_degree=3, samples=50) == []
