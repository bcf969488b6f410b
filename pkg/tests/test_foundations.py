from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cocycle_forge.foundations import (
    FreeCombo,
    TPoly,
    exact_invert,
    exact_nullspace,
    exact_rank,
    exact_solve,
    rat,
)

Q = Fraction

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)
small_polys = st.dictionaries(st.integers(min_value=0, max_value=6), rationals, max_size=5).map(TPoly)


def test_rat_parses_fraction_text():
    assert rat("3/4") == Q(3, 4)
    assert rat("-7") == Q(-7)
    assert str(rat("6/8")) == "3/4"  # lowest terms, q > 0
    assert str(rat("5/-10")) == "-1/2"


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)


@given(rationals, rationals, rationals)
def test_rational_field_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r


# -- TPoly -------------------------------------------------------------------

def test_integrate_unit_interval_examples():
    assert TPoly().integrate_unit_interval() == 0
    assert TPoly({2: Q(1)}).integrate_unit_interval() == Q(1, 3)
    assert TPoly({3: Q(1), 2: Q(-1)}).integrate_unit_interval() == Q(-1, 12)


def test_evaluate_examples():
    assert TPoly({2: Q(1)}).evaluate(1) == 1
    assert TPoly({1: Q(1), 2: Q(-1)}).evaluate(0) == 0
    half = TPoly({1: Q(1, 2), 2: Q(-1, 2)})  # (t - t^2)/2
    assert half.evaluate(Q(1, 2)) == Q(1, 8)


@given(small_polys, small_polys, rationals)
def test_integration_is_linear(p, q, s):
    combined = p + q.scale(s)
    assert combined.integrate_unit_interval() == p.integrate_unit_interval() + s * q.integrate_unit_interval()


@given(small_polys)
def test_evaluation_endpoints(p):
    assert p.evaluate(1) == sum(p.coeffs.values(), Q(0))
    assert p.evaluate(0) == p.coeff(0)


@given(small_polys)
def test_derivative_then_integrate(p):
    # fundamental theorem on [0, 1]
    assert p.derivative().integrate_unit_interval() == p.evaluate(1) - p.evaluate(0)


def test_degree_of_zero_is_minus_infinity():
    assert TPoly().degree == float("-inf")
    assert TPoly({0: Q(0)}).degree == float("-inf")
    assert TPoly({4: Q(1)}).degree == 4


def test_convolve_matches_hand_product():
    p = TPoly({0: Q(1), 1: Q(1)})   # 1 + t
    q = TPoly({1: Q(2)})            # 2t
    assert p.convolve(q) == TPoly({1: Q(2), 2: Q(2)})


# -- FreeCombo ----------------------------------------------------------------

def test_combo_arith_examples():
    x = FreeCombo.single("X")
    y = FreeCombo.single("Y")
    h = FreeCombo.single("H", Q(1, 2))
    assert x.add_scaled(x, -1) == FreeCombo.zero()
    assert x.add_scaled(y, 2) == FreeCombo({"X": 1, "Y": 2})
    assert (x + h).add_scaled(h, -1) == x


small_combos = st.dictionaries(st.integers(min_value=0, max_value=5), rationals, max_size=5).map(FreeCombo)


@given(small_combos, small_combos, rationals)
def test_combo_never_stores_zero(a, b, s):
    for combo in (a + b, a - b, a.add_scaled(b, s), a * s, -a):
        assert all(coeff != 0 for _, coeff in combo)


@given(small_combos, small_combos, small_combos, rationals)
def test_combo_module_laws(a, b, c, s):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a + b) * s == a * s + b * s
    assert a.add_scaled(b, s) == a + b * s


def test_map_keys_merges_collisions():
    combo = FreeCombo({1: Q(1), 2: Q(-1)})
    assert combo.map_keys(lambda k: "same") == FreeCombo.zero()


# -- exact linear algebra -------------------------------------------------------

def test_exact_solve_and_invert():
    matrix = [[Q(0), Q(4)], [Q(4), Q(0)]]
    assert exact_invert(matrix) == [[Q(0), Q(1, 4)], [Q(1, 4), Q(0)]]
    assert exact_solve(matrix, [Q(1), Q(0)]) == [Q(0), Q(1, 4)]
    assert exact_rank(matrix) == 2
    assert exact_nullspace(matrix) == []


def test_singular_matrix_detected():
    matrix = [[Q(1), Q(2)], [Q(2), Q(4)]]
    assert exact_invert(matrix) is None
    assert exact_rank(matrix) == 1
    (kernel_vector,) = exact_nullspace(matrix)
    assert kernel_vector == [Q(-2), Q(1)]
    assert exact_solve(matrix, [Q(1), Q(3)]) is None  # inconsistent
