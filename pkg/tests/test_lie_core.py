import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from cocycle_forge.foundations import FreeCombo
from cocycle_forge.lie_core import (
    BilinearForm,
    Cochain,
    LieAlgebra,
    abelian,
    algebra_from_dict,
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

Q = Fraction


def test_bracket_golden_relations(sl2_algebra):
    L = sl2_algebra
    X, Y, H = (L.element(i) for i in range(3))
    assert bracket(L, X, Y) == H
    assert bracket(L, H, X) == X * 2
    assert bracket(L, H, Y) == Y * -2
    assert bracket(L, X, X) == FreeCombo.zero()
    # bilinearity: [H, X + Y] = 2X - 2Y
    assert bracket(L, H, X + Y) == X * 2 - Y * 2


def test_validate_jacobi_good_tables(sl2_algebra):
    assert validate_jacobi(sl2_algebra) == []
    assert validate_jacobi(abelian(3)) == []
    assert validate_jacobi(heisenberg3()) == []
    assert validate_jacobi(sl2_times_sl2()) == []


def test_validate_jacobi_bad_table():
    # [x1,x2]=x3, [x1,x3]=x2, [x2,x3]=x1 violates Jacobi
    bad = LieAlgebra(
        "bad", ("a", "b", "c"),
        {(0, 1): FreeCombo({2: 1}), (0, 2): FreeCombo({1: 1}), (1, 2): FreeCombo({0: 1})},
        check=False)
    assert validate_jacobi(bad) == [(0, 1, 2)]
    with pytest.raises(ValueError, match="Jacobi"):
        LieAlgebra("bad", ("a", "b", "c"),
                   {(0, 1): FreeCombo({2: 1}), (0, 2): FreeCombo({1: 1}), (1, 2): FreeCombo({0: 1})})


def test_iterated_bracket(sl2_algebra):
    L = sl2_algebra
    X, Y, H = (L.element(i) for i in range(3))
    assert iterated_bracket(L, [X]) == X
    assert iterated_bracket(L, [X, Y]) == H
    # right-nested: [X,[Y,H]] = [X, 2Y] = 2H
    assert iterated_bracket(L, [X, Y, H]) == H * 2
    # an interior H doubles the bracket up to sign: [X,[H,Y]] = [X,-2Y] = -2H
    assert iterated_bracket(L, [X, H, Y]) == H * -2
    with pytest.raises(ValueError):
        iterated_bracket(L, [])


def test_killing_form_values(sl2_algebra, sl2_killing):
    # frozen from the 3x3 adjoint matrices: rows/cols ordered (X, Y, H)
    expected = ((Q(0), Q(4), Q(0)), (Q(4), Q(0), Q(0)), (Q(0), Q(0), Q(8)))
    assert sl2_killing.matrix == expected
    assert killing_form(abelian(3)).matrix == ((0,) * 3,) * 3
    # invariance instance: kappa([H,X],Y) = kappa(H,[X,Y]) = 8
    L = sl2_algebra
    H, X, Y = L.element(2), L.element(0), L.element(1)
    assert sl2_killing.pair(bracket(L, H, X), Y) == 8
    assert sl2_killing.pair(H, bracket(L, X, Y)) == 8


def test_check_invariant_form(sl2_algebra, sl2_killing):
    assert check_invariant_form(sl2_algebra, sl2_killing) == []
    identity = BilinearForm.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert check_invariant_form(sl2_algebra, identity) != []
    anything = BilinearForm.from_rows([[1, 2], [2, 5]])
    assert check_invariant_form(abelian(2), anything) == []


def test_cartan_cocycle_values(sl2_algebra, sl2_killing, sl2_cartan):
    # anchor: f(X, Y, H) = kappa(X, [Y, H]) = kappa(X, 2Y) = 8
    assert sl2_cartan.on_indices((0, 1, 2)) == 8
    assert sl2_cartan.on_indices((0, 0, 1)) == 0
    assert sl2_cartan.on_indices((1, 0, 2)) == -8
    assert cartan_cocycle(abelian(3), killing_form(abelian(3))).is_zero()
    identity = BilinearForm.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError, match="invariant"):
        cartan_cocycle(sl2_algebra, identity)


def test_ce_diff_constant(sl2_algebra, sl2_cartan):
    # dim 3: Lambda^4 = 0, trivially closed
    assert ce_diff_constant(sl2_algebra, sl2_cartan).is_zero()
    assert ce_diff_constant(abelian(3), Cochain(3, {(0, 1, 2): 5})).is_zero()
    # 6-dim: Cartan cocycle of the first factor, exhaustive on 4-tuples
    L6 = sl2_times_sl2()
    factor_cartan = Cochain(3, {(0, 1, 2): 8})
    assert ce_diff_constant(L6, factor_cartan).is_zero()
    # and a 3-cochain that is not closed there
    assert not ce_diff_constant(L6, Cochain(3, {(0, 1, 3): 1})).is_zero()


def test_dual_basis(sl2_algebra, sl2_killing):
    duals = dual_basis(sl2_algebra, sl2_killing)
    assert duals[0] == FreeCombo({1: Q(1, 4)})  # x^X = Y/4
    assert duals[1] == FreeCombo({0: Q(1, 4)})  # x^Y = X/4
    assert duals[2] == FreeCombo({2: Q(1, 8)})  # x^H = H/8
    for i in range(3):
        for j in range(3):
            assert sl2_killing.pair(sl2_algebra.element(i), duals[j]) == (1 if i == j else 0)
    identity = BilinearForm.from_rows([[1, 0], [0, 1]])
    assert dual_basis(abelian(2), identity) == [FreeCombo({0: 1}), FreeCombo({1: 1})]
    with pytest.raises(ValueError, match="degenerate"):
        dual_basis(abelian(2), killing_form(abelian(2)))


def test_standard_r_matrix(sl2_algebra, sl2_killing):
    r = standard_r_matrix(sl2_algebra, sl2_killing)
    assert r == FreeCombo({(0, 1): Q(1, 4), (1, 0): Q(1, 4), (2, 2): Q(1, 8)})
    for g in range(3):
        assert tensor_action(sl2_algebra, sl2_algebra.element(g), r) == FreeCombo.zero()
    one_dim = abelian(1)
    form = BilinearForm.from_rows([[Q(5)]])
    assert standard_r_matrix(one_dim, form) == FreeCombo({(0, 0): Q(1, 5)})


def test_r_matrix_basis_independence(sl2_algebra, sl2_killing):
    # recompute in the basis (X + Y, Y, H) and map back: same tensor
    L = sl2_algebra
    change = [[Q(1), Q(0), Q(0)], [Q(1), Q(1), Q(0)], [Q(0), Q(0), Q(1)]]  # new_i = sum change[i][k] old_k
    new_elements = [FreeCombo({k: change[i][k] for k in range(3)}) for i in range(3)]
    gram = [[sl2_killing.pair(a, b) for b in new_elements] for a in new_elements]
    structure = {}
    from cocycle_forge.foundations import exact_invert
    inverse = exact_invert(change)  # old_k = sum inverse[k][i] new_i
    for i, j in combinations(range(3), 2):
        br = bracket(L, new_elements[i], new_elements[j])
        in_new = {}
        for k, c in br:
            for idx in range(3):
                in_new[idx] = in_new.get(idx, Q(0)) + c * inverse[k][idx]
        structure[(i, j)] = FreeCombo(in_new)
    L_new = LieAlgebra("sl2-altbasis", ("A", "B", "C"), structure)
    r_new = standard_r_matrix(L_new, BilinearForm.from_rows(gram))
    # push r_new through the basis change back into the original coordinates
    pushed = {}
    for (i, j), c in r_new:
        for a in range(3):
            for b in range(3):
                key = (a, b)
                pushed[key] = pushed.get(key, Q(0)) + c * change[i][a] * change[j][b]
    assert FreeCombo(pushed) == standard_r_matrix(L, sl2_killing)


def test_tensor_action_examples(sl2_algebra):
    L = sl2_algebra
    H = L.element(2)
    assert tensor_action(L, H, FreeCombo.zero()) == FreeCombo.zero()
    # H.(X (x) X) = 4 X (x) X
    assert tensor_action(L, H, FreeCombo({(0, 0): 1})) == FreeCombo({(0, 0): 4})


def test_sl2_bracket_classify_examples():
    assert sl2_bracket_classify(["X", "Y"]) == ("H", 1)
    assert sl2_bracket_classify(["X", "X", "Y"]) == ("X", -2)
    assert sl2_bracket_classify(["X", "X"]) == ("zero", 0)
    assert sl2_bracket_classify(["X", "H", "Y"]) == ("H", -2)


def test_sl2_bracket_classify_random_sequences():
    rng = random.Random(20240817)
    for _ in range(500):
        length = rng.randint(1, 6)
        seq = [rng.choice("XYH") for _ in range(length)]
        kind, coeff = sl2_bracket_classify(seq)  # raises on any lemma violation
        if kind != "zero":
            assert coeff != 0


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=12), min_size=3, max_size=3))
def test_orthonormal_decompositions(coords):
    # z = sum kappa(z, x^i) x_i and z = sum kappa(z, x_i) x^i, exactly
    L = sl2()
    kappa = killing_form(L)
    duals = dual_basis(L, kappa)
    z = FreeCombo({i: c for i, c in enumerate(coords)})
    via_duals = FreeCombo.zero()
    via_basis = FreeCombo.zero()
    for i in range(3):
        via_duals = via_duals.add_scaled(L.element(i), kappa.pair(z, duals[i]))
        via_basis = via_basis.add_scaled(duals[i], kappa.pair(z, L.element(i)))
    assert via_duals == z
    assert via_basis == z


def test_algebra_from_dict_roundtrip():
    data = {
        "name": "heisenberg",
        "basis": ["P", "Q", "Z"],
        "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "c": "1"}]}],
    }
    L = algebra_from_dict(data)
    assert L.dim == 3
    assert bracket(L, L.element(0), L.element(1)) == FreeCombo({2: 1})
    with pytest.raises(ValueError, match="i < j"):
        algebra_from_dict({"basis": ["a", "b"], "brackets": [{"i": 1, "j": 0, "terms": []}]})


def test_cochain_alternating():
    f = Cochain(3, {(0, 1, 2): Q(7)})
    assert f.on_indices((1, 0, 2)) == -7
    assert f.on_indices((2, 0, 1)) == 7
    assert f.on_indices((0, 0, 1)) == 0
    a = FreeCombo({0: Q(2), 1: Q(1)})
    assert f.on_elements(a, FreeCombo({1: 1}), FreeCombo({2: 1})) == 14
