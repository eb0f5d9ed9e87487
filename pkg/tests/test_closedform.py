from fractions import Fraction

import pytest

from mtv.closedform import (
    coeff_A,
    coeff_B,
    coeff_c_21,
    coeff_c_231,
    coeff_d_121,
    coeff_d_232,
    eval_t12n,
    eval_t22,
    eval_t22_tilde,
    eval_t2212_sh,
    eval_t2212_star,
    eval_t2232_tilde,
    eval_z22,
    eval_z2232,
    zbar_reduce,
    zl_2212,
)
from mtv.symring import LOG2, PI2, SymPoly, zeta_sym

V = SymPoly.gen("V")
W = SymPoly.gen("W")


def test_coefficient_values():
    assert coeff_c_21(0) == 0
    assert coeff_c_21(1) == -2
    assert coeff_c_231(1, 0) == Fraction(-11, 2)  # word 23
    assert coeff_c_231(0, 1) == Fraction(9, 2)  # word 32
    assert coeff_d_121(0, 2) == Fraction(31, 8)  # word 122
    assert coeff_d_121(0, 0) == 2  # the weight-one normalization
    assert coeff_d_121(1, 0) == Fraction(-7, 2)
    assert coeff_d_121(1, 1) == Fraction(93, 4)
    assert coeff_d_232(0, 0) == 7


def test_matrix_entry_combinations():
    assert -2 * coeff_c_21(1) == 4
    assert 8 * coeff_c_231(1, 0) - 8 * coeff_c_231(0, 1) == -80
    assert -8 * coeff_c_231(1, 0) + 8 * coeff_c_231(0, 1) + 8 * coeff_d_121(0, 2) == 111


def test_zl_2212_duality_consistency():
    # zeta-l({2}^b, 1, {2}^(a+1)) agrees with the three-insertion table
    for a in range(0, 4):
        for b in range(0, 4):
            assert zl_2212(b, a + 1) == coeff_c_231(a, b)
    # zeta(1,2) = zeta(3) at the linear level
    assert zl_2212(0, 1) == 1


def test_eval_t22():
    assert eval_t22(0) == SymPoly.one()
    assert eval_t22(1) == PI2 * Fraction(1, 8)
    assert eval_t22(2) == SymPoly.gen("pi2", 2, Fraction(1, 384))
    assert eval_t22_tilde(1) == PI2 * Fraction(1, 2)
    assert eval_z22(2) == SymPoly.gen("pi2", 2, Fraction(1, 120))


def test_zbar_reduce():
    assert zbar_reduce(1) == -LOG2
    assert zbar_reduce(3) == SymPoly.gen("z3", 1, Fraction(-3, 4))
    assert zbar_reduce(2) == SymPoly.gen("pi2", 1, Fraction(-1, 12))


def test_t2212_star_base_cases():
    assert eval_t2212_star(0, 0) == V
    assert eval_t2212_star(0, 1) == PI2 * LOG2 * Fraction(1, 8) + SymPoly.gen("z3", 1, Fraction(-7, 16))


def test_t2212_sh_equals_star_at_shifted_parameter():
    for a in range(0, 4):
        for b in range(0, 4):
            star = eval_t2212_star(a, b, (W + LOG2) * Fraction(1, 2))
            sh = eval_t2212_sh(a, b, W)
            assert (star - sh).is_zero


def test_t12n_equals_boundary_family():
    for n in range(1, 9):
        assert (eval_t2212_star(0, n, V) - eval_t12n(n)).is_zero
    with pytest.raises(ValueError):
        eval_t12n(0)


def test_t2212_v_derivative():
    for a in range(0, 5):
        for b in range(0, 5):
            dv = eval_t2212_star(a, b, V).deriv("V")
            assert dv == (eval_t22(a) if b == 0 else SymPoly.zero())


def test_t2232_top_coefficient_is_d232():
    for a in range(0, 4):
        for b in range(0, 4):
            p = eval_t2232_tilde(a, b)
            w = 2 * a + 2 * b + 3
            coeff = p.coeff_of_power(f"z{w}", 1)
            assert coeff.const_value() == coeff_d_232(a, b)


def test_z2232_base():
    assert eval_z2232(0, 0) == zeta_sym(3)
    # zeta(2,3) = -11/2 zeta(5) + 3 zeta(2) zeta(3)
    p = eval_z2232(1, 0)
    assert p.coeff_of_power("z5", 1).const_value() == Fraction(-11, 2)
    assert p.coeff_of_power("z3", 1) == SymPoly.gen("pi2", 1, Fraction(1, 2))


def test_AB_tables():
    assert coeff_A(1, 0, 0) == 1
    assert coeff_B(1, 0, 0) == Fraction(3, 2)
    assert coeff_A(2, 1, 0) == 1
    assert coeff_B(2, 1, 0) == Fraction(15, 4)


def test_unshuffle_lie_projection_cross_check():
    # zeta_1({2}^a) unshuffles to -2 sum_j zeta({2}^j, 3, {2}^(a-1-j));
    # at the linear level this forces sum_j c[2^j 3 2^(a-1-j)] = (-1)^(a+1),
    # matching the direct value c[2^a 1] = 2 (-1)^a
    for a in (1, 2, 3):
        total = sum(coeff_c_231(j, a - 1 - j) for j in range(a))
        assert -2 * total == coeff_c_21(a)
