import itertools
import math
from fractions import Fraction

import pytest

from mtv.indexcore import SignedIndex, zi
from mtv.regularize import (
    EMPTY,
    check_distribution,
    distribution_residual,
    rho_apply,
    sh_from_st,
    shift_param,
    shuffle_reg,
    stuffle_reg,
    t_shuffle_reg0,
    t_st_from_sh,
    t_stuffle_reg,
    unshuffle_zeros,
    word_shuffle_reg,
    zeta_lc_word_mul,
    zeta_ones,
)
from mtv.symring import LOG2, PI2, SymPoly, lc_add, lc_is_zero, lc_scale, lc_sub
from mtv.wordalg import shuffle, stuffle, stuffle_lincomb

T = SymPoly.gen("T")
U = SymPoly.gen("U")
W = SymPoly.gen("W")
V = SymPoly.gen("V")
ZERO = SymPoly.zero()


def test_stuffle_reg_za1():
    for a in (2, 3, 5):
        out = stuffle_reg(zi(a, 1), U)
        assert out == {zi(a): U, zi(1, a): SymPoly.const(-1), zi(a + 1): SymPoly.const(-1)}


def test_stuffle_reg_za11():
    # the a = 2 instance collapses the two zeta(2,2)-type terms
    out = stuffle_reg(zi(2, 1, 1), U)
    expect = {
        zi(2): U * U * Fraction(1, 2),
        zi(3): -U,
        zi(1, 2): -U,
        zi(4): SymPoly.const(Fraction(1, 2)),
        zi(1, 3): SymPoly.one(),
        zi(1, 1, 2): SymPoly.one(),
    }
    assert out == expect
    # generic a keeps all eight terms of the stated expansion
    out = stuffle_reg(zi(3, 1, 1), U)
    expect = {
        zi(3): U * U * Fraction(1, 2),
        zi(4): -U,
        zi(1, 3): -U,
        zi(5): SymPoly.const(Fraction(1, 2)),
        zi(1, 4): SymPoly.one(),
        zi(2, 3): SymPoly.const(Fraction(1, 2)),
        zi(3, 2): SymPoly.const(Fraction(-1, 2)),
        zi(1, 1, 3): SymPoly.one(),
    }
    assert out == expect


def test_stuffle_reg_convergent_passthrough():
    assert stuffle_reg(zi(3), U) == {zi(3): SymPoly.one()}


def test_shuffle_reg_211():
    out = shuffle_reg(zi(2, 1, 1), W)
    assert out == {
        zi(2): W * W * Fraction(1, 2),
        zi(1, 2): -2 * W,
        zi(1, 1, 2): SymPoly.const(3),
    }


def test_shuffle_reg_doubly_divergent_211():
    # one leading zero and two trailing ones; the terminal coefficient
    # of the depth-three block is -1 (cross-checked by zero-unshuffling
    # and by hand)
    out = shuffle_reg(SignedIndex((2, 1, 1), 1), W)
    expect = {
        zi(2): -W ** 3 * Fraction(1, 2),
        zi(3): -(W * W),
        zi(1, 2): 2 * W * W,
        zi(1, 3): 4 * W,
        zi(2, 2): W,
        zi(1, 1, 2): -3 * W,
        zi(1, 1, 3): SymPoly.const(-6),
        zi(1, 2, 2): SymPoly.const(-2),
        zi(2, 1, 2): SymPoly.const(-1),
    }
    assert out == expect


def test_shuffle_reg_ones_only():
    # zeta^{sh,W}(1^a) = W^a / a!
    for a in range(1, 5):
        out = shuffle_reg(SignedIndex((1,) * a, 0), W)
        assert out == {EMPTY: W ** a * Fraction(1, math.factorial(a))}


def test_word_strip_order_independent():
    # doubly divergent words: result must not depend on which side is
    # stripped first; re-derive the leading-zero-first variant inline
    def reg_zero_first(w, wval):
        w = tuple(w)
        if not w:
            return {(): SymPoly.one()}
        if w[0] == 0:
            beta = len(w) - len(tuple(itertools.dropwhile(lambda x: x == 0, w)))
            u = w[1:]
            out = lc_scale(reg_zero_first(u, wval), wval)
            for v, m in shuffle(u, (0,)).items():
                if v != w:
                    out = lc_add(out, lc_scale(reg_zero_first(v, wval), -m))
            return lc_scale(out, Fraction(1, beta))
        if w[-1] == 1:
            alpha = len(w) - len(tuple(itertools.dropwhile(lambda x: x == 1, reversed(w))))
            u = w[:-1]
            out = lc_scale(reg_zero_first(u, wval), wval)
            for v, m in shuffle(u, (1,)).items():
                if v != w:
                    out = lc_add(out, lc_scale(reg_zero_first(v, wval), -m))
            return lc_scale(out, Fraction(1, alpha))
        return {w: SymPoly.one()}

    wval = -W
    for w in [(0, 1, 0, 1, 1), (0, 0, 1, 1), (0, -1, 1), (0, 1, -1, 1)]:
        assert lc_is_zero(lc_sub(word_shuffle_reg(w, wval), reg_zero_first(w, wval)))


def test_unshuffle_zeros_examples():
    for k in (2, 3, 4):
        out = unshuffle_zeros(SignedIndex((k,), 1))
        assert out == {zi(k + 1): SymPoly.const(-k)}
    out = unshuffle_zeros(SignedIndex((2,), 2))
    assert out == {zi(4): SymPoly.const(3)}
    # agreement with the lie-coefficient family: zeta_1({2}^a) at the
    # linear level equals 2(-1)^a zeta(2a+1); check through shuffle
    # regularization at parameter 0 elsewhere (closedform tests)
    assert unshuffle_zeros(zi(3)) == {zi(3): SymPoly.one()}


def test_unshuffle_matches_shuffle_reg_at_zero():
    for parts, lz in [((2,), 1), ((2, 1, 1), 1), ((3,), 2), ((1, 2), 1), ((-2, 1), 1)]:
        s = SignedIndex(parts, lz)
        via_formula: dict = {}
        for key, c in unshuffle_zeros(s).items():
            via_formula = lc_add(via_formula, lc_scale(shuffle_reg(key, ZERO), c))
        assert lc_is_zero(lc_sub(shuffle_reg(s, ZERO), via_formula))


def _signed_indices(max_weight):
    def comps(n):
        if n == 0:
            yield ()
            return
        for first in range(1, n + 1):
            for rest in comps(n - first):
                yield (first,) + rest

    for w in range(1, max_weight + 1):
        for comp in comps(w):
            for signs in itertools.product((1, -1), repeat=len(comp)):
                yield SignedIndex(tuple(s * k for s, k in zip(signs, comp)), 0)


def test_shift_param_exact_and_roundtrip():
    S = SymPoly.gen("S")
    for s in _signed_indices(4):
        assert lc_is_zero(lc_sub(stuffle_reg(s, T), shift_param("stuffle", s, ZERO, T)))
        assert lc_is_zero(lc_sub(shuffle_reg(s, T), shift_param("shuffle", s, S, T)))
    # shifting U down to 0 and back reproduces the polynomial
    s = zi(2, 1)
    down = shift_param("stuffle", s, U, ZERO)
    assert down == stuffle_reg(s, ZERO)
    up = shift_param("stuffle", s, ZERO, U)
    assert up == stuffle_reg(s, U)


def test_rho_values():
    assert rho_apply(T) == T
    assert rho_apply(T ** 2) == T ** 2 + PI2 * Fraction(1, 6)
    z3 = SymPoly.gen("z3")
    assert rho_apply(T ** 3) == T ** 3 + 3 * (PI2 * Fraction(1, 6)) * T - 2 * z3


def test_zeta_ones():
    P = SymPoly.gen("T")
    assert zeta_ones(0, P) == SymPoly.one()
    assert zeta_ones(1, P) == P
    assert zeta_ones(2, P) == P * P * Fraction(1, 2) - PI2 * Fraction(1, 12)
    z3 = SymPoly.gen("z3")
    assert zeta_ones(3, P) == (
        P ** 3 * Fraction(1, 6) - P * PI2 * Fraction(1, 12) + z3 * Fraction(1, 3)
    )


def test_rho_inverts_zeta_ones():
    for i in range(9):
        assert rho_apply(zeta_ones(i, T)) == SymPoly.gen("T", i, Fraction(1, math.factorial(i)))


def test_sh_from_st_fixes_single_trailing_one():
    # a single trailing 1 gives a linear parameter polynomial, which the
    # comparison map leaves untouched
    for s in (zi(2, 1), zi(3, 1), zi(-2, 1)):
        assert lc_is_zero(lc_sub(sh_from_st(s, "T"), stuffle_reg(s, T)))


def test_stuffle_reg_multiplicative():
    small = list(_signed_indices(3))
    for a in small:
        for b in small:
            lhs: dict = {}
            for key, m in stuffle(a, b).items():
                lhs = lc_add(lhs, lc_scale(stuffle_reg(key, T), m))
            rhs = stuffle_lincomb(stuffle_reg(a, T), stuffle_reg(b, T))
            assert lc_is_zero(lc_sub(lhs, rhs))


def test_t_st_from_sh_weight1():
    # t*(1) = V: the half-log carried by the signed weight-one index
    # cancels against the shifted parameter once depth-one constants
    # are rewritten
    from mtv.regularize import reduce_depth1

    out = reduce_depth1(t_st_from_sh((1,), V))
    assert out == {EMPTY: V}


def test_t_st_from_sh_alpha1_shape():
    # t*({2},1) = t_sh0(2,1) + (V - log2/2) t_sh0(2) as combinations
    lhs = t_st_from_sh((2, 1), V)
    rhs = lc_add(
        t_shuffle_reg0((2, 1)),
        lc_scale(t_shuffle_reg0((2,)), V - LOG2 * Fraction(1, 2)),
    )
    assert lc_is_zero(lc_sub(lhs, rhs))


def test_t_stuffle_reg_t21():
    # t*(2,1) = V t(2) - t(1,2) - t(3), then converted to signed form
    out = t_stuffle_reg((2, 1), V)
    expect: dict = {}
    from mtv.wordalg import t_to_zeta

    expect = lc_add(expect, lc_scale(t_to_zeta((2,)), V))
    expect = lc_add(expect, lc_scale(t_to_zeta((1, 2)), Fraction(-1)))
    expect = lc_add(expect, lc_scale(t_to_zeta((3,)), Fraction(-1)))
    assert lc_is_zero(lc_sub(out, expect))


def test_distribution_weight1_special_case():
    # zeta_sh(1) + zeta_sh(bar 1) - zeta_sh(1) = -log 2, structurally
    lhs = lc_add(shuffle_reg(zi(1), W), shuffle_reg(zi(-1), W))
    lhs = lc_sub(lhs, shuffle_reg(zi(1), W))
    assert lhs == {zi(-1): SymPoly.one()}  # the signed index worth -log 2


def test_distribution_depth1_plain():
    assert lc_is_zero(distribution_residual((2,), 0, 0))
    assert check_distribution((2,), 0, 0)


def test_distribution_structural_at_alpha0():
    for k in [(2,), (3,), (1, 2), (2, 2)]:
        for ell in (0, 1):
            assert lc_is_zero(distribution_residual(k, 0, ell))


def test_distribution_small_sweep():
    from mtv.numoracle import NumEnv

    env = NumEnv(prec=64)
    for k in [(2,), (1, 2)]:
        for alpha in (0, 1, 2):
            for ell in (0, 1):
                assert check_distribution(k, alpha, ell, env=env)


def test_word_product_on_zeta_side():
    # zeta(2) * zeta(bar 1) expands in the word shuffle to three terms
    prod = zeta_lc_word_mul({zi(2): SymPoly.one()}, {zi(-1): SymPoly.one()})
    assert prod == {
        zi(-1, 2): SymPoly.one(),
        zi(-1, -2): SymPoly.one(),
        zi(-2, -1): SymPoly.one(),
    }


def test_regpoly_wrapper_validates():
    from mtv.regularize import RegPoly

    out = RegPoly(stuffle_reg(zi(2, 1, 1), U), "U")
    assert out.degree() == 2
    assert out.coeff(zi(1, 1, 2)) == SymPoly.one()
    with pytest.raises(AssertionError):
        RegPoly({zi(2, 1): SymPoly.one()}, "U")  # divergent key
    with pytest.raises(AssertionError):
        RegPoly({zi(2): SymPoly.gen("W")}, "U")  # wrong parameter


def test_regularization_output_weight_homogeneous():
    # coefficient weight plus index weight is constant across each output
    for s in _signed_indices(5):
        for out in (stuffle_reg(s, U), shuffle_reg(s, W)):
            weights = set()
            for key, coeff in out.items():
                cw = coeff.weight()
                assert cw is not None
                weights.add(cw + key.weight)
            assert weights == {s.weight}
