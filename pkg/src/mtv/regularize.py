"""Regularization schemes for divergent sums and the maps between them.

Two presentations coexist.  The stuffle presentation writes a divergent
object as a polynomial in the parameter assigned to the weight-one
divergent sum, with coefficients that are linear combinations of
convergent signed indices produced by the quasi-shuffle recursion.  The
shuffle presentation does the same through the integral-word recursion,
stripping trailing +1 letters first and leading 0 letters second, with
both length-one divergent words assigned the value -W.

Identities relating objects within one presentation (parameter shifts,
the distribution relations, multiplicativity) are exact here: both
sides reduce to identical canonical linear combinations.  Identities
relating the two presentations to each other encode genuine analytic
relations between the underlying numbers and are verified through the
numerical oracle instead (see numoracle).

All values are immutable and all functions pure; the module-level memo
tables only ever store deterministic results keyed by immutable inputs,
so concurrent use can at worst duplicate a computation, never change a
result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .closedform import zbar_reduce
from .indexcore import IntWord, SignedIndex, from_int_word, to_int_word
from .symring import LOG2, SymPoly, lc_add, lc_is_zero, lc_scale, lc_sub, zeta_sym
from .wordalg import _stuffle_parts, shuffle, shuffle_lincomb, stuffle_lincomb, t_to_zeta

EMPTY = SignedIndex((), 0)


@dataclass(frozen=True)
class RegPoly:
    """Linear combination of convergent signed indices with polynomial
    coefficients in at most one regularization parameter."""

    terms: dict
    param: str | None = None

    def __post_init__(self):
        for key, coeff in self.terms.items():
            assert key.is_convergent(), f"divergent key {key} in RegPoly"
            extra = coeff.generators() & {"V", "U", "W", "T", "S"}
            if self.param is None:
                assert not extra, f"unexpected parameters {extra}"
            else:
                assert extra <= {self.param}, f"mixed parameters {extra}"

    def coeff(self, key) -> SymPoly:
        return self.terms.get(key, SymPoly.zero())

    def degree(self) -> int:
        if self.param is None:
            return 0
        return max((c.max_degree(self.param) for c in self.terms.values()), default=0)


# ---------------------------------------------------------------------------
# stuffle regularization
# ---------------------------------------------------------------------------

_st_cache: dict = {}


def stuffle_reg(s: SignedIndex, param: SymPoly) -> dict:
    """Express s as {convergent SignedIndex: SymPoly in param}.

    Already-convergent input passes through with coefficient 1.  The
    recursion peels one trailing unsigned 1 at a time: among the terms
    of u * (1), the input index itself appears with multiplicity equal
    to its trailing-1 run, and every other term has a strictly shorter
    run.
    """
    assert s.lead_zeros == 0, "stuffle regularization needs lead_zeros = 0"
    param = SymPoly.coerce(param)
    key = (s.parts, param)
    hit = _st_cache.get(key)
    if hit is not None:
        return hit
    if s.is_convergent():
        out = {s: SymPoly.one()}
    else:
        parts = s.parts
        alpha = 0
        for x in reversed(parts):
            if x != 1:
                break
            alpha += 1
        u = parts[:-1]
        out: dict = lc_scale(stuffle_reg(SignedIndex(u, 0), param), param)
        for v, m in _stuffle_parts(u, (1,)):
            if v == parts:
                assert m == alpha
                continue
            out = lc_add(out, lc_scale(stuffle_reg(SignedIndex(v, 0), param), SymPoly.const(-m)))
        out = lc_scale(out, Fraction(1, alpha))
    _st_cache[key] = out
    return out


def stuffle_reg_mul(a: dict, b: dict) -> dict:
    """Product of two stuffle-presentation combinations (index stuffle)."""
    return stuffle_lincomb(a, b)


# ---------------------------------------------------------------------------
# shuffle regularization on integral words
# ---------------------------------------------------------------------------

_word_cache: dict = {}


def word_shuffle_reg(w: IntWord, wval: SymPoly) -> dict:
    """Regularize an integral word to {convergent word: SymPoly}.

    ``wval`` is the value assigned to both length-one divergent words
    (0,) and (+1,); the conventional parameterization sets wval = -W.
    Trailing +1 letters are stripped before leading 0 letters; the
    result does not depend on that order (checked in the test suite).
    """
    w = tuple(w)
    wval = SymPoly.coerce(wval)
    key = (w, wval)
    hit = _word_cache.get(key)
    if hit is not None:
        return hit
    if not w:
        out = {(): SymPoly.one()}
    elif w[-1] == 1:
        alpha = 0
        for x in reversed(w):
            if x != 1:
                break
            alpha += 1
        u = w[:-1]
        out = lc_scale(word_shuffle_reg(u, wval), wval)
        for v, m in shuffle(u, (1,)).items():
            if v == w:
                assert m == alpha
                continue
            out = lc_add(out, lc_scale(word_shuffle_reg(v, wval), SymPoly.const(-m)))
        out = lc_scale(out, Fraction(1, alpha))
    elif w[0] == 0:
        beta = 0
        for x in w:
            if x != 0:
                break
            beta += 1
        u = w[1:]
        out = lc_scale(word_shuffle_reg(u, wval), wval)
        for v, m in shuffle(u, (0,)).items():
            if v == w:
                assert m == beta
                continue
            out = lc_add(out, lc_scale(word_shuffle_reg(v, wval), SymPoly.const(-m)))
        out = lc_scale(out, Fraction(1, beta))
    else:
        out = {w: SymPoly.one()}
    _word_cache[key] = out
    return out


def _word_to_index(w: IntWord):
    return EMPTY if not w else from_int_word(w)


def _index_to_word(s: SignedIndex):
    return to_int_word(s)


def zeta_lc_to_words(lc: dict) -> dict:
    """Signed-index combination -> word combination, with the (-1)^d factors."""
    out: dict = {}
    for s, c in lc.items():
        sign = (-1) ** s.depth
        out = lc_add(out, {_index_to_word(s): sign * SymPoly.coerce(c)})
    return out


def words_to_zeta_lc(lc: dict) -> dict:
    out: dict = {}
    for w, c in lc.items():
        s = _word_to_index(w)
        sign = (-1) ** s.depth
        out = lc_add(out, {s: sign * SymPoly.coerce(c)})
    return out


def shuffle_reg(s: SignedIndex, param: SymPoly) -> dict:
    """Shuffle-regularize zeta_l(eps; k) to {convergent SignedIndex: SymPoly}.

    The parameter is the value of the regularized weight-one sum, so the
    two length-one divergent words carry the value -param.
    """
    param = SymPoly.coerce(param)
    word = to_int_word(s)
    if not word:
        return {EMPTY: SymPoly.one()}
    expansion = word_shuffle_reg(word, -param)
    sign_s = (-1) ** s.depth
    out: dict = {}
    for w, c in expansion.items():
        idx = _word_to_index(w)
        out = lc_add(out, {idx: Fraction(sign_s * (-1) ** idx.depth) * c})
    return out


def zeta_lc_word_mul(a: dict, b: dict) -> dict:
    """Product of two convergent signed-index combinations, expanded with
    the word shuffle (both factors converted to integral words first)."""
    wa, wb = zeta_lc_to_words(a), zeta_lc_to_words(b)
    return words_to_zeta_lc(shuffle_lincomb(wa, wb))


def unshuffle_zeros(s: SignedIndex) -> dict:
    """Binomial expansion removing the leading zeros at parameter 0.

    Returns {SignedIndex with lead_zeros 0: Fraction}; entries keep
    their signs and grow by the distributed zero counts.  Terms may
    still carry trailing 1s and then require further regularization.
    """
    ell, parts = s.lead_zeros, s.parts
    if ell == 0:
        return {s: SymPoly.one()}
    d = len(parts)
    out: dict = {}
    for comp in _compositions(ell, d):
        coeff = Fraction((-1) ** ell)
        new_parts = []
        for k, i in zip(parts, comp):
            coeff *= math.comb(abs(k) + i - 1, i)
            new_parts.append((1 if k > 0 else -1) * (abs(k) + i))
        key = SignedIndex(tuple(new_parts), 0)
        out = lc_add(out, {key: SymPoly.const(coeff)})
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# parameter shifts and the rho map
# ---------------------------------------------------------------------------

def _split_trailing_ones(parts: tuple):
    alpha = 0
    for x in reversed(parts):
        if x != 1:
            break
        alpha += 1
    return parts[: len(parts) - alpha], alpha


def shift_param(scheme: str, s: SignedIndex, old, new) -> dict:
    """Regularization of s at parameter ``new`` from the family at ``old``:

        reg_new(k, 1^a) = sum_i reg_old(k, 1^(a-i)) (new - old)^i / i!
    """
    assert s.lead_zeros == 0
    old, new = SymPoly.coerce(old), SymPoly.coerce(new)
    prefix, alpha = _split_trailing_ones(s.parts)
    reg = {"stuffle": stuffle_reg, "shuffle": shuffle_reg}[scheme]
    out: dict = {}
    for i in range(alpha + 1):
        si = SignedIndex(prefix + (1,) * (alpha - i), 0)
        factor = (new - old) ** i * Fraction(1, math.factorial(i))
        out = lc_add(out, lc_scale(reg(si, old), factor))
    return out


@lru_cache(maxsize=None)
def _exp_series(kind: str, order: int):
    """Coefficients E_0..E_order of exp(sum_{n>=2} s_n zeta(n) u^n).

    kind 'plus' uses s_n = (-1)^n / n (the correction series of the
    shuffle-from-stuffle comparison map); kind 'minus' uses the negated
    exponent.
    """
    sgn = 1 if kind == "plus" else -1
    a = [SymPoly.zero(), SymPoly.zero()]
    for n in range(2, order + 1):
        a.append(SymPoly.const(Fraction(sgn * (-1) ** n, n)) * zeta_sym(n))
    E = [SymPoly.one()]
    for m in range(1, order + 1):
        acc = SymPoly.zero()
        for j in range(2, m + 1):
            acc = acc + Fraction(j) * a[j] * E[m - j]
        E.append(acc * Fraction(1, m))
    return tuple(E)


def rho_apply(p: SymPoly, param: str = "T") -> SymPoly:
    """The comparison map on parameter polynomials, defined on powers by

        rho(P^k / k!) = [u^k]  exp(sum_{n>=2} (-1)^n/n zeta(n) u^n) e^{Pu}.

    Linear over everything that does not involve the parameter.
    """
    deg = p.max_degree(param)
    E = _exp_series("plus", deg)
    out = SymPoly.zero()
    for k in range(deg + 1):
        ck = p.coeff_of_power(param, k)
        if ck.is_zero:
            continue
        image = SymPoly.zero()
        for j in range(k + 1):
            image = image + E[j] * SymPoly.gen(param, k - j) * Fraction(
                math.factorial(k), math.factorial(k - j)
            )
        out = out + ck * image
    return out


def rho_apply_lincomb(lc: dict, param: str = "T") -> dict:
    out: dict = {}
    for key, c in lc.items():
        img = rho_apply(SymPoly.coerce(c), param)
        if not img.is_zero:
            out[key] = img
    return out


def sh_from_st(s: SignedIndex, param: str = "T") -> dict:
    """Shuffle-regularized value as the comparison map applied to the
    stuffle-regularized polynomial (same parameter on both sides)."""
    return rho_apply_lincomb(stuffle_reg(s, SymPoly.gen(param)), param)


def zeta_ones(i: int, param) -> SymPoly:
    """Coefficient of u^i in exp(P u - sum_{n>=2} (-1)^n/n zeta(n) u^n)."""
    if i < 0:
        raise ValueError("need i >= 0")
    param = SymPoly.coerce(param)
    E = _exp_series("minus", i)
    out = SymPoly.zero()
    for j in range(i + 1):
        out = out + E[i - j] * param ** j * Fraction(1, math.factorial(j))
    return out


def st_via_sh0(s: SignedIndex, param) -> dict:
    """Stuffle regularization written through shuffle-at-0 coefficients:

        reg*_P(k, 1^a) = sum_i reg_sh0(k, 1^(a-i)) zeta*_P(1^i).
    """
    assert s.lead_zeros == 0
    param = SymPoly.coerce(param)
    prefix, alpha = _split_trailing_ones(s.parts)
    assert not prefix or prefix[-1] != 1
    out: dict = {}
    for i in range(alpha + 1):
        si = SignedIndex(prefix + (1,) * (alpha - i), 0)
        out = lc_add(out, lc_scale(shuffle_reg(si, SymPoly.zero()), zeta_ones(i, param)))
    return out


# ---------------------------------------------------------------------------
# t-value level
# ---------------------------------------------------------------------------

def t_shuffle_reg0(k: tuple) -> dict:
    """t value in the shuffle presentation at parameter 0, as a
    combination of convergent signed indices."""
    out: dict = {}
    for s, c in t_to_zeta(k).items():
        out = lc_add(out, lc_scale(shuffle_reg(s, SymPoly.zero()), c))
    return out


def t_stuffle_reg(k: tuple, V) -> dict:
    """Stuffle-regularized t value with t*(1) = V, converted to a signed
    combination term by term (stuffle presentation)."""
    V = SymPoly.coerce(V)
    reg = stuffle_reg(SignedIndex(tuple(k), 0), V)
    out: dict = {}
    for idx, c in reg.items():
        out = lc_add(out, lc_scale(t_to_zeta(idx.parts), c))
    return out


def t_st_from_sh(k: tuple, V) -> dict:
    """Stuffle-regularized t value written through the shuffle
    presentation:

        t*_V(k, 1^a) = sum_i t_sh0(k, 1^(a-i)) 2^-i zeta*_{2V-log2}(1^i)
    """
    V = SymPoly.coerce(V)
    prefix, alpha = _split_trailing_ones(tuple(k))
    out: dict = {}
    u_param = 2 * V - LOG2
    for i in range(alpha + 1):
        ki = prefix + (1,) * (alpha - i)
        factor = zeta_ones(i, u_param) * Fraction(1, 2 ** i)
        out = lc_add(out, lc_scale(t_shuffle_reg0(ki), factor))
    return out


# ---------------------------------------------------------------------------
# canonical reduction and the distribution relations
# ---------------------------------------------------------------------------

def reduce_depth1(lc: dict) -> dict:
    """Rewrite depth-one keys into symbolic constants on the empty key."""
    out: dict = {}
    for s, c in lc.items():
        if s.depth != 1:
            out = lc_add(out, {s: c})
            continue
        k = s.parts[0]
        if k > 0:
            val = zeta_sym(k)  # k >= 2 because the key is convergent
        else:
            val = zbar_reduce(-k)
        out = lc_add(out, {EMPTY: val * SymPoly.coerce(c)})
    return out


def distribution_rewrite(lc: dict) -> dict:
    """Rewrite all-plus keys of depth >= 2 through the two-fold
    distribution relation, leaving a combination supported on keys with
    at least one barred entry (plus constants)."""
    out: dict = {}
    for s, c in lc.items():
        if s.depth < 2 or any(x < 0 for x in s.parts):
            out = lc_add(out, {s: c})
            continue
        w, d = s.weight, s.depth
        factor = Fraction(2 ** (w - d), 1 - 2 ** (w - d))
        for signs in _sign_choices(d):
            if all(e > 0 for e in signs):
                continue
            key = SignedIndex(tuple(e * x for e, x in zip(signs, s.parts)), 0)
            out = lc_add(out, {key: factor * SymPoly.coerce(c)})
    return out


def _sign_choices(d: int):
    import itertools

    return itertools.product((1, -1), repeat=d)


def canonicalize(lc: dict) -> dict:
    return distribution_rewrite(reduce_depth1(lc))


def distribution_residual(k: tuple, alpha: int, ell: int, param=None) -> dict:
    """Canonicalized difference of the two sides of the regularized
    distribution relation

        2^(|k|+l-d) sum_{eps,delta} zl_l(eps,delta; k,1^a)
            = sum_{i=0}^{a} zl_l(k, 1^(a-i)) (-log 2)^i / i!

    after full expansion: products on the right are expanded in the
    word shuffle algebra, then depth-one constants are rewritten and
    the convergent two-fold distribution relation applied.  For ell > 0
    the parameter must be 0; for ell = 0 it may stay symbolic.
    """
    k = tuple(k)
    assert k and k[-1] != 1, "prefix must end above 1"
    if ell > 0:
        assert param is None or SymPoly.coerce(param).is_zero
        param = SymPoly.zero()
    param = SymPoly.gen("W") if param is None else SymPoly.coerce(param)

    d = len(k)
    w = sum(k)
    lhs: dict = {}
    for eps in _sign_choices(d):
        for delta in _sign_choices(alpha):
            parts = tuple(e * x for e, x in zip(eps, k)) + delta
            lhs = lc_add(lhs, shuffle_reg(SignedIndex(parts, ell), param))
    lhs = lc_scale(lhs, Fraction(2 ** (w + ell - d)))

    neg_log2 = {SignedIndex((-1,), 0): SymPoly.one()}  # zeta(bar 1) = -log 2
    rhs: dict = {}
    power: dict = {EMPTY: SymPoly.one()}
    for i in range(alpha + 1):
        term = zeta_lc_word_mul(shuffle_reg(SignedIndex(k + (1,) * (alpha - i), ell), param), power)
        rhs = lc_add(rhs, lc_scale(term, Fraction(1, math.factorial(i))))
        power = zeta_lc_word_mul(power, neg_log2)

    return canonicalize(lc_sub(lhs, rhs))


def check_distribution(k: tuple, alpha: int, ell: int, param=None, env=None) -> bool:
    """Equality verdict for the regularized distribution relation.

    The unregularized cases reduce to structurally zero combinations.
    With trailing ones the relation also consumes sign-weighted
    doubling identities that have no linear expression in the signed
    index basis, so a nonzero canonical residual is settled by the
    certified numerical oracle: the verdict is True only if the
    residual value is within its rigorously tracked error bound of
    zero, with the bound itself small enough to be decisive.
    """
    residual = distribution_residual(k, alpha, ell, param)
    if lc_is_zero(residual):
        return True
    from .numoracle import NumEnv, lincomb_num

    env = env or NumEnv(prec=64)
    deg = max(SymPoly.coerce(c).max_degree("W") for c in residual.values())
    for j in range(deg + 1):
        layer = {
            key: cj
            for key, c in residual.items()
            if not (cj := SymPoly.coerce(c).coeff_of_power("W", j)).is_zero
        }
        if not layer:
            continue
        val = lincomb_num(layer, env)
        if val.err > 1e-8:
            raise RuntimeError("oracle bound too weak to decide the distribution check")
        if abs(float(val.val)) > val.err:
            return False
    return True
