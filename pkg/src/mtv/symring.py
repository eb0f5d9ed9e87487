"""Exact rational arithmetic and the symbolic constant ring.

Every closed form in this package lives in the polynomial ring

    Q[pi2, log2, z3, z5, z7, ..., V, U, W, T, S, lam]

where ``pi2`` stands for pi^2, ``log2`` for log(2), ``z(2r+1)`` for the
odd zeta value zeta(2r+1), the letters V, U, W, T, S are regularization
parameters, and ``lam`` is the dimensionless parameter of the stuffle
regularization V = lam*log(2).  Even zeta values are never generators:
they are rewritten into powers of pi2 at construction time, so that
equal closed forms have identical canonical representations.

Monomials are formally independent; equality is equality of canonical
form.  Coefficients are ``fractions.Fraction`` throughout, floating
point never enters this module.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

# Regularization parameters (weight 1) and the weight-0 scalar lam.
PARAMS = ("V", "U", "W", "T", "S")
ALL_INDETS = PARAMS + ("lam",)

_GEN_RE = re.compile(r"^(pi2|log2|z(\d+)|V|U|W|T|S|lam)$")


def gen_weight(g: str) -> int:
    """Weight of a single generator; z-n carries its argument n."""
    if g == "pi2":
        return 2
    if g.startswith("z") and g[1:].isdigit():
        return int(g[1:])
    if g == "lam":
        return 0
    return 1  # log2 and the parameters


def _gen_key(g: str):
    # constants first (by weight, then name), parameters afterwards
    if g in ALL_INDETS:
        return (1, ALL_INDETS.index(g), g)
    return (0, gen_weight(g), g)


def _normalize_terms(terms):
    out = {}
    for mono, c in terms.items():
        c = Fraction(c)
        if c == 0:
            continue
        mono = tuple(sorted(((g, e) for g, e in mono if e != 0), key=lambda ge: _gen_key(ge[0])))
        for g, e in mono:
            if not _GEN_RE.match(g):
                raise ValueError(f"unknown generator {g!r}")
            if e < 0:
                raise ValueError(f"negative exponent on {g!r}")
        out[mono] = out.get(mono, Fraction(0)) + c
    return {m: c for m, c in out.items() if c != 0}


class SymPoly:
    """Polynomial with Fraction coefficients over the fixed generator set.

    Immutable by convention: all operations return new instances.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        object.__setattr__(self, "terms", _normalize_terms(terms or {}))

    # -- constructors ------------------------------------------------

    @staticmethod
    def const(c) -> "SymPoly":
        return SymPoly({(): Fraction(c)})

    @staticmethod
    def gen(name: str, exp: int = 1, coeff=1) -> "SymPoly":
        return SymPoly({((name, exp),): Fraction(coeff)})

    @staticmethod
    def zero() -> "SymPoly":
        return SymPoly({})

    @staticmethod
    def one() -> "SymPoly":
        return SymPoly.const(1)

    @staticmethod
    def coerce(x) -> "SymPoly":
        if isinstance(x, SymPoly):
            return x
        return SymPoly.const(x)

    # -- ring operations ---------------------------------------------

    def __add__(self, other):
        other = SymPoly.coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return SymPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-SymPoly.coerce(other))

    def __rsub__(self, other):
        return SymPoly.coerce(other) - self

    def __mul__(self, other):
        other = SymPoly.coerce(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                d = {}
                for g, e in m1:
                    d[g] = d.get(g, 0) + e
                for g, e in m2:
                    d[g] = d.get(g, 0) + e
                mono = tuple(sorted(d.items(), key=lambda ge: _gen_key(ge[0])))
                terms[mono] = terms.get(mono, Fraction(0)) + c1 * c2
        return SymPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = SymPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymPoly.const(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ----------------------------------------------------

    def is_const(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.terms.get((), Fraction(0))

    def weight(self):
        """Common weight of all monomials, or None if inhomogeneous."""
        ws = {sum(gen_weight(g) * e for g, e in m) for m in self.terms}
        if not ws:
            return 0
        if len(ws) == 1:
            return ws.pop()
        return None

    def generators(self):
        return {g for m in self.terms for g, _ in m}

    def max_degree(self, gen: str) -> int:
        deg = 0
        for m in self.terms:
            for g, e in m:
                if g == gen:
                    deg = max(deg, e)
        return deg

    def coeff_of_power(self, gen: str, k: int) -> "SymPoly":
        """Coefficient of gen**k, as a polynomial without gen."""
        terms = {}
        for m, c in self.terms.items():
            e = dict(m).get(gen, 0)
            if e == k:
                rest = tuple((g, x) for g, x in m if g != gen)
                terms[rest] = terms.get(rest, Fraction(0)) + c
        return SymPoly(terms)

    def deriv(self, gen: str) -> "SymPoly":
        terms = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(gen, 0)
            if e == 0:
                continue
            d[gen] = e - 1
            mono = tuple(sorted(((g, x) for g, x in d.items() if x != 0), key=lambda ge: _gen_key(ge[0])))
            terms[mono] = terms.get(mono, Fraction(0)) + c * e
        return SymPoly(terms)

    def substitute(self, bindings: dict) -> "SymPoly":
        """Ring-homomorphic substitution; keys must be parameters or lam."""
        for k in bindings:
            if k not in ALL_INDETS:
                raise ValueError(f"can only substitute parameters, not {k!r}")
        out = SymPoly.zero()
        for m, c in self.terms.items():
            term = SymPoly.const(c)
            for g, e in m:
                if g in bindings:
                    term = term * (SymPoly.coerce(bindings[g]) ** e)
                else:
                    term = term * SymPoly.gen(g, e)
            out = out + term
        return out

    # -- text form ------------------------------------------------------

    def text(self) -> str:
        if not self.terms:
            return "0"

        def mono_key(m):
            weight = sum(gen_weight(g) * e for g, e in m)
            degree = sum(e for _, e in m)
            return (weight, degree, m)

        monos = sorted(self.terms, key=mono_key)
        parts = []
        for m in monos:
            c = self.terms[m]
            factors = []
            for g, e in sorted(m, key=lambda ge: (-gen_weight(ge[0]), ge[0])):
                factors.append(g if e == 1 else f"{g}^{e}")
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            elif c == -1:
                body = "-" + "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            parts.append(body)
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    __str__ = text

    def __repr__(self):
        return f"SymPoly({self.text()})"

    @staticmethod
    def parse(s: str) -> "SymPoly":
        """Inverse of text(); accepts any +/- separated monomial list."""
        s = s.strip()
        if s in ("", "0"):
            return SymPoly.zero()
        s = s.replace(" - ", " + -").replace("- ", "-")
        out = SymPoly.zero()
        for chunk in s.split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            sign = 1
            while chunk.startswith("-"):
                sign = -sign
                chunk = chunk[1:].strip()
            coeff = Fraction(sign)
            mono = {}
            for factor in chunk.split("*"):
                factor = factor.strip()
                if not factor:
                    continue
                if re.fullmatch(r"-?\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                if "^" in factor:
                    g, e = factor.split("^")
                    mono[g] = mono.get(g, 0) + int(e)
                else:
                    mono[factor] = mono.get(factor, 0) + 1
            out = out + SymPoly({tuple(mono.items()): coeff})
        return out

    def to_json(self) -> dict:
        out = {}
        for m in sorted(self.terms, key=lambda m: (sum(gen_weight(g) * e for g, e in m), m)):
            key = "*".join(g if e == 1 else f"{g}^{e}" for g, e in m) or "1"
            out[key] = str(self.terms[m])
        return out


# ---------------------------------------------------------------------------
# even zeta values
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2), by the defining recursion."""
    if n == 0:
        return Fraction(1)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    acc = Fraction(0)
    for j in range(n):
        acc += math.comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


def even_zeta(n: int) -> SymPoly:
    """zeta(n) for even n >= 2, as a rational multiple of pi2^(n/2)."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"even_zeta needs even n >= 2, got {n}")
    m = n // 2
    coeff = abs(bernoulli(n)) * Fraction(2 ** (n - 1)) / Fraction(math.factorial(n))
    return SymPoly.gen("pi2", m, coeff)


def zeta_sym(n: int) -> SymPoly:
    """zeta(n) for n >= 2 as a SymPoly (pi-power if even, z-generator if odd)."""
    if n < 2:
        raise ValueError("zeta_sym needs n >= 2")
    if n % 2 == 0:
        return even_zeta(n)
    return SymPoly.gen(f"z{n}")


PI2 = SymPoly.gen("pi2")
LOG2 = SymPoly.gen("log2")


# ---------------------------------------------------------------------------
# linear combinations over an arbitrary hashable basis
# ---------------------------------------------------------------------------
#
# A LinComb is a plain dict {basis term: SymPoly}.  Zero coefficients are
# never stored; the helpers below maintain that invariant.

def coeff_is_zero(c) -> bool:
    return c.is_zero if isinstance(c, SymPoly) else c == 0


def lc_make(pairs) -> dict:
    out: dict = {}
    for k, c in pairs:
        s = out.get(k, 0) + c
        if coeff_is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def lc_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if coeff_is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def lc_sub(a: dict, b: dict) -> dict:
    return lc_add(a, lc_scale(b, -1))


def lc_scale(a: dict, c) -> dict:
    if coeff_is_zero(c):
        return {}
    return {k: v * c for k, v in a.items()}


def lc_is_zero(a: dict) -> bool:
    return all(coeff_is_zero(v) for v in a.values())


def lc_eq(a: dict, b: dict) -> bool:
    return lc_is_zero(lc_sub(a, b))
