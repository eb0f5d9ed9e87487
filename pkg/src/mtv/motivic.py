"""Derivations on rescaled t values, level-graded maps and their matrices.

The odd-weight derivation D_r sends a rescaled t value to a sum of
tensors (left factor in the linearized quotient) x (right factor a
rescaled t value).  Left factors are kept as formal tags until a graded
map needs them, at which point they must reduce to a rational multiple
of log2 or of a single odd zeta through the closed-form families
2^a 1 2^b, 2^a 3 2^b, 2^a 1 and 2^a; any other pattern raises, turning
the structural lemmas behind the construction into runtime assertions.

Matrix conventions: rows are indexed by the weight-N level-l words B,
columns by the lower-level words B'; entry (w, w') is the coefficient
of w' in the graded image of w after the projection log2 -> 1/2,
zeta(2r+1) -> 2^(2r-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closedform import coeff_c_21, coeff_c_231, coeff_d_121, coeff_d_232, zl_2212
from .indexcore import (
    basis_sets,
    is_hoffman_word,
    is_saha_word,
    trailing_ones_partition,
    word_level,
)
from .ratmatrix import det_bareiss, det_exact, is_integer, parity
from .symring import SymPoly

LOG = ("log",)


def _zgen(m: int):
    return ("z", m)


class IrreducibleLeftFactor(Exception):
    """A graded map met a left tensor factor outside the closed-form families."""


# ---------------------------------------------------------------------------
# the derivations
# ---------------------------------------------------------------------------

def _add_term(out: dict, tag, right: tuple, coeff):
    key = (tag, right)
    c = out.get(key, Fraction(0)) + coeff
    if c == 0:
        out.pop(key, None)
    else:
        out[key] = c


def deriv_D(r: int, k: tuple) -> dict:
    """Full expansion of D_r on the rescaled t value of index k.

    Returns {(left tag, right index): Fraction}.  Left tags are
    ("t", idx) for a rescaled t block, ("zl", s, idx) for a zeta block
    with s leading zeros, or ("log",) for the weight-one logarithm.
    """
    if r < 1 or r % 2 == 0:
        raise ValueError("r must be odd and positive")
    k = tuple(k)
    d = len(k)
    out: dict = {}

    # deconcatenation of a weight-r prefix
    for j in range(1, d + 1):
        if sum(k[:j]) == r:
            _add_term(out, ("t", k[:j]), k[j:], Fraction(1))

    for i in range(1, d):
        for j in range(i + 1, d + 1):
            wij = sum(k[i - 1:j])
            if not (r < wij - 1):
                continue
            right = k[:i - 1] + (wij - r,) + k[j:]
            # zero-headed cut
            w_in = sum(k[i:j])
            if w_in <= r:
                _add_term(out, ("zl", r - w_in, k[i:j]), right, Fraction(1))
                if r == 1:
                    _add_term(out, LOG, right, Fraction(-1))
            # zero-tailed cut, with the subindex reversed
            w_out = sum(k[i - 1:j - 1])
            if w_out <= r:
                _add_term(out, ("zl", r - w_out, tuple(reversed(k[i - 1:j - 1]))), right, Fraction(-1))
                if r == 1:
                    _add_term(out, LOG, right, Fraction(1))
    return out


def deriv_D1_fast(k: tuple) -> dict:
    """D_1 in closed form: deconcatenation of a leading 1 (coefficient 2)
    and of a trailing 1 (coefficient -1)."""
    k = tuple(k)
    out: dict = {}
    if k and k[0] == 1:
        _add_term(out, LOG, k[1:], Fraction(2))
    if k and k[-1] == 1:
        _add_term(out, LOG, k[:-1], Fraction(-1))
    return out


def deriv_D_star(r: int, k: tuple) -> dict:
    """D_r on the stuffle-regularized rescaled t value with t*(1) = lam log2.

    Same three families of cuts as deriv_D, plus the trailing-ones
    deconcatenation ("zst1", r) x (k minus its last r entries), active
    when the last r entries are all 1.
    """
    out = deriv_D(r, k)
    k = tuple(k)
    if len(k) >= r and all(x == 1 for x in k[-r:]):
        _add_term(out, ("zst1", r), k[:-r], Fraction(1))
    return out


# ---------------------------------------------------------------------------
# reduction of left factors
# ---------------------------------------------------------------------------

def _split_2a_x_2b(idx: tuple, letter: int):
    """Match {2}^a letter {2}^b; returns (a, b) or None."""
    hits = [i for i, x in enumerate(idx) if x == letter]
    if len(hits) != 1:
        return None
    i = hits[0]
    if all(x == 2 for x in idx[:i]) and all(x == 2 for x in idx[i + 1:]):
        return i, len(idx) - i - 1
    return None


def lie_reduce(tag):
    """Reduce a left tag to (coefficient, generator) with generator
    ("log",) or ("z", odd weight); a zero coefficient signals a class
    that dies in the linearized quotient."""
    if tag == LOG:
        return Fraction(1), LOG
    kind = tag[0]
    if kind == "t":
        idx = tag[1]
        if idx == (1,):
            return Fraction(1), LOG
        if all(x == 2 for x in idx):
            return Fraction(0), None
        m = _split_2a_x_2b(idx, 1)
        if m is not None:
            a, b = m
            return coeff_d_121(a, b), _zgen(2 * a + 2 * b + 1)
        m = _split_2a_x_2b(idx, 3)
        if m is not None:
            a, b = m
            return coeff_d_232(a, b), _zgen(2 * a + 2 * b + 3)
        raise IrreducibleLeftFactor(f"t block {idx}")
    if kind == "zl":
        s, idx = tag[1], tag[2]
        if s == 0:
            if all(x == 2 for x in idx):
                return Fraction(0), None
            if len(idx) == 1:
                n = idx[0]
                if n == 1 or n % 2 == 0:
                    return Fraction(0), None
                return Fraction(1), _zgen(n)
            m = _split_2a_x_2b(idx, 1)
            if m is not None:
                a, b = m
                w = 2 * a + 2 * b + 1
                c = zl_2212(a, b)
                return (c, _zgen(w)) if c else (Fraction(0), None)
            m = _split_2a_x_2b(idx, 3)
            if m is not None:
                a, b = m
                return coeff_c_231(a, b), _zgen(2 * a + 2 * b + 3)
            raise IrreducibleLeftFactor(f"zeta block {idx}")
        if s == 1:
            if all(x == 2 for x in idx):
                a = len(idx)
                c = coeff_c_21(a)
                return (c, _zgen(2 * a + 1)) if c else (Fraction(0), None)
            raise IrreducibleLeftFactor(f"zeta block with lead zero {idx}")
        raise IrreducibleLeftFactor(f"zeta block with {s} lead zeros {idx}")
    if kind == "zst1":
        r = tag[1]
        if r == 1:
            return SymPoly.gen("lam", 1, 2) - 1, LOG
        return Fraction(1, r), _zgen(r)
    raise IrreducibleLeftFactor(f"unknown tag {tag}")


def pitilde(gen) -> Fraction:
    """The projection log2 -> 1/2, zeta(2r+1) -> 2^(2r-1)."""
    if gen == LOG:
        return Fraction(1, 2)
    m = gen[1]
    assert m % 2 == 1 and m >= 3
    return Fraction(2 ** (m - 2))


def reduce_deriv(terms: dict) -> dict:
    """Reduce every left tag of a derivation expansion; returns
    {(generator, right index): coefficient} with zero classes dropped."""
    out: dict = {}
    for (tag, right), coeff in terms.items():
        red, gen = lie_reduce(tag)
        if gen is None:
            continue
        key = (gen, right)
        cur = out.get(key, Fraction(0)) + coeff * red
        if (isinstance(cur, SymPoly) and cur.is_zero) or (not isinstance(cur, SymPoly) and cur == 0):
            out.pop(key, None)
        else:
            out[key] = cur
    return out


# ---------------------------------------------------------------------------
# graded maps and matrices
# ---------------------------------------------------------------------------

def _valid_word(w: tuple, kind: str) -> bool:
    if w == ():
        return True
    if kind == "S":
        return is_saha_word(w)
    return is_hoffman_word(w)


def graded_partial(kind: str, N: int, ell: int, w: tuple, star: bool | None = None):
    """Row of the graded derivation matrix for the basis word w.

    Returns {B'-word: coefficient}; coefficients are Fractions, or
    SymPolys affine in lam for kind 'Hstar'.
    """
    if star is None:
        star = kind == "Hstar"
    word_kind = "S" if kind == "S" else "H"
    w = tuple(w)
    assert _valid_word(w, word_kind) and sum(w) == N and word_level(w, word_kind) == ell
    out: dict = {}
    for r in range(1, N + 1, 2):
        terms = deriv_D_star(r, w) if star else deriv_D(r, w)
        for (tag, right), coeff in terms.items():
            if right == ():
                if ell != 1:
                    continue
            else:
                assert _valid_word(right, word_kind), f"invalid right factor {right}"
                if word_level(right, word_kind) != ell - 1:
                    continue
            red, gen = lie_reduce(tag)
            if gen is None:
                continue
            contribution = coeff * red * pitilde(gen)
            cur = out.get(right, Fraction(0)) + contribution
            if isinstance(cur, SymPoly) and cur.is_zero:
                out.pop(right, None)
            elif not isinstance(cur, SymPoly) and cur == 0:
                out.pop(right, None)
            else:
                out[right] = cur
    return out


@dataclass
class FiltMatrix:
    kind: str
    N: int
    ell: int
    rows: list
    cols: list
    entries: list  # list of lists; Fraction or SymPoly affine in lam

    def entry(self, w, wp):
        return self.entries[self.rows.index(w)][self.cols.index(wp)]

    def det(self):
        return det_exact(self.entries)

    def to_json(self) -> dict:
        def fmt(x):
            if isinstance(x, SymPoly):
                if x.max_degree("lam") == 0:
                    return str(x.const_value())
                return {
                    "const": str(x.coeff_of_power("lam", 0).const_value()),
                    "lambda": str(x.coeff_of_power("lam", 1).const_value()),
                }
            return str(x)

        return {
            "kind": self.kind,
            "N": self.N,
            "level": self.ell,
            "rows": ["".join(map(str, w)) for w in self.rows],
            "cols": ["".join(map(str, w)) if w else "" for w in self.cols],
            "entries": [[fmt(x) for x in row] for row in self.entries],
        }


def build_matrix(kind: str, N: int, ell: int) -> FiltMatrix:
    """The matrix of the graded derivation with respect to (B, B')."""
    assert kind in ("S", "H", "Hstar")
    B, Bp = basis_sets("S" if kind == "S" else "H", N, ell)
    assert len(B) == len(Bp)
    entries = []
    for w in B:
        row_map = graded_partial(kind, N, ell, w)
        unknown = set(row_map) - set(Bp)
        assert not unknown, f"row {w} hit non-basis words {unknown}"
        entries.append([row_map.get(wp, Fraction(0)) for wp in Bp])
    return FiltMatrix(kind, N, ell, list(B), list(Bp), entries)


# ---------------------------------------------------------------------------
# structure reports
# ---------------------------------------------------------------------------

@dataclass
class Mod2Report:
    kind: str
    N: int
    ell: int
    ok: bool
    det: object
    notes: list


def _upper_unitriangular_mod2(rows) -> bool:
    n = len(rows)
    for i in range(n):
        for j in range(n):
            x = rows[i][j]
            if not is_integer(x):
                return False
            if i == j and parity(x) != 1:
                return False
            if i > j and parity(x) != 0:
                return False
    return True


def det_mod2_structure(m: FiltMatrix) -> Mod2Report:
    """Verify the parity structure that forces the exact determinants.

    For the one-two-three matrices at level > 1: integral entries,
    upper-unitriangular mod 2.  At level 1 the last row has a single
    even entry in the last column and the complementary minor is
    upper-unitriangular mod 2.  For the one-two matrices: block lower
    triangular along the trailing-ones classes, every non-final
    diagonal block upper-unitriangular mod 2, and the full determinant
    in 1/2 + Z (at lam = 1/2 for the parametric version this reduces to
    the plain case, so the report is only defined for kinds S and H).
    """
    notes = []
    ok = True
    det = m.det()
    if m.kind == "S":
        if m.ell > 1:
            if not _upper_unitriangular_mod2(m.entries):
                ok = False
                notes.append("expected upper unitriangular mod 2")
            else:
                notes.append("upper unitriangular mod 2, determinant odd")
                if parity(det * Fraction(1)) != 1:
                    ok = False
                    notes.append("determinant not odd")
        else:
            # level 1: the final row belongs to the word 2^a 3 and consists
            # of even integers (its cuts all carry even coefficients), so
            # the determinant is even; invertibility comes from the odd
            # leading minor together with a nonzero last row.
            last = m.entries[-1]
            if not all(is_integer(x) and parity(x) == 0 for x in last):
                ok = False
                notes.append("last row should consist of even integers")
            if all(x == 0 for x in last):
                ok = False
                notes.append("last row vanishes")
            minor = [row[:-1] for row in m.entries[:-1]]
            if not _upper_unitriangular_mod2(minor):
                ok = False
                notes.append("leading minor not upper unitriangular mod 2")
            else:
                notes.append("even last row over an odd leading minor")
        if det == 0:
            ok = False
            notes.append("determinant vanishes")
    elif m.kind == "H":
        classes_B, classes_Bp = trailing_ones_partition(m.rows, m.cols, m.N, m.ell)
        sizes_B = [len(c) for c in classes_B]
        sizes_Bp = [len(c) for c in classes_Bp]
        if sizes_B != sizes_Bp:
            ok = False
            notes.append("trailing-ones classes of unequal sizes")
        # the sorted bases list the classes contiguously in ascending order
        offsets = [0]
        for s in sizes_B:
            offsets.append(offsets[-1] + s)
        for bi, rows_words in enumerate(classes_B):
            for w in rows_words:
                i = m.rows.index(w)
                for bj in range(bi + 1, len(sizes_B)):
                    for j in range(offsets[bj], offsets[bj + 1]):
                        if m.entries[i][j] != 0:
                            ok = False
                            notes.append(f"entry above block diagonal at {w}")
        for bi in range(len(sizes_B) - 1):
            block = [
                [m.entries[i][j] for j in range(offsets[bi], offsets[bi + 1])]
                for i in range(offsets[bi], offsets[bi + 1])
            ]
            if not _upper_unitriangular_mod2(block):
                ok = False
                notes.append(f"diagonal block {bi} not upper unitriangular mod 2")
        final = [
            [m.entries[i][j] for j in range(offsets[-2], offsets[-1])]
            for i in range(offsets[-2], offsets[-1])
        ]
        fdet = det_bareiss([[Fraction(x) for x in row] for row in final])
        if (2 * fdet).denominator != 1 or parity(2 * fdet) != 1:
            ok = False
            notes.append("final block determinant not in 1/2 + Z")
        else:
            notes.append("final block determinant in 1/2 + Z")
        if det == 0:
            ok = False
            notes.append("determinant vanishes")
    else:
        raise ValueError("structure report is defined for kinds S and H")
    return Mod2Report(m.kind, m.N, m.ell, ok, det, notes)


# ---------------------------------------------------------------------------
# singular parameters and level checks
# ---------------------------------------------------------------------------

def singular_lambda(N: int) -> Fraction:
    """The value of lam at which the parametric level-one matrix of odd
    weight N degenerates; the determinant is affine in lam and the
    root is returned exactly."""
    if N < 1 or N % 2 == 0:
        raise ValueError("need odd N >= 1")
    det = build_matrix("Hstar", N, 1).det()
    if not isinstance(det, SymPoly) or det.max_degree("lam") != 1:
        raise ValueError(f"determinant {det} is not affine in lam")
    a = det.coeff_of_power("lam", 0).const_value()
    b = det.coeff_of_power("lam", 1).const_value()
    return -a / b


def check_saha_level(w: tuple, r: int) -> bool:
    """Every surviving term of D_r on a one-two-three word has a valid
    right factor of strictly smaller level."""
    lv = word_level(w, "S")
    for (tag, right), coeff in deriv_D(r, tuple(w)).items():
        if coeff == 0:
            continue
        if right == ():
            continue
        if not is_saha_word(right) or word_level(right, "S") > lv - 1:
            return False
    return True


def check_hoffman_level(w: tuple, r: int) -> bool:
    lv = word_level(w, "H")
    for (tag, right), coeff in deriv_D(r, tuple(w)).items():
        if coeff == 0:
            continue
        if right == ():
            continue
        if not is_hoffman_word(right) or word_level(right, "H") > lv - 1:
            return False
    return True


# ---------------------------------------------------------------------------
# the weight-one derivation on products of motivic expressions
# ---------------------------------------------------------------------------
#
# A MotExpr monomial is a sorted tuple of atoms:
#   ("t", idx)     a t value (plain normalization)
#   ("zalt", s)    an alternating zeta value, s a tuple of signed ints
#   ("log2",)      log 2
#   ("z", n)       a single zeta value, n >= 2
# A linear combination maps monomials to Fractions.

ONE = ()


def mot_mono(*atoms) -> tuple:
    return tuple(sorted(atoms))


def _d1_atom(atom):
    """D_1 of one atom, as [(right-atom-or-None, coeff)], left factor log."""
    kind = atom[0]
    if kind == "log2":
        return [(None, Fraction(1))]
    if kind == "z":
        return []
    if kind == "t":
        idx = atom[1]
        out = []
        if idx and idx[0] == 1:
            out.append((("t", idx[1:]) if len(idx) > 1 else None, Fraction(1)))
        if idx and idx[-1] == 1:
            out.append((("t", idx[:-1]) if len(idx) > 1 else None, Fraction(-1, 2)))
        return out
    if kind == "zalt":
        parts = atom[1]
        if all(x > 0 for x in parts[:-1]) and parts[-1] <= -2:
            return []
        raise ValueError(f"alternating atom outside the supported family: {parts}")
    raise ValueError(f"unknown atom {atom}")


def d1_project(expr: dict) -> dict:
    """Apply D_1 to a combination of monomials and project log -> 1.

    The t-atom rule in the plain normalization removes a leading 1 with
    coefficient 1 and a trailing 1 with coefficient -1/2; log2 is
    primitive; single zetas and tail-barred alternating zetas die.
    """
    out: dict = {}
    for mono, c in expr.items():
        for i, atom in enumerate(mono):
            rest = mono[:i] + mono[i + 1:]
            for replacement, factor in _d1_atom(atom):
                new = rest if replacement is None else mot_mono(*rest, replacement)
                key = tuple(new)
                v = out.get(key, Fraction(0)) + c * factor
                if v == 0:
                    out.pop(key, None)
                else:
                    out[key] = v
    return out


def hoffman_log_derivation(expr: dict) -> dict:
    """The implied identity obtained by differentiating with respect to
    the logarithm: D_1 followed by the projection log -> 1."""
    return d1_project(expr)
