"""Index and word data types, conversions, orderings and basis enumeration.

Three interchangeable presentations of the same objects appear throughout:

* an ``Index`` is a tuple of positive integers, the argument of t(...);
* a ``SignedIndex`` carries a sign on each entry (encoded by the sign of
  the integer, so -3 means the barred argument 3) plus a count of
  leading zeros in the iterated-integral presentation;
* an ``IntWord`` is a tuple over {0, +1, -1}, the string of an iterated
  integral between the endpoints 0 and 1.

The filtration bases are words over {1,2} (one-two words) or over {1,2}
with a final 3 allowed (one-two-three words ending in 2 or 3).  Both are
plain tuples of small ints and are freely reinterpreted as indices.
"""

from __future__ import annotations

from typing import NamedTuple

Index = tuple  # of positive ints
IntWord = tuple  # over {0, +1, -1}


class SignedIndex(NamedTuple):
    """Signed index; entries are nonzero ints, sign -1 encodes a bar.

    ``lead_zeros`` counts initial 0 letters of the integral word.
    """

    parts: tuple
    lead_zeros: int = 0

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(abs(k) for k in self.parts) + self.lead_zeros

    def is_convergent(self) -> bool:
        return self.lead_zeros == 0 and (not self.parts or self.parts[-1] != 1)

    def validate(self) -> "SignedIndex":
        assert all(isinstance(k, int) and k != 0 for k in self.parts)
        assert self.lead_zeros >= 0
        assert self.parts or self.lead_zeros == 0, "zeta_l of the empty index"
        return self


def zi(*parts, lz: int = 0) -> SignedIndex:
    return SignedIndex(tuple(parts), lz).validate()


def index_weight(k: Index) -> int:
    return sum(k)


def index_depth(k: Index) -> int:
    return len(k)


def all_plus(k: Index) -> SignedIndex:
    return SignedIndex(tuple(k), 0)


# ---------------------------------------------------------------------------
# index <-> integral word
# ---------------------------------------------------------------------------
#
# The word of zeta_l(eps; k) is {0}^l followed, for i = 1..d, by the letter
# eta_i = eps_i * eps_{i+1} * ... * eps_d and then {0}^{k_i - 1}.  The overall
# (-1)^d sign of the iterated integral is tracked by callers, never stored.

def to_int_word(s: SignedIndex) -> IntWord:
    word = [0] * s.lead_zeros
    sign = 1
    etas = []
    for k in reversed(s.parts):
        sign *= 1 if k > 0 else -1
        etas.append(sign)
    etas.reverse()
    for k, eta in zip(s.parts, etas):
        word.append(eta)
        word.extend([0] * (abs(k) - 1))
    return tuple(word)


def from_int_word(w: IntWord) -> SignedIndex:
    if not any(x != 0 for x in w):
        raise ValueError("all-zero word has no index form")
    lz = 0
    while w[lz] == 0:
        lz += 1
    body = w[lz:]
    etas = []
    ks = []
    for x in body:
        if x == 0:
            ks[-1] += 1
        else:
            etas.append(x)
            ks.append(1)
    parts = []
    for i, k in enumerate(ks):
        nxt = etas[i + 1] if i + 1 < len(etas) else 1
        eps = etas[i] * nxt
        parts.append(eps * k)
    return SignedIndex(tuple(parts), lz)


def word_is_convergent(w: IntWord) -> bool:
    return bool(w) and w[0] != 0 and w[-1] != 1


def word_depth(w: IntWord) -> int:
    return sum(1 for x in w if x != 0)


# ---------------------------------------------------------------------------
# one-two and one-two-three words
# ---------------------------------------------------------------------------

def is_hoffman_word(w) -> bool:
    return all(x in (1, 2) for x in w)


def is_saha_word(w) -> bool:
    """Word over {1,2} with terminal letter 2 or 3 (3 only final)."""
    if not w:
        return False
    return all(x in (1, 2) for x in w[:-1]) and w[-1] in (2, 3)


def word_level(w, kind: str) -> int:
    if kind == "S":
        return sum(1 for x in w if x in (1, 3))
    if kind in ("H", "Hstar"):
        return sum(1 for x in w if x == 1)
    raise ValueError(f"unknown kind {kind!r}")


# Reverse colexicographic order: read right to left, largest letter first,
# with 3 < 1 < 2; a word extending a common reversed prefix sorts first.
_LETTER_RANK = {2: 0, 1: 1, 3: 2}
_END_RANK = 3


def colex_key(w):
    return tuple(_LETTER_RANK[x] for x in reversed(w)) + (_END_RANK,)


def sort_words(words) -> list:
    return sorted(words, key=colex_key)


def _onetwo_words(weight: int):
    """All {1,2} words of the given total weight."""
    if weight == 0:
        yield ()
        return
    if weight >= 1:
        for w in _onetwo_words(weight - 1):
            yield (1,) + w
    if weight >= 2:
        for w in _onetwo_words(weight - 2):
            yield (2,) + w


def enumerate_hoffman(N: int) -> list:
    """All {1,2} words of weight N, in reverse colexicographic order."""
    if N < 1:
        raise ValueError("weight must be >= 1")
    return sort_words(_onetwo_words(N))


def enumerate_saha(N: int) -> list:
    """All words of weight N ending in 2 or 3, {1,2} before; sorted."""
    if N < 2:
        raise ValueError("weight must be >= 2")
    words = [w + (2,) for w in _onetwo_words(N - 2)]
    if N >= 3:
        words += [w + (3,) for w in _onetwo_words(N - 3)]
    return sort_words(words)


def _words_of_level(kind: str, weight: int, level: int):
    if kind == "S":
        pool = enumerate_saha(weight) if weight >= 2 else []
    else:
        pool = enumerate_hoffman(weight) if weight >= 1 else []
    return [w for w in pool if word_level(w, kind) == level]


def basis_sets(kind: str, N: int, ell: int):
    """The pair (B, B') of matrix bases at weight N and level ell.

    B holds the weight-N level-ell words; B' holds all level-(ell-1)
    words of smaller weight, plus the empty word when ell = 1.  Both are
    sorted; the two sets always have equal cardinality.
    """
    if kind not in ("S", "H"):
        raise ValueError(f"kind must be 'S' or 'H', got {kind!r}")
    if N < 1 or ell < 1:
        raise ValueError("need N >= 1 and ell >= 1")
    if (N - ell) % 2 != 0:
        raise ValueError(f"N = {N} and ell = {ell} must have equal parity")
    B = _words_of_level(kind, N, ell)
    Bp = []
    for m in range(1, N):
        Bp.extend(_words_of_level(kind, m, ell - 1))
    if ell == 1:
        Bp.append(())
    return sort_words(B), sort_words(Bp)


def trailing_ones(w) -> int:
    n = 0
    for x in reversed(w):
        if x != 1:
            break
        n += 1
    return n


def phi_inverse(w):
    """Deconcatenate after the first 1: the suffix of 2^a 1 u is u."""
    i = w.index(1)
    return w[i + 1:]


def trailing_ones_partition(B, Bp, N: int, ell: int):
    """Partition of (B, B') by trailing-1 count; B via the bijection phi.

    Returns (classes_B, classes_Bp): lists indexed by alpha = 0..ell-1,
    each a list of words in basis order.
    """
    classes_B = [[] for _ in range(ell)]
    classes_Bp = [[] for _ in range(ell)]
    for u in Bp:
        classes_Bp[trailing_ones(u)].append(u)
    for w in B:
        classes_B[trailing_ones(phi_inverse(w))].append(w)
    return classes_B, classes_Bp


def fibonacci(n: int) -> int:
    """F_1 = F_2 = 1."""
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------
#
#   t(2,1,2)      plain index
#   z(2,-3)       signed index, negative entry = barred argument
#   z_1(2,1)      one leading zero
#   21122         word as digit string

def format_index(k: Index) -> str:
    return "t(" + ",".join(str(x) for x in k) + ")"


def format_signed(s: SignedIndex) -> str:
    head = "z" if s.lead_zeros == 0 else f"z_{s.lead_zeros}"
    return head + "(" + ",".join(str(x) for x in s.parts) + ")"


def format_word(w) -> str:
    return "".join(str(x) for x in w) if w else "(empty)"


def parse_argument(text: str):
    """Parse the CLI grammar; returns an Index, SignedIndex or word tuple."""
    text = text.strip()
    if text.isdigit():
        return tuple(int(c) for c in text)
    import re as _re

    m = _re.fullmatch(r"t\(([^)]*)\)", text)
    if m:
        inner = m.group(1).strip()
        parts = tuple(int(x) for x in inner.split(",")) if inner else ()
        if any(p < 1 for p in parts):
            raise ValueError(f"t-index entries must be positive: {text!r}")
        return parts
    m = _re.fullmatch(r"z(?:_(\d+))?\(([^)]*)\)", text)
    if m:
        lz = int(m.group(1) or 0)
        inner = m.group(2).strip()
        parts = tuple(int(x) for x in inner.split(",")) if inner else ()
        return SignedIndex(parts, lz).validate()
    raise ValueError(f"cannot parse argument {text!r}")
