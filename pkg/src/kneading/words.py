"""Finite and infinite words over {0, 1, *}: orders, shifts, conjugacy and
the admissibility predicates for tent-map kneading sequences.

Infinite sequences are only ever known through a finite prefix, so every
predicate on a :class:`SymbolStream` is conservative: it answers from the
prefix or says it cannot tell.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

ALPHABET = frozenset("01*")
# comparison rank of each symbol: 0 < * < 1
_RANK = {"0": 0, "*": 1, "1": 2}


class HorizonExhausted(ValueError):
    """Raised when an operation needs symbols beyond a stream's prefix."""


class InvalidWord(ValueError):
    pass


def check_word(w: str, allow_star: bool = True) -> str:
    bad = set(w) - ALPHABET
    if bad:
        raise InvalidWord(f"symbols {sorted(bad)} not in {{0,1,*}}")
    if "*" in w:
        if not allow_star:
            raise InvalidWord("'*' not allowed here")
        if w.index("*") != len(w) - 1:
            raise InvalidWord("'*' may only appear once, as the final symbol")
    return w


_POWER = re.compile(r"\(([01*]+)\)\^(\d+)|([01*])\^(\d+)|([01*])")


def parse_word(text: str) -> str:
    """Expand run-length sugar such as ``1^5(01)^3`` into a plain word."""
    text = "".join(text.split())
    out = []
    pos = 0
    while pos < len(text):
        m = _POWER.match(text, pos)
        if m is None:
            raise InvalidWord(f"cannot parse {text!r} at position {pos}")
        if m.group(1) is not None:
            out.append(m.group(1) * int(m.group(2)))
        elif m.group(3) is not None:
            out.append(m.group(3) * int(m.group(4)))
        else:
            out.append(m.group(5))
        pos = m.end()
    return check_word("".join(out))


@dataclass(frozen=True)
class SymbolStream:
    """A trusted finite prefix of an infinite 0/1 sequence."""

    prefix: str
    tag: str = ""

    def __post_init__(self):
        if "*" in self.prefix:
            raise InvalidWord("stream prefixes never contain '*'")
        if set(self.prefix) - {"0", "1"}:
            raise InvalidWord("stream prefix must be over {0,1}")

    @property
    def horizon(self) -> int:
        return len(self.prefix)

    def __len__(self) -> int:
        return len(self.prefix)

    def __str__(self) -> str:
        return self.prefix


def as_text(x) -> str:
    return x.prefix if isinstance(x, SymbolStream) else x


class Order(enum.Enum):
    PRECEDES = "precedes"
    FOLLOWS = "follows"
    EQUAL = "equal_up_to_horizon"


def parity_lex_cmp(t, s) -> Order:
    """Parity-lexicographic comparison of two sequences (words or streams).

    At the first disagreement the base order 0 < * < 1 is used when the
    common prefix holds an even number of 1s and reversed when odd.
    """
    a, b = as_text(t), as_text(s)
    if not a or not b:
        raise ValueError("both sequences must be nonempty")
    n = min(len(a), len(b))
    # common prefix length, done in chunks so long equal prefixes stay fast
    lo = 0
    step = 4096
    while lo < n and a[lo:min(lo + step, n)] == b[lo:min(lo + step, n)]:
        lo += step
    if lo >= n:
        return Order.EQUAL
    i = lo
    while a[i] == b[i]:
        i += 1
    odd = a.count("1", 0, i) % 2 == 1
    less = _RANK[a[i]] < _RANK[b[i]]
    if odd:
        less = not less
    return Order.PRECEDES if less else Order.FOLLOWS


def shift(x, k: int):
    """One-sided shift of a stream or word, or origin move of a BiInfWord."""
    if isinstance(x, BiInfWord):
        return x.shifted(k)
    text = as_text(x)
    if k < 0:
        raise ValueError("one-sided shift needs k >= 0")
    if k > len(text):
        raise HorizonExhausted(f"shift by {k} exceeds horizon {len(text)}")
    if isinstance(x, SymbolStream):
        return SymbolStream(text[k:], x.tag)
    return text[k:]


def primitive_root(w: str) -> str:
    """Shortest ``p`` with ``w == p * k``."""
    if not w:
        raise InvalidWord("empty word has no primitive root")
    n = len(w)
    # smallest period dividing n, via the doubled-word trick
    i = (w + w).find(w, 1)
    if i < n and n % i == 0:
        return w[:i]
    return w


def is_primitive(w: str) -> bool:
    return primitive_root(w) == w


def rotate(w: str, k: int) -> str:
    k %= len(w)
    return w[k:] + w[:k]


def min_rotation(w: str) -> str:
    return min(rotate(w, k) for k in range(len(w)))


def word_conjugate_equiv(a: str, b: str) -> bool:
    """``a ~ b``: some shift of a^Z equals some shift of b^Z."""
    if not a or not b:
        raise InvalidWord("words must be nonempty")
    pa, pb = primitive_root(a), primitive_root(b)
    return len(pa) == len(pb) and pb in pa + pa


def _leading(w: str, c: str) -> int:
    return len(w) - len(w.lstrip(c))


def _trailing(w: str, c: str) -> int:
    return len(w) - len(w.rstrip(c))


def zero_runs(w: str) -> list[int]:
    return [len(r) for r in w.split("1") if r]


def max_zero_run_closure(words: Iterable[str]) -> int:
    """Longest run of 0s that can appear in any concatenation of ``words``."""
    words = list(words)
    for w in words:
        if "1" not in w:
            raise InvalidWord(f"word {w!r} contains no 1")
    best = 0
    for w in words:
        inner = w.strip("0")
        best = max([best, *zero_runs(inner)])
    for x in words:
        for y in words:
            best = max(best, _trailing(x, "0") + _leading(y, "0"))
    return best


# -- bi-infinite words ------------------------------------------------------


def _rot_right(w: str) -> str:
    return w[-1] + w[:-1]


def _rot_left(w: str) -> str:
    return w[1:] + w[0]


@dataclass(frozen=True)
class BiInfWord:
    """``left^-inf center right^inf`` with the origin at index ``offset`` of
    ``center`` (any integer; positions outside the center fall in a tail).

    Instances are always canonical: primitive tails, minimal center, and an
    empty center placed as far left as the tails allow.  Equality of the
    dataclass fields is therefore equality of the bi-infinite sequences.
    """

    left: str
    center: str
    right: str
    offset: int = 0

    def __post_init__(self):
        if not self.left or not self.right:
            raise InvalidWord("tails must be nonempty")
        L, C, R, o = _canonical(self.left, self.center, self.right, self.offset)
        object.__setattr__(self, "left", L)
        object.__setattr__(self, "center", C)
        object.__setattr__(self, "right", R)
        object.__setattr__(self, "offset", o)

    @property
    def periodic(self) -> bool:
        return not self.center and self.left == self.right

    def shifted(self, k: int) -> "BiInfWord":
        return BiInfWord(self.left, self.center, self.right, self.offset + k)

    def orbit_key(self) -> tuple:
        """Identifies the shift orbit."""
        if self.periodic:
            return ("per", min_rotation(self.left))
        return (self.left, self.center, self.right)

    def symbol(self, i: int) -> str:
        """Symbol at position ``i`` relative to the origin."""
        j = self.offset + i
        if 0 <= j < len(self.center):
            return self.center[j]
        if j >= len(self.center):
            k = j - len(self.center)
            return self.right[k % len(self.right)]
        return self.left[j % len(self.left)]

    def window(self, lo: int, hi: int) -> str:
        """Symbols at positions lo..hi-1 relative to the origin."""
        return "".join(self.symbol(i) for i in range(lo, hi))

    def __str__(self) -> str:
        lo = min(0, self.offset)
        hi = max(len(self.center), self.offset)
        body = self.window(lo - self.offset, hi - self.offset)
        cut = self.offset - lo
        return f"({self.left})^-inf {body[:cut]} . {body[cut:]} ({self.right})^inf"


def _canonical(L: str, C: str, R: str, o: int):
    L, R = primitive_root(L), primitive_root(R)
    while C and C[-1] == R[-1]:
        C = C[:-1]
        R = _rot_right(R)
    while C and C[0] == L[0]:
        C = C[1:]
        L = _rot_left(L)
        o -= 1
    if not C:
        limit = len(L) * len(R) // math.gcd(len(L), len(R))
        steps = 0
        while L[-1] == R[-1] and steps <= limit:
            L, R = _rot_right(L), _rot_right(R)
            o += 1
            steps += 1
        if L == R:
            # purely periodic: put the origin at the start of the period
            p = len(L)
            L = R = rotate(L, o)
            o = 0
    return L, C, R, o


# -- kneading admissibility ------------------------------------------------


def z_function(s: str) -> np.ndarray:
    """Z-array: z[i] = length of the longest common prefix of s and s[i:]."""
    n = len(s)
    z = np.zeros(n, dtype=np.int64)
    if n == 0:
        return z
    z[0] = n
    l = r = 0
    for i in range(1, n):
        if i < r:
            zi = min(r - i, int(z[i - l]))
        else:
            zi = 0
        while i + zi < n and s[zi] == s[i + zi]:
            zi += 1
        z[i] = zi
        if i + zi > r:
            l, r = i, i + zi
    return z


@dataclass(frozen=True)
class Verdict:
    """Tri-state answer for predicates on infinite objects."""

    status: str
    witness: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status in ("yes_at_horizon", "primary_at_horizon",
                               "admissible_at_horizon")


def is_shift_maximal(K) -> Verdict:
    """Check sigma^j(K) <= K for every shift visible in the prefix."""
    s = as_text(K)
    n = len(s)
    if n == 0:
        raise ValueError("empty stream")
    z = z_function(s)
    ones = np.concatenate(([0], np.cumsum(np.frombuffer(s.encode(), np.uint8) == 49)))
    j = np.arange(1, n)
    lcp = z[1:]
    live = j + lcp < n
    j, lcp = j[live], lcp[live]
    arr = np.frombuffer(s.encode(), np.uint8)
    a, b = arr[j + lcp], arr[lcp]
    odd = ones[lcp] % 2 == 1
    bad = np.nonzero((a > b) != odd)[0]
    if len(bad):
        return Verdict("no", witness=int(j[bad[0]]))
    return Verdict("yes_at_horizon")


def _block_pattern_holds(arr: np.ndarray, ell: int) -> bool:
    """s[i] == s[i - ell] at every non-free position i >= ell."""
    n = len(arr)
    lo, span = ell, 16 * ell
    # widen the checked window geometrically so most block lengths die early
    while lo < n:
        hi = min(n, lo + span)
        i = np.arange(lo, hi)
        keep = i % ell != ell - 1
        if not (arr[lo:hi][keep] == arr[lo - ell:hi - ell][keep]).all():
            return False
        lo, span = hi, span * 4
    return True


def is_primary(K, max_block: int | None = None) -> Verdict:
    """Refute ``K = W u1 W u2 ...`` for every block length up to max_block.

    A block length that the prefix cannot refute counts as a confirmed
    *-product once the prefix holds at least three full blocks.
    """
    s = as_text(K)
    n = len(s)
    if max_block is None:
        max_block = max(2, n // 4)
    arr = np.frombuffer(s.encode(), np.uint8)
    unknown = None
    for ell in range(2, max_block + 1):
        full = n // ell
        if full == 0:
            unknown = unknown or ell
            continue
        if not _block_pattern_holds(arr, ell):
            continue
        if full >= 3:
            return Verdict("star_product", witness=s[: ell - 1])
        unknown = unknown or ell
    if unknown is not None:
        return Verdict("unknown", witness=unknown)
    return Verdict("primary_at_horizon")


BOUND = "10" + "1" * 62


def is_admissible_kneading(K, max_block: int | None = None) -> Verdict:
    """Shift-maximal, primary and at least 101^inf in parity-lex order."""
    s = as_text(K)
    sm = is_shift_maximal(s)
    if sm.status == "no":
        return Verdict("rejected", witness=sm.witness, reason="shift_maximality")
    pr = is_primary(s, max_block)
    if pr.status == "star_product":
        return Verdict("rejected", witness=pr.witness, reason="primary")
    bound = ("10" + "1" * len(s))[: len(s)]
    if parity_lex_cmp(bound, s) is Order.FOLLOWS:
        return Verdict("rejected", reason="bound_101")
    if pr.status == "unknown":
        return Verdict("unknown", witness=pr.witness, reason="primary")
    return Verdict("admissible_at_horizon")
