"""Tent maps T_q(x) = q * min(x, 1 - x) on [0, 1], critical point 1/2.

Symbols are certified: rational slopes and sqrt(2) are iterated exactly in
Q(sqrt 2); any other slope goes through mpmath interval arithmetic and a
symbol is only emitted once the orbit interval sits on one side of 1/2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .words import Order, SymbolStream, as_text, is_shift_maximal, parity_lex_cmp

HALF = Fraction(1, 2)


class PrecisionExhausted(ArithmeticError):
    """The working precision could not separate an orbit point from 1/2."""

    def __init__(self, index: int):
        super().__init__(f"cannot certify itinerary symbol {index}; raise precision")
        self.index = index


class RejectedInput(ValueError):
    pass


class BracketFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class QSqrt2:
    """Exact number a + b*sqrt(2) with rational a, b."""

    a: Fraction
    b: Fraction = Fraction(0)

    @staticmethod
    def lift(x) -> "QSqrt2":
        if isinstance(x, QSqrt2):
            return x
        return QSqrt2(Fraction(x), Fraction(0))

    def __add__(self, o):
        o = QSqrt2.lift(o)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-QSqrt2.lift(o))

    def __rsub__(self, o):
        return QSqrt2.lift(o) - self

    def __mul__(self, o):
        o = QSqrt2.lift(o)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def half(self) -> "QSqrt2":
        return QSqrt2(self.a / 2, self.b / 2)

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 2 b^2
        d = a * a - 2 * b * b
        return sa if d > 0 else (-sa if d < 0 else 0)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __float__(self):
        return float(self.a) + float(self.b) * 2 ** 0.5

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt2"


SQRT2 = QSqrt2(Fraction(0), Fraction(1))
Q_MIN, Q_MAX = SQRT2, QSqrt2(Fraction(2))


@dataclass(frozen=True)
class TentParam:
    """Slope q in [sqrt 2, 2].  ``q`` is exact (QSqrt2) unless ``interval``
    is set, in which case q is only known to lie in that real interval."""

    q: QSqrt2 | None = None
    interval: tuple[str, str] | None = None
    precision: int = 50

    def __post_init__(self):
        if self.q is not None:
            if self.q < Q_MIN or Q_MAX < self.q:
                raise ValueError(f"slope {self.q} outside [sqrt2, 2]")
        elif self.interval is None:
            raise ValueError("need an exact slope or an interval")

    @classmethod
    def parse(cls, text: str, precision: int = 50) -> "TentParam":
        """Accept decimal/fraction strings (exact) or 'sqrt2'."""
        t = str(text).strip().lower()
        if t in ("sqrt2", "sqrt(2)", "√2"):
            return cls(SQRT2, precision=precision)
        return cls(QSqrt2(Fraction(t)), precision=precision)

    @classmethod
    def from_real(cls, x: float, precision: int = 50) -> "TentParam":
        """A slope known only to working precision (interval mode)."""
        with mpmath.workdps(precision):
            v = mpmath.mpf(x)
            if not (mpmath.sqrt(2) <= v <= 2):
                raise ValueError(f"slope {x} outside [sqrt2, 2]")
            s = mpmath.nstr(v, precision)
        return cls(None, interval=(s, s), precision=precision)

    @property
    def exact(self) -> bool:
        return self.q is not None

    def __float__(self):
        if self.q is not None:
            return float(self.q)
        return float(mpmath.mpf(self.interval[0]))


def _as_exact(x) -> QSqrt2:
    if isinstance(x, QSqrt2):
        return x
    if isinstance(x, float):
        return QSqrt2(Fraction(x))
    return QSqrt2(Fraction(x))


def tent_eval(q: TentParam, x):
    """T_q(x); exact when both q and x are exact."""
    if q.exact:
        x = _as_exact(x)
        if x.sign() < 0 or QSqrt2(Fraction(1)) < x:
            raise ValueError(f"x={x} outside [0,1]")
        if x <= QSqrt2(HALF):
            return q.q * x
        return q.q * (1 - x)
    with mpmath.workdps(q.precision):
        x = mpmath.mpf(x)
        if x < 0 or x > 1:
            raise ValueError(f"x={x} outside [0,1]")
        qq = mpmath.mpf(q.interval[0])
        return qq * min(x, 1 - x)


def itinerary(q: TentParam, x, length: int) -> str:
    """Certified itinerary of ``x``; stops after emitting '*' at a hit of c."""
    if q.exact:
        return _itinerary_exact(q.q, _as_exact(x), length)
    return _itinerary_interval(q, x, length)


def _itinerary_exact(q: QSqrt2, x: QSqrt2, length: int) -> str:
    if x.sign() < 0 or QSqrt2(Fraction(1)) < x:
        raise ValueError("x outside [0,1]")
    out = []
    half = QSqrt2(HALF)
    for _ in range(length):
        s = (x - half).sign()
        if s == 0:
            out.append("*")
            break
        if s < 0:
            out.append("0")
            x = q * x
        else:
            out.append("1")
            x = q * (1 - x)
    return "".join(out)


def _itinerary_interval(q: TentParam, x, length: int, start_at_fc: bool = False) -> str:
    iv = mpmath.iv
    old = iv.dps
    iv.dps = q.precision
    try:
        qq = iv.mpf(list(q.interval))
        if start_at_fc:
            xx = qq / 2
        elif isinstance(x, Fraction):
            xx = iv.mpf(x.numerator) / x.denominator
        else:
            xx = iv.mpf(x)
        half = iv.mpf(0.5)
        out = []
        for i in range(length):
            if xx.b < half.a:
                out.append("0")
                xx = qq * xx
            elif xx.a > half.b:
                out.append("1")
                xx = qq * (1 - xx)
            else:
                raise PrecisionExhausted(i)
        return "".join(out)
    finally:
        iv.dps = old


def kneading_prefix(q: TentParam, length: int) -> SymbolStream:
    """First ``length`` symbols of the kneading sequence I(T_q(1/2))."""
    if length < 1:
        raise ValueError("length must be >= 1")
    if q.exact:
        fc = q.q.half()
        word = _itinerary_exact(q.q, fc, length)
    else:
        word = _itinerary_interval(q, None, length, start_at_fc=True)
    if "*" in word:
        # c is periodic: the kneading sequence continues periodically with the
        # symbol at c read as 1 (the usual convention for superstable maps)
        period = word[:-1] + "1"
        word = (period * (length // len(period) + 1))[:length]
    return SymbolStream(word, tag=f"tent:{q.q if q.exact else q.interval[0]}")


@dataclass(frozen=True)
class ParamBracket:
    """Slopes ``q_lo <= q_hi`` bracketing every q whose kneading prefix is K.

    ``inside`` is a slope whose own kneading prefix equals K (when the set of
    such slopes was hit during the search).
    """

    q_lo: QSqrt2
    q_hi: QSqrt2
    inside: QSqrt2 | None
    horizon: int

    @property
    def width(self) -> float:
        return float(self.q_hi - self.q_lo)

    def contains(self, q) -> bool:
        q = _as_exact(q)
        return self.q_lo <= q and q <= self.q_hi

    def record(self) -> dict:
        return {
            "q_lo": float(self.q_lo),
            "q_hi": float(self.q_hi),
            "q_lo_exact": str(self.q_lo),
            "q_hi_exact": str(self.q_hi),
            "horizon": self.horizon,
            "certified": True,
        }


def _prefix_cmp(q: QSqrt2, text: str) -> Order:
    return parity_lex_cmp(kneading_prefix(TentParam(q), len(text)).prefix, text)


def _bisect(text: str, ties_down: bool, iterations: int):
    lo, hi = Q_MIN, Q_MAX
    inside = None
    for _ in range(iterations):
        mid = (lo + hi).half()
        c = _prefix_cmp(mid, text)
        if c is Order.EQUAL:
            inside = mid
        if c is Order.PRECEDES or (c is Order.EQUAL and not ties_down):
            lo = mid
        else:
            hi = mid
    return lo, hi, inside


def find_parameter(K, iterations: int = 40, horizon: int | None = None) -> ParamBracket:
    """Bracket the slopes in [sqrt2, 2] whose kneading prefix equals ``K``.

    Kneading sequences of the tent family are parity-lex nondecreasing in
    q, so the matching slopes form an interval; two bisections locate its
    lower and upper ends.  The bracket straddles (or matches) K at both ends
    and each end is located to within (2 - sqrt2) / 2**iterations.

    Only the first ``horizon`` symbols (default 2*iterations + 24) drive the
    bisection; longer prefixes cannot narrow the bracket further at that
    iteration count.  The bracket then covers the slopes matching that many
    symbols, a superset of those matching all of K.
    """
    text = as_text(K)
    if not text:
        raise ValueError("empty kneading prefix")
    sm = is_shift_maximal(text)
    if sm.status == "no":
        raise RejectedInput(f"not shift-maximal (shift {sm.witness})")
    text = text[:horizon or 2 * iterations + 24]
    n = len(text)
    bound = ("10" + "1" * n)[:n]
    if parity_lex_cmp(bound, text) is Order.FOLLOWS:
        raise RejectedInput("below 101^inf in parity-lex order")
    c_lo, c_hi = _prefix_cmp(Q_MIN, text), _prefix_cmp(Q_MAX, text)
    if c_lo is Order.FOLLOWS or c_hi is Order.PRECEDES:
        raise BracketFailure("target outside the kneading range of [sqrt2, 2]")
    if c_lo is Order.EQUAL:
        lo, inside = Q_MIN, Q_MIN
    else:
        lo, _, inside = _bisect(text, True, iterations)
    if c_hi is Order.EQUAL:
        hi, inside = Q_MAX, inside or Q_MAX
    else:
        _, hi, inside_up = _bisect(text, False, iterations)
        inside = inside or inside_up
    if _prefix_cmp(lo, text) is Order.FOLLOWS or _prefix_cmp(hi, text) is Order.PRECEDES:
        raise BracketFailure("monotone comparison inconsistent")
    return ParamBracket(lo, hi, inside, n)


@dataclass(frozen=True)
class IlimPoint:
    """Finite stretch (x_0, ..., x_{depth-1}) of a backward orbit."""

    coords: tuple

    @property
    def depth(self) -> int:
        return len(self.coords)

    def is_consistent(self, q: TentParam, tol: float = 1e-12) -> bool:
        return all(
            abs(float(tent_eval(q, self.coords[i])) - float(self.coords[i - 1])) <= tol
            for i in range(1, self.depth)
        )


def ilim_metric(x: IlimPoint, y: IlimPoint) -> float:
    """Truncated inverse-limit metric; the neglected tail is at most 2^-depth."""
    if x.depth != y.depth:
        raise ValueError("depth mismatch")
    return sum(abs(float(a) - float(b)) / 2 ** (i + 1)
               for i, (a, b) in enumerate(zip(x.coords, y.coords)))


def _samples(samples: int) -> list[Fraction]:
    return [Fraction(2 * i + 1, 2 * samples) for i in range(samples)]


def continuity_probe_N(q: TentParam, eps: float, samples: int = 2000, max_N: int = 64) -> int:
    """Smallest N for which sampled points sharing a length-N itinerary are
    all within ``eps``.  An estimate from ``samples`` grid points."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    xs = _samples(samples)
    its = [itinerary(q, x, max_N) for x in xs]
    for N in range(max_N + 1):
        groups: dict[str, list[Fraction]] = {}
        for x, it in zip(xs, its):
            groups.setdefault(it[:N], []).append(x)
        if all(max(g) - min(g) < eps for g in groups.values()):
            return N
    return max_N + 1


def continuity_probe_eps(q: TentParam, N: int, samples: int = 2000) -> float:
    """Largest eps such that sampled non-precritical pairs closer than eps
    share their length-N itineraries.  An estimate, not a bound."""
    if N <= 0:
        return 1.0
    xs = _samples(samples)
    pts = []
    for x in xs:
        it = itinerary(q, x, N)
        if "*" not in it:
            pts.append((x, it))
    gap = Fraction(1)
    for (x, a), (y, b) in zip(pts, pts[1:]):
        if a != b:
            gap = min(gap, y - x)
    return float(gap)
