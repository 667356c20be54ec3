"""Ordinals below omega^omega in Cantor normal form."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering


class OrdinalRangeError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """sum of w^e * c over ``terms`` ((e, c), e strictly decreasing, c >= 1)."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        terms = tuple((int(e), int(c)) for e, c in self.terms)
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if e1 <= e2:
                raise ValueError("exponents must strictly decrease")
        for e, c in terms:
            if e < 0 or c < 1:
                raise ValueError(f"bad term w^{e}*{c}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, x) -> "Ordinal":
        if isinstance(x, Ordinal):
            return x
        if isinstance(x, int):
            if x < 0:
                raise ValueError("negative ordinal")
            return cls(((0, x),) if x else ())
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot make an ordinal from {x!r}")

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        """Parse forms like ``w^2*3+w+4`` (also ``omega``, ``ω``)."""
        t = text.replace(" ", "").replace("omega", "w").replace("ω", "w")
        if t in ("", "0"):
            return cls()
        acc: dict[int, int] = {}
        for part in t.split("+"):
            m = re.fullmatch(r"(?:w(?:\^(\d+))?)(?:\*(\d+))?|(\d+)", part)
            if not m:
                raise ValueError(f"cannot parse ordinal term {part!r}")
            if m.group(3) is not None:
                e, c = 0, int(m.group(3))
            else:
                e = int(m.group(1)) if m.group(1) is not None else 1
                c = int(m.group(2)) if m.group(2) is not None else 1
            if c == 0:
                continue
            acc[e] = acc.get(e, 0) + c
        # ordinal addition absorbs smaller terms written before larger ones;
        # accept only normal form input
        terms = tuple(sorted(acc.items(), reverse=True))
        return cls(terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.terms:
            if e == 0:
                out.append(str(c))
            elif e == 1:
                out.append(f"w*{c}")
            else:
                out.append(f"w^{e}*{c}")
        return "+".join(out)

    def __lt__(self, other) -> bool:
        other = Ordinal.of(other)
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return e1 < e2
            if c1 != c2:
                return c1 < c2
        return len(self.terms) < len(other.terms)

    def __eq__(self, other) -> bool:
        try:
            other = Ordinal.of(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return all(e == 0 for e, _ in self.terms)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.is_successor

    def __int__(self) -> int:
        if not self.is_finite:
            raise OrdinalRangeError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def successor(self) -> "Ordinal":
        if self.is_successor:
            return Ordinal(self.terms[:-1] + ((0, self.terms[-1][1] + 1),))
        return Ordinal(self.terms + ((0, 1),))

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise ValueError(f"{self} is not a successor")
        e, c = self.terms[-1]
        return Ordinal(self.terms[:-1] + (((0, c - 1),) if c > 1 else ()))

    def fundamental(self, k: int) -> "Ordinal":
        """k-th term (k >= 1) of the canonical fundamental sequence."""
        if not self.is_limit:
            raise ValueError(f"{self} is not a limit ordinal")
        e, c = self.terms[-1]
        head = self.terms[:-1] + (((e, c - 1),) if c > 1 else ())
        return Ordinal(head + ((e - 1, k),))

    def __add__(self, other) -> "Ordinal":
        other = Ordinal.of(other)
        if not other.terms:
            return self
        e0 = other.terms[0][0]
        keep = [t for t in self.terms if t[0] > e0]
        same = [t for t in self.terms if t[0] == e0]
        lead = (e0, other.terms[0][1] + (same[0][1] if same else 0))
        return Ordinal(tuple(keep) + (lead,) + other.terms[1:])

    def __radd__(self, other) -> "Ordinal":
        return Ordinal.of(other) + self

    def to_json(self) -> list:
        return [list(t) for t in self.terms]

    @classmethod
    def from_json(cls, data) -> "Ordinal":
        return cls(tuple(tuple(t) for t in data))


ZERO = Ordinal()
ONE = Ordinal.of(1)
OMEGA = Ordinal(((1, 1),))
