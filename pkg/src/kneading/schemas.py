"""Symbolic point schemas for omega-limit sets and inhomogeneity spaces.

A schema is a template of segments (fixed words, powers with an exponent
slot, tree-path blocks, periodic tails).  Instantiating every slot gives an
eventually periodic right-infinite word or a bi-infinite word.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .words import BiInfWord, primitive_root, rotate


class ClosureViolation(RuntimeError):
    """A presentation is not closed under the limit rules it implies."""


# -- right-infinite eventually periodic words ---------------------------------


def rinf(u: str, v: str) -> tuple[str, str]:
    """Canonical ``(prefix, primitive period)`` of ``u v^inf``."""
    v = primitive_root(v)
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = v[-1] + v[:-1]
    return u, v


def rinf_drop(p: tuple[str, str], d: int) -> tuple[str, str]:
    u, v = p
    if d <= len(u):
        return (u[d:], v) if d else p
    return rinf("", rotate(v, d - len(u)))


def rinf_expand(p: tuple[str, str], length: int) -> str:
    u, v = p
    if len(u) >= length:
        return u[:length]
    reps = -(-(length - len(u)) // len(v))
    return (u + v * reps)[:length]


def rinf_str(p: tuple[str, str]) -> str:
    u, v = p
    return f"{u}({v})^inf"


# -- the binary tree used by the Cantor example ------------------------------


def section7_B(i: int) -> str:
    """1^i when i is a power of two (1 included), else 101^i."""
    if i < 1:
        raise ValueError("labels start at 1")
    return "1" * i if i & (i - 1) == 0 else "10" + "1" * i


def binary_path(i: int) -> list[int]:
    """Labels from vertex i back to the root: i, i//2, ..., 1."""
    out = []
    while i >= 1:
        out.append(i)
        i //= 2
    return out


def chain_word(v: int) -> str:
    """``B_v B_{v//2} ... B_1`` (empty for v = 0)."""
    return "".join(section7_B(j) for j in binary_path(v))


# -- segments and slot domains ------------------------------------------------


@dataclass(frozen=True)
class Seg:
    kind: str  # fixed | pow | path | chain | ltail | rtail | walk
    word: str = ""
    slot: str = ""
    B: str = ""
    reverse: bool = False

    def __str__(self) -> str:
        if self.kind == "fixed":
            return self.word
        if self.kind == "pow":
            return f"({self.word})^{self.slot}"
        if self.kind == "path":
            arrow = "rev" if self.reverse else "fwd"
            return f"[{self.B}:{self.word}^{self.slot}:{arrow}]"
        if self.kind == "chain":
            return f"chain({self.slot}//2)"
        if self.kind == "ltail":
            return f"({self.word})^-inf"
        if self.kind == "rtail":
            return f"({self.word})^inf"
        return f"walk({self.slot})"


def fixed(w):
    return Seg("fixed", w)


def pw(w, slot):
    return Seg("pow", w, slot)


def path(w, B, slot, reverse=False):
    return Seg("path", w, slot, B, reverse)


def chain(slot):
    return Seg("chain", slot=slot)


def ltail(w):
    return Seg("ltail", primitive_root(w))


def rtail(w):
    return Seg("rtail", primitive_root(w))


def walk(slot):
    return Seg("walk", slot=slot)


@dataclass(frozen=True)
class FreeDomain:
    """Naturals, stored as 0..dense plus the two values ``upper-1, upper``.

    The top pair samples the slot's tail; keeping it far out avoids the
    small-exponent coincidences (such as 1^2 (0111)^inf being periodic).
    """

    upper: int
    dense: int = 4

    def values(self):
        low = list(range(min(self.dense, self.upper) + 1))
        return sorted(set(low) | {max(self.upper - 1, 0), self.upper})


@dataclass(frozen=True)
class VertexDomain:
    """An unbounded set of naturals known through a finite stored list."""

    stored: tuple

    def values(self):
        return list(self.stored)


@dataclass(frozen=True)
class PathDomain:
    """Path labels of a truncated labeled tree, plus the empty path."""

    paths: tuple  # includes ()
    children: dict = field(hash=False, compare=False)

    @classmethod
    def from_paths(cls, paths) -> "PathDomain":
        allp = [()] + [tuple(p) for p in paths]
        kids: dict = {p: [] for p in allp}
        for p in allp:
            if p:
                kids[p[:-1]].append(p)
        return cls(tuple(allp), kids)

    def values(self):
        return list(self.paths)


@dataclass(frozen=True)
class WalkDomain:
    """Infinite walks through the full binary tree (a Cantor set)."""

    def values(self):
        raise ClosureViolation("walk slots range over a Cantor set")

    def vertices(self, depth: int) -> list[int]:
        return list(range(2 ** depth, 2 ** (depth + 1)))


@dataclass(frozen=True)
class PointSchema:
    name: str
    segments: tuple
    constraint: Callable | None = field(default=None, compare=False)

    @property
    def side(self) -> str:
        return "bi" if self.segments[0].kind in ("ltail", "walk") else "right"

    @property
    def slots(self) -> list[str]:
        out = []
        for s in self.segments:
            if s.slot and s.slot not in out:
                out.append(s.slot)
        return out

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.segments)


def expand_segments(segs, a: dict) -> str:
    out = []
    for s in segs:
        if s.kind == "fixed":
            out.append(s.word)
        elif s.kind == "pow":
            out.append(s.word * a[s.slot])
        elif s.kind == "path":
            labels = a[s.slot]
            seq = reversed(labels) if s.reverse else labels
            out.append(s.B + "".join(s.word * p + s.B for p in seq))
        elif s.kind == "chain":
            out.append(chain_word(a[s.slot] // 2))
        else:
            raise ValueError(f"cannot expand segment {s}")
    return "".join(out)


def instance(schema: PointSchema, a: dict):
    """Right-infinite ``(u, v)`` or a :class:`BiInfWord`."""
    segs = schema.segments
    if segs[-1].kind != "rtail":
        raise ValueError("schemas end with a right tail")
    if schema.side == "bi":
        return BiInfWord(segs[0].word, expand_segments(segs[1:-1], a), segs[-1].word)
    return rinf(expand_segments(segs[:-1], a), segs[-1].word)


def growth_sites(schema: PointSchema, a: dict, slot: str):
    """Where letting ``slot`` grow inserts an unbounded power.

    Yields ``(left, word, right)`` with the finite material around the
    growing power (tails excluded).
    """
    segs = schema.segments
    body = segs[1:-1] if schema.side == "bi" else segs[:-1]
    for i, s in enumerate(body):
        if s.slot != slot or s.kind not in ("pow", "path"):
            continue
        before = expand_segments(body[:i], a)
        after = expand_segments(body[i + 1:], a)
        if s.kind == "pow":
            yield before, s.word, after
        else:
            labels = a[slot]
            if s.reverse:
                rest = "".join(s.word * p + s.B for p in reversed(labels))
                yield before + s.B, s.word, s.B + rest + after
            else:
                done = s.B + "".join(s.word * p + s.B for p in labels)
                yield before + done, s.word, s.B + after
        return


# -- presentations --------------------------------------------------------------


@dataclass
class SpacePresentation:
    """Finite schema list describing a closed shift-invariant point set.

    ``level`` counts Cantor-Bendixson derivatives already taken; the
    represented set is the points of rank >= level.
    """

    side: str
    schemas: list
    domains: dict
    provenance: str = ""
    level: int = 0
    rank_override: dict = field(default_factory=dict)
    _engine: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for s in self.schemas:
            if s.side != self.side:
                raise ValueError(f"schema {s.name} is not {self.side}-sided")

    @property
    def has_walk(self) -> bool:
        return any(isinstance(d, WalkDomain) for d in self.domains.values())

    def assignments(self, schema: PointSchema):
        slots = schema.slots
        pools = [self.domains[s].values() for s in slots]
        for combo in itertools.product(*pools):
            a = dict(zip(slots, combo))
            if schema.constraint is None or schema.constraint(a):
                yield a

    def engine(self):
        from .cb import RankEngine
        if self._engine is None:
            self._engine = RankEngine(self)
        return self._engine

    def with_level(self, level: int) -> "SpacePresentation":
        p = SpacePresentation(self.side, self.schemas, self.domains, self.provenance,
                              level, dict(self.rank_override))
        p._engine = self._engine
        return p

    def describe(self) -> dict:
        return {"side": self.side, "level": self.level, "provenance": self.provenance,
                "schemas": [{"name": s.name, "template": str(s)} for s in self.schemas]}
