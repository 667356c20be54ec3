"""Cantor-Bendixson ranks of schema presentations.

The stored universe holds every schema instance with slot values from the
finite domains.  A *family* is a sequence of instances obtained by letting
one slot grow (a free exponent tends to infinity, or a tree path is
extended by ever larger child labels); its limit follows from the schema
template.  In the bi-infinite case every non-periodic orbit also
accumulates on its two periodic tails.  Ranks then satisfy

    rank(y) = max over families converging to y of (member rank + 1),

and 0 for points that are no family's limit.
"""
from __future__ import annotations

import bisect
import sys
from collections import defaultdict
from dataclasses import dataclass

from .ordinals import Ordinal
from .schemas import (ClosureViolation, FreeDomain, PathDomain, SpacePresentation,
                      VertexDomain, WalkDomain, chain_word, growth_sites, instance,
                      rinf, rinf_drop, rinf_expand, rinf_str)
from .words import BiInfWord


@dataclass(frozen=True)
class Family:
    limits: tuple
    members: tuple
    provenance: str
    tail: bool = False  # members sample the tail of a free slot


def _key(x):
    return x if isinstance(x, tuple) else x.orbit_key()


def _first_width(schema) -> int:
    s = schema.segments[0]
    if s.kind == "path":
        return len(s.B)
    return max(1, len(s.word))


class RankEngine:
    def __init__(self, p: SpacePresentation):
        if p.has_walk:
            raise ClosureViolation("walk slots have no countable universe")
        self.p = p
        self.side = p.side
        self.points: dict = {}
        self.origin: dict = {}
        self.families: list[Family] = []
        self.by_limit = defaultdict(list)
        self._seen = set()
        self._rank: dict = {}
        self._busy: set = set()
        for schema in p.schemas:
            for a in p.assignments(schema):
                self._add_instance(schema, a)
        self.gaps = set()
        for f in self.families:
            for lim_key, lim in f.limits:
                if lim_key not in self.points:
                    self.gaps.add(lim_key)
                    self.points[lim_key] = lim
                    self.origin[lim_key] = ("<limit>", {})

    # -- construction -----------------------------------------------------

    def _add_point(self, x, schema, a):
        k = _key(x)
        if k not in self.points:
            self.points[k] = x
            self.origin[k] = (schema.name, a)
        return k

    def _add_instance(self, schema, a):
        base = instance(schema, a)
        if self.side == "right":
            for d in range(_first_width(schema)):
                self._add_point(rinf_drop(base, d), schema, a)
                self._families(schema, a, d)
        else:
            k = self._add_point(base, schema, a)
            self._families(schema, a, 0)
            if not base.periodic:
                lim = [BiInfWord(base.left, "", base.left), BiInfWord(base.right, "", base.right)]
                self._register(lim, [k], f"{schema.name}:shift")

    def _register(self, limits, member_keys, prov, tail=False):
        lims = tuple((_key(x), x) for x in limits)
        mk = tuple(m for m in member_keys if all(m != lk for lk, _ in lims))
        if not mk:
            return
        fi = len(self.families)
        self.families.append(Family(lims, mk, prov, tail))
        for lk, _ in lims:
            self.by_limit[lk].append(fi)

    def _limits(self, schema, a, slot, d):
        out = []
        for left, w, right in growth_sites(schema, a, slot):
            if self.side == "right":
                out.append(rinf_drop(rinf(left, w), d))
            else:
                L, R = schema.segments[0].word, schema.segments[-1].word
                out += [BiInfWord(L, left, w), BiInfWord(w, right, R), BiInfWord(w, "", w)]
        return out

    def _member(self, schema, a, d):
        x = instance(schema, a)
        return rinf_drop(x, d) if self.side == "right" else x

    def _families(self, schema, a, d):
        for slot in schema.slots:
            dom = self.p.domains[slot]
            if isinstance(dom, (FreeDomain, VertexDomain)):
                fk = (schema.name, d, slot,
                      tuple(sorted((k, v) for k, v in a.items() if k != slot)))
                if fk in self._seen:
                    continue
                self._seen.add(fk)
                ok = [v for v in dom.values()
                      if schema.constraint is None or schema.constraint({**a, slot: v})]
                top = sorted(ok)[-2:]
                if len(top) < 2:
                    continue
                members = [self._member(schema, {**a, slot: v}, d) for v in top]
                if _key(members[0]) == _key(members[1]):
                    continue
                lims = self._limits(schema, {**a, slot: top[-1]}, slot, d)
                self._register(lims, [_key(m) for m in members], f"{schema.name}:{slot}", True)
            elif isinstance(dom, PathDomain):
                kids = dom.children.get(a[slot], [])
                if not kids:
                    continue
                members = [_key(self._member(schema, {**a, slot: c}, d)) for c in kids]
                lims = self._limits(schema, a, slot, d)
                self._register(lims, members, f"{schema.name}:{slot}+")

    # -- ranks ------------------------------------------------------------

    def rank(self, k) -> int:
        if k in self.p.rank_override:
            return self.p.rank_override[k]
        if k in self._rank:
            return self._rank[k]
        if k in self._busy:
            raise ClosureViolation(f"rank recursion cycles through {self.label(k)}")
        self._busy.add(k)
        r = 0
        for fi in self.by_limit.get(k, ()):
            fr = self.family_rank(self.families[fi], k)
            if fr is not None:
                r = max(r, fr + 1)
        self._busy.discard(k)
        self._rank[k] = r
        return r

    def family_rank(self, f: Family, exclude=None):
        """Rank the family's members carry toward its limit."""
        ms = [m for m in f.members if m in self.points and m != exclude]
        if not ms:
            return None
        # a free slot stands for its tail: a coincidence at one stored
        # value must not inflate the rank, so take the weaker member
        agg = min if f.tail else max
        return agg(self.rank(m) for m in ms)

    def ranks(self) -> dict:
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 20000))
        try:
            return {k: self.rank(k) for k in self.points}
        finally:
            sys.setrecursionlimit(old)

    def label(self, k) -> str:
        x = self.points.get(k)
        if x is None:
            return str(k)
        return rinf_str(x) if self.side == "right" else str(x)

    # -- isolation oracles ------------------------------------------------

    def _level_index(self, level: int):
        cache = self.__dict__.setdefault("_lvl", {})
        if level in cache:
            return cache[level]
        ranks = self.ranks()
        live = [k for k, r in ranks.items() if r >= level]
        fams = [f for f in self.families if (self.family_rank(f) or 0) >= level
                and self.family_rank(f) is not None]
        if self.side == "right":
            L = self._exp_len()
            exps = sorted(rinf_expand(self.points[k], L) for k in live)
            lims = sorted({rinf_expand(x, L) for f in fams for _, x in f.limits})
            cache[level] = (live, exps, lims)
        else:
            lims = {lk: x for f in fams for lk, x in f.limits}
            cache[level] = (live, None, list(lims.values()))
        return cache[level]

    def _exp_len(self) -> int:
        if not hasattr(self, "_L"):
            self._L = max(len(u) + 4 * len(v) for u, v in self.points.values()) + 8
        return self._L

    def count_with_prefix(self, w: str, level: int):
        live, exps, lims = self._level_index(level)
        if len(w) > self._exp_len():
            raise ValueError("prefix longer than the stored expansions")
        i = bisect.bisect_left(lims, w)
        if i < len(lims) and lims[i].startswith(w):
            return "infinite"
        lo = bisect.bisect_left(exps, w)
        hi = bisect.bisect_right(exps, w + "\x7f")
        return hi - lo

    def count_with_window(self, w: str, level: int):
        live, _, lims = self._level_index(level)
        for x in lims:
            if w in _orbit_text(x, len(w))[0]:
                return "infinite"
        total = 0
        for k in live:
            x = self.points[k]
            text, lo, hi = _orbit_text(x, len(w))
            if x.periodic:
                p = len(x.left)
                total += sum(1 for i in range(p) if text.startswith(w, i))
                continue
            i = text.find(w)
            while i >= 0:
                if i + len(w) <= lo or i >= hi:
                    return "infinite"
                total += 1
                i = text.find(w, i + 1)
        return total

    def isolating_window(self, k, level: int) -> str | None:
        """A cylinder proving that point ``k`` is isolated at ``level``.

        Cylinders shrink as the window grows, so windows are tried with a
        doubling number of tail periods.
        """
        x = self.points[k]
        reps = 2
        while True:
            if self.side == "right":
                u, v = x
                if len(u) + reps * len(v) > self._exp_len():
                    return None
                w = rinf_expand(x, len(u) + reps * len(v) + 1)
                c = self.count_with_prefix(w, level)
            else:
                w = x.left * reps if x.periodic else x.left * reps + x.center + x.right * reps
                if len(w) > 4 * self._bi_len() + 8:
                    return None
                c = self.count_with_window(w, level)
            if c == 1:
                return w
            reps *= 2

    def _bi_len(self) -> int:
        if not hasattr(self, "_BL"):
            self._BL = max(len(x.left) + len(x.center) + len(x.right)
                           for x in self.points.values())
        return self._BL


def _orbit_text(x: BiInfWord, wlen: int):
    """Finite stretch of an orbit plus the bounds of its center."""
    a = -(-wlen // len(x.left)) + 1
    b = -(-wlen // len(x.right)) + 1
    text = x.left * a + x.center + x.right * b
    lo = len(x.left) * a
    return text, lo, lo + len(x.center)


# -- derivative and signature --------------------------------------------------


def count_with_prefix(p: SpacePresentation, w: str):
    if p.side != "right":
        raise ValueError("bi-infinite presentation: use count_with_window")
    return p.engine().count_with_prefix(w, p.level)


def count_with_window(p: SpacePresentation, w: str):
    if p.side != "bi":
        raise ValueError("right-infinite presentation: use count_with_prefix")
    return p.engine().count_with_window(w, p.level)


def points(p: SpacePresentation) -> set:
    eng = p.engine()
    return {k for k, r in eng.ranks().items() if r >= p.level}


def cb_derivative(p: SpacePresentation) -> SpacePresentation:
    """Remove isolated points, checking each removal against the cylinder oracle."""
    eng = p.engine()
    for k, r in eng.ranks().items():
        if r == p.level and eng.isolating_window(k, p.level) is None:
            raise ClosureViolation(f"point {eng.label(k)} has rank {r} but is not isolated")
    return p.with_level(p.level + 1)


@dataclass(frozen=True)
class Signature:
    gamma: Ordinal | None
    count: int
    verdict: str  # countable | cantor_detected | inconclusive
    detail: str = ""

    def __str__(self) -> str:
        if self.verdict == "countable":
            return f"countable({self.gamma},{self.count})"
        return self.verdict

    def to_dict(self) -> dict:
        return {"gamma": None if self.gamma is None else str(self.gamma),
                "count": self.count, "verdict": self.verdict}


def walk_cylinder_counts(depths=range(1, 9)) -> dict:
    """Distinct cylinders cut out by depth-d backward walks of the binary tree."""
    dom = WalkDomain()
    return {d: len({chain_word(v) for v in dom.vertices(d)}) for d in depths}


def top_count(p: SpacePresentation, gamma: int):
    eng = p.engine()
    top = [k for k, r in eng.ranks().items() if r == gamma]
    if p.side == "right":
        return len(top)
    total = 0
    for k in top:
        x = eng.points[k]
        if not x.periodic:
            return None
        total += len(x.left)
    return total


def space_signature(p: SpacePresentation, max_levels: int = 64) -> Signature:
    from .language import cantor_growth_test
    if p.has_walk:
        verdict = cantor_growth_test(walk_cylinder_counts())
        if verdict == "exponential":
            return Signature(None, 0, "cantor_detected", "walk cylinders double per depth")
        return Signature(None, 0, "inconclusive", f"walk growth {verdict}")
    q, last = p, None
    for _ in range(max_levels):
        if not points(q):
            break
        last = q
        q = cb_derivative(q)
    else:
        return Signature(None, 0, "inconclusive", "level budget exhausted")
    if last is None:
        return Signature(None, 0, "inconclusive", "empty presentation")
    n = top_count(last, last.level)
    if not n:
        return Signature(Ordinal.of(last.level), 0, "inconclusive", "non-periodic top orbit")
    return Signature(Ordinal.of(last.level), n, "countable")
