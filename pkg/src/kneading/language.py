"""Finite-prefix evidence for omega-limit and inhomogeneity languages, the
matching schema-side languages, and the cylinder growth classifier."""
from __future__ import annotations

import math

import numpy as np

from .schemas import (FreeDomain, PathDomain, SpacePresentation, VertexDomain,
                      WalkDomain, chain_word, expand_segments)
from .words import as_text

MAX_PACKED = 62


def default_cutoff(K) -> int:
    return len(as_text(K)) // 2


def occurs_infinitely_often(w: str, K, cutoff: int | None = None) -> str:
    s = as_text(K)
    if cutoff is None:
        cutoff = default_cutoff(s)
    if cutoff >= len(s):
        raise ValueError("cutoff must be below the horizon")
    if s.find(w, cutoff + 1) >= 0:
        return "yes_evidence"
    if len(s) >= cutoff + 2 * len(w):
        return "no_evidence"
    return "insufficient"


def _packed_windows(arr: np.ndarray, D: int) -> np.ndarray:
    """Integer codes of all length-D windows of a 0/1 array."""
    n = len(arr) - D + 1
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    for j in range(D):
        v = (v << 1) | arr[j:j + n]
    return v


def _decode(codes, D: int) -> set[str]:
    return {format(int(c), f"0{D}b") if D else "" for c in codes}


def _bits(s: str) -> np.ndarray:
    return (np.frombuffer(s.encode(), np.uint8) - 48).astype(np.int64)


def window_set(texts, D: int) -> set[str]:
    """All length-D factors of the given 0/1 strings."""
    if D == 0:
        return {""}
    if D > MAX_PACKED:
        return {t[i:i + D] for t in texts for i in range(len(t) - D + 1)}
    codes = [np.unique(_packed_windows(_bits(t), D)) for t in texts if len(t) >= D]
    if not codes:
        return set()
    return _decode(np.unique(np.concatenate(codes)), D)


def omega_words(K, D: int, cutoff: int | None = None) -> set[str]:
    """Length-D words occurring past the cutoff."""
    s = as_text(K)
    if D > len(s) // 8:
        raise ValueError("D must be at most horizon/8")
    if cutoff is None:
        cutoff = default_cutoff(s)
    return window_set([s[cutoff + 1:]], D)


def central_cylinders(K, M: int, cutoff: int | None = None) -> set[str]:
    s = as_text(K)
    if 2 * M + 1 > len(s) // 8:
        raise ValueError("2M+1 must be at most horizon/8")
    return omega_words(s, 2 * M + 1, cutoff)


def first_position(K, w: str, cutoff: int) -> int | None:
    i = as_text(K).find(w, cutoff + 1)
    return None if i < 0 else i


# -- schema-side languages ----------------------------------------------------


def _assignments(p: SpacePresentation, schema, slot_budget: int):
    """Instances for language purposes: free slots up to ``slot_budget``; a
    leading free power only at its maximum (smaller ones are suffixes)."""
    import itertools
    lead = None
    first = schema.segments[0]
    if first.kind == "pow" and isinstance(p.domains.get(first.slot), FreeDomain):
        lead = first.slot
    pools = []
    for s in schema.slots:
        dom = p.domains[s]
        if isinstance(dom, FreeDomain):
            pools.append([slot_budget] if s == lead else list(range(slot_budget + 1)))
        else:
            pools.append(dom.values())
    for combo in itertools.product(*pools):
        a = dict(zip(schema.slots, combo))
        if schema.constraint is None or schema.constraint(a):
            yield a
        elif lead is not None:
            # the constraint may cap the leading power; fall back to the cap
            for n in range(slot_budget, -1, -1):
                b = {**a, lead: n}
                if schema.constraint(b):
                    yield b
                    break


def _walk_texts(schema, D: int) -> list[str]:
    depth = max(1, math.ceil(math.log2(D + 2)))
    dom = WalkDomain()
    pad = "1" * (D + 1)
    out = [pad + "0" + pad]
    for d in range(depth + 1):
        for v in dom.vertices(d):
            out.append(pad + chain_word(v) + pad)
    return out


def schema_texts(p: SpacePresentation, D: int, slot_budget: int) -> list[str]:
    """Finite stretches whose length-D factors are the presentation's language."""
    texts = []
    for schema in p.schemas:
        segs = schema.segments
        if any(s.kind == "walk" for s in segs):
            texts += _walk_texts(schema, D)
            continue
        tailR = segs[-1].word
        tailL = segs[0].word if p.side == "bi" else ""
        body = segs[1:-1] if p.side == "bi" else segs[:-1]
        nR = -(-D // len(tailR)) + 1
        nL = -(-D // len(tailL)) + 1 if tailL else 0
        seen = set()
        for a in _assignments(p, schema, slot_budget):
            t = tailL * nL + expand_segments(body, a) + tailR * nR
            if t not in seen:
                seen.add(t)
                texts.append(t)
    return texts


def schema_words(p: SpacePresentation, D: int, slot_budget: int) -> set[str]:
    if slot_budget < 1:
        raise ValueError("slot_budget must be >= 1")
    if not p.schemas:
        return set()
    return window_set(schema_texts(p, D, slot_budget), D)


# -- growth ----------------------------------------------------------------------

DELTA = 0.1


def cantor_growth_test(counts: dict, delta: float = DELTA) -> str:
    """Classify per-depth cylinder counts as exponential or polynomial.

    Exponential: every successive ratio is at least 1+delta and the ratios do
    not decay (late ratios keep up with early ones).  Polynomial: the
    ratios sink toward 1 while the log-log slope stays bounded.
    """
    if len(counts) < 6:
        raise ValueError("need counts at >= 6 depths")
    depths = sorted(counts)
    c = [counts[d] for d in depths]
    if min(c) <= 0:
        return "inconclusive"
    r = [b / a for a, b in zip(c, c[1:])]
    half = len(r) // 2
    early, late = sum(r[:half]) / half, sum(r[half:]) / (len(r) - half)
    if min(r) >= 1 + delta and late >= early * (1 - delta):
        return "exponential"
    if min(depths) > 0:
        slopes = [math.log(b / a) / math.log(d2 / d1)
                  for (d1, a), (d2, b) in zip(zip(depths, c), zip(depths[1:], c[1:]))]
        if late <= early + 1e-12 and max(slopes) <= 8:
            return "polynomial"
    elif late <= early + 1e-12 and r[-1] < 1 + 4 * delta:
        return "polynomial"
    return "inconclusive"
