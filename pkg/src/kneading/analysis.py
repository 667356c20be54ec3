"""Verification harness: claimed top counts, prefix-vs-schema language
checks, projection rank transport and the eventually periodic case."""
from __future__ import annotations

import csv
import io
import json
import re
import warnings
from dataclasses import dataclass, field

from .cb import space_signature
from .forge import ConstructionParams, build_prefix, predicted_presentation
from .language import (central_cylinders, default_cutoff, first_position,
                       omega_words, schema_texts, schema_words)
from .schemas import (FreeDomain, PointSchema, SpacePresentation, fixed, ltail, pw,
                      rinf, rinf_drop, rtail)
from .words import (BiInfWord, as_text, min_rotation, primitive_root, rotate,
                    word_conjugate_equiv)


class AmbiguousTable(UserWarning):
    pass


def _plen(w: str) -> int:
    r = primitive_root(w)
    if len(r) != len(w):
        warnings.warn(f"{w!r} is not primitive; using |{r}|", stacklevel=3)
    return len(r)


def expected_top_count(U: str, V: str | None, W: str, kind: str, space: str,
                       alpha_eq_beta: bool) -> int:
    """Top count claimed for the omega-limit set or the inhomogeneities."""
    if space not in ("omega", "inhom"):
        raise ValueError("space must be 'omega' or 'inhom'")
    eq = word_conjugate_equiv
    u, w = _plen(U), _plen(W)
    if kind == "K_prime":
        if space == "omega":
            return u
        if not alpha_eq_beta:
            return w
        return u if eq(U, W) else u + w
    if kind != "K_with_V":
        raise ValueError(f"no count formula for kind {kind!r}")
    v = _plen(V)
    if space == "omega":
        return u if eq(U, V) else u + v
    if not alpha_eq_beta:
        return u if eq(U, W) else u + w
    rows = [(eq(U, V) and eq(V, W), u),
            (eq(U, W) or eq(V, W), u + v),
            (eq(U, V) or eq(W, V), u + w),
            (eq(V, U) or eq(W, U), v + w),
            (True, u + v + w)]
    hits = [val for ok, val in rows[:4] if ok]
    # rows 2-4 agree whenever their conditions hold; a clash means the
    # words are degenerate (row 1 failed yet two conditions disagree)
    if not rows[0][0] and len(set(hits)) > 1:
        warnings.warn(f"overlapping rows for U={U} V={V} W={W}: {hits}",
                      AmbiguousTable, stacklevel=2)
    return hits[0] if hits else u + v + w


def claimed_counts(params: ConstructionParams) -> tuple[int, int]:
    eq = params.alpha == params.beta
    V = params.V or None
    return (expected_top_count(params.U, V, params.W, params.kind, "omega", eq),
            expected_top_count(params.U, V, params.W, params.kind, "inhom", eq))


# -- language cross-check --------------------------------------------------------


def _provenance(p: SpacePresentation, word: str, slot_budget: int) -> str | None:
    for schema in p.schemas:
        sub = SpacePresentation(p.side, [schema], p.domains)
        if any(word in t for t in schema_texts(sub, len(word), slot_budget)):
            return schema.name
    return None


def _compare(emp, pred, K, cutoff, p, budget):
    diff = []
    for w in sorted(emp - pred):
        diff.append({"word": w, "side": "prefix_only",
                     "first_pos_past_cutoff": first_position(K, w, cutoff)})
    for w in sorted(pred - emp):
        diff.append({"word": w, "side": "schema_only", "first_pos_past_cutoff": None,
                     "schema": _provenance(p, w, budget)})
    return diff


@dataclass
class LanguageReport:
    tuple: dict
    length: int
    cutoff: int
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(not r["sym_diff"] for r in self.rows)

    def mismatches(self) -> list:
        return [r for r in self.rows if r["sym_diff"]]

    def to_dict(self) -> dict:
        return {"tuple": self.tuple, "length": self.length, "cutoff": self.cutoff,
                "ok": self.ok, "rows": self.rows}


def cross_check_languages(params: ConstructionParams, D_max: int = 10,
                          length: int = 1_000_000, K=None, cutoff: int | None = None,
                          M_max: int | None = None, presentations=None) -> LanguageReport:
    """Compare prefix languages with the predicted presentations.

    Omega words are compared for D = 1..D_max, central cylinders for radii
    M = 0..M_max (default D_max // 2).
    """
    K = as_text(K if K is not None else build_prefix(params, length))
    cutoff = default_cutoff(K) if cutoff is None else cutoff
    om, ih = presentations or predicted_presentation(params)
    M_max = D_max // 2 if M_max is None else M_max
    rep = LanguageReport({"kind": params.kind, "alpha": str(params.alpha),
                          "beta": str(params.beta), "n": params.n, "m": params.m},
                         len(K), cutoff)
    for D in range(1, D_max + 1):
        budget = D + 2
        emp, pred = omega_words(K, D, cutoff), schema_words(om, D, budget)
        rep.rows.append({"space": "omega", "D": D, "empirical": len(emp),
                         "predicted": len(pred),
                         "sym_diff": _compare(emp, pred, K, cutoff, om, budget)})
    for M in range(0, M_max + 1):
        D = 2 * M + 1
        budget = D + 2
        emp, pred = central_cylinders(K, M, cutoff), schema_words(ih, D, budget)
        rep.rows.append({"space": "inhom", "M": M, "D": D, "empirical": len(emp),
                         "predicted": len(pred),
                         "sym_diff": _compare(emp, pred, K, cutoff, ih, budget)})
    return rep


# -- projection ------------------------------------------------------------------


@dataclass
class ProjectionReport:
    projection_failures: list = field(default_factory=list)
    lift_failures: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    top_omega: int = 0
    top_inhom: int = 0

    @property
    def ok(self) -> bool:
        return (not self.projection_failures and not self.lift_failures
                and self.top_omega <= self.top_inhom)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "projection_failures": self.projection_failures,
                "lift_failures": self.lift_failures,
                "witnesses": {str(k): v for k, v in sorted(self.witnesses.items(), key=str)},
                "top_omega": self.top_omega, "top_inhom": self.top_inhom}


def _right_halves(x: BiInfWord):
    """Right halves starting one left period before the center up to its start."""
    for s in range(len(x.left) + 1):
        lead = x.left[len(x.left) - s:] if s else ""
        yield rinf(lead + x.center, x.right)


def projection_rank_check(inhom: SpacePresentation, omega: SpacePresentation) -> ProjectionReport:
    """(a) right halves of inhomogeneity points are omega points; (b) every
    omega point lifts to a bi-infinite point of at least its rank; (c) the
    top omega rank does not exceed the top inhomogeneity rank."""
    ei, eo = inhom.engine(), omega.engine()
    ri, ro = ei.ranks(), eo.ranks()
    rep = ProjectionReport(top_omega=max(ro.values(), default=0),
                           top_inhom=max(ri.values(), default=0))
    # the omega set is shift invariant; close the stored points under drops
    closed = set()
    for u, v in eo.points.values():
        closed.update(rinf_drop((u, v), d) for d in range(len(u) + len(v)))
    for k, x in sorted(ei.points.items(), key=lambda kv: str(kv[0])):
        for h in _right_halves(x):
            if h not in closed:
                rep.projection_failures.append({"point": str(x), "half": f"{h[0]}({h[1]})^inf"})
                break
    # a right half of an orbit is a suffix of its canonical right-infinite
    # form once the left tail is unrolled past every stored omega prefix
    reach = max((len(u) for u, _ in eo.points.values()), default=0) + 1
    by_tail: dict = {}
    for k, x in ei.points.items():
        t, v = rinf(x.left * (1 + reach // len(x.left)) + x.center, x.right)
        by_tail.setdefault(min_rotation(v), []).append((t, v, ri[k], str(x)))
    for k in sorted(eo.points):
        u, v = eo.points[k]
        best = None
        for t, tv, r, name in by_tail.get(min_rotation(v), ()):
            hit = t.endswith(u) and tv == v if u else True
            if hit and (best is None or r > best[1]):
                best = (name, r)
        need = ro[k]
        if best is None or best[1] < need:
            rep.lift_failures.append({"point": eo.label(k), "rank": need,
                                      "best_lift": best})
        else:
            rep.witnesses[eo.label(k)] = best[0]
    return rep


# -- eventually periodic omega-limit sets ----------------------------------------


class NotHeightOne(ValueError):
    """The prefix does not look like periodic runs joined by bounded connectors."""


@dataclass
class FiniteOmegaReport:
    periodic: list
    connector_bound: int
    transitions: list
    omega_signature: str
    inhom_signature: str
    language_ok: bool
    language_rows: list

    @property
    def ok(self) -> bool:
        return self.language_ok and self.omega_signature == self.inhom_signature

    def to_dict(self) -> dict:
        return {"ok": self.ok, "periodic": self.periodic,
                "connector_bound": self.connector_bound, "transitions": self.transitions,
                "omega_signature": self.omega_signature,
                "inhom_signature": self.inhom_signature,
                "language_ok": self.language_ok, "language_rows": self.language_rows}


def _runs(tail: str, words: list[str], min_reps: int):
    alts = sorted({rotate(w, r) for w in words for r in range(len(w))}, key=len, reverse=True)
    pat = re.compile("|".join(f"(?:{re.escape(a)}){{{min_reps},}}" for a in alts))
    return [(m.start(), m.end(), m.group()) for m in pat.finditer(tail)]


def _period_of(run: str, words, end: int) -> str:
    for P in words:
        piece = run[-len(P):] if end else run[:len(P)]
        if (len(run) % len(P) == 0 and word_conjugate_equiv(piece, P)
                and run == piece * (len(run) // len(P))):
            return piece
    raise NotHeightOne(f"run {run[:20]} matches no periodic word")


def finite_omega_case(periodic_words, K, cutoff: int | None = None,
                      min_reps: int = 3, M_max: int = 5) -> FiniteOmegaReport:
    """Check a prefix whose tail is built from finitely many periodic runs.

    Raises :class:`NotHeightOne` when the connectors between runs grow (the
    longest connector is named) or when no periodic word is given.
    """
    words = sorted({primitive_root(w) for w in periodic_words})
    if not words:
        raise NotHeightOne("no periodic words given")
    s = as_text(K)
    cutoff = default_cutoff(s) if cutoff is None else cutoff
    tail = s[cutoff + 1:]
    runs = _runs(tail, words, min_reps)
    if len(runs) < 3:
        raise NotHeightOne("fewer than three periodic runs past the cutoff")
    # the first and last runs may be cut by the window
    conns = []
    for (a0, a1, g0), (b0, b1, g1) in zip(runs, runs[1:]):
        conns.append((a1, tail[a1:b0], g0, g1, a1 + cutoff + 1))
    half = len(tail) // 2
    early = max((len(c) for e, c, *_ in conns if e < half), default=0)
    late = max(((len(c), p, c) for e, c, _, _, p in conns if e >= half), default=(0, None, ""))
    if late[0] > early:
        raise NotHeightOne(f"connectors grow: length {late[0]} at position {late[1]}"
                           f" (earlier bound {early})")
    bound = max(early, late[0])
    seen, trans = set(), []
    for _, c, g0, g1, _ in conns:
        key = (_period_of(g0, words, -1), c, _period_of(g1, words, 0))
        if key not in seen:
            seen.add(key)
            trans.append(key)
    upper = 2 * max(len(x) for t in trans for x in t) + 8
    om = [PointSchema(f"({P})^inf", (rtail(P),)) for P in words]
    ih = [PointSchema(f"({P})^Z", (ltail(P), rtail(P))) for P in words]
    for i, (L, c, R) in enumerate(trans):
        om.append(PointSchema(f"t{i}", (pw(L, "n"), fixed(c), rtail(R))))
        ih.append(PointSchema(f"T{i}", (ltail(L), fixed(c), rtail(R))))
    omega = SpacePresentation("right", om, {"n": FreeDomain(upper)}, provenance="finite:omega")
    inhom = SpacePresentation("bi", ih, {}, provenance="finite:inhom")
    rows, ok = [], True
    for M in range(M_max + 1):
        D = 2 * M + 1
        if D > len(s) // 8:
            break
        emp, pred = central_cylinders(s, M, cutoff), schema_words(inhom, D, D + 2)
        diff = _compare(emp, pred, s, cutoff, inhom, D + 2)
        ok = ok and not diff
        rows.append({"M": M, "empirical": len(emp), "predicted": len(pred), "sym_diff": diff})
    return FiniteOmegaReport(words, bound, [list(t) for t in trans],
                             str(space_signature(omega)), str(space_signature(inhom)),
                             ok, rows)


# -- report serialization --------------------------------------------------------


def to_json(obj) -> str:
    if hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


def counts_csv(counts: dict, key: str = "depth") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([key, "count"])
    for d in sorted(counts):
        w.writerow([d, counts[d]])
    return buf.getvalue()
