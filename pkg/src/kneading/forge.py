"""Kneading sequences K, K' built from well-founded trees, the binary-tree
sequence with countable omega-limit set but Cantor inhomogeneities, word
tables that realize prescribed top counts, and the feasibility table.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from functools import cached_property

from .ordinals import Ordinal
from .trees import WFTree, Labeling, build_tree, label_tree, enumerate_path_labels
from .schemas import binary_path, section7_B
from .words import SymbolStream, max_zero_run_closure, check_word

KINDS = ("K_with_V", "K_prime", "section7")


class Infeasible(ValueError):
    pass


# -- feasibility -------------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityQuery:
    alpha: Ordinal
    beta: Ordinal
    n: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", Ordinal.of(self.alpha))
        object.__setattr__(self, "beta", Ordinal.of(self.beta))
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")


def _small_table(n: int, m: int) -> str | None:
    """Shared n=1 / n=2 clauses; returns the violated clause or None."""
    if n == 1 and m == 2:
        return "n=1 requires m != 2"
    if n == 2 and (m < 2 or m == 4):
        return "n=2 requires 2 <= m != 4"
    return None


def infeasibility_reason(q: FeasibilityQuery) -> str | None:
    a, b, n, m = q.alpha, q.beta, q.n, q.m
    if a.is_zero:
        if not b.is_zero:
            return "alpha=0 forces beta=0"
        if m != n:
            return "alpha=0 forces m=n"
        return None
    if b < a:
        return "alpha must not exceed beta"
    one = Ordinal.of(1)
    if a == b:
        why = _small_table(n, m)
        if why:
            return why
        if n >= 3 and m < n:
            return "alpha=beta with n>=3 requires m>=n"
        return None
    if a == one:
        why = _small_table(n, m)
        if why:
            return why
        if n == 4 and m == 2:
            return "alpha=1<beta with n=4 requires m != 2"
        return None
    return None


def feasible(q: FeasibilityQuery) -> bool:
    return infeasibility_reason(q) is None


# -- word tables -------------------------------------------------------------


@dataclass(frozen=True)
class WordChoice:
    U: str
    V: str | None
    W: str
    kind: str


def _ones(k: int) -> str:
    return "1" * k


def _uvw_table(beta_is_one: bool, n: int, m: int) -> tuple[str, str, str]:
    if n == 1:
        return "1", "1", "1" if m == 1 else "0" + _ones(m - 2)
    if n == 2:
        if m == 2:
            return "01", "01", "01"
        if m == 3:
            return "01", "01", "1"
        return "01", "01", "0" + _ones(m - 3)
    if beta_is_one:
        U = "0" + _ones(n - 1)
        if m == n:
            return U, U, U
        if m == n + 1:
            return U, U, "1"
        if m == n + 2:
            return U, U, "01"
        return U, U, "00" + _ones(m - n - 2)
    if n == 4:
        if m == 1:
            return "1", "011", "1"
        if m == 3:
            return "011", "1", "011"
        U = "0111"
        W = {4: U, 5: "1", 6: "01"}.get(m) or "00" + _ones(m - 6)
        return U, U, W
    if n == 3:
        if m == 1:
            return "1", "01", "1"
        if m == 2:
            return "01", "1", "01"
        U = "011"
        W = {3: U, 4: "1", 5: "01"}.get(m) or "00" + _ones(m - 5)
        return U, U, W
    if m >= n:
        U = "00" + _ones(n - 2)
        if m == n:
            return U, U, U
        if m == n + 1:
            return U, U, "1"
        return U, U, "0" + _ones(m - n - 1)
    if m == 1:
        return "1", "0" + _ones(n - 2), "1"
    if m == 2:
        return "01", "00" + _ones(n - 4), "01"
    U = "00" + _ones(m - 2)
    # n-m=1 would give V="0", a word without 1; "1" has the same length
    V = "0" + _ones(n - m - 1) if n - m > 1 else "1"
    return U, V, U


def _uw_table(equal: bool, n: int, m: int) -> tuple[str, str]:
    if equal:
        if n == 1:
            return "1", "1" if m == 1 else "0" + _ones(m - 2)
        if n == 2:
            return "01", {2: "01", 3: "1"}.get(m) or "0" + _ones(m - 3)
        U = "00" + _ones(n - 2)
        if m == n:
            return U, U
        if m == n + 1:
            return U, "1"
        return U, "0" + _ones(m - n - 1)
    # alpha < beta: only the lengths matter for the top counts
    U = "1" if n == 1 else "0" + _ones(n - 1)
    W = {1: "1", 2: "01"}.get(m) or "00" + _ones(m - 2)
    return U, W


def select_words(alpha, beta, n: int, m: int) -> WordChoice:
    q = FeasibilityQuery(alpha, beta, n, m)
    why = infeasibility_reason(q)
    if why:
        raise Infeasible(why)
    if q.alpha.is_zero:
        raise Infeasible("alpha=0 has no sequence construction")
    if q.alpha == Ordinal.of(1):
        U, V, W = _uvw_table(q.beta == Ordinal.of(1), n, m)
        return WordChoice(U, V, W, "K_with_V")
    U, W = _uw_table(q.alpha == q.beta, n, m)
    return WordChoice(U, None, W, "K_prime")


# -- spacers and schedule ----------------------------------------------------


def compute_spacer(words) -> str:
    r = max_zero_run_closure(words) + 1
    return "1" + "0" * r + "1"


def fair_index(k: int) -> int:
    """Ruler sequence: 1 + the 2-adic valuation of k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (k & -k).bit_length()


# -- construction parameters -------------------------------------------------


@dataclass(frozen=True)
class ConstructionParams:
    alpha: Ordinal
    beta: Ordinal
    kind: str
    U: str = ""
    V: str = ""
    W: str = ""
    B: str = ""
    A: str = ""
    budget: int = 4
    n: int = 0
    m: int = 0
    n_seq_offset: int = 2  # section7: n_i = i + offset
    schedule: str = "ruler"

    def __post_init__(self):
        object.__setattr__(self, "alpha", Ordinal.of(self.alpha))
        object.__setattr__(self, "beta", Ordinal.of(self.beta))
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.kind == "section7":
            return
        if self.alpha < 1 or self.beta < self.alpha:
            raise ValueError("need 1 <= alpha <= beta")
        used = [self.B, self.U, self.W] + ([self.V] if self.kind == "K_with_V" else [])
        for w in used:
            check_word(w, allow_star=False)
            if "1" not in w:
                raise ValueError(f"word {w!r} must contain a 1")
        r = len(self.A) - 2
        if self.A != "1" + "0" * r + "1" or r <= max_zero_run_closure(used):
            raise ValueError("A must be 10^r1 with r above every zero run of the words")

    @classmethod
    def for_tuple(cls, alpha, beta, n: int, m: int, budget: int = 4) -> "ConstructionParams":
        wc = select_words(alpha, beta, n, m)
        words = [wc.U, wc.W] + ([wc.V] if wc.V else [])
        B = "1" + "0" * (max_zero_run_closure(words) + 1) + "1"
        A = compute_spacer(words + [B])
        return cls(alpha, beta, wc.kind, wc.U, wc.V or "", wc.W, B, A, budget, n, m)

    @classmethod
    def section7(cls, offset: int = 2) -> "ConstructionParams":
        return cls(Ordinal.of(1), Ordinal.of(1), "section7", A="10001", n_seq_offset=offset)

    @cached_property
    def tree_even(self) -> tuple[WFTree, Labeling]:
        t = build_tree(self.alpha, self.budget)
        return t, label_tree(t, "even")

    @cached_property
    def tree_odd(self) -> tuple[WFTree, Labeling]:
        t = build_tree(self.beta, self.budget)
        return t, label_tree(t, "odd")

    @cached_property
    def Lambda(self) -> list[tuple[int, ...]]:
        t, lab = self.tree_even
        return enumerate_path_labels(t, lab, len(t))[0]

    @cached_property
    def Gamma(self) -> list[tuple[int, ...]]:
        t, lab = self.tree_odd
        return enumerate_path_labels(t, lab, len(t))[0]

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k not in ("alpha", "beta")}
        d["alpha"] = str(self.alpha)
        d["beta"] = str(self.beta)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ConstructionParams":
        d = dict(d)
        d.pop("tool_version", None)
        d.pop("length", None)
        return cls(**d)

    def sidecar(self, length: int) -> str:
        from . import __version__
        d = self.to_dict()
        d["length"] = length
        d["tool_version"] = __version__
        return json.dumps(d, indent=2, sort_keys=True)


# -- block words --------------------------------------------------------------


def path_block(B: str, w: str, labels, reverse: bool = False) -> str:
    """``B w^l1 B w^l2 B ... B w^lk B`` (labels reversed when asked)."""
    if not labels:
        raise ValueError("empty path label")
    seq = reversed(labels) if reverse else labels
    return B + "".join(w * p + B for p in seq)


@dataclass(frozen=True)
class BlockWords:
    """Indexed block words; indices are 1-based and wrap over the stored paths."""

    params: ConstructionParams

    def _pick(self, paths, i):
        return paths[(i - 1) % len(paths)]

    def U_i(self, i):
        return path_block(self.params.B, self.params.U, self._pick(self.params.Lambda, i))

    def V_i(self, i):
        return path_block(self.params.B, self.params.V, self._pick(self.params.Lambda, i))

    def Uhat_i(self, i):
        return path_block(self.params.B, self.params.U, self._pick(self.params.Gamma, i), True)

    def W_i(self, i):
        return path_block(self.params.B, self.params.W, self._pick(self.params.Gamma, i), True)


def build_block_words(params: ConstructionParams) -> BlockWords:
    return BlockWords(params)


def _assemble(head: str, blocks, length: int) -> str:
    parts, total = [head], len(head)
    for blk in blocks:
        if total >= length:
            break
        parts.append(blk)
        total += len(blk)
    return "".join(parts)[:length]


def build_K_prefix(params: ConstructionParams, length: int) -> SymbolStream:
    if params.kind != "K_with_V":
        raise ValueError("build_K_prefix needs kind K_with_V")
    AA = params.A * 2
    if length < len(AA):
        raise ValueError("length shorter than AA")
    bw = build_block_words(params)
    U, V, W = params.U, params.V, params.W

    def blocks():
        k = 1
        while True:
            i = fair_index(k)
            yield U * k + bw.U_i(i) + U * k
            yield V * k + bw.V_i(i) + V * k
            yield U * k + bw.Uhat_i(i) + W * k
            k += 1

    return SymbolStream(_assemble(AA, blocks(), length), tag="K")


def build_Kprime_prefix(params: ConstructionParams, length: int) -> SymbolStream:
    if params.kind != "K_prime":
        raise ValueError("build_Kprime_prefix needs kind K_prime")
    AA = params.A * 2
    if length < len(AA):
        raise ValueError("length shorter than AA")
    bw = build_block_words(params)
    U, W = params.U, params.W

    def blocks():
        k = 1
        while True:
            i = fair_index(k)
            yield U * k + bw.U_i(i) + U * k
            yield W * k + bw.W_i(i) + W * k
            k += 1

    return SymbolStream(_assemble(AA, blocks(), length), tag="K_prime")


# -- binary-tree sequence ------------------------------------------------------


def build_section7_prefix(n_seq, length: int, A: str = "10001") -> SymbolStream:
    """``AA 1^{n_1} B_1 1^{n_2} B_2 B_1 1^{n_3} B_3 B_1 ...`` cut at ``length``.

    ``n_seq`` is a strictly increasing sequence, or a callable i -> n_i.
    """
    if length < 10:
        raise ValueError("length must be >= 10")
    nf = n_seq if callable(n_seq) else (lambda i, s=list(n_seq): s[i - 1])

    def blocks():
        i, prev = 1, None
        while True:
            try:
                ni = nf(i)
            except IndexError:
                raise ValueError("n_seq too short for the requested length") from None
            if prev is not None and ni <= prev:
                raise ValueError("n_seq must be strictly increasing")
            prev = ni
            yield "1" * ni + "".join(section7_B(j) for j in binary_path(i))
            i += 1

    return SymbolStream(_assemble(A * 2, blocks(), length), tag="section7")


def build_prefix(params: ConstructionParams, length: int) -> SymbolStream:
    if params.kind == "K_with_V":
        return build_K_prefix(params, length)
    if params.kind == "K_prime":
        return build_Kprime_prefix(params, length)
    off = params.n_seq_offset
    return build_section7_prefix(lambda i: i + off, length, params.A)


# -- predicted presentations ---------------------------------------------------


def predicted_presentation(params: ConstructionParams, slot_budget: int | None = None):
    """(omega, inhom) schema presentations listed by the structure claims."""
    from .schemas import (FreeDomain, PathDomain, PointSchema, SpacePresentation,
                          VertexDomain, WalkDomain, fixed, chain, ltail, path, pw,
                          rtail, walk)
    if slot_budget is None:
        longest = max(len(w) for w in (params.U, params.V, params.W, params.B, "1"))
        slot_budget = 2 * longest + 8
    tag = f"{params.kind}:alpha={params.alpha},beta={params.beta},n={params.n},m={params.m}"
    if params.kind == "section7":
        verts = tuple(v for v in range(3, 64) if v & (v - 1))
        omega = SpacePresentation("right", [
            PointSchema("1^inf", (rtail("1"),)),
            PointSchema("1^k01^inf", (pw("1", "k"), fixed("0"), rtail("1"))),
            PointSchema("1^k0 B-chain", (pw("1", "k"), fixed("0"), pw("1", "v"), chain("v"), rtail("1")),
                        constraint=lambda a: a["k"] <= 2 * a["v"] + 2),
        ], {"k": FreeDomain(slot_budget), "v": VertexDomain(verts)}, provenance=tag + ":omega")
        inhom = SpacePresentation("bi", [
            PointSchema("1^Z", (ltail("1"), rtail("1"))),
            PointSchema("1^-inf.01^inf", (ltail("1"), fixed("0"), rtail("1"))),
            PointSchema("B_gamma.1^inf", (walk("g"), rtail("1"))),
        ], {"g": WalkDomain()}, provenance=tag + ":inhom")
        return omega, inhom

    U, V, W, B = params.U, params.V, params.W, params.B
    doms = {"n": FreeDomain(slot_budget),
            "lam": PathDomain.from_paths(params.Lambda),
            "gam": PathDomain.from_paths(params.Gamma)}
    S = PointSchema
    if params.kind == "K_with_V":
        om = [S("U^inf", (rtail(U),)), S("V^inf", (rtail(V),)), S("W^inf", (rtail(W),)),
              S("W^nU^inf", (pw(W, "n"), rtail(U))), S("U^nV^inf", (pw(U, "n"), rtail(V))),
              S("V^nU^inf", (pw(V, "n"), rtail(U))),
              S("U^n U_lam U^inf", (pw(U, "n"), path(U, B, "lam"), rtail(U))),
              S("V^n V_lam V^inf", (pw(V, "n"), path(V, B, "lam"), rtail(V))),
              S("U^n Uhat_gam W^inf", (pw(U, "n"), path(U, B, "gam", True), rtail(W)))]
        ih = [S("U^Z", (ltail(U), rtail(U))), S("V^Z", (ltail(V), rtail(V))),
              S("W^Z", (ltail(W), rtail(W))),
              S("W^-inf.U^inf", (ltail(W), rtail(U))), S("U^-inf.V^inf", (ltail(U), rtail(V))),
              S("V^-inf.U^inf", (ltail(V), rtail(U))),
              S("U^-inf U_lam.U^inf", (ltail(U), path(U, B, "lam"), rtail(U))),
              S("V^-inf V_lam.V^inf", (ltail(V), path(V, B, "lam"), rtail(V))),
              S("U^-inf Uhat_gam.W^inf", (ltail(U), path(U, B, "gam", True), rtail(W)))]
    else:
        om = [S("U^inf", (rtail(U),)), S("W^inf", (rtail(W),)),
              S("W^nU^inf", (pw(W, "n"), rtail(U))), S("U^nW^inf", (pw(U, "n"), rtail(W))),
              S("U^n U_lam U^inf", (pw(U, "n"), path(U, B, "lam"), rtail(U))),
              S("W^n W_gam W^inf", (pw(W, "n"), path(W, B, "gam", True), rtail(W)))]
        ih = [S("U^Z", (ltail(U), rtail(U))), S("W^Z", (ltail(W), rtail(W))),
              S("W^-inf.U^inf", (ltail(W), rtail(U))), S("U^-inf.W^inf", (ltail(U), rtail(W))),
              S("U^-inf U_lam.U^inf", (ltail(U), path(U, B, "lam"), rtail(U))),
              S("W^-inf W_gam.W^inf", (ltail(W), path(W, B, "gam", True), rtail(W)))]
    ih_doms = {k: v for k, v in doms.items() if k != "n"}
    return (SpacePresentation("right", om, doms, provenance=tag + ":omega"),
            SpacePresentation("bi", ih, ih_doms, provenance=tag + ":inhom"))
