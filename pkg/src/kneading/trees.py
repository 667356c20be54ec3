"""Budget-truncated well-founded trees of prescribed height and their
even/odd node labelings.

Nodes are tuples of child indices, the root is ``()``.  The ideal trees are
infinitely branching; a stored tree keeps ``budget`` children per successor
node and the first ``budget`` fundamental-sequence subtrees per limit node,
and every node remembers the height it has in the ideal tree.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .ordinals import Ordinal, OrdinalRangeError

Node = tuple


class UnknownNode(KeyError):
    pass


@dataclass(frozen=True)
class WFTree:
    alpha: Ordinal
    budget: int
    intended: dict = field(repr=False)  # node -> Ordinal
    children: dict = field(repr=False)  # node -> tuple of child nodes

    def __contains__(self, node) -> bool:
        return tuple(node) in self.intended

    def __len__(self) -> int:
        return len(self.intended)

    def nodes_bfs(self) -> list[Node]:
        out, queue = [], deque([()])
        while queue:
            v = queue.popleft()
            out.append(v)
            queue.extend(self.children[v])
        return out

    def intended_height(self, node) -> Ordinal:
        try:
            return self.intended[tuple(node)]
        except KeyError:
            raise UnknownNode(node) from None

    def to_json(self) -> str:
        return json.dumps({
            "alpha": self.alpha.to_json(),
            "budget": self.budget,
            "nodes": [{"path": list(v), "height": self.intended[v].to_json()}
                      for v in self.nodes_bfs()],
        })

    @classmethod
    def from_json(cls, text: str) -> "WFTree":
        data = json.loads(text)
        intended = {tuple(n["path"]): Ordinal.from_json(n["height"]) for n in data["nodes"]}
        children = {v: [] for v in intended}
        for v in intended:
            if v:
                children[v[:-1]].append(v)
        return cls(Ordinal.from_json(data["alpha"]), data["budget"], intended,
                   {v: tuple(sorted(c)) for v, c in children.items()})


MAX_NODES = 2_000_000


def build_tree(alpha, budget: int) -> WFTree:
    """Truncated tree of height ``alpha`` (< w^w) with ``budget`` branching."""
    alpha = Ordinal.of(alpha)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    intended: dict = {}
    children: dict = {}

    def grow(node: Node, height: Ordinal):
        if len(intended) > MAX_NODES:
            raise OrdinalRangeError("tree too large for the node cap")
        intended[node] = height
        if height.is_zero:
            kids = []
        elif height.is_successor:
            kids = [height.predecessor()] * budget
        else:
            kids = [height.fundamental(k) for k in range(1, budget + 1)]
        children[node] = tuple(node + (i,) for i in range(len(kids)))
        for i, h in enumerate(kids):
            grow(node + (i,), h)

    grow((), alpha)
    return WFTree(alpha, budget, intended, children)


def node_height(tree: WFTree, node) -> Ordinal:
    """Height computed from the stored children (a lower bound on truncations)."""
    node = tuple(node)
    if node not in tree.intended:
        raise UnknownNode(node)
    best = Ordinal()
    for c in tree.children[node]:
        h = node_height(tree, c).successor()
        if best < h:
            best = h
    return best


@dataclass(frozen=True)
class Labeling:
    phi: dict  # node -> label
    parity: str

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")
        object.__setattr__(self, "inverse", {v: k for k, v in self.phi.items()})

    def labels(self) -> set[int]:
        return set(self.phi.values())

    def node_of(self, p: int) -> Node:
        try:
            return self.inverse[p]
        except KeyError:
            raise UnknownNode(f"label {p} is not used by this labeling") from None


def label_tree(tree: WFTree, parity: str = "even") -> Labeling:
    """Label proper nodes breadth-first with 2,4,6,... or 1,3,5,..."""
    start = 2 if parity == "even" else 1
    proper = tree.nodes_bfs()[1:]
    return Labeling({v: start + 2 * i for i, v in enumerate(proper)}, parity)


def enumerate_path_labels(tree: WFTree, lab: Labeling, count: int):
    """First ``count`` descending paths from the root as label tuples.

    Every proper node ends exactly one path, so paths are listed in the
    breadth-first order of their last node (depth first, then BFS order).
    Returns ``(paths, truncated)``; ``truncated`` is set when fewer than
    ``count`` paths are stored.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    paths = []
    for v in tree.nodes_bfs()[1:]:
        paths.append(tuple(lab.phi[v[:i]] for i in range(1, len(v) + 1)))
        if len(paths) == count:
            return paths, False
    return paths, True


def node_rank_of_label(tree: WFTree, lab: Labeling, p: int) -> Ordinal:
    return tree.intended_height(lab.node_of(p))
