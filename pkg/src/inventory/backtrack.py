"""Backtracking trees over mature core adjectives.

Once an orbit is mature its core adjectives R_j live among eight small
multisets and, given which values make their first appearance, R_j alone
determines R_{j+1}.  Running that rule backwards from a target edge and
discarding any history in which a value appears before its first appearance
bounds how often the edge can recur.

Large values are kept symbolic as ``n - c`` where n = |mu(S_i)| at the root
generation; every such value is assumed to exceed every constant, which holds
once n >= ``BacktrackTree.valid_from``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Union

from . import dot
from .adjectives import MATURE_CORES
from .errors import BudgetExceeded, PreconditionError
from .multiset import EMPTY, Multiset, parse_notation

MATURITY_N = 8


@dataclass(frozen=True, order=True)
class Const:
    k: int

    def __str__(self) -> str:
        return str(self.k)


@dataclass(frozen=True)
class NMinus:
    """The value n - c."""

    c: int

    def __lt__(self, other: "SymElem") -> bool:
        if isinstance(other, Const):
            return False
        return self.c > other.c

    def __str__(self) -> str:
        if self.c == 0:
            return "n"
        return f"n-{self.c}" if self.c > 0 else f"n+{-self.c}"


SymElem = Union[Const, NMinus]

TOP = "m"  # marks the top adjective in a set of new appearances


def core_label(R: Multiset) -> str:
    return str(R) or "empty"


def parse_core(text: str) -> Multiset:
    text = text.strip()
    return EMPTY if text in ("", "empty", "0", "{}") else parse_notation(text)


def mature_successor(R: Multiset, new: frozenset) -> Multiset:
    """R_{j+1} from R_j and the adjective values appearing for the first time.

    ``new`` holds elements of R and/or TOP.  An old value gains one from its
    noun occurrence; 1s drop into the ones and the top is recomputed.
    """
    vals = [m + (0 if x in new else 1) for x, m in R.items()]
    vals.append(1 + (0 if TOP in new else 1))
    return Multiset(v for v in vals if v > 1)


def _new_sets(R: Multiset):
    tokens = [x for x, _ in R.items()] + [TOP]
    for size in range(len(tokens) + 1):
        for chosen in combinations(tokens, size):
            yield frozenset(chosen)


def mature_edges() -> list[tuple[Multiset, Multiset, frozenset]]:
    """Every (R_j, R_{j+1}, new) transition that stays among the mature cores."""
    out = []
    for R in MATURE_CORES:
        for new in _new_sets(R):
            R2 = mature_successor(R, new)
            if R2 in MATURE_CORES:
                out.append((R, R2, new))
    return out


_PREDECESSORS: dict[Multiset, list[tuple[Multiset, frozenset]]] = {}
for _R, _R2, _new in mature_edges():
    _PREDECESSORS.setdefault(_R2, []).append((_R, _new))

# m_i by core R_i and number k of values new in mu(S_{i-1}); None is a dash
_TOP_TABLE = {
    "": (None, 1, 3, 5),
    "2": (0, 2, 4, None),
    "3": (None, 3, 5, None),
    "4": (None, 4, 6, None),
    "22": (1, 3, None, None),
    "23": (2, 4, None, None),
    "24": (3, None, None, None),
    "222": (2, None, None, None),
}


def expected_top(R: Multiset, k: int) -> NMinus:
    """m_i = n - 2k + 1 - sum(x - 1 for x in R) for a generation after maturity."""
    key = str(R)
    if key not in _TOP_TABLE:
        raise PreconditionError(f"{core_label(R)} is not a mature core")
    if not 0 <= k <= 3 or _TOP_TABLE[key][k] is None:
        raise PreconditionError(f"core {core_label(R)} cannot follow {k} new appearances")
    c = 2 * k - 1 + (R.total - R.order)
    assert c == _TOP_TABLE[key][k]
    return NMinus(c)


_OCCURRENCE_BOUNDS = {
    ("222", "3"): 1, ("222", "4"): 1, ("222", "23"): 1,
    ("24", ""): 1,
    ("24", "22"): 4,
    ("23", "2"): 2, ("24", "2"): 2,
    ("23", ""): 1,
    ("22", "2"): 1, ("22", "22"): 1,
    ("2", ""): 1, ("3", ""): 1, ("4", ""): 1,
}


def edge_occurrence_bound(edge: tuple[Multiset, Multiset]) -> int:
    """Most times a mature orbit can take this core transition."""
    key = (str(edge[0]), str(edge[1]))
    if key not in _OCCURRENCE_BOUNDS:
        raise PreconditionError(f"no occurrence bound for {core_label(edge[0])}->{core_label(edge[1])}")
    return _OCCURRENCE_BOUNDS[key]


def bounded_edges() -> list[tuple[Multiset, Multiset]]:
    return [(parse_core(a), parse_core(b)) for a, b in _OCCURRENCE_BOUNDS]


IMMATURE = "immature"
CONTRADICTION = "contradiction"


@dataclass
class Node:
    """One generation S_j on a backward path, j = i - depth.

    ``new`` lists the values of mu(S_j) that are new in S_{j+1} and ``shift``
    is n_i - n_j.  Choosing this node as the predecessor pins the top
    adjective of the generation after it, stored as ``next_top``.
    """

    id: int
    parent: int | None
    depth: int
    core: Multiset
    new: frozenset
    shift: int
    next_top: NMinus | None = None
    leaf: str | None = None
    occurrences: int = 0
    children: list[int] = field(default_factory=list)

    def new_label(self) -> str:
        return ",".join(sorted("m" if t == TOP else str(t) for t in self.new)) or "-"

    def label(self) -> str:
        ones = NMinus(self.shift + self.core.order + 1)
        return f"1x({ones}) {core_label(self.core)} | new: {self.new_label()}"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "parent": self.parent,
            "depth": self.depth,
            "core": self.core.to_json(),
            "new": sorted("m" if t == TOP else str(t) for t in self.new),
            "shift": self.shift,
            "next_top": str(self.next_top) if self.next_top is not None else None,
            "leaf": self.leaf,
            "occurrences": self.occurrences,
        }


@dataclass
class BacktrackTree:
    edge: tuple[Multiset, Multiset, frozenset]
    nodes: list[Node]
    complete: bool = True

    @property
    def consistent_nodes(self) -> list[Node]:
        return [v for v in self.nodes if v.leaf != CONTRADICTION]

    @property
    def node_count(self) -> int:
        return len(self.consistent_nodes)

    @property
    def max_occurrences(self) -> int:
        return max(v.occurrences for v in self.consistent_nodes)

    @property
    def height(self) -> int:
        """Transitions on the longest path, the target edge included."""
        return max(v.depth for v in self.consistent_nodes) + 1

    @property
    def valid_from(self) -> int:
        """Least n for which every symbolic comparison made holds."""
        tops = [v.next_top.c for v in self.consistent_nodes if v.next_top is not None]
        shifts = [v.shift for v in self.consistent_nodes]
        biggest_const = max(max(R.height for R in MATURE_CORES), 4)
        return max(MATURITY_N + max(shifts), biggest_const + 1 + max(tops, default=0))

    def leaves(self) -> list[Node]:
        return [v for v in self.nodes if v.leaf]

    def to_json(self) -> dict:
        R, R2, new = self.edge
        return {
            "edge": [core_label(R), core_label(R2), sorted("m" if t == TOP else str(t) for t in new)],
            "complete": self.complete,
            "node_count": self.node_count,
            "contradiction_leaves": len(self.nodes) - self.node_count,
            "height": self.height,
            "max_occurrences": self.max_occurrences,
            "valid_from": self.valid_from,
            "nodes": [v.to_json() for v in self.nodes],
        }

    def to_dot(self) -> str:
        R, R2, _ = self.edge
        nodes = [("next", {"label": f"R_(i+1) = {core_label(R2)}", "shape": "box"})]
        edges = []
        for v in self.nodes:
            attrs: dict[str, object] = {"label": f"{v.label()}\\noccurrences {v.occurrences}"}
            if v.leaf == CONTRADICTION:
                attrs.update(color="red", style="dashed")
            elif v.leaf == IMMATURE:
                attrs.update(color="blue")
            nodes.append((f"n{v.id}", attrs))
            link = {"label": f"m={v.next_top}"} if v.next_top is not None else None
            edges.append((f"n{v.id}", "next" if v.parent is None else f"n{v.parent}", link))
        return dot.render(f"backtrack {core_label(R)}->{core_label(R2)}", nodes, edges, {"rankdir": "BT"})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _path(nodes: list[Node], v: Node) -> list[Node]:
    """From v forward to the root generation."""
    out = [v]
    while out[-1].parent is not None:
        out.append(nodes[out[-1].parent])
    return out


def _consistent(path: list[Node]) -> bool:
    """No value on an oldest-first path is an adjective before it is new."""
    seen: set[SymElem] = set()
    for J, v in enumerate(path):
        top = path[J - 1].next_top if J else None
        fresh: set[SymElem] = {Const(t) for t in v.new if t != TOP}
        if TOP in v.new and top is not None:
            fresh.add(top)
        if fresh & seen:
            return False
        seen |= {Const(x) for x in v.core.support()}
        if top is not None:
            seen.add(top)
    return True


def backtrack_tree(edge: tuple[Multiset, Multiset] | tuple[Multiset, Multiset, frozenset],
                   budget: int = 100_000) -> BacktrackTree:
    """Expand every mature history leading into ``edge``.

    ``edge`` is (R_i, R_{i+1}) taken through a first appearance of the top
    adjective alone, or an explicit (R_i, R_{i+1}, new) triple.  Histories
    end where the only way further back leaves maturity, or where a value
    would be needed before its first appearance.  Raises BudgetExceeded with
    the partial tree when more than ``budget`` nodes are created.
    """
    if len(edge) == 2:
        R, R2 = edge
        new = frozenset([TOP])
    else:
        R, R2, new = edge
    if R not in MATURE_CORES or mature_successor(R, new) != R2:
        raise PreconditionError(
            f"{core_label(R)}->{core_label(R2)} is not a mature transition with new {sorted(map(str, new))}"
        )
    target = (R, R2, new)
    root = Node(0, None, 0, R, new, 0, occurrences=1)
    tree = BacktrackTree(target, [root])
    stack = [root]
    while stack:
        v = stack.pop()
        forward = _path(tree.nodes, v)
        for Rp, newp in sorted(_PREDECESSORS.get(v.core, []), key=lambda p: (p[0], sorted(map(str, p[1])))):
            if len(tree.nodes) >= budget:
                tree.complete = False
                raise BudgetExceeded(f"backtracking exceeded {budget} nodes", partial=tree)
            shift = v.shift + len(newp)
            # m_j = n_{j-1} - |R_{j-1}|
            w = Node(len(tree.nodes), v.id, v.depth + 1, Rp, newp, shift, NMinus(shift + Rp.order))
            if not _consistent([w] + forward):
                w.leaf = CONTRADICTION
            else:
                w.occurrences = v.occurrences + ((Rp, v.core, newp) == target)
                stack.append(w)
            tree.nodes.append(w)
            v.children.append(w.id)
        if not any(tree.nodes[c].leaf != CONTRADICTION for c in v.children):
            v.leaf = IMMATURE
    _renumber(tree)
    return tree


def _renumber(tree: BacktrackTree) -> None:
    """Breadth-first ids so that output does not depend on expansion order."""
    order = []
    queue = [tree.nodes[0]]
    while queue:
        order.extend(queue)
        queue = [tree.nodes[c] for v in queue for c in v.children]
    remap = {v.id: i for i, v in enumerate(order)}
    for v in order:
        v.id = remap[v.id]
        v.parent = remap[v.parent] if v.parent is not None else None
        v.children = [remap[c] for c in v.children]
    tree.nodes = order


def mature_edge_counts(cores: list[Multiset]) -> Counter:
    """Count core transitions in a run of consecutive mature generations."""
    return Counter(zip(cores, cores[1:]))
