"""The inventory map f(S) = [S] + mu(S), its orbits and its preimages."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from more_itertools import distinct_permutations

from . import dot
from .adjectives import AdjectiveState, decompose
from .errors import BudgetExceeded
from .multiset import EMPTY, Multiset, format_notation

DEFAULT_MAX_ITERS = 1000


def step(S: Multiset) -> Multiset:
    """One inventory: every distinct element once, then every multiplicity."""
    return S.support() + S.mu()


def describe(S: Multiset) -> str:
    """Read S aloud as count-then-noun pairs, smallest noun first.

    The description of S, read as a multiset, is step(S).

    >>> describe(Multiset([1, 3, 8, 1]))
    '211318'
    """
    return "".join(format_notation([m]) + format_notation([x]) for x, m in S.items())


class Generation(NamedTuple):
    index: int
    state: Multiset
    order: int
    height: int
    distinct_adjectives: int
    adjectives: AdjectiveState | None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "state": format_notation(self.state),
            "order": self.order,
            "height": self.height,
            "distinct_adjectives": self.distinct_adjectives,
            "adjectives": self.adjectives.to_json() if self.adjectives else None,
        }


def _generation(i: int, S: Multiset) -> Generation:
    return Generation(i, S, S.order, S.height, S.mu().distinct, decompose(S) if S else None)


@dataclass
class OrbitReport:
    start: Multiset
    preperiod: int
    period: int
    loop: list[Multiset]
    trace: list[Generation] = field(repr=False)

    @property
    def states(self) -> list[Multiset]:
        return [g.state for g in self.trace]

    def state(self, i: int) -> Multiset:
        """S_i for any i >= 0, folding indices past the trace into the loop."""
        if i < len(self.trace):
            return self.trace[i].state
        return self.loop[(i - self.preperiod) % self.period]

    def to_json(self) -> dict:
        return {
            "start": format_notation(self.start),
            "preperiod": self.preperiod,
            "period": self.period,
            "loop": [format_notation(S) for S in self.loop],
            "trace": [g.to_json() for g in self.trace],
        }


def orbit(S0: Multiset, max_iters: int = DEFAULT_MAX_ITERS) -> OrbitReport:
    """Iterate f until a state repeats.

    Raises BudgetExceeded if no repeat shows up within ``max_iters`` steps.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    seen = {S0: 0}
    states = [S0]
    S = S0
    for i in range(1, max_iters + 1):
        S = step(S)
        j = seen.get(S)
        if j is not None:
            trace = [_generation(k, T) for k, T in enumerate(states)]
            return OrbitReport(S0, j, i - j, states[j:], trace)
        seen[S] = i
        states.append(S)
    raise BudgetExceeded(f"no repeat within {max_iters} iterations from {S0}", partial=states)


def preimages(S: Multiset) -> set[Multiset]:
    """All P with step(P) == S.

    The nouns of P are some |S|/2 distinct elements of S; what is left of S
    must be the multiplicities, assigned to the nouns in every distinct order.
    """
    if not S:
        return {EMPTY}
    if S.order % 2:
        return set()
    n = S.order // 2
    nouns = [x for x, _ in S.items()]
    if len(nouns) < n:
        return set()
    out = set()
    for chosen in combinations(nouns, n):
        rest = (S - Multiset(chosen)).elements()
        for mults in distinct_permutations(rest):
            out.add(Multiset.from_counts(dict(zip(chosen, mults))))
    return out


ODD_ORDER = "odd-order"
TOO_MANY = "too-many-elements"

_COLORS = {ODD_ORDER: "orange", TOO_MANY: "lightblue"}


def orphan_reason(S: Multiset) -> str | None:
    """Why S has no parent, or None if it has one.

    These are the only two obstructions: with even order and at least half
    as many distinct elements, any choice of distinct nouns works.
    """
    if S.order % 2:
        return ODD_ORDER
    if S.order > 2 * S.distinct:
        return TOO_MANY
    return None


@dataclass
class AncestryTree:
    """Preimages of ``root`` out to ``max_depth`` generations back.

    ``parents`` maps each expanded node to its complete parent set;
    ``generations[d]`` is the set of d-th ancestors.
    """

    root: Multiset
    max_depth: int
    parents: dict[Multiset, frozenset[Multiset]] = field(default_factory=dict)
    generations: list[frozenset[Multiset]] = field(default_factory=list)

    def nodes(self) -> set[Multiset]:
        return set().union(*self.generations) if self.generations else set()

    def terminal(self, S: Multiset) -> str | None:
        """Terminal reason of an expanded node with no parents."""
        ps = self.parents.get(S)
        if ps is None or ps:
            return None
        return orphan_reason(S)

    def orphans(self, depth: int) -> set[Multiset]:
        """Ancestors at ``depth`` that have no parents themselves."""
        return {S for S in self.generations[depth] if not preimages(S)}

    def to_json(self) -> dict:
        return {
            "root": format_notation(self.root),
            "max_depth": self.max_depth,
            "generations": [sorted(format_notation(S) for S in g) for g in self.generations],
            "parents": {
                format_notation(S): sorted(format_notation(P) for P in ps)
                for S, ps in sorted(self.parents.items(), key=lambda kv: kv[0])
            },
            "terminal": {
                format_notation(S): self.terminal(S)
                for S in sorted(self.parents)
                if self.terminal(S)
            },
        }

    def to_dot(self) -> str:
        def label(S: Multiset) -> str:
            return format_notation(S) or "empty"

        nodes = []
        for S in sorted(self.nodes()):
            reason = self.terminal(S) if S in self.parents else orphan_reason(S)
            attrs = {"style": "filled", "fillcolor": _COLORS[reason]} if reason else None
            nodes.append((label(S), attrs))
        edges = [
            (label(P), label(S), None)
            for S in sorted(self.parents)
            for P in sorted(self.parents[S])
        ]
        return dot.render(f"ancestry of {label(self.root)}", nodes, edges, {"rankdir": "BT"})


def ancestry_tree(S: Multiset, max_depth: int, node_budget: int = 100_000) -> AncestryTree:
    """Breadth-first preimage closure of S.

    Raises BudgetExceeded, carrying the partial tree, once more than
    ``node_budget`` distinct nodes have been found.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    tree = AncestryTree(S, max_depth, generations=[frozenset([S])])
    seen = {S}
    for _ in range(max_depth):
        nxt: set[Multiset] = set()
        for child in sorted(tree.generations[-1]):
            if child not in tree.parents:
                tree.parents[child] = frozenset(preimages(child))
            nxt |= tree.parents[child]
            seen |= tree.parents[child]
            if len(seen) > node_budget:
                tree.generations.append(frozenset(nxt))
                raise BudgetExceeded(f"ancestry exceeded {node_budget} nodes", partial=tree)
        tree.generations.append(frozenset(nxt))
    return tree


class HeightPoint(NamedTuple):
    generation: int
    height: int
    first_max: bool


def height_profile(report: OrbitReport) -> list[HeightPoint]:
    """Height of every generation in the trace, flagging where the peak first appears."""
    heights = [g.height for g in report.trace]
    peak = max(heights)
    first = heights.index(peak)
    return [HeightPoint(i, h, i == first) for i, h in enumerate(heights)]


def first_max_generation(report: OrbitReport) -> int:
    return next(p.generation for p in height_profile(report) if p.first_max)
