"""Adjective-space dynamics.

The multiplicities of a multiset are its adjectives and its distinct elements
are its nouns.  Looking only at adjectives turns the inventory map into the
map ``g_n`` on T_n*, the multisets of order n whose elements sum to 2n.  Far
into an orbit the adjectives split as ``ones*{1} + R + {m}`` and the core R
follows ``g_naive`` up to deterioration.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable, Iterable, Iterator, TypeVar

from . import dot
from .errors import PreconditionError
from .multiset import EMPTY, Multiset

T = TypeVar("T", bound=Hashable)

TN_LIMIT = 12

MATURE_CORES = tuple(Multiset(c) for c in ((), (2,), (3,), (4,), (2, 2), (2, 3), (2, 4), (2, 2, 2)))


@dataclass(frozen=True)
class AdjectiveState:
    """mu(S) = ones*{1} + core + {top}."""

    ones: int
    core: Multiset
    top: int

    def recompose(self) -> Multiset:
        return Multiset([1] * self.ones) + self.core + Multiset([self.top])

    def to_json(self) -> dict:
        return {"ones": self.ones, "core": self.core.to_json(), "top": self.top}


def mu_plus(S: Multiset) -> Multiset:
    """Multiplicities of S, each increased by one."""
    return Multiset(m + 1 for _, m in S.items())


def g_n(S: Multiset, n: int) -> Multiset:
    """mu_plus(S) padded with 1s up to order n."""
    mp = mu_plus(S)
    pad = n - mp.order
    if pad < 0:
        raise PreconditionError(f"{S} has {S.distinct} distinct elements, more than n={n}")
    return mp + Multiset([1] * pad)


def partitions(total: int, parts: int, minimum: int = 1) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples of ``parts`` integers >= minimum summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for x in range(minimum, total // parts + 1):
        for rest in partitions(total - x, parts - 1, x):
            yield (x,) + rest


def enumerate_Tn(n: int, limit: int = TN_LIMIT) -> list[Multiset]:
    """All of T_n*, in sorted-multiset order."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if n > limit:
        raise PreconditionError(f"n={n} exceeds the enumeration limit {limit}")
    return [Multiset(p) for p in partitions(2 * n, n)]


def canonical_cycle(cycle: list[T], key: Callable[[T], object] | None = None) -> list[T]:
    """Rotate a cycle so that its least member comes first."""
    i = min(range(len(cycle)), key=lambda j: key(cycle[j]) if key else cycle[j])
    return cycle[i:] + cycle[:i]


def functional_cycles(nodes: Iterable[T], fn: Callable[[T], T]) -> list[list[T]]:
    """All cycles of the functional graph of ``fn`` reachable from ``nodes``."""
    state: dict[T, int] = {}  # 1 = on current path, 2 = finished
    cycles = []
    for start in nodes:
        path = []
        x = start
        while x not in state:
            state[x] = 1
            path.append(x)
            x = fn(x)
        if state[x] == 1:
            cycles.append(canonical_cycle(path[path.index(x):]))
        for y in path:
            state[y] = 2
    cycles.sort(key=lambda c: (len(c), c[0].elements() if isinstance(c[0], Multiset) else c[0]))
    return cycles


def find_gn_cycles(n: int, limit: int = TN_LIMIT) -> list[list[Multiset]]:
    """Every cycle of g_n on T_n*, each rotated to its least member."""
    return functional_cycles(enumerate_Tn(n, limit), lambda S: g_n(S, n))


def gn_dot(n: int, limit: int = TN_LIMIT) -> str:
    """The functional graph of g_n on T_n* with cycle members drawn bold."""
    nodes = enumerate_Tn(n, limit)
    on_cycle = {S for c in find_gn_cycles(n, limit) for S in c}
    return dot.render(
        f"g_{n}",
        [(str(S), {"penwidth": 3, "style": "bold"} if S in on_cycle else None) for S in nodes],
        [(str(S), str(g_n(S, n)), None) for S in nodes],
        {"rankdir": "LR"},
    )


def decompose(S: Multiset) -> AdjectiveState:
    """Split mu(S) into its 1s, its core and its maximum."""
    if not S:
        raise PreconditionError("cannot decompose the empty multiset")
    mults = sorted(m for _, m in S.items())
    top = mults.pop()
    if top == 1:
        return AdjectiveState(len(mults), EMPTY, 1)
    core = [m for m in mults if m > 1]
    return AdjectiveState(len(mults) - len(core), Multiset(core), top)


def _no_ones(R: Multiset, what: str) -> None:
    if 1 in R:
        raise PreconditionError(f"{what} must not contain 1, got {R}")


def g_naive(R: Multiset) -> Multiset:
    """{2} + mu_plus(R)."""
    _no_ones(R, "core")
    return Multiset([2]) + mu_plus(R)


def weight(R: Multiset) -> int:
    """Sum of (r - 1) over R; deterioration never increases it."""
    return R.total - R.order


def _decrements(R: Multiset) -> set[Multiset]:
    items = R.items()
    out = set()
    for ks in product(*(range(m + 1) for _, m in items)):
        c: Counter[int] = Counter()
        for (x, m), k in zip(items, ks):
            c[x] += m - k
            if x - 1 > 1:
                c[x - 1] += k
        out.add(Multiset.from_counts(c))
    return out


def _replace_max(R: Multiset) -> set[Multiset]:
    if not R:
        return set()
    top = R.height
    rest = R - Multiset([top])
    return {rest} | {rest + Multiset([v]) for v in range(2, top)}


def deteriorates(R: Multiset) -> set[Multiset]:
    """Everything one deterioration away from R, excluding R itself.

    The moves are: decrement any sub-multiset (dropping 1s), replace the
    maximum by a smaller value >= 2 or drop it, and the second move followed
    by the first.
    """
    _no_ones(R, "source")
    out = _decrements(R)
    for y in _replace_max(R):
        out.add(y)
        out |= _decrements(y)
    out.discard(R)
    return out


def is_deteriorate(candidate: Multiset, source: Multiset) -> bool:
    _no_ones(candidate, "candidate")
    if candidate == source:
        return True
    if weight(candidate) >= weight(source) or candidate.order > source.order:
        # every move strictly lowers the weight and none adds an element
        return False
    return candidate in deteriorates(source)


def the_64_list() -> list[Multiset]:
    """Cores R with no 1s, |R| <= 6 and weight <= 8, plus the empty core."""
    out = [EMPTY]
    for size in range(1, 7):
        for w in range(size, 9):
            # `size` elements >= 2 with weights summing to w
            out.extend(Multiset(p) for p in partitions(w + size, size, 2))
    out.sort()
    return out


def naive_dot(cores: list[Multiset] | None = None) -> str:
    """g_naive on the 64-list, one rank per weight."""
    cores = cores if cores is not None else the_64_list()

    def label(R: Multiset) -> str:
        return str(R) or "empty"

    by_weight: dict[int, list[str]] = {}
    for R in cores:
        by_weight.setdefault(weight(R), []).append(label(R))
    return dot.render(
        "g_naive",
        [(label(R), {"weight": weight(R)}) for R in cores],
        [(label(R), label(g_naive(R)), None) for R in cores],
        {"rankdir": "BT"},
        [by_weight[w] for w in sorted(by_weight)],
    )


def required_cycle_elements(n: int) -> list[Multiset]:
    """The six members of T_n* of which every g_n cycle with n >= 8 contains one."""
    if n < 8:
        raise PreconditionError("required only for n >= 8")
    heads = [(2, n), (3, n - 1), (2, 2, n - 1), (2, 3, n - 2), (2, 2, 2, n - 2), (2, 2, 3, n - 3)]
    return [Multiset((1,) * (n - len(h)) + h) for h in heads]
