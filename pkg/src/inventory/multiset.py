"""Immutable multisets of positive integers and the Integer Notation codec.

A multiset is stored as a sorted tuple of (element, multiplicity) pairs, so
equality and hashing are structural and cheap.  Integer Notation writes each
element as a digit; elements with more than one digit go in parentheses, so
``"113777(12)(77)"`` is ``{1,1,3,7,7,7,12,77}``.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, Iterator, Mapping


class NotationError(ValueError):
    """Malformed Integer Notation.  ``offset`` is the byte offset of the fault."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


class Multiset:
    """A finite multiset of positive integers.

    >>> S = Multiset([1, 3, 8, 1])
    >>> S.support(), S.mu()
    (Multiset('138'), Multiset('112'))
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, elements: Iterable[int] = ()):
        self._set(Counter(elements))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "Multiset":
        """Build from an element -> multiplicity map; zero multiplicities are dropped."""
        obj = cls.__new__(cls)
        obj._set(counts)
        return obj

    def _set(self, counts: Mapping[int, int]) -> None:
        items = []
        for x, m in counts.items():
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"multiset elements must be int, got {x!r}")
            if x < 1:
                raise ValueError(f"multiset elements must be positive, got {x}")
            if m < 0:
                raise ValueError(f"negative multiplicity {m} for {x}")
            if m:
                items.append((x, m))
        items.sort()
        self._items = tuple(items)
        self._hash = hash(self._items)

    # container protocol

    def items(self) -> tuple[tuple[int, int], ...]:
        """Sorted (element, multiplicity) pairs."""
        return self._items

    def counts(self) -> dict[int, int]:
        return dict(self._items)

    def mult(self, x: int) -> int:
        for y, m in self._items:
            if y == x:
                return m
        return 0

    def elements(self) -> tuple[int, ...]:
        """All elements with repetition, in non-decreasing order."""
        return tuple(x for x, m in self._items for _ in range(m))

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x: object) -> bool:
        return any(y == x for y, _ in self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Multiset") -> bool:
        # sorted-multiset ordering: by order, then by sorted elements
        return (self.order, self.elements()) < (other.order, other.elements())

    def __le__(self, other: "Multiset") -> bool:
        return self == other or self < other

    def __repr__(self) -> str:
        return f"Multiset({format_notation(self)!r})"

    def __str__(self) -> str:
        return format_notation(self)

    # measures

    @property
    def order(self) -> int:
        """|S|, the number of elements counted with multiplicity."""
        return sum(m for _, m in self._items)

    @property
    def total(self) -> int:
        """Sum of the elements counted with multiplicity."""
        return sum(x * m for x, m in self._items)

    @property
    def height(self) -> int:
        """Largest element, 0 for the empty multiset."""
        return self._items[-1][0] if self._items else 0

    @property
    def distinct(self) -> int:
        """|[S]|, the number of distinct elements."""
        return len(self._items)

    # the algebra

    def support(self) -> "Multiset":
        """[S]: every element once."""
        return Multiset.from_counts({x: 1 for x, _ in self._items})

    def mu(self) -> "Multiset":
        """The multiset of multiplicities."""
        return Multiset(m for _, m in self._items)

    def __add__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        c = Counter(dict(self._items))
        c.update(dict(other._items))
        return Multiset.from_counts(c)

    def __sub__(self, other: "Multiset") -> "Multiset":
        """Multiset difference; ``other`` must be contained in ``self``."""
        c = dict(self._items)
        for x, m in other._items:
            have = c.get(x, 0)
            if have < m:
                raise ValueError(f"{other} is not a sub-multiset of {self}")
            c[x] = have - m
        return Multiset.from_counts(c)

    def __mul__(self, k: int) -> "Multiset":
        """``k`` concatenated copies, written k{...} in the literature."""
        if k < 0:
            raise ValueError("negative repetition")
        return Multiset.from_counts({x: m * k for x, m in self._items})

    __rmul__ = __mul__

    def issubset(self, other: "Multiset") -> bool:
        return all(other.mult(x) >= m for x, m in self._items)

    def restrict(self, other: "Multiset") -> "Multiset":
        """A^B: elements of A that also occur in B, at their multiplicity in A."""
        return Multiset.from_counts({x: m for x, m in self._items if x in other})

    def exclude(self, other: "Multiset") -> "Multiset":
        """A^{not B}: elements of A that do not occur in B."""
        return Multiset.from_counts({x: m for x, m in self._items if x not in other})

    # serialization

    def to_json(self) -> list[list[int]]:
        return [[x, m] for x, m in self._items]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "Multiset":
        counts: Counter[int] = Counter()
        for x, m in data:
            counts[int(x)] += int(m)
        return cls.from_counts(counts)


EMPTY = Multiset()


def support(S: Multiset) -> Multiset:
    return S.support()


def mu(S: Multiset) -> Multiset:
    return S.mu()


def add(A: Multiset, B: Multiset) -> Multiset:
    return A + B


def restrict(A: Multiset, B: Multiset) -> Multiset:
    return A.restrict(B)


def exclude(A: Multiset, B: Multiset) -> Multiset:
    return A.exclude(B)


def format_token(x: int) -> str:
    return str(x) if x < 10 else f"({x})"


def format_notation(S: Iterable[int]) -> str:
    """Integer Notation, elements ascending."""
    return "".join(format_token(x) for x in sorted(S))


def parse_notation(text: str) -> Multiset:
    """Parse Integer Notation.

    >>> parse_notation("113777(12)(77)").elements()
    (1, 1, 3, 7, 7, 7, 12, 77)
    """
    data = text.encode("utf-8")
    counts: Counter[int] = Counter()
    i = 0
    while i < len(data):
        ch = data[i:i + 1]
        if ch.isdigit():
            if ch == b"0":
                raise NotationError("zero element", text, i)
            counts[int(ch)] += 1
            i += 1
        elif ch == b"(":
            close = data.find(b")", i + 1)
            if close < 0:
                raise NotationError("unclosed parenthesis", text, i)
            run = data[i + 1:close]
            if not run:
                raise NotationError("empty parentheses", text, i)
            for j, b in enumerate(run):
                if not chr(b).isdigit():
                    raise NotationError("non-digit inside parentheses", text, i + 1 + j)
            value = int(run)
            if value == 0:
                raise NotationError("zero element", text, i + 1)
            counts[value] += 1
            i = close + 1
        elif ch == b")":
            raise NotationError("unmatched closing parenthesis", text, i)
        else:
            bad = data[i:i + 4].decode("utf-8", errors="ignore")[:1] or ch.decode("latin-1")
            raise NotationError(f"unexpected character {bad!r}", text, i)
    return Multiset.from_counts(counts)


_TERM = re.compile(r"\s*(\d*)\s*\{([^{}]*)\}\s*")


def parse_repeat(text: str) -> Multiset:
    """Parse sums of repeated sets such as ``"3{3}+2{5,6,7}"`` or ``"{2,2,5}"``.

    ``k{x,y}`` means k copies of each of x and y.
    """
    result = EMPTY
    for part in text.split("+"):
        m = _TERM.fullmatch(part)
        if not m:
            raise ValueError(f"cannot parse repeat term {part.strip()!r}")
        k = int(m.group(1)) if m.group(1) else 1
        body = [t.strip() for t in m.group(2).split(",") if t.strip()]
        try:
            values = [int(t) for t in body]
        except ValueError:
            raise ValueError(f"non-integer element in {part.strip()!r}") from None
        result = result + Multiset(values) * k
    return result
