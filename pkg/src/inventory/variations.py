"""The inventory game on functions: a rule (G, I, |.|, r) applied to sigma.

A multiset is its multiplicity function sigma.  One step sends sigma to

    sigma'(x) = (|sigma^-1(x)| if x not in I else 0) + (r if sigma(x) not in I else 0)

where I is the set of insignificant adjectives and r counts noun mentions.
Functions are stored as finitely many overrides plus a default value, which
is closed under the step as long as every cofinite preimage either needs no
size or has a size the cardinality rule can name (infinity, or a count in a
finite domain).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, NamedTuple, Union

from .adjectives import partitions
from .errors import PreconditionError
from .multiset import Multiset


class _Infinity:
    """The absorbing infinite value: inf + 1 = inf, inf > every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "∞"

    def __hash__(self) -> int:
        return hash("inf")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __le__(self, other: object) -> bool:
        return other is self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> "_Infinity":
        return self

    __radd__ = __add__


INF = _Infinity()
ExtValue = Union[int, _Infinity]


def ext_add(a: ExtValue, b: ExtValue) -> ExtValue:
    return INF if a is INF or b is INF else a + b


class UnrepresentableError(ValueError):
    """The step would need the size of a cofinite set the rule cannot name."""


# ---------------------------------------------------------------- sigma


def _sort_key(v: ExtValue) -> tuple[int, int]:
    return (1, 0) if v is INF else (0, v)


@dataclass(frozen=True)
class Sigma:
    """A function given by finitely many overrides and a default.

    Overrides equal to the default are dropped, so equality is structural.
    """

    overrides: tuple[tuple[ExtValue, ExtValue], ...]
    default: ExtValue = 0

    def __init__(self, overrides: Mapping[ExtValue, ExtValue] | Iterable[tuple[ExtValue, ExtValue]] = (),
                 default: ExtValue = 0):
        items = dict(overrides.items() if isinstance(overrides, Mapping) else overrides)
        kept = sorted(((k, v) for k, v in items.items() if v != default), key=lambda kv: _sort_key(kv[0]))
        object.__setattr__(self, "overrides", tuple(kept))
        object.__setattr__(self, "default", default)

    def __call__(self, x: ExtValue) -> ExtValue:
        for k, v in self.overrides:
            if k == x:
                return v
        return self.default

    def keys(self) -> list[ExtValue]:
        return [k for k, _ in self.overrides]

    def values(self) -> set[ExtValue]:
        return {v for _, v in self.overrides} | {self.default}

    def render(self) -> str:
        parts = [f"{k}→{v}" for k, v in self.overrides]
        parts.append(f"*→{self.default}")
        return ", ".join(parts)

    __str__ = render

    def to_json(self) -> dict:
        return {
            "overrides": [[_encode(k), _encode(v)] for k, v in self.overrides],
            "default": _encode(self.default),
            "text": self.render(),
        }

    def size(self) -> int | None:
        """Sum of the values when the default is 0 and all values are finite."""
        if self.default != 0 or any(v is INF for _, v in self.overrides):
            return None
        return sum(v for _, v in self.overrides)

    def to_multiset(self) -> Multiset:
        """The multiset with this multiplicity function; needs default 0 and positive keys."""
        if self.default != 0:
            raise PreconditionError(f"{self} has infinite support")
        return Multiset.from_counts({k: v for k, v in self.overrides if k != 0})

    @classmethod
    def parse(cls, text: str) -> "Sigma":
        """Read ``"1->2, 3->1, *->0"``; arrows may be ``->`` or the arrow sign, ``inf`` or the infinity sign."""
        overrides = {}
        default: ExtValue = 0
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            m = re.fullmatch(r"(\S+)\s*(?:->|→)\s*(\S+)", part)
            if not m:
                raise ValueError(f"cannot parse sigma entry {part!r}")
            key, val = m.groups()
            if key == "*":
                default = _parse_value(val)
            else:
                overrides[_parse_value(key)] = _parse_value(val)
        return cls(overrides, default)


def _encode(v: ExtValue) -> int | str:
    return "inf" if v is INF else v


def _parse_value(text: str) -> ExtValue:
    if text in ("inf", "∞"):
        return INF
    return int(text)


def sigma_from_multiset(S: Multiset | Mapping[int, int]) -> Sigma:
    """The multiplicity function of S (which may hold 0 or negatives as a plain mapping)."""
    counts = S.counts() if isinstance(S, Multiset) else dict(S)
    return Sigma(counts, 0)


def sigma_from_digits(digits: str) -> Sigma:
    """Digit i of the string is sigma(i), as in self-descriptive numbers."""
    return Sigma({i: int(d) for i, d in enumerate(digits)}, 0)


def sigma_to_digits(s: Sigma, base: int = 10) -> str:
    return "".join(str(s(i)) for i in range(base))


# ---------------------------------------------------------------- rules


class Cardinality(Enum):
    COUNT = "count"  # finite preimages only
    TRANSFINITE = "transfinite"  # infinite preimages have size INF
    MODULAR = "modular"  # finite domain, counts taken mod its size


@dataclass(frozen=True)
class Domain:
    """The set G the functions act on.

    ``integers`` with ``floor`` f is {f, f+1, ...}, optionally with INF
    adjoined; ``modular`` is Z/base.
    """

    kind: str
    floor: int = 0
    base: int = 0
    infinity: bool = False

    @classmethod
    def naturals(cls) -> "Domain":
        return cls("integers", floor=0)

    @classmethod
    def naturals_with_infinity(cls) -> "Domain":
        return cls("integers", floor=0, infinity=True)

    @classmethod
    def integers_with_floor(cls, floor: int) -> "Domain":
        return cls("integers", floor=floor)

    @classmethod
    def modular_digits(cls, base: int = 10) -> "Domain":
        return cls("modular", base=base)

    @property
    def finite(self) -> bool:
        return self.kind == "modular"

    def contains(self, x: ExtValue) -> bool:
        if x is INF:
            return self.infinity
        if self.kind == "modular":
            return 0 <= x < self.base
        return x >= self.floor

    def elements(self) -> range:
        if not self.finite:
            raise PreconditionError("infinite domain")
        return range(self.base)

    def describe(self) -> str:
        if self.kind == "modular":
            return f"Z/{self.base}"
        name = "N" if self.floor == 0 else f"Z>={self.floor}"
        return name + (" with inf" if self.infinity else "")


@dataclass(frozen=True)
class Insignificant:
    """The set I: ``values``, or everything but ``values`` when ``complement``."""

    values: frozenset
    complement: bool = False

    def __contains__(self, v: object) -> bool:
        return (v in self.values) != self.complement

    def describe(self) -> str:
        body = "{" + ",".join(str(v) for v in sorted(self.values, key=_sort_key)) + "}"
        return f"G\\{body}" if self.complement else body


@dataclass(frozen=True)
class VariationConfig:
    domain: Domain
    insignificant: Insignificant
    cardinality: Cardinality
    r: int = 1
    name: str = "custom"

    def describe(self) -> str:
        return (f"{self.name}: ({self.domain.describe()}, {self.insignificant.describe()}, "
                f"{self.cardinality.value}, {self.r})")


def classic() -> VariationConfig:
    return VariationConfig(Domain.naturals(), Insignificant(frozenset({0})), Cardinality.COUNT, 1, "classic")


def stig() -> VariationConfig:
    return VariationConfig(Domain.naturals_with_infinity(), Insignificant(frozenset({0})),
                           Cardinality.TRANSFINITE, 1, "stig")


def nounless(base: int = 10) -> VariationConfig:
    return VariationConfig(Domain.modular_digits(base), Insignificant(frozenset()), Cardinality.MODULAR, 0,
                           f"nounless{base}")


def oeig(r: int) -> VariationConfig:
    if r < 1:
        raise PreconditionError("r must be at least 1")
    return VariationConfig(Domain.naturals(), Insignificant(frozenset({0})), Cardinality.COUNT, r, f"oeig:{r}")


def significance(significant: Iterable[int]) -> VariationConfig:
    """Only the listed adjectives are significant: I = N minus them."""
    keep = frozenset(significant)
    name = "significance:" + ",".join(map(str, sorted(keep)))
    return VariationConfig(Domain.naturals(), Insignificant(keep, complement=True), Cardinality.COUNT, 1, name)


def floor_config(floor: int = -1) -> VariationConfig:
    return VariationConfig(Domain.integers_with_floor(floor), Insignificant(frozenset({0})), Cardinality.COUNT, 1,
                           f"floor:{floor}")


def preset(spec: str) -> VariationConfig:
    """Look up ``classic``, ``stig``, ``nounless10``, ``oeig:R``, ``significance:1,2,3`` or ``floor:-1``."""
    name, _, arg = spec.partition(":")
    try:
        if name == "classic" and not arg:
            return classic()
        if name == "stig" and not arg:
            return stig()
        if name.startswith("nounless") and not arg:
            return nounless(int(name[len("nounless"):] or 10))
        if name == "oeig":
            return oeig(int(arg))
        if name == "significance":
            return significance(int(t) for t in arg.split(",") if t.strip())
        if name == "floor":
            return floor_config(int(arg or -1))
    except ValueError:
        pass
    raise PreconditionError(f"unknown preset {spec!r}")


# ---------------------------------------------------------------- the step


def _preimage_size(s: Sigma, v: ExtValue, cfg: VariationConfig) -> ExtValue:
    finite = sum(1 for _, w in s.overrides if w == v)
    if v != s.default:
        return finite if cfg.cardinality is not Cardinality.MODULAR else finite % cfg.domain.base
    if cfg.domain.finite:
        count = len(cfg.domain.elements()) - len(s.overrides)
        return count % cfg.domain.base if cfg.cardinality is Cardinality.MODULAR else count
    if cfg.cardinality is Cardinality.TRANSFINITE:
        return INF
    raise UnrepresentableError(f"{v} has a cofinite preimage under {s}, which {cfg.name} cannot size")


def _value_at(s: Sigma, x: ExtValue, cfg: VariationConfig) -> ExtValue:
    adjective = 0 if x in cfg.insignificant else _preimage_size(s, x, cfg)
    noun = cfg.r if s(x) not in cfg.insignificant else 0
    total = ext_add(adjective, noun)
    if cfg.domain.finite:
        total %= cfg.domain.base
    return total


def variation_step(s: Sigma, cfg: VariationConfig) -> Sigma:
    for k in s.keys():
        if not cfg.domain.contains(k):
            raise PreconditionError(f"{k} is outside {cfg.domain.describe()}")
    if cfg.domain.finite:
        return Sigma({x: _value_at(s, x, cfg) for x in cfg.domain.elements()}, 0)
    # a point that is neither a key nor a value has an empty preimage and
    # sees the default, so it lands on the new default
    default = cfg.r if s.default not in cfg.insignificant else 0
    special = set(s.keys()) | {v for v in s.values() if cfg.domain.contains(v)}
    return Sigma({x: _value_at(s, x, cfg) for x in special}, default)


class Looped(NamedTuple):
    preperiod: int
    period: int


class NoCycleWithin(NamedTuple):
    budget: int
    monotone: bool


@dataclass
class VariationOrbit:
    start: Sigma
    states: list[Sigma]
    outcome: Looped | NoCycleWithin

    @property
    def loop(self) -> list[Sigma]:
        if isinstance(self.outcome, NoCycleWithin):
            return []
        return self.states[self.outcome.preperiod:self.outcome.preperiod + self.outcome.period]

    def to_json(self) -> dict:
        out = {"start": self.start.render(), "states": [s.render() for s in self.states]}
        if isinstance(self.outcome, Looped):
            out.update(outcome="looped", preperiod=self.outcome.preperiod, period=self.outcome.period,
                       loop=[s.render() for s in self.loop])
        else:
            out.update(outcome="no cycle within budget (heuristic)", budget=self.outcome.budget,
                       monotone_growth=self.outcome.monotone)
        return out


def _monotone(states: list[Sigma], window: int) -> bool:
    sizes = [s.size() for s in states[-(window + 1):]]
    if len(sizes) < 2 or any(z is None for z in sizes):
        return False
    return all(a < b for a, b in zip(sizes, sizes[1:]))


def variation_orbit(s0: Sigma, cfg: VariationConfig, max_iters: int = 1000) -> VariationOrbit:
    """Iterate until a state repeats or ``max_iters`` steps have been taken."""
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    seen = {s0: 0}
    states = [s0]
    s = s0
    for i in range(1, max_iters + 1):
        s = variation_step(s, cfg)
        j = seen.get(s)
        if j is not None:
            return VariationOrbit(s0, states, Looped(j, i - j))
        seen[s] = i
        states.append(s)
    return VariationOrbit(s0, states, NoCycleWithin(max_iters, _monotone(states, max(1, max_iters // 4))))


def divergence_search(cfg: VariationConfig, seeds: Iterable[Sigma], budget: int = 1000
                      ) -> list[tuple[Sigma, Looped | NoCycleWithin]]:
    """Run each seed and report whether it looped within ``budget`` steps."""
    return [(seed, variation_orbit(seed, cfg, budget).outcome) for seed in seeds]


def small_seeds(cfg: VariationConfig, max_order: int, max_element: int) -> list[Sigma]:
    """Multiplicity functions of all small multisets over the domain's floor and up."""
    lo = cfg.domain.floor
    out = []
    for order in range(1, max_order + 1):
        for t in combinations_with_replacement(range(lo, max_element + 1), order):
            counts: dict[int, int] = {}
            for x in t:
                counts[x] = counts.get(x, 0) + 1
            out.append(Sigma(counts, 0))
    return out


# ---------------------------------------------------------------- T_{n,r}


def enumerate_Tnr(n: int, r: int) -> list[tuple[int, ...]]:
    """Sorted tuples of n integers >= r summing to (r + 1) n.

    Tuples rather than Multisets, since r = 0 admits the element 0.
    """
    if n < 1 or r < 0:
        raise PreconditionError("need n >= 1 and r >= 0")
    return list(partitions((r + 1) * n, n, r))


def in_Tnr(S: Iterable[int], r: int) -> bool:
    t = tuple(S)
    return bool(t) and min(t) >= r and sum(t) == (r + 1) * len(t)


def tnr_shift(S: Iterable[int], r: int, t: int) -> tuple[int, ...]:
    """Add t - r to every element, carrying T_{n,r}* onto T_{n,t}*.

    Shifting down (t < r) is the inverse and is allowed for any t >= 0.
    """
    elems = tuple(sorted(S))
    if not in_Tnr(elems, r):
        raise PreconditionError(f"{list(elems)} is not in T_(n,{r})*")
    if t < 0:
        raise PreconditionError("t must be nonnegative")
    return tuple(x + t - r for x in elems)
