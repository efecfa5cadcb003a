"""Checks of loop enumerations and pre-period bounds against computation.

Everything here either runs orbits and compares them with a stated bound or
table, or regenerates a known integer sequence.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Sequence

from .adjectives import (
    MATURE_CORES,
    canonical_cycle,
    decompose,
    g_n,
    g_naive,
    is_deteriorate,
)
from .backtrack import bounded_edges, edge_occurrence_bound, expected_top
from .dynamics import ancestry_tree, first_max_generation, orbit, step, OrbitReport
from .errors import PreconditionError
from .multiset import Multiset, format_notation, parse_notation

log = logging.getLogger(__name__)

MATURE_ORDER = 16


# ---------------------------------------------------------------- bounds


def loglog_term(c0: int) -> float:
    """log_{sqrt 2} log_{5/4} (max(c0, 10) / 8)."""
    x = max(c0, 10) / 8
    return math.log(math.log(x, 1.25), math.sqrt(2))


@dataclass
class BoundReport:
    start: Multiset
    max_s1: int
    distinct_s1: int
    c0: int
    preperiod: int
    period: int
    bound: float  # the loglog bound
    linear_bound: int  # 2 max S_1 + 60

    @property
    def passed(self) -> bool:
        return self.preperiod <= self.bound and self.preperiod <= self.linear_bound

    def to_json(self) -> dict:
        return {
            "start": format_notation(self.start),
            "max_s1": self.max_s1,
            "distinct_s1": self.distinct_s1,
            "c0": self.c0,
            "preperiod": self.preperiod,
            "period": self.period,
            "bound": self.bound,
            "linear_bound": self.linear_bound,
            "passed": self.passed,
        }


def bound_report(report: OrbitReport) -> BoundReport:
    S0 = report.start
    S1 = report.state(1)
    c0 = S0.mu().distinct
    bound = 2 * (S1.height - S1.distinct) + loglog_term(c0) + 62
    return BoundReport(S0, S1.height, S1.distinct, c0, report.preperiod, report.period,
                       bound, 2 * S1.height + 60)


def check_pre_period(S0: Multiset) -> BoundReport:
    """Measure the pre-period and compare with both pre-period bounds."""
    if not S0:
        raise PreconditionError("start must be nonempty")
    # enough steps to see the loop close if the linear bound holds
    budget = 2 * step(S0).height + 60 + 3
    return bound_report(orbit(S0, budget))


# ---------------------------------------------------------------- loop forms


@dataclass(frozen=True)
class LoopTemplate:
    """A loop written with free letters, e.g. ``31331a1b``.

    Tokens are ints or one-letter parameter names.
    """

    tag: str
    name: str
    members: tuple[tuple[object, ...], ...]

    @property
    def period(self) -> int:
        return len(self.members)

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(sorted({t for m in self.members for t in m if isinstance(t, str)}))

    @property
    def order(self) -> int:
        return len(self.members[0])

    def fixed(self, i: int) -> Multiset:
        return Multiset(t for t in self.members[i] if isinstance(t, int))

    def reserved(self) -> set[int]:
        return {x for i in range(self.period) for x in self.fixed(i).support()}

    def instantiate(self, values: Sequence[int], check: bool = True) -> list[Multiset]:
        """Substitute ``values`` for the letters in alphabetical order."""
        letters = self.letters
        if len(values) != len(letters):
            raise PreconditionError(f"{self.name} takes {len(letters)} parameters, got {len(values)}")
        if check:
            bad = set(values) & self.reserved()
            if bad or len(set(values)) != len(values) or min(values, default=1) < 1:
                raise PreconditionError(
                    f"parameters {list(values)} for {self.name} must be distinct, positive and "
                    f"not among {sorted(self.reserved())}"
                )
        sub = dict(zip(letters, values))
        return [Multiset(sub[t] if isinstance(t, str) else t for t in m) for m in self.members]

    def default_values(self) -> list[int]:
        top = max(self.reserved())
        return list(range(top + 1, top + 1 + len(self.letters)))


def template(tag: str, name: str, *members: str) -> LoopTemplate:
    toks = []
    for text in members:
        toks.append(tuple(int(ch) if ch.isdigit() else ch for ch in text))
    return LoopTemplate(tag, name, tuple(toks))


SMALL_ROW = "small-n row"
ONE_CYCLE = "1-cycle family"
TWO_CYCLE = "2-cycle family"

SMALL_LOOP_ROWS = (
    template(SMALL_ROW, "22", "22"),
    template(SMALL_ROW, "2132231a", "2132231a"),
    template(SMALL_ROW, "31331a1b", "31331a1b"),
    template(SMALL_ROW, "3122331a1b", "3122331a1b"),
    template(SMALL_ROW, "314213241a1b", "314213241a1b", "412223241a1b"),
    template(SMALL_ROW, "413223241a1b1c", "413223241a1b1c"),
    template(SMALL_ROW, "41421314251a1b", "41421314251a1b", "51221334151a1b", "51222314251a1b"),
)

SMALL_LOOP_PERIODS = (1, 1, 1, 1, 2, 1, 3)


def _letters(count: int) -> list[str]:
    # more than 26 parameters never arise below n = 30; extend with pairs
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    names = list(alphabet) + [a + b for a in alphabet for b in alphabet]
    return names[:count]


def one_cycle_family(n: int) -> LoopTemplate:
    """(n-3)132232(n-3)1a_1...1a_{n-4}, a fixed point of order 2n."""
    if n < 7:
        raise PreconditionError("family defined for n >= 7")
    params = _letters(n - 4)
    body = (n - 3, 1, 3, 2, 2, 3, 2, n - 3) + tuple(t for a in params for t in (1, a))
    return LoopTemplate(ONE_CYCLE, f"one-cycle n={n}", (body,))


def two_cycle_family(n: int) -> LoopTemplate:
    """(n-3)142141(n-3)2(n-2)1a... <-> (n-2)122242(n-3)1(n-2)1a..., order 2n."""
    if n < 8:
        raise PreconditionError("family defined for n >= 8")
    tail = tuple(t for a in _letters(n - 5) for t in (1, a))
    first = (n - 3, 1, 4, 2, 1, 4, 1, n - 3, 2, n - 2) + tail
    second = (n - 2, 1, 2, 2, 2, 4, 2, n - 3, 1, n - 2) + tail
    return LoopTemplate(TWO_CYCLE, f"two-cycle n={n}", (first, second))


@dataclass(frozen=True)
class LoopClassification:
    period: int
    family: str
    template: LoopTemplate
    n: int
    params: tuple[int, ...]

    def instantiate(self) -> list[Multiset]:
        return self.template.instantiate(self.params)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "family": self.family,
            "template": self.template.name,
            "n": self.n,
            "params": list(self.params),
        }


class UnclassifiableLoop(ValueError):
    """A loop matching no known form; this would contradict the enumeration."""


def same_cycle(a: list[Multiset], b: list[Multiset]) -> bool:
    return canonical_cycle(list(a)) == canonical_cycle(list(b))


def _match(t: LoopTemplate, loop: list[Multiset]) -> tuple[int, ...] | None:
    if t.period != len(loop) or t.order != loop[0].order:
        return None
    fixed = t.fixed(0)
    reserved = t.reserved()
    for member in loop:
        if not fixed.issubset(member):
            continue
        extra = member - fixed
        if extra.distinct != extra.order or extra.order != len(t.letters):
            continue
        values = tuple(x for x, _ in extra.items())
        if set(values) & reserved:
            continue
        if same_cycle(t.instantiate(values, check=False), loop):
            return values
    return None


def candidate_templates(order: int) -> list[LoopTemplate]:
    if order % 2:
        return []
    if order <= 14:
        return [t for t in SMALL_LOOP_ROWS if t.order == order]
    n = order // 2
    return [one_cycle_family(n), two_cycle_family(n)]


def classify_loop(loop: Sequence[Multiset]) -> LoopClassification:
    """Identify which known loop form ``loop`` is, with its parameters."""
    loop = list(loop)
    if not loop:
        raise PreconditionError("empty loop")
    for i, S in enumerate(loop):
        if step(S) != loop[(i + 1) % len(loop)]:
            raise PreconditionError(f"not a loop: f({S}) != {loop[(i + 1) % len(loop)]}")
    return _classify(tuple(canonical_cycle(loop)))


@lru_cache(maxsize=4096)
def _classify(loop: tuple[Multiset, ...]) -> LoopClassification:
    order = loop[0].order
    for t in candidate_templates(order):
        values = _match(t, list(loop))
        if values is not None:
            return LoopClassification(len(loop), t.tag, t, order // 2, values)
    raise UnclassifiableLoop(f"no known loop form matches {[str(S) for S in loop]}")


# ---------------------------------------------------------------- sharp families


class SharpFamily(Enum):
    FOUR_FOUR = (1, "4{4,k,k+1}", 7)
    THREE_THREE = (2, "3{3}+2{k,k+1,k+2}", 5)
    PAIR = (3, "{2,2,k,k,k+1,k+2}", 5)
    REPEAT = (4, "k{k+1}", 7)

    def __init__(self, number: int, pattern: str, floor: int):
        self.number = number
        self.pattern = pattern
        self.floor = floor

    @classmethod
    def lookup(cls, kind: "SharpFamily | int | str") -> "SharpFamily":
        if isinstance(kind, cls):
            return kind
        for f in cls:
            if kind in (f.number, str(f.number), f.name.lower(), f"family{f.number}"):
                return f
        raise PreconditionError(f"unknown sharp family {kind!r}")

    def start(self, k: int) -> Multiset:
        if self is SharpFamily.FOUR_FOUR:
            return Multiset([4, k, k + 1]) * 4
        if self is SharpFamily.THREE_THREE:
            return Multiset([3]) * 3 + Multiset([k, k + 1, k + 2]) * 2
        if self is SharpFamily.PAIR:
            return Multiset([2, 2, k, k, k + 1, k + 2])
        return Multiset([k + 1]) * k

    def loop_at(self, k: int) -> int:
        """Generation at which the loop is entered, as tabulated."""
        return {1: 2 * k - 2, 2: 2 * k - 2, 3: k + 2, 4: k + 4}[self.number]


def sharp_family(kind: SharpFamily | int | str, k: int) -> tuple[Multiset, int]:
    """Starting multiset and tabulated loop-entry generation for family ``kind``."""
    fam = SharpFamily.lookup(kind)
    if k < fam.floor:
        raise PreconditionError(f"{fam.pattern} needs k >= {fam.floor}")
    return fam.start(k), fam.loop_at(k)


# ---------------------------------------------------------------- period prediction


@dataclass
class PeriodPrediction:
    period: int
    rule: str
    iterations: int
    certificate: dict = field(default_factory=dict)
    failed: bool = False

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "rule": self.rule,
            "iterations": self.iterations,
            "certificate": self.certificate,
            "failed": self.failed,
        }


def prediction_horizon(c0: int) -> int:
    """ceil(13 + loglog term) steps plus the 12 allowed for small loops to start."""
    return math.ceil(13 + loglog_term(c0)) + 12


@lru_cache(maxsize=None)
def _gn_cycle_periods() -> dict[tuple[Multiset, ...], tuple[int, str]]:
    """Canonical g_n cycle of each small loop row -> (loop period, row name)."""
    out = {}
    for t, period in zip(SMALL_LOOP_ROWS, SMALL_LOOP_PERIODS):
        loop = t.instantiate(t.default_values())
        cyc = canonical_cycle([S.mu() for S in loop])
        out[tuple(cyc)] = (period, t.name)
    return out


def _gn_cycle_from(A: Multiset, n: int) -> tuple[Multiset, ...]:
    seen: dict[Multiset, int] = {}
    path = []
    while A not in seen:
        seen[A] = len(path)
        path.append(A)
        A = g_n(A, n)
    return tuple(canonical_cycle(path[seen[A]:]))


_ALTERNATION = {Multiset([2, 2, 2]), Multiset([2, 4])}


def _mature(S: Multiset) -> bool:
    return S.order >= MATURE_ORDER and decompose(S).core in MATURE_CORES


def predict_period(S0: Multiset) -> PeriodPrediction:
    """Decide the eventual period after a bounded number of steps.

    The rules, in order: a fixed point seen within the horizon gives 1; a
    small state whose adjectives sit in T_n* takes the period of the loop row
    matching its g_n cycle; a mature state takes 2 once its cores alternate
    between 222 and 24 within three more steps, or on the strength of the
    mature core alone otherwise; the core 223 of the one-cycle family gives 1.
    Anything else falls back to a full orbit and is flagged as failed.
    """
    if not S0:
        raise PreconditionError("start must be nonempty")
    c0 = S0.mu().distinct
    horizon = prediction_horizon(c0)
    S = S0
    for i in range(horizon):
        T = step(S)
        if T == S:
            return PeriodPrediction(1, "fixed", i + 1, {"fixed_point": str(S)})
        S = T
    cert = {"state": str(S), "order": S.order}
    if S.order < MATURE_ORDER:
        n = S.distinct
        A = S.mu()
        if A.total == 2 * n and n not in (2, 3):
            cyc = _gn_cycle_from(A, n)
            hit = _gn_cycle_periods().get(cyc)
            if hit:
                cert.update(gn_cycle=[str(c) for c in cyc], row=hit[1])
                return PeriodPrediction(hit[0], "small-gn", horizon, cert)
    else:
        core = decompose(S).core
        cert["core"] = str(core)
        if core in MATURE_CORES:
            T = S
            for extra in range(4):
                U = step(T)
                pair = {decompose(T).core, decompose(U).core}
                if pair == _ALTERNATION:
                    cert["alternation_after"] = extra
                    return PeriodPrediction(2, "mature-alternation", horizon + extra, cert)
                if U == T:
                    cert["fixed_point"] = str(T)
                    return PeriodPrediction(1, "fixed", horizon + extra, cert)
                T = U
            return PeriodPrediction(2, "mature-core", horizon, cert)
        if core == Multiset([2, 2, 3]):
            return PeriodPrediction(1, "one-cycle-core", horizon, cert)
    report = orbit(S0)
    cert["fallback"] = True
    return PeriodPrediction(report.period, "fallback", report.preperiod + report.period, cert, failed=True)


# ---------------------------------------------------------------- recurrence sequence


def theorem65_sequence(length: int = 17) -> list[int]:
    """Least integers c_{k-1}, c_{k-2}, ... with c_i >= c_{i+1} + (c_{i+2}^2 - 6c_{i+2} - 8)/8.

    Seeds are c_{k-1} = 8 and c_{k-2} = 7.
    """
    if not 2 <= length <= 20:
        raise PreconditionError("length must be between 2 and 20")
    seq = [8, 7]
    while len(seq) < length:
        b = seq[-2]
        seq.append(math.ceil(seq[-1] + Fraction(b * b - 6 * b - 8, 8)))
    return seq


# ---------------------------------------------------------------- height exceptions

# generation of first maximum -> entries as tabulated; the starred entries stand for families
HEIGHT_TABLE: dict[int, tuple[str, ...]] = {
    4: ("1112223*", "22224444", "4444445555556666**"),
    5: ("11122", "111222", "111333", "11222", "113", "11333", "133", "222244", "223", "224444", "233"),
    6: ("222", "222333"),
    7: ("111333", "112", "122", "2", "22233", "22333", "333"),
    8: ("1", "111", "3"),
}

# 111333 is listed under both S_5 and S_7 and measures 7; the start that
# measures 5 and is otherwise missing is 11133
HEIGHT_TABLE_AMENDED: dict[int, tuple[str, ...]] = {
    **HEIGHT_TABLE,
    5: tuple("11133" if e == "111333" else e for e in HEIGHT_TABLE[5]),
}


def height_entry_family(entry: str) -> list[Multiset]:
    """The starting values an entry of the height table stands for."""
    if entry == "1112223*":
        return sorted(ancestry_tree(parse_notation("112233"), 2).orphans(2))
    if entry == "4444445555556666**":
        return sorted(ancestry_tree(parse_notation("123456"), 2).generations[2])
    return [parse_notation(entry)]


@dataclass
class HeightEntry:
    entry: str
    start: Multiset
    expected: int
    measured: int

    @property
    def passed(self) -> bool:
        return self.expected == self.measured


@dataclass
class HeightReport:
    entries: list[HeightEntry]
    swept: int
    uncovered: list[tuple[Multiset, int]]
    family_sizes: dict[str, int]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries) and not self.uncovered

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "entries": [
                {"entry": e.entry, "start": str(e.start), "expected": e.expected, "measured": e.measured}
                for e in self.entries
            ],
            "swept": self.swept,
            "uncovered": [[str(S), g] for S, g in self.uncovered],
            "family_sizes": self.family_sizes,
        }


def all_multisets(max_order: int, max_element: int) -> Iterator[Multiset]:
    """Every nonempty multiset within the bounds, by order then elements."""
    for order in range(1, max_order + 1):
        for t in combinations_with_replacement(range(1, max_element + 1), order):
            yield Multiset(t)


def check_height_exceptions(max_order: int = 5, max_element: int = 5,
                            table: dict[int, tuple[str, ...]] | None = None) -> HeightReport:
    """Check every table entry, then sweep for unlisted late maxima."""
    table = HEIGHT_TABLE if table is None else table
    entries = []
    family_sizes = {}
    covered: set[Multiset] = set()
    for gen, row in table.items():
        for entry in row:
            starts = height_entry_family(entry)
            if entry.endswith("*"):
                family_sizes[entry] = len(starts)
            for S0 in starts:
                report = orbit(S0)
                entries.append(HeightEntry(entry, S0, gen, first_max_generation(report)))
                covered.update(report.state(i) for i in range(gen))
    uncovered = []
    swept = 0
    for S0 in all_multisets(max_order, max_element):
        swept += 1
        g = first_max_generation(orbit(S0))
        if g > 3 and S0 not in covered:
            uncovered.append((S0, g))
    return HeightReport(entries, swept, uncovered, family_sizes)


# ---------------------------------------------------------------- exhaustive sweep


class SweepFailure(AssertionError):
    """A starting value broke one of the checked statements."""

    def __init__(self, start: Multiset, check: str, detail: str):
        super().__init__(f"{check} fails from {format_notation(start)}: {detail}")
        self.start = start
        self.check = check
        self.detail = detail

    def to_json(self) -> dict:
        return {"start": format_notation(self.start), "check": self.check, "detail": self.detail}


@dataclass
class StartResult:
    start: Multiset
    period: int
    preperiod: int
    bound_slack: float
    linear_slack: int
    mature_checks: int
    top_checks: int
    rule: str
    family: str
    failure: tuple[str, str] | None = None


def _fail(res: StartResult, check: str, detail: str) -> StartResult:
    res.failure = (check, detail)
    return res


def check_start(S0: Multiset) -> StartResult:
    """Run every sweep check on one starting value."""
    report = orbit(S0)
    b = bound_report(report)
    res = StartResult(S0, report.period, report.preperiod, b.bound - b.preperiod,
                      b.linear_bound - b.preperiod, 0, 0, "", "")
    if report.period not in (1, 2, 3):
        return _fail(res, "period", f"period {report.period}")
    if not b.passed:
        return _fail(res, "pre-period bound", f"preperiod {b.preperiod} vs {b.bound:.2f} and {b.linear_bound}")

    last = report.preperiod + report.period
    states = [report.state(i) for i in range(last + 2)]
    for i in range(1, last + 1):
        if states[i + 1].height - states[i].height not in (0, 1):
            return _fail(res, "height increment", f"S_{i} -> S_{i + 1}")
        if states[i + 1].order < states[i].order:
            return _fail(res, "order growth", f"S_{i} -> S_{i + 1}")
    for i in range(last + 1):
        if states[i + 1].mu().distinct > states[i].mu().distinct + 1:
            return _fail(res, "distinct adjective growth", f"S_{i} -> S_{i + 1}")

    # core adjectives follow g_naive up to deterioration
    for i in range(2, last + 1):
        if states[i].order >= MATURE_ORDER:
            res.mature_checks += 1
            R, R2 = decompose(states[i]).core, decompose(states[i + 1]).core
            if not is_deteriorate(R2, g_naive(R)):
                return _fail(res, "deterioration", f"R_{i}={R} R_{i + 1}={R2}")

    # top adjectives past maturity and bounded core transitions
    mature = [i for i in range(last + 1) if _mature(states[i])]
    if mature:
        first = mature[0]
        counts: Counter = Counter()
        for i in range(first, last):
            a, c = decompose(states[i]).core, decompose(states[i + 1]).core
            if _mature(states[i + 1]):
                counts[(a, c)] += 1 if i < report.preperiod else math.inf
        for e in bounded_edges():
            if counts[e] > edge_occurrence_bound(e):
                return _fail(res, "edge occurrences", f"{e[0]}->{e[1]} taken {counts[e]} times")
        for i in range(first + 1, last + 1):
            if _mature(states[i - 1]) and _mature(states[i]):
                k = states[i].distinct - states[i - 1].distinct
                n = states[i].distinct
                state = decompose(states[i])
                try:
                    c = expected_top(state.core, k).c
                except PreconditionError as exc:
                    return _fail(res, "top adjective table", f"S_{i}: {exc}")
                res.top_checks += 1
                if state.top != n - c:
                    return _fail(res, "top adjective table", f"S_{i}: m={state.top}, expected n-{c} with n={n}")

    n = report.loop[0].distinct
    mus = [S.mu() for S in report.loop]
    for i, A in enumerate(mus):
        if g_n(A, n) != mus[(i + 1) % len(mus)]:
            return _fail(res, "adjective loop", f"mu of loop member {report.loop[i]}")

    try:
        cls = classify_loop(report.loop)
    except UnclassifiableLoop as exc:
        return _fail(res, "loop classification", str(exc))
    if not same_cycle(cls.instantiate(), report.loop):
        return _fail(res, "loop classification", "re-instantiated loop differs")
    res.family = cls.template.name if cls.family == SMALL_ROW else cls.family

    pred = predict_period(S0)
    res.rule = pred.rule
    if pred.failed or pred.period != report.period:
        return _fail(res, "period prediction", f"predicted {pred.period} by {pred.rule}, measured {report.period}")
    return res


@dataclass
class SweepSummary:
    max_order: int
    max_element: int
    starts: int = 0
    periods: Counter = field(default_factory=Counter)
    rules: Counter = field(default_factory=Counter)
    families: Counter = field(default_factory=Counter)
    max_preperiod: int = 0
    max_preperiod_start: Multiset | None = None
    min_bound_slack: float = math.inf
    min_linear_slack: int | float = math.inf
    mature_checks: int = 0
    top_checks: int = 0

    def add(self, r: StartResult) -> None:
        self.starts += 1
        self.periods[r.period] += 1
        self.rules[r.rule] += 1
        self.families[r.family] += 1
        if r.preperiod > self.max_preperiod or self.max_preperiod_start is None:
            self.max_preperiod, self.max_preperiod_start = r.preperiod, r.start
        self.min_bound_slack = min(self.min_bound_slack, r.bound_slack)
        self.min_linear_slack = min(self.min_linear_slack, r.linear_slack)
        self.mature_checks += r.mature_checks
        self.top_checks += r.top_checks

    def to_json(self) -> dict:
        return {
            "max_order": self.max_order,
            "max_element": self.max_element,
            "starts": self.starts,
            "counterexamples": 0,
            "periods": {str(k): v for k, v in sorted(self.periods.items())},
            "prediction_rules": dict(sorted(self.rules.items())),
            "loop_forms": dict(sorted(self.families.items())),
            "max_preperiod": self.max_preperiod,
            "max_preperiod_start": format_notation(self.max_preperiod_start or Multiset()),
            "min_bound_slack": round(self.min_bound_slack, 6),
            "min_linear_slack": self.min_linear_slack,
            "deterioration_checks": self.mature_checks,
            "top_adjective_checks": self.top_checks,
        }


def _check_chunk(chunk: list[Multiset]) -> list[StartResult]:
    out = []
    for S0 in chunk:
        r = check_start(S0)
        out.append(r)
        if r.failure:
            break
    return out


def _chunks(items: Iterable[Multiset], size: int) -> Iterator[list[Multiset]]:
    chunk: list[Multiset] = []
    for S in items:
        chunk.append(S)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def exhaustive_sweep(max_order: int = 6, max_element: int = 7, workers: int = 1,
                     max_starts: int = 2_000_000) -> SweepSummary:
    """Run every check on every start within the bounds.

    Raises SweepFailure on the first counterexample in sorted start order.
    """
    starts = list(all_multisets(max_order, max_element))
    if len(starts) > max_starts:
        raise PreconditionError(f"{len(starts)} starts exceed the limit {max_starts}")
    summary = SweepSummary(max_order, max_element)
    chunks = list(_chunks(starts, 256))
    if workers <= 1:
        results = map(_check_chunk, chunks)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_check_chunk, chunks)
    try:
        for done, batch in enumerate(results, 1):
            for r in batch:
                if r.failure:
                    raise SweepFailure(r.start, *r.failure)
                summary.add(r)
            log.info("swept %d/%d chunks (%d starts)", done, len(chunks), summary.starts)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return summary
