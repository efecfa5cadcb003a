import math
from fractions import Fraction

import pytest

from inventory.dynamics import orbit, step
from inventory.errors import PreconditionError
from inventory.multiset import Multiset, parse_notation, parse_repeat
from inventory.verify import (
    HEIGHT_TABLE_AMENDED, SMALL_LOOP_PERIODS, _classify, SMALL_LOOP_ROWS, SharpFamily, SweepFailure, UnclassifiableLoop, all_multisets,
    check_height_exceptions, check_pre_period, check_start, classify_loop, exhaustive_sweep, loglog_term,
    one_cycle_family, predict_period, same_cycle, sharp_family, template, theorem65_sequence, two_cycle_family,
)

LISTED_65 = "61660878524,68802238,701955,23344,2333,413,127,51,28,17,13,10,9,8,8,7,8"


def is_cycle(loop):
    return all(step(S) == loop[(i + 1) % len(loop)] for i, S in enumerate(loop))


def test_theorem65_sequence_matches_print():
    expected = [int(x) for x in LISTED_65.split(",")][::-1]
    assert theorem65_sequence() == expected


def test_recurrence_by_hand():
    # c_i is the least integer with c_i >= c_{i+1} + (c_{i+2}^2 - 6 c_{i+2} - 8) / 8
    seq = theorem65_sequence(10)
    for a, b, c in zip(seq, seq[1:], seq[2:]):
        need = b + Fraction(a * a - 6 * a - 8, 8)
        assert c >= need > c - 1


def test_loglog_term():
    assert loglog_term(1) == loglog_term(10)
    x = math.log(math.log(20 / 8) / math.log(1.25)) / math.log(math.sqrt(2))
    assert loglog_term(20) == pytest.approx(x)


def test_check_pre_period():
    r = check_pre_period(parse_repeat("6{6}+7{7}"))
    assert (r.preperiod, r.period) == (12, 3)
    assert r.passed and r.linear_bound == 2 * 7 + 60
    with pytest.raises(PreconditionError):
        check_pre_period(Multiset())


def test_loop_rows_with_room_for_letters():
    for t, period in zip(SMALL_LOOP_ROWS, SMALL_LOOP_PERIODS):
        loop = t.instantiate(t.default_values())
        assert len(loop) == period
        assert is_cycle(loop), t.name


def test_three_loop_row_cannot_take_five():
    row = SMALL_LOOP_ROWS[-1]
    assert 5 in row.reserved()
    with pytest.raises(PreconditionError):
        row.instantiate([5, 6])
    assert not is_cycle(row.instantiate([5, 6], check=False))
    assert is_cycle(row.instantiate([6, 7]))


@pytest.mark.parametrize("n", range(8, 13))
def test_large_families_are_loops(n):
    one = one_cycle_family(n)
    two = two_cycle_family(n)
    assert one.order == two.order == 2 * n
    assert is_cycle(one.instantiate(one.default_values()))
    assert is_cycle(two.instantiate(two.default_values()))


def test_classify_round_trip():
    for S0 in all_multisets(5, 7):
        loop = orbit(S0).loop
        cls = classify_loop(loop)
        assert same_cycle(cls.instantiate(), loop)
        assert cls.period == len(loop)


def test_classify_large_loop():
    t = one_cycle_family(9)
    loop = t.instantiate([11, 13, 15, 17, 19])
    cls = classify_loop(loop)
    assert cls.n == 9 and cls.params == (11, 13, 15, 17, 19)


def test_classify_rejects():
    with pytest.raises(PreconditionError):
        classify_loop([parse_notation("1138")])
    fake = template("x", "x", "1a")
    with pytest.raises(PreconditionError):
        fake.instantiate([1])
    with pytest.raises(UnclassifiableLoop):
        _classify((parse_notation("12"),))


def test_sharp_family_starts():
    assert sharp_family(1, 7)[0] == parse_repeat("4{4,7,8}")
    assert sharp_family(2, 5)[0] == parse_repeat("3{3}+2{5,6,7}")
    assert sharp_family(3, 5)[0] == parse_repeat("{2,2,5,5,6,7}")
    assert sharp_family(4, 7)[0] == parse_repeat("7{8}")
    with pytest.raises(PreconditionError):
        sharp_family(SharpFamily.FOUR_FOUR, 6)


@pytest.mark.parametrize("k", range(7, 41))
def test_sharp_measured_closed_forms(k):
    """Measured pre-periods, frozen as closed forms in k and max S_1."""
    measured = {}
    for fam in SharpFamily:
        S0, _ = sharp_family(fam, k)
        measured[fam.number] = (orbit(S0).preperiod, step(S0).height)
    pre1, m1 = measured[1]
    assert pre1 == 2 * k - 2 == 2 * m1 - 4
    pre2, m2 = measured[2]
    assert pre2 == 2 * k - 3 == 2 * m2 - 7
    pre3, m3 = measured[3]
    assert pre3 == k + 2 == m3
    pre4, m4 = measured[4]
    assert m4 == k + 1
    assert pre4 == k + 5 == m4 + 4


def test_sharp_small_k():
    assert orbit(sharp_family(2, 5)[0]).preperiod == 6
    assert orbit(sharp_family(3, 5)[0]).preperiod == 6


def test_predict_period_examples():
    p = predict_period(parse_notation("1138"))
    assert (p.period, p.rule, p.failed) == (1, "fixed", False)
    p = predict_period(parse_repeat("6{6}+7{7}"))
    assert p.period == 3 and not p.failed
    for fam in SharpFamily:
        S0, _ = sharp_family(fam, 15)
        p = predict_period(S0)
        assert not p.failed and p.period == orbit(S0).period


def test_height_table_has_one_wrong_entry():
    report = check_height_exceptions(5, 5)
    assert [(e.entry, e.expected, e.measured) for e in report.entries if not e.passed] == [("111333", 5, 7)]
    assert report.uncovered == [(parse_notation("11133"), 5)]


def test_height_exceptions_amended():
    report = check_height_exceptions(5, 5, HEIGHT_TABLE_AMENDED)
    assert report.passed, report.to_json()
    assert report.family_sizes == {"1112223*": 15, "4444445555556666**": 18}
    assert {e.expected for e in report.entries} == {4, 5, 6, 7, 8}


def test_check_start_and_failure_payload():
    r = check_start(parse_notation("1138"))
    assert r.failure is None and r.period == 1 and r.rule == "fixed"
    exc = SweepFailure(parse_notation("12"), "period", "period 4")
    assert exc.to_json() == {"start": "12", "check": "period", "detail": "period 4"}


def test_small_sweep_serial_and_parallel_agree():
    a = exhaustive_sweep(4, 5, workers=1)
    b = exhaustive_sweep(4, 5, workers=2)
    assert a.to_json() == b.to_json()
    assert set(a.periods) <= {1, 2, 3}


@pytest.mark.slow
def test_larger_sweep():
    s = exhaustive_sweep(7, 9, workers=4)
    assert s.starts == 11439
    assert s.mature_checks > 30000 and s.top_checks > 20000
