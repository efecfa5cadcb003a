from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from conftest import multisets
from inventory.adjectives import (
    MATURE_CORES, AdjectiveState, decompose, deteriorates, enumerate_Tn, find_gn_cycles, functional_cycles, g_n,
    g_naive, gn_dot, is_deteriorate, mu_plus, naive_dot, partitions, required_cycle_elements, the_64_list, weight,
)
from inventory.dynamics import orbit
from inventory.errors import PreconditionError
from inventory.multiset import EMPTY, Multiset, parse_notation

LISTED_64 = """
2 3 4 5 6 7 8 9
22 23 24 33 25 34 26 35 44 27 36 45 28 37 46 55
222 223 224 233 225 234 333 226 235 244 334 227 236 245 335 344
2222 2223 2224 2233 2225 2234 2333 2226 2235 2244 2334 3333
22222 22223 22224 22233 22225 22234 22333
222222 222223 222224 222233
"""


def brute_Tn(n, limit):
    return {Multiset(t) for t in combinations_with_replacement(range(1, limit + 1), n) if sum(t) == 2 * n}


@pytest.mark.parametrize("n", range(1, 9))
def test_enumerate_Tn_matches_brute_force(n):
    got = enumerate_Tn(n)
    assert len(got) == len(set(got))
    assert set(got) == brute_Tn(n, n + 1)


def test_partitions():
    assert list(partitions(6, 3)) == [(1, 1, 4), (1, 2, 3), (2, 2, 2)]
    assert list(partitions(4, 2, 2)) == [(2, 2)]
    assert list(partitions(3, 2, 2)) == []


def test_mu_plus_and_g_n():
    assert mu_plus(parse_notation("1138")) == Multiset([3, 2, 2])
    assert g_n(parse_notation("13"), 2) == parse_notation("22")
    assert g_n(parse_notation("22"), 2) == parse_notation("13")
    with pytest.raises(PreconditionError):
        g_n(parse_notation("123"), 2)


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), multisets(max_element=20, max_order=n,
                                                                             min_order=1))))
def test_g_n_lands_in_Tn(args):
    n, S = args
    if S.order != n:
        S = Multiset(S.elements() + (1,) * (n - S.order))
    assert S.distinct <= n
    T = g_n(S, n)
    assert T.order == n and T.total == 2 * n


def test_census_of_small_cycles():
    cycles = {n: find_gn_cycles(n) for n in range(1, 8)}
    assert sum(len(c) for c in cycles.values()) == 9
    assert [len(c) for c in cycles[7]] == [1, 3]
    assert cycles[1] == [[Multiset([2])]]


def test_functional_cycles_is_generic():
    assert functional_cycles(range(6), lambda x: (x + 2) % 6) == [[0, 2, 4], [1, 3, 5]]
    assert functional_cycles("ab", lambda c: "a") == [["a"]]


@pytest.mark.parametrize("n", range(8, 13))
def test_every_large_cycle_meets_a_required_element(n):
    required = set(required_cycle_elements(n))
    assert len(required) == 6
    for cycle in find_gn_cycles(n):
        assert required & set(cycle), cycle


def test_loops_give_gn_cycles():
    for t in combinations_with_replacement(range(1, 8), 5):
        r = orbit(Multiset(t))
        n = r.loop[0].distinct
        images = [S.mu() for S in r.loop]
        for i, A in enumerate(images):
            assert g_n(A, n) == images[(i + 1) % len(images)]


@given(multisets(min_order=1, max_element=9))
def test_new_adjective_values_arrive_one_at_a_time(S):
    r = orbit(S)
    cs = [r.state(i).mu().distinct for i in range(r.preperiod + r.period + 1)]
    assert all(b <= a + 1 for a, b in zip(cs, cs[1:]))


@given(multisets(min_order=1))
def test_decompose_recomposes(S):
    d = decompose(S)
    assert d.recompose() == S.mu()
    assert 1 not in d.core


def test_decompose_examples():
    assert decompose(parse_notation("1138")) == AdjectiveState(2, EMPTY, 2)
    assert decompose(parse_notation("123")) == AdjectiveState(2, EMPTY, 1)
    assert decompose(parse_notation("1112233348")) == AdjectiveState(2, Multiset([2, 3]), 3)
    with pytest.raises(PreconditionError):
        decompose(EMPTY)


def test_g_naive():
    assert g_naive(EMPTY) == Multiset([2])
    assert g_naive(Multiset([2, 2, 3])) == Multiset([2, 2, 3])
    assert g_naive(Multiset([2, 4])) == Multiset([2, 2, 2])
    with pytest.raises(PreconditionError):
        g_naive(Multiset([1, 2]))


cores = st.lists(st.integers(2, 8), max_size=6).map(Multiset)


@given(cores)
def test_deterioration_lowers_weight(R):
    for D in deteriorates(R):
        assert weight(D) < weight(R)
        assert 1 not in D
        assert is_deteriorate(D, R)
    assert is_deteriorate(R, R)


@given(cores)
def test_decrement_alone_strictly_lowers_weight(R):
    if R:
        x = R.height
        lowered = R - Multiset([x]) + (Multiset([x - 1]) if x > 2 else EMPTY)
        assert weight(lowered) == weight(R) - 1
        assert is_deteriorate(lowered, R)


def test_deterioration_examples():
    assert deteriorates(Multiset([2])) == {EMPTY}
    assert deteriorates(Multiset([3])) == {EMPTY, Multiset([2])}
    assert Multiset([2, 3]) in deteriorates(Multiset([3, 3]))
    assert not is_deteriorate(Multiset([2, 2, 2]), Multiset([2, 4]))


def test_the_64_list_matches_the_listing():
    expected = {EMPTY} | {parse_notation(tok) for tok in LISTED_64.split()}
    ours = the_64_list()
    assert len(ours) == 64
    assert set(ours) == expected
    assert set(MATURE_CORES) <= expected


def test_64_list_closed_under_g_naive_and_deterioration():
    listed = set(the_64_list())
    for R in listed:
        assert g_naive(R) in listed
        assert deteriorates(R) <= listed


def test_dot_outputs_parse():
    pydot = pytest.importorskip("pydot")
    for text in (gn_dot(7), naive_dot()):
        graphs = pydot.graph_from_dot_data(text)
        assert graphs and len(graphs) == 1
    g = pydot.graph_from_dot_data(gn_dot(7))[0]
    assert len(g.get_edges()) == len(enumerate_Tn(7))
