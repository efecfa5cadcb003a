import json

import pytest

from inventory.adjectives import MATURE_CORES, decompose, g_naive, is_deteriorate
from inventory.backtrack import (
    CONTRADICTION, IMMATURE, TOP, Const, NMinus, backtrack_tree, bounded_edges, core_label, edge_occurrence_bound,
    expected_top, mature_edge_counts, mature_edges, mature_successor, parse_core,
)
from inventory.dynamics import orbit, step
from inventory.errors import BudgetExceeded, PreconditionError
from inventory.multiset import EMPTY, Multiset
from inventory.verify import SharpFamily, sharp_family

M = frozenset([TOP])


def core(text):
    return parse_core(text)


def test_symbolic_values():
    assert NMinus(0) < NMinus(-1) and NMinus(3) < NMinus(1)
    assert not NMinus(5) < Const(4)
    assert str(NMinus(0)) == "n" and str(NMinus(2)) == "n-2" and str(NMinus(-1)) == "n+1"


@pytest.mark.parametrize("R, new, R2", [
    ("222", M, "4"),
    ("24", M, "22"),
    ("22", M, "3"),
    ("empty", frozenset(), "2"),
    ("2", frozenset([2]), "2"),
    ("23", frozenset([2, 3, TOP]), "empty"),
])
def test_mature_successor(R, new, R2):
    assert mature_successor(core(R), new) == core(R2)


def test_mature_successor_is_g_naive_without_new_values():
    for R in MATURE_CORES:
        assert mature_successor(R, frozenset()) == g_naive(R)


def test_mature_edge_set():
    edges = mature_edges()
    assert all(a in MATURE_CORES and b in MATURE_CORES for a, b, _ in edges)
    assert len({(a, b) for a, b, _ in edges}) == 27
    for a, b in bounded_edges():
        assert any((x, y) == (a, b) for x, y, _ in edges)


def test_expected_top_table():
    assert expected_top(EMPTY, 1) == NMinus(1)
    assert expected_top(core("2"), 0) == NMinus(0)
    assert expected_top(core("222"), 0) == NMinus(2)
    assert expected_top(core("4"), 2) == NMinus(6)
    with pytest.raises(PreconditionError):
        expected_top(core("24"), 1)
    with pytest.raises(PreconditionError):
        expected_top(core("5"), 0)


def test_occurrence_bounds():
    assert edge_occurrence_bound((core("24"), core("22"))) == 4
    assert edge_occurrence_bound((core("222"), core("4"))) == 1
    with pytest.raises(PreconditionError):
        edge_occurrence_bound((core("222"), core("24")))


def _paths(tree):
    by_id = {v.id: v for v in tree.nodes}
    for v in tree.consistent_nodes:
        path = [v]
        while path[-1].parent is not None:
            path.append(by_id[path[-1].parent])
        yield path


def test_tree_222_to_4():
    tree = backtrack_tree((core("222"), core("4")))
    assert tree.max_occurrences == 1
    assert (tree.node_count, tree.height, tree.valid_from) == (5, 3, 9)
    assert tree.complete


def test_tree_24_to_22():
    tree = backtrack_tree((core("24"), core("22")))
    assert tree.max_occurrences <= 2
    assert tree.height <= 14
    assert (tree.node_count, tree.height, tree.valid_from) == (227, 14, 15)


@pytest.mark.parametrize("edge", [("222", "4"), ("24", "22"), ("24", "2", 4)])
def test_tree_structure(edge):
    if len(edge) == 3:
        tree = backtrack_tree((core(edge[0]), core(edge[1]), frozenset([edge[2], TOP])))
    else:
        tree = backtrack_tree((core(edge[0]), core(edge[1])))
    ids = [v.id for v in tree.nodes]
    assert ids == list(range(len(ids)))
    for v in tree.nodes:
        if not v.children:
            assert v.leaf in (IMMATURE, CONTRADICTION)
        if v.leaf == CONTRADICTION:
            assert not v.children
    for path in _paths(tree):
        assert [v.depth for v in path] == list(range(path[0].depth, -1, -1))
        assert path[0].occurrences == sum(
            (w.core, tree.nodes[w.parent].core if w.parent is not None else tree.edge[1], w.new) == tree.edge
            for w in path
        )
    json.loads(tree.dumps())


def test_tree_rejects_non_edges():
    with pytest.raises(PreconditionError):
        backtrack_tree((core("222"), core("24")))
    with pytest.raises(PreconditionError):
        backtrack_tree((core("5"), core("2")))


def test_tree_budget():
    with pytest.raises(BudgetExceeded) as exc:
        backtrack_tree((core("24"), core("22")), budget=20)
    assert not exc.value.partial.complete


def test_dot_parses():
    pydot = pytest.importorskip("pydot")
    text = backtrack_tree((core("222"), core("4"))).to_dot()
    assert len(pydot.graph_from_dot_data(text)) == 1


def _mature_run(S0, limit=400):
    r = orbit(S0, limit)
    return [r.state(i) for i in range(r.preperiod + 1)]


@pytest.mark.parametrize("fam, k", [(SharpFamily.FOUR_FOUR, 20), (SharpFamily.THREE_THREE, 20),
                                    (SharpFamily.REPEAT, 25)])
def test_orbits_respect_bounds_and_top_table(fam, k):
    S0, _ = sharp_family(fam, k)
    states = _mature_run(S0)
    mature = [i for i, S in enumerate(states) if S.order >= 16 and decompose(S).core in MATURE_CORES]
    assert mature
    first = mature[0]
    cores = [decompose(S).core for S in states[first:]]
    assert all(R in MATURE_CORES for R in cores)
    counts = mature_edge_counts(cores)
    for e in bounded_edges():
        assert counts[e] <= edge_occurrence_bound(e)
    for i in range(first + 1, len(states)):
        d = decompose(states[i])
        k_new = states[i].distinct - states[i - 1].distinct
        assert d.top == states[i].distinct - expected_top(d.core, k_new).c
    for i in range(max(first, 2), len(states) - 1):
        assert is_deteriorate(decompose(step(states[i])).core, g_naive(decompose(states[i]).core))


def test_core_label():
    assert core_label(EMPTY) == "empty" and core_label(core("24")) == "24"
    assert parse_core("{}") == EMPTY


@pytest.mark.parametrize("edge", [(core("2"), EMPTY, frozenset([2, TOP])), (core("24"), core("22"), frozenset([4]))])
def test_histories_through_repeatable_edges_do_not_close(edge):
    # a fresh top at every step keeps histories like empty <- empty <- ... consistent
    with pytest.raises(BudgetExceeded) as exc:
        backtrack_tree(edge, budget=1500)
    partial = exc.value.partial
    assert max(v.depth for v in partial.nodes) > 100
    assert partial.max_occurrences == 1


def test_every_realizable_cell_has_a_top_value():
    realized = {(R2, len(new)) for _, R2, new in mature_edges()}
    for R2, k in realized:
        expected_top(R2, k)
    assert (core("4"), 2) not in realized
    assert expected_top(core("4"), 2) == NMinus(6)
