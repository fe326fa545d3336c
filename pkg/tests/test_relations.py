import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import posets
from oracles import as_lists, naive_is_tolerance, naive_maximal_cliques, symmetric_relations
from tolposet import (
    BinaryRelation, Poset, all_posets, blocks, check_condition, diagonal, from_cliques, full,
    interval, is_congruence, is_convex, is_directed, is_lattice, is_tolerance, tolerance_witness,
    bottom, top,
)
from tolposet.enumeration import closed_relations
from tolposet.errors import RelationError
from tolposet.relations import close_under_bounds, replay_witness


@st.composite
def poset_and_relation(draw, max_n=6):
    p = draw(posets(max_n=max_n))
    m = np.eye(p.n, dtype=bool)
    for i in range(p.n):
        for j in range(i + 1, p.n):
            m[i, j] = m[j, i] = draw(st.booleans())
    return p, BinaryRelation(p, m)


class TestConstruction:
    def test_trivial(self, fig1):
        assert blocks(fig1, diagonal(fig1)) == [(i,) for i in range(6)]
        assert blocks(fig1, full(fig1)) == [tuple(range(6))]
        assert is_tolerance(fig1, diagonal(fig1)) and is_tolerance(fig1, full(fig1))

    def test_from_cliques(self, fig1, rel):
        t1 = rel(fig1, "0abc", "bcd1")
        i = fig1.index
        assert (i("b"), i("d")) in t1 and (i("0"), i("d")) not in t1
        assert from_cliques(fig1, []) == diagonal(fig1)

    def test_fig5_c6(self, fig5, rel, fx):
        assert rel(fig5, "ac", "bd") == fx("fig5-C6")

    def test_rejects_bad_matrices(self, fig5):
        with pytest.raises(RelationError, match="reflexive"):
            BinaryRelation(fig5, np.zeros((4, 4)))
        m = np.eye(4, dtype=bool)
        m[0, 1] = True
        with pytest.raises(RelationError, match="symmetric"):
            BinaryRelation(fig5, m)
        with pytest.raises(RelationError):
            from_cliques(fig5, [(0, 7)])

    def test_set_operations(self, fig1, rel):
        t1, t2 = rel(fig1, "0abc", "bcd1"), rel(fig1, "0abd", "acd1")
        assert (t1 & t2) == rel(fig1, "0ab", "ac", "bd", "cd1")
        assert (t1 & t2) <= t1 and not t1 <= t2
        assert t1 | t2 >= t1


class TestConditions:
    def test_fig1_intersection_fails(self, fig1, rel):
        meet_rel = rel(fig1, "0ab", "ac", "bd", "cd1")
        w = tolerance_witness(fig1, meet_rel)
        assert w is not None and replay_witness(fig1, meet_rel, w)
        assert not is_tolerance(fig1, meet_rel)

    def test_fig1_t1_passes_every_condition(self, fig1, rel):
        t1 = rel(fig1, "0abc", "bcd1")
        assert all(check_condition(fig1, t1, k) is None for k in (1, 2, 3, 4))

    def test_chain_endpoints_only(self):
        c = Poset.chain(3)
        t = from_cliques(c, [(0, 2)])
        w = check_condition(c, t, 2)
        # (0,2),(1,1) in T forces (0 meet 1, 2 meet 1) = (0,1)
        assert w.elements == (0, 2, 1, 1)
        assert replay_witness(c, t, w)

    def test_fig2_t3(self, fig2, rel):
        assert is_tolerance(fig2, rel(fig2, "0abc", "d"))

    def test_full_is_exempt_from_3_and_4(self):
        a = Poset.antichain(3)
        assert is_tolerance(a, full(a))
        # anything between diagonal and full on an antichain fails condition 3
        t = from_cliques(a, [(0, 1)])
        assert check_condition(a, t, 3) is not None

    def test_condition_id(self, fig1):
        with pytest.raises(ValueError):
            check_condition(fig1, diagonal(fig1), 5)

    def test_non_reflexive_reported(self, fig5):
        m = np.eye(4, dtype=bool)
        m[2, 2] = False
        w = tolerance_witness(fig5, BinaryRelation(fig5, m, check=False))
        assert w.condition == 0 and w.reason == "not reflexive"

    def test_fig5_crossed_relations_are_not_tolerances(self, fig5, fx):
        # (a,c),(d,b) related; a|d = d and c|b = c, but (d,c) is not related
        for name, elems in (("fig5-C6", ("a", "c", "d", "b")), ("fig5-C7", ("a", "d", "c", "b"))):
            t = fx(name)
            w = check_condition(fig5, t, 1)
            assert w.elements == tuple(fig5.index(x) for x in elems)
            assert replay_witness(fig5, t, w)
            assert not naive_is_tolerance(as_lists(fig5.leq), as_lists(t.pairs))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_oracle_on_all_small_relations(self, n):
        for p in all_posets(n):
            leq = as_lists(p.leq)
            for T in symmetric_relations(n):
                t = BinaryRelation(p, T)
                assert is_tolerance(p, t) == naive_is_tolerance(leq, T)

    @given(poset_and_relation())
    @settings(max_examples=200, deadline=None)
    def test_witnesses_replay(self, pr):
        p, t = pr
        for k in (1, 2, 3, 4):
            w = check_condition(p, t, k)
            if w is not None:
                assert w.condition == k
                assert replay_witness(p, t, w)

    @given(poset_and_relation(max_n=5))
    @settings(max_examples=150, deadline=None)
    def test_verdict_matches_oracle(self, pr):
        p, t = pr
        assert is_tolerance(p, t) == naive_is_tolerance(as_lists(p.leq), as_lists(t.pairs))


class TestCongruence:
    def test_fig1_t1_not_transitive(self, fig1, rel):
        assert not is_congruence(fig1, rel(fig1, "0abc", "bcd1"))

    def test_diagonal(self, fig4):
        assert is_congruence(fig4, diagonal(fig4))

    def test_fig5_single_pair_relations(self, fig5, fx):
        for i in (1, 2, 3, 4, 5, 8):
            assert is_congruence(fig5, fx(f"fig5-C{i}"))

    def test_fig5_c7_rejected(self, fig5, fx):
        assert not is_congruence(fig5, fx("fig5-C7"))


class TestBlocks:
    def test_fig1(self, fig1, rel):
        bs = blocks(fig1, rel(fig1, "0abc", "bcd1"))
        assert [fig1.format_set(b) for b in bs] == ["{0,a,b,c}", "{b,c,d,1}"]

    def test_fig9_s(self, fig1, rel):
        bs = blocks(fig1, rel(fig1, "0a", "d1"))
        assert [fig1.format_set(b) for b in bs] == ["{0,a}", "{b}", "{c}", "{d,1}"]

    def test_non_tolerance_blocks(self, fig1, rel):
        bs = blocks(fig1, rel(fig1, "0ab", "ac", "bd", "cd1"))
        names = [fig1.format_set(b) for b in bs]
        assert "{0,a,b}" in names and "{c,d,1}" in names
        assert not is_directed(fig1, fig1.ids("0ab"))
        assert not is_directed(fig1, fig1.ids("cd1"))

    @given(poset_and_relation(max_n=7))
    @settings(max_examples=150, deadline=None)
    def test_against_brute_force_and_networkx(self, pr):
        p, t = pr
        bs = blocks(p, t)
        assert bs == naive_maximal_cliques(as_lists(t.pairs))
        g = nx.Graph()
        g.add_nodes_from(range(p.n))
        g.add_edges_from((i, j) for i in range(p.n) for j in range(i + 1, p.n) if t.pairs[i, j])
        assert bs == sorted(tuple(sorted(c)) for c in nx.find_cliques(g))

    @given(poset_and_relation(max_n=7))
    @settings(max_examples=100, deadline=None)
    def test_reconstruction_and_coverage(self, pr):
        p, t = pr
        bs = blocks(p, t)
        assert from_cliques(p, bs) == t
        assert set().union(*bs) == set(range(p.n))


@pytest.fixture(scope="module")
def instances():
    from tolposet import all_tolerances
    return [(p, t) for n in range(1, 6) for p in all_posets(n) for t in all_tolerances(p)]


class TestTolerancesStructure:
    """Properties of every tolerance on every poset with at most 5 elements."""

    def test_interval_squares(self, instances):
        for p, t in instances:
            for a in range(p.n):
                for b in range(p.n):
                    if p.leq[a, b] and t.pairs[a, b]:
                        iv = list(interval(p, a, b))
                        assert t.pairs[np.ix_(iv, iv)].all()

    def test_blocks_directed_convex_intervals(self, instances):
        for p, t in instances:
            for b in blocks(p, t):
                lo, hi = bottom(p, b), top(p, b)
                if lo is not None and hi is not None:
                    assert interval(p, lo, hi) == b
                if t.is_trivial:
                    continue
                assert is_directed(p, b) and is_convex(p, b)
                assert interval(p, lo, hi) == b


class TestClosure:
    @given(poset_and_relation(max_n=5))
    @settings(max_examples=100, deadline=None)
    def test_closure_is_closed_and_minimal(self, pr):
        p, t = pr
        c = close_under_bounds(p, t.pairs)
        assert (c >= t.pairs).all()
        closed = BinaryRelation(p, c)
        assert check_condition(p, closed, 1) is None and check_condition(p, closed, 2) is None
        assert (close_under_bounds(p, c) == c).all()

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_on_lattices_conditions_1_2_imply_3_4(self, n):
        for p in all_posets(n):
            if not is_lattice(p):
                continue
            for r in closed_relations(p):
                assert check_condition(p, r, 3) is None
                assert check_condition(p, r, 4) is None
