"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACn PASS|FAIL`` line (visible without ``-s``).
Run with ``pytest tests/test_acceptance.py -v``; add ``-m nightly`` for the
six-element sweep.
"""
import time

import pytest

from oracles import naive_posets
from tolposet import (
    Poset, all_congruences, all_posets, all_tolerances, blocks, bottom, congruence_bijection_g,
    exists_order_preserving_bijection, family_join, family_poset, injection_f, is_congruence, is_directed,
    is_lattice, is_order_preserving, is_relatively_complemented, is_tolerance, minimal_upper_bounds,
    quotient_poset, quotient_relation, refines, tolerance_witness, top, verify_theorems,
)
from tolposet.figures import load_poset, load_relation
from tolposet.refinement import double_quotient, order_violation
from tolposet.relations import replay_witness


@pytest.fixture
def criterion(request, capsys):
    state = {"limit": None, "elapsed": 0.0}
    start = time.perf_counter()
    yield state
    elapsed = state["elapsed"] or time.perf_counter() - start
    rep = getattr(request.node, "call_report", None)
    ok = rep is not None and rep.passed
    name = request.node.name.removeprefix("test_").split("_", 1)[0].upper()
    limit = f" (limit {state['limit']:g} s)" if state["limit"] else ""
    with capsys.disabled():
        print(f"\n{name} {'PASS' if ok else 'FAIL'}: {request.function.__doc__.strip()} [{elapsed:.2f} s{limit}]")


class timed:
    def __init__(self, state, limit):
        self.state = state
        state["limit"] = limit

    def __enter__(self):
        self.t = time.perf_counter()

    def __exit__(self, *exc):
        self.state["elapsed"] = time.perf_counter() - self.t
        if exc[0] is None:
            assert self.state["elapsed"] < self.state["limit"], f"took {self.state['elapsed']:.2f} s"


def test_ac1_first_figure(criterion):
    """Fig. 1: T1, T2 tolerances, not congruences; T1 cap T2 fails with a witness; its blocks are not directed"""
    with timed(criterion, 1.0):
        p = load_poset("fig1")
        t1, t2 = load_relation("fig1-T1"), load_relation("fig1-T2")
        for t in (t1, t2):
            assert is_tolerance(p, t) and not is_congruence(p, t)
        meet = t1 & t2
        assert meet == load_relation("fig1-T1capT2")
        w = tolerance_witness(p, meet)
        assert w is not None and replay_witness(p, meet, w)
        bs = {p.format_set(b): b for b in blocks(p, meet)}
        assert "{0,a,b}" in bs and "{c,d,1}" in bs
        assert not is_directed(p, bs["{0,a,b}"]) and not is_directed(p, bs["{c,d,1}"])


def test_ac2_second_figure(criterion):
    """Fig. 2: T1..T4 are congruences; minimal upper bounds of T1, T2 are T3, T4; no join in Tol or Con"""
    with timed(criterion, 1.0):
        p = load_poset("fig2")
        t = {i: load_relation(f"fig2-T{i}") for i in range(1, 5)}
        for fam in (all_tolerances(p), all_congruences(p)):
            assert all(r in fam for r in t.values())
            assert set(minimal_upper_bounds(fam, t[1], t[2])) == {t[3], t[4]}
            assert family_join(fam, t[1], t[2]) is None
        assert all(is_congruence(p, r) for r in t.values())


def test_ac3_third_figure(criterion):
    """Fig. 3: P/T1 is a 2-chain, P/T2 is the 3-chain {0,a} < {b,c} < {d,1}"""
    p = load_poset("fig1")
    q1 = quotient_poset(p, load_relation("fig3-T1"))
    q2 = quotient_poset(p, load_relation("fig3-T2"))
    assert list(q1.poset.labels) == ["{0,a,b,c}", "{b,c,d,1}"]
    assert q1.poset.leq.tolist() == Poset.chain(2).leq.tolist()
    assert list(q2.poset.labels) == ["{0,a}", "{b,c}", "{d,1}"]
    assert q2.poset.leq.tolist() == Poset.chain(3).leq.tolist()


FIG6_COVERS = {
    ("C1", "C2"), ("C1", "C3"), ("C1", "C4"), ("C1", "C5"),
    ("C2", "C6"), ("C5", "C6"), ("C3", "C7"), ("C4", "C7"),
    ("C6", "C8"), ("C7", "C8"),
}


def test_ac4_fifth_figure(criterion):
    """Figs. 5 and 6: Tol = Con = {C1..C8} with the drawn cover relation"""
    with timed(criterion, 5.0):
        p = load_poset("fig5")
        named = {load_relation(f"fig5-C{i}").key(): f"C{i}" for i in range(1, 9)}
        tol, con = all_tolerances(p), all_congruences(p)
        assert {r.key() for r in tol} == {r.key() for r in con}
        found = {named.get(r.key(), r.describe()) for r in tol}
        fp = family_poset(tol)
        covers = {(named.get(tol.members[i].key()), named.get(tol.members[j].key())) for i, j in fp.cover_pairs}
    assert found == {f"C{i}" for i in range(1, 9)}, f"missing {sorted({f'C{i}' for i in range(1, 9)} - found)}"
    assert covers == FIG6_COVERS


def test_ac5_fourth_figure(criterion):
    """Fig. 4: relatively complemented, not a lattice, directed with bottom 0 and top 1"""
    p = load_poset("fig4")
    assert is_relatively_complemented(p)
    assert not is_lattice(p)
    assert is_directed(p, range(p.n))
    assert p.labels[bottom(p)] == "0" and p.labels[top(p)] == "1"


def test_ac6_first_refinement_example(criterion):
    """Figs. 7 and 8: S <= T, T/S a tolerance, |(P/S)/(T/S)| = |P/T| = 2, isomorphic"""
    p = load_poset("fig2")
    s, t = load_relation("fig7-S"), load_relation("fig7-T")
    assert refines(p, s, t)
    ts = quotient_relation(p, s, t)
    assert is_tolerance(ts.poset, ts)
    assert list(ts.poset.labels) == ["{0,a}", "{b,c}", "{d}"]
    assert blocks(ts.poset, ts) == [(0, 1), (2,)]
    f = injection_f(p, s, t)
    assert f.injective
    dq = double_quotient(p, s, t)
    assert len(dq.nested) == len(dq.by_t) == 2
    assert exists_order_preserving_bijection(dq.by_t, dq.nested)
    assert exists_order_preserving_bijection(dq.nested, dq.by_t)


def test_ac7_second_refinement_example(criterion):
    """Figs. 9 and 10: g bijective and order-preserving, g inverse not, no bijection P/T -> (P/S)/(T/S)"""
    p = load_poset("fig1")
    s, t = load_relation("fig9-S"), load_relation("fig9-T")
    assert refines(p, s, t)
    ts = quotient_relation(p, s, t)
    assert is_tolerance(ts.poset, ts)
    assert blocks(ts.poset, ts) == [(0,), (1, 2), (3,)]
    g = congruence_bijection_g(p, s, t)
    dq = double_quotient(p, s, t)
    d = [(0,), (1, 2), (3,)]
    c = [p.ids("0a"), p.ids("bc"), p.ids("d1")]
    assert [g[x] for x in d] == c
    assert is_order_preserving(g, dq.nested, dq.by_t)
    ginv = g.inverse()
    assert order_violation(ginv, dq.by_t, dq.nested) == (c[0], c[1])
    assert not exists_order_preserving_bijection(dq.by_t, dq.nested)


def test_ac8_sweep(criterion):
    """Exhaustive sweep to n = 5: zero failures on every claim, within 60 s"""
    with timed(criterion, 60.0):
        report = verify_theorems(5)
    assert report.ok, report.summary()


@pytest.mark.nightly
def test_ac8_nightly_sweep_six(criterion):
    """Exhaustive sweep to n = 6: zero failures on every claim, within 30 min"""
    with timed(criterion, 1800.0):
        report = verify_theorems(6)
    assert report.ok, report.summary()


def test_ac9_regression_counts(criterion):
    """Poset counts 1, 2, 5, 16, 63; 5 tolerances on the 3-chain; n = 4 counters stable across runs and workers"""
    counts = [len(all_posets(n)) for n in range(1, 6)]
    assert counts == [1, 2, 5, 16, 63]
    assert counts[:4] == [len(naive_posets(n)) for n in range(1, 5)]
    assert len(all_tolerances(Poset.chain(3))) == 5
    first = verify_theorems(4).to_json()
    assert first == verify_theorems(4).to_json() == verify_theorems(4, workers=2).to_json()
