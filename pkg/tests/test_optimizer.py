from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_placement, random_graph

from dbsplit.analysis import analyze
from dbsplit.corpus import neworder_workload, source
from dbsplit.frontend import load
from dbsplit.graph import NetParams, Node, PartitionGraph, WeightedEdge, build_graph
from dbsplit.interp import profile
from dbsplit.optimizer import InfeasibleError, formulate, place, solve


def graph(nodes, edges) -> PartitionGraph:
    g = PartitionGraph()
    for n in nodes:
        g.nodes[n.id] = n
    for src, dst, w in edges:
        g.edges.append(WeightedEdge(src, dst, "data", None if w is None else Fraction(w)))
    return g


def stmt(nid, w=1, pin=None, group=None):
    return Node(nid, "stmt", w, pin, group)


def test_formulation_counts():
    g = graph([stmt("s1"), stmt("s2")], [("s1", "s2", 3)])
    prob = formulate(g, 1)
    assert len(prob.node_vars) == 2 and len(prob.edge_vars) == 1
    assert len(prob.constraints) == 3  # two cut rows and the budget
    assert prob.budget == 1
    assert "Minimize" in prob.to_lp() and "Binary" in prob.to_lp()


def test_ordering_edges_are_not_variables():
    g = graph([stmt("s1"), stmt("s2")], [("s1", "s2", None)])
    assert formulate(g, 0).edge_vars == []


def test_negative_budget_rejected():
    with pytest.raises(ValueError):
        formulate(graph([stmt("s1")], []), -1)


def test_budget_zero_keeps_statements_on_app():
    p = load(source("neworder"))
    g = build_graph(analyze(p), profile(p, neworder_workload(0))[0], NetParams.of(2, 1e6))
    pg = place(g, 0)
    for nid, n in g.nodes.items():
        if n.kind == "stmt":
            assert pg.host(nid) == "APP"
    assert pg.host("db") == "DB"


def test_pull_toward_pinned_db():
    # s1 talks heavily to the db; an unlimited budget moves it over
    g = graph([Node("db", "db", 0, "DB"), stmt("s1", 5), Node("console", "console", 0, "APP")],
              [("s1", "db", 10), ("console", "s1", 1)])
    assert place(g, None).host("s1") == "DB"
    assert place(g, 4).host("s1") == "APP"
    assert place(g, 5).objective_value == 1


def test_triangle_min_cut():
    g = graph([Node("a", "console", 0, "APP"), stmt("s1"), stmt("s2"), Node("d", "db", 0, "DB")],
              [("a", "s1", 4), ("s1", "s2", 1), ("s2", "d", 4), ("s1", "d", 2), ("a", "s2", 2)])
    pg = place(g, None)
    assert (pg.host("s1"), pg.host("s2")) == ("APP", "DB")
    assert pg.objective_value == 1 + 2 + 2


def test_zero_weight_edges_do_not_move_nodes():
    g = graph([Node("d", "db", 0, "DB"), stmt("s1")], [("s1", "d", 0)])
    pg = place(g, None)
    assert pg.objective_value == 0 and pg.host("s1") == "APP"  # fewer DB nodes wins ties


def test_groups_move_together():
    g = graph([Node("d", "db", 0, "DB"), stmt("q1", 1, group="db-api"), stmt("q2", 1, group="db-api")],
              [("q1", "d", 5)])
    pg = place(g, 2)
    assert pg.host("q1") == pg.host("q2") == "DB"
    assert place(g, 1).host("q2") == "APP"


def test_conflicting_pins_are_infeasible():
    g = graph([stmt("s1", pin="APP", group="g"), stmt("s2", pin="DB", group="g")], [])
    with pytest.raises(InfeasibleError):
        formulate(g, None)
    g2 = graph([stmt("s1", 3, pin="DB")], [])
    with pytest.raises(InfeasibleError):
        formulate(g2, 2)


def test_report_lists_cut_edges():
    g = graph([Node("d", "db", 0, "DB"), stmt("s1")], [("s1", "d", 7)])
    text = place(g, 0).report()
    assert "objective 7" in text and "cut data s1 d 7" in text


def _load(g, pl):
    return sum(n.weight for nid, n in g.nodes.items() if n.kind == "stmt" and pl.host(nid) == "DB")


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=0, max_value=120))
def test_solution_is_optimal_and_satisfies_constraints(seed, budget):
    g = random_graph(random.Random(seed), 12)
    expect = brute_force_placement(g, budget)
    if expect is None:
        with pytest.raises(InfeasibleError):
            place(g, budget)
        return
    prob = formulate(g, budget)
    a = solve(prob)
    x = {v: (1 if a.placement[prob.var_nodes[v][0]] == "DB" else 0) for v in prob.node_vars}
    x.update({ev: int(x[u] != x[w]) for ev, (u, w) in zip(prob.edge_vars, prob.edge_ends)})
    assert all(c.holds(x) for c in prob.constraints)
    assert prob.feasible(x)
    assert a.objective_value == expect[0]
    assert {nid: int(h == "DB") for nid, h in a.placement.items()} in expect[1]


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_objective_nonincreasing_in_budget(seed):
    g = random_graph(random.Random(seed), 14)
    prev = None
    for budget in (0, 5, 20, 60, None):
        try:
            pg = place(g, budget)
        except InfeasibleError:
            continue
        if budget is not None:
            assert _load(g, pg) <= budget
        for nid, n in g.nodes.items():
            if n.pin is not None:
                assert pg.host(nid) == n.pin
        if prev is not None:
            assert pg.objective_value <= prev
        prev = pg.objective_value
