from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dbsplit.analysis import analyze
from dbsplit.analysis.deps import DepEdge
from dbsplit.corpus import fuzz_workload, neworder_workload, source
from dbsplit.corpus.fuzz import fuzz_program
from dbsplit.frontend import ast as A
from dbsplit.frontend import load
from dbsplit.graph import NetParams, PartitionGraph, build_graph, edge_count
from dbsplit.interp import Call, Profile, Workload, profile

NET = NetParams.of(2, 4)  # 2 ms per message, 4 bytes per ms


def sid_of(p, pred):
    hits = [s.sid for _, s in p.statements() if pred(s)]
    assert len(hits) == 1, hits
    return hits[0]


def weight(g: PartitionGraph, kind: str, src: str, dst: str) -> Fraction:
    ws = [e.weight for e in g.edges if (e.kind, e.src, e.dst) == (kind, src, dst)]
    assert len(ws) == 1, ws
    return ws[0]


LOOP = "entry fn f(n) { var i = 0; var s = 0; while (i < n) { s = s + i; i++; } return s; }"


def test_edge_count_takes_minimum_and_pseudo_ends():
    prof = Profile(count={1: 11, 2: 10, "console": 1})
    assert edge_count(DepEdge("s1", "s2", "control"), prof) == 10
    assert edge_count(DepEdge("f:C.a", "s1", "update"), prof) == 11
    assert edge_count(DepEdge("s2", "db", "control"), prof) == 10
    assert edge_count(DepEdge("console", "db", "control"), prof) == 0


def test_control_weight_is_lat_times_count():
    p = load(LOOP)
    prof, _ = profile(p, Workload(0, {}, [Call("f", (10,))]))
    g = build_graph(analyze(p), prof, NET)
    head = sid_of(p, lambda s: s.kind == "loop-head")
    body = sid_of(p, lambda s: isinstance(s, A.Assign) and s.target == "s" and s.expr != A.Const(0))
    assert weight(g, "control", f"s{head}", f"s{body}") == 2 * 10


def test_data_weight_is_size_over_bw_times_count():
    p = load(LOOP)
    prof, _ = profile(p, Workload(0, {}, [Call("f", (10,))]))
    g = build_graph(analyze(p), prof, NET)
    body = sid_of(p, lambda s: isinstance(s, A.Assign) and s.target == "s" and s.expr != A.Const(0))
    ret = sid_of(p, lambda s: isinstance(s, A.Return))
    # 8-byte int, min(10, 1) executions
    assert weight(g, "data", f"s{body}", f"s{ret}") == Fraction(8, 4) * 1


def test_update_weight_uses_written_statement_count():
    p = load("class C { int a; } entry fn f(n) { var o = new C(); var i = 0; "
             "while (i < n) { o.a = i; i++; } return 0; }")
    prof, _ = profile(p, Workload(0, {}, [Call("f", (3,))]))
    g = build_graph(analyze(p), prof, NET)
    w = sid_of(p, lambda s: isinstance(s, A.FieldWrite))
    assert weight(g, "update", "f:C.a", f"s{w}") == Fraction(8, 4) * 3


def test_node_weights_are_counts_and_prints_pinned():
    p = load("entry fn f(n) { var i = 0; while (i < n) { print(i); i++; } return 0; }")
    prof, _ = profile(p, Workload(0, {}, [Call("f", (4,))]))
    g = build_graph(analyze(p), prof, NET)
    pr = sid_of(p, lambda s: isinstance(s, A.Print))
    assert g.nodes[f"s{pr}"].weight == 4 and g.nodes[f"s{pr}"].pin == "APP"
    assert g.nodes["console"].pin == "APP" and g.nodes["db"].pin == "DB"


def test_queries_share_one_group():
    g = build_graph(analyze(load(source("neworder"))), profile(load(source("neworder")),
                                                                neworder_workload(0))[0], NET)
    queries = [n for n in g.nodes.values() if n.group is not None]
    assert len(queries) >= 2 and len({n.group for n in queries}) == 1


def test_ordering_edges_carry_no_weight():
    p = load(source("neworder"))
    g = build_graph(analyze(p), profile(p, neworder_workload(0))[0], NET)
    for e in g.edges:
        assert (e.weight is None) == (e.kind in ("anti", "output"))


def test_missing_profile_entry_is_an_error():
    p = load(LOOP)
    with pytest.raises(KeyError):
        build_graph(analyze(p), Profile(count={"console": 1}), NET)


def test_dump_restore_round_trip():
    p = load(source("neworder"))
    g = build_graph(analyze(p), profile(p, neworder_workload(2))[0], NetParams.of(0.5, 1e6))
    text = g.dump()
    again = PartitionGraph.restore(text)
    assert again.nodes == g.nodes and again.edges == g.edges and again.net == g.net
    assert again.dump() == text
    with pytest.raises(ValueError):
        PartitionGraph.restore(text.split("\n", 1)[1])


def test_net_params_reject_bad_values():
    with pytest.raises(ValueError):
        NetParams.of(-1, 1)
    with pytest.raises(ValueError):
        NetParams.of(1, 0)


def test_control_outweighs_data_at_default_network():
    p = load(source("neworder"))
    prof = profile(p, neworder_workload(0))[0]
    g = build_graph(analyze(p), prof, NetParams.of(2, 1e6))
    for e in g.edges:
        if e.kind == "data" and not e.summary:
            assert e.weight < 2 * max(edge_count(e, prof), 1)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=9),
       st.integers(min_value=1, max_value=9))
def test_weights_linear_in_network_parameters(seed, k_lat, k_bw):
    p = load(fuzz_program(seed))
    an = analyze(p)
    prof, _ = profile(p, fuzz_workload(seed))
    base = build_graph(an, prof, NET)
    scaled = build_graph(an, prof, NetParams(NET.lat * k_lat, NET.bw * k_bw))
    for a, b in zip(base.edges, scaled.edges):
        assert (a.src, a.dst, a.kind) == (b.src, b.dst, b.kind)
        if a.weight is None:
            assert b.weight is None
        elif a.kind == "control":
            assert b.weight == a.weight * k_lat
        else:
            assert b.weight == a.weight / k_bw


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=5))
def test_weights_linear_in_profile_counts(seed, k):
    p = load(fuzz_program(seed))
    an = analyze(p)
    prof, _ = profile(p, fuzz_workload(seed))
    many = Profile({s: c * k for s, c in prof.count.items()}, dict(prof.def_size))
    a, b = build_graph(an, prof, NET), build_graph(an, many, NET)
    for x, y in zip(a.edges, b.edges):
        if x.weight is not None:
            assert y.weight == x.weight * k
