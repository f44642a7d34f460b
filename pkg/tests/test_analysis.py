from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from dbsplit.analysis import (CONSOLE, DB, analyze, control_deps, def_use, dump_edges, fnode, order_edges,
                              parse_edges, points_to, snode, update_edges)
from dbsplit.corpus import all_names, fuzz_workload, source, workload
from dbsplit.corpus.fuzz import fuzz_program
from dbsplit.frontend import ast as A
from dbsplit.frontend import load
from dbsplit.interp import trace_def_use


def sids(p, pred, func=None):
    return [s.sid for f, s in p.statements() if (func is None or f.name == func) and pred(s)]


def one(p, pred, func=None):
    hits = sids(p, pred, func)
    assert len(hits) == 1, hits
    return hits[0]


def edges_of(es, kind):
    return {(e.src, e.dst) for e in es if e.kind == kind}


NEWORDER = load(source("neworder"))


def test_loop_body_control_dependent_on_loop_head():
    p = NEWORDER
    head = one(p, lambda s: s.kind == "loop-head", "computeTotalCost")
    body = [s.sid for s in p.func("computeTotalCost").body if s.sid == head][0]
    loop = p.stmt_map()[body]
    ctrl = edges_of(control_deps(p), "control")
    for s in loop.body:
        assert (snode(head), snode(s.sid)) in ctrl


def test_straight_line_entry_only_has_console_control():
    p = load("entry fn f(a) { var x = a + 1; var y = x * 2; return y; }")
    ctrl = [e for e in control_deps(p)]
    assert {e.src for e in ctrl} == {CONSOLE}
    assert {e.dst for e in ctrl} == {snode(s.sid) for _, s in p.statements()}
    assert all(e.is_interprocedural for e in ctrl)


def test_nested_if_in_loop():
    p = load("entry fn f(n) { var i = 0; var c = 0; while (i < n) { if (i > 2) { c = c + 1; } i++; } return c; }")
    head = one(p, lambda s: s.kind == "loop-head")
    branch = one(p, lambda s: s.kind == "if-head")
    inner = one(p, lambda s: isinstance(s, A.Assign) and s.target == "c" and s.expr != A.Const(0))
    ctrl = edges_of(control_deps(p), "control")
    assert (snode(branch), snode(inner)) in ctrl
    assert (snode(head), snode(branch)) in ctrl
    assert (snode(head), snode(inner)) not in ctrl


def test_call_and_query_control_edges():
    p = NEWORDER
    ctrl = {(e.src, e.dst): e for e in control_deps(p) if e.kind == "control"}
    call = one(p, lambda s: isinstance(s, A.Call) and s.func == "insertNewLineItem")
    for s in p.func("insertNewLineItem").body:
        e = ctrl[(snode(call), snode(s.sid))]
        assert e.is_interprocedural
    for q in sids(p, lambda s: s.kind == "query"):
        assert (snode(q), DB) in ctrl


def test_real_cost_def_reaches_total_cost_update():
    p = NEWORDER
    real = one(p, lambda s: isinstance(s, A.Assign) and s.target == "realCost")
    add = one(p, lambda s: isinstance(s, A.Assign) and isinstance(s.expr, A.Binary)
              and A.Var("realCost") in (s.expr.left, s.expr.right) and s.expr.op == "+")
    assert (snode(real), snode(add)) in edges_of(def_use(p), "data")


def test_dead_def_has_no_data_edges():
    p = load("entry fn f(a) { var x = a * 2; return a; }")
    x = one(p, lambda s: isinstance(s, A.Assign) and s.target == "x")
    assert not [e for e in def_use(p) if e.src == snode(x)]


def test_array_aliasing_by_allocation_site():
    distinct = load("entry fn f(n) { var a = new int[n]; var b = new int[n]; "
                    "a[0] = 1; b[0] = 2; var x = a[0]; var y = b[0]; return x + y; }")
    wa = one(distinct, lambda s: isinstance(s, A.ArrayWrite) and s.arr == "a")
    wb = one(distinct, lambda s: isinstance(s, A.ArrayWrite) and s.arr == "b")
    ra = one(distinct, lambda s: isinstance(s, A.ArrayRead) and s.arr == "a")
    rb = one(distinct, lambda s: isinstance(s, A.ArrayRead) and s.arr == "b")
    data = edges_of(def_use(distinct), "data")
    assert (snode(wa), snode(ra)) in data and (snode(wb), snode(rb)) in data
    assert (snode(wa), snode(rb)) not in data and (snode(wb), snode(ra)) not in data

    same = load("entry fn f(n) { var a = new int[n]; var b = a; "
                "a[0] = 1; var y = b[0]; return y; }")
    w = one(same, lambda s: isinstance(s, A.ArrayWrite))
    r = one(same, lambda s: isinstance(s, A.ArrayRead))
    assert (snode(w), snode(r)) in edges_of(def_use(same), "data")


def test_update_edges_for_fields():
    p = NEWORDER
    upd = edges_of(update_edges(p), "update")
    writes = sids(p, lambda s: isinstance(s, A.FieldWrite) and s.field == "totalCost")
    assert len(writes) == 2  # placeOrder and computeTotalCost
    assert {(fnode("Order", "totalCost"), snode(w)) for w in writes} <= upd
    assert not [e for e in upd if e[1] == fnode("Order", "totalCost")]
    q = load("class C { int a; int b; } entry fn f() { var o = new C(); o.a = 1; var x = o.b; return x; }")
    assert not [e for e in update_edges(q) if e.src == fnode("C", "b")]


def test_update_edges_for_arrays_start_at_allocation():
    p = NEWORDER
    alloc = one(p, lambda s: isinstance(s, A.NewArray), "computeTotalCost")
    write = one(p, lambda s: isinstance(s, A.ArrayWrite), "computeTotalCost")
    assert (snode(alloc), snode(write)) in edges_of(update_edges(p), "update")


def test_output_and_anti_edges():
    p = load("entry fn f(a) { var x = a; x = 2; var y = x; x = 3; return y; }")
    w1, w2, w3 = sids(p, lambda s: isinstance(s, A.Assign) and s.target == "x")
    r = one(p, lambda s: isinstance(s, A.Assign) and s.target == "y")
    es = order_edges(p)
    assert (snode(w1), snode(w2)) in edges_of(es, "output")
    assert (snode(r), snode(w3)) in edges_of(es, "anti")


def test_loop_updates_mutually_unordered_after_real_cost():
    p = NEWORDER
    loop = [s for s in p.func("computeTotalCost").body if isinstance(s, A.While)][0]
    body = [s.sid for s in loop.body]
    real = one(p, lambda s: isinstance(s, A.Assign) and s.target == "realCost")
    k = body.index(real)
    # totalCost update, array store with increment, line item insert
    groups = [body[k + 1:k + 4], body[k + 4:k + 7], body[k + 7:k + 9]]
    fwd = {(e.src, e.dst) for e in analyze(p).edges if not e.is_back_edge and not e.is_interprocedural}
    for i, g in enumerate(groups):
        for j, h in enumerate(groups):
            if i != j:
                assert not {(snode(a), snode(b)) for a in g for b in h} & fwd
    for g in groups:
        assert any((snode(real), snode(s)) in fwd for s in g)


def test_points_to_sites():
    p = load("entry fn f(c) { var a = new int[2]; var b = null; "
             "if (c) { b = new int[3]; } else { b = new int[4]; } return len(b); }")
    pt = points_to(p)
    assert len(pt.arrays("f", "a")) == 1
    assert len(pt.arrays("f", "b")) == 2

    q = load("fn g(x) { return len(x); } entry fn f() { var a = new int[1]; var b = new int[2]; "
             "var r = g(a); var s = g(b); return r + s; }")
    pq = points_to(q)
    assert pq.arrays("g", "x") == pq.arrays("f", "a") | pq.arrays("f", "b")
    assert len(pq.arrays("g", "x")) == 2


def test_edge_dump_round_trip_and_determinism():
    a = analyze(NEWORDER)
    text = dump_edges(a.edges)
    assert parse_edges(text) == a.edges
    assert dump_edges(analyze(load(source("neworder"))).edges) == text


def _check_dynamic_pairs_covered(p, loads):
    data = {(e.src, e.dst) for e in analyze(p).edges if e.kind == "data"}
    for w in loads:
        for writer, reader in trace_def_use(p, w):
            if writer == reader:
                continue  # a node is never cut from itself
            src = CONSOLE if writer == CONSOLE else snode(writer)
            assert (src, snode(reader)) in data, (src, reader)


def test_static_edges_cover_dynamic_def_use_on_corpus():
    for name in all_names():
        p = load(source(name))
        _check_dynamic_pairs_covered(p, [workload(name, s) for s in range(3)])


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_static_edges_cover_dynamic_def_use_generated(seed):
    _check_dynamic_pairs_covered(load(fuzz_program(seed)), [fuzz_workload(seed)])
