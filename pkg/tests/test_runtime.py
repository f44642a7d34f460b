from __future__ import annotations

import random
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_placement

from dbsplit.analysis import analyze
from dbsplit.codegen import generate
from dbsplit.corpus import fuzz_workload, source, workload
from dbsplit.corpus.fuzz import fuzz_program
from dbsplit.frontend import load
from dbsplit.graph import skeleton
from dbsplit.interp import Call, MiniDb, Workload, run_reference
from dbsplit.optimizer import Assignment, apply
from dbsplit.runtime import (AppDriver, CostModel, EventLog, HostRuntime, SessionError, check_blocking,
                             run_distributed)
from dbsplit.runtime import wire as W
from dbsplit.runtime.adaptive import (HIGH, LOW, AdaptiveState, LoadTrace, Poller, ScriptedSampler,
                                      choose_partition, choose_regime, ewma_update)
from dbsplit.values import Ref, make_oid

TABLES = {"T": {"columns": ["id", "v"], "rows": [[1, 10], [2, 20]]}}


def bundle_for(p, db_pred):
    an = analyze(p)
    g = skeleton(an)
    pl = {nid: (n.pin or ("DB" if db_pred(nid, n) else "APP")) for nid, n in g.nodes.items()}
    return generate(an, apply(Assignment(pl, set(), Fraction(0)), g)).bundle


# ------------------------------------------------------------------ wire

values = st.one_of(
    st.none(), st.booleans(), st.integers(min_value=-(1 << 63), max_value=(1 << 63) - 1),
    st.floats(allow_nan=False), st.text(max_size=20),
    st.builds(lambda s: Ref(make_oid(s, 1, 0), "C"), st.integers(min_value=0, max_value=1000)),
    st.builds(lambda s: Ref(make_oid(s, 0, 0xFFFF), None), st.integers(min_value=0, max_value=1000)),
)


@settings(max_examples=100, deadline=None)
@given(st.lists(values, max_size=6), st.lists(values, max_size=4), st.integers(min_value=0, max_value=4))
def test_transfer_frame_round_trip(slots, args, keep):
    t = W.Transfer(
        W.DBCALL, 3,
        W.StackDelta(keep, [(0, i, v) for i, v in enumerate(slots)],
                     [W.PushedFrame(7, 1, 2, -1, list(slots))]),
        [W.HeapUpdate(W.NATIVE, make_oid(1, 0, 0xFFFF), [(5, v) for v in args]),
         W.HeapUpdate(W.PART_DB, make_oid(2, 1, 0), [(0, 3, v) for v in args])],
        template="get T", args=list(args))
    fr = W.Frame(W.TRANSFER, 9, 4, 123, t)
    assert W.decode(W.encode(fr), ["C"]) == fr
    res = W.Frame(W.TRANSFER, 9, 5, 124, W.Transfer(W.DBRESULT, rows=[list(args), list(slots)]))
    assert W.decode(W.encode(res), ["C"]) == res


def test_frame_errors():
    data = W.encode(W.Frame(W.TRANSFER, 1, 1, 1, W.Transfer(W.FINISH, value=5)))
    with pytest.raises(W.WireError):
        W.decode(data[:-1], [])
    bad = bytearray(data)
    bad[8] = 9  # version byte
    with pytest.raises(W.WireError, match="version"):
        W.decode(bytes(bad), [])
    bad = bytearray(data)
    bad[4:8] = b"XXXX"
    with pytest.raises(W.WireError):
        W.decode(bytes(bad), [])


def test_hello_and_error_frames():
    fr = W.Frame(W.HELLO, 1, 0, 0, digest=bytes(range(32)))
    assert W.decode(W.encode(fr), []) == fr
    er = W.Frame(W.ERROR, 1, 0, 0, text="boom")
    assert W.decode(W.encode(er), []).text == "boom"


# ------------------------------------------------------------------ adaptive


def test_ewma_examples():
    assert ewma_update(50, 30, 0.2) == pytest.approx(34.0, abs=1e-12)
    assert ewma_update(42, 42, 0.7) == pytest.approx(42)
    assert ewma_update(90, 10, 0.0) == 10
    assert ewma_update(90, 10, 1.0) == 90
    with pytest.raises(ValueError):
        ewma_update(10, 10, 1.5)
    with pytest.raises(ValueError):
        ewma_update(10, 101, 0.5)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 100), st.floats(0, 100), st.floats(0, 1))
def test_ewma_stays_between_previous_and_sample(l_prev, s, alpha):
    l_t = ewma_update(l_prev, s, alpha)
    assert min(l_prev, s) - 1e-9 <= l_t <= max(l_prev, s) + 1e-9


def test_first_sample_initializes_load():
    stt = AdaptiveState({LOW: "a", HIGH: "b"})
    assert stt.on_load(70) == 70
    assert stt.on_load(20) == pytest.approx(0.2 * 70 + 0.8 * 20)


def test_choose_partition_threshold():
    stt = AdaptiveState({LOW: "low-id", HIGH: "high-id"}, threshold=40)
    stt.load = 41
    assert choose_partition(stt) == "low-id" and choose_regime(stt) == LOW
    stt.load = 40
    assert choose_partition(stt) == "high-id"
    assert choose_partition(AdaptiveState({HIGH: "only"}, load=99)) == "only"
    with pytest.raises(ValueError):
        choose_partition(AdaptiveState({}))


def test_poller_delivers_one_message_per_interval():
    trace = LoadTrace.parse("0 20\n300 80\n")
    stt = AdaptiveState({LOW: "a", HIGH: "b"})
    poll = Poller(stt, ScriptedSampler(trace), 100)
    poll.advance(450)
    assert [t for t, _, _ in poll.history] == [0, 100, 200, 300, 400]
    assert [s for _, s, _ in poll.history] == [20, 20, 20, 80, 80]


def test_load_trace_validation():
    with pytest.raises(ValueError):
        LoadTrace.parse("0 120\n")
    with pytest.raises(ValueError):
        LoadTrace.parse("10 5\n0 5\n")
    assert LoadTrace.parse("# header\n0 5 # note\n").samples == [5.0]


# ------------------------------------------------------------------ sessions


def test_all_app_without_queries_sends_nothing():
    p = load("entry fn f(a) { var x = a * 2; print(x); return x; }")
    b = bundle_for(p, lambda nid, n: False)
    tr, stats = run_distributed(b, Workload(0, {}, [Call("f", (4,))]))
    assert tr.lines == ["8", "=> 8"] and stats[0].transfers == 0 and stats[0].frames == 0


def test_query_round_trips_count_as_transfers():
    p = load('entry fn f(k) { var r = query("get T", k); return len(r); }')
    w = Workload(0, TABLES, [Call("f", (1,))])
    on_app = run_distributed(bundle_for(p, lambda nid, n: False), w)[1][0]
    on_db = run_distributed(bundle_for(p, lambda nid, n: n.kind == "stmt"), w)[1][0]
    assert on_app.transfers == 2  # DBCALL + DBRESULT
    assert on_db.transfers == 2  # RESUME to DB, FINISH back


def test_latency_at_least_lat_per_transfer():
    p = load(source("neworder"))
    an = analyze(p)
    b = generate(an, random_placement(skeleton(an), random.Random(3))).bundle
    cost = CostModel(lat=1.5, bw=1e3)
    _, stats = run_distributed(b, workload("neworder", 0), cost)
    for s in stats:
        assert s.latency_ms >= 1.5 * s.transfers


def _check_equivalent(p, w, b):
    ref = run_reference(p, w)
    log = EventLog()
    tr, stats = run_distributed(b, w, log=log, check_freshness=True)
    assert tr.lines == ref.lines and tr.db == ref.db
    assert check_blocking(log) == []
    for s in stats:
        assert s.stale_reads == 0 and s.heap_only_frames == 0
        assert s.state_frames == s.transfers


def test_corpus_random_placements_match_reference():
    for name in ("neworder", "micro2", "linkedlist"):
        p = load(source(name))
        an = analyze(p)
        for k in range(3):
            b = generate(an, random_placement(skeleton(an), random.Random(k))).bundle
            _check_equivalent(p, workload(name, k), b)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=0, max_value=100))
def test_random_placements_match_reference(seed, pseed):
    p = load(fuzz_program(seed))
    an = analyze(p)
    b = generate(an, random_placement(skeleton(an), random.Random(pseed))).bundle
    _check_equivalent(p, fuzz_workload(seed), b)


def test_tcp_loopback_and_hash_mismatch():
    from dbsplit.runtime.tcp import TcpChannel, serve

    p = load(source("neworder"))
    an = analyze(p)
    b = generate(an, random_placement(skeleton(an), random.Random(5))).bundle
    other = generate(an, random_placement(skeleton(an), random.Random(6))).bundle
    assert b.hash != other.hash
    w = workload("neworder", 1)
    srv = serve("127.0.0.1", 0, [b], MiniDb.from_spec(w.tables))
    th = threading.Thread(target=srv.serve_forever, daemon=True)
    th.start()
    try:
        port = srv.server_address[1]
        ch = TcpChannel("127.0.0.1", port)
        try:
            drv = AppDriver(HostRuntime("APP", b), ch, CostModel())
            lines = []
            for c in w.calls:
                result, s, out = drv.call(c.entry, c.args)
                lines += out + [f"=> {result}"]
                assert s.transfers == s.state_frames
        finally:
            ch.shutdown()
        assert lines == run_reference(p, w).lines
        assert srv.db.snapshot() == run_reference(p, w).db

        ch = TcpChannel("127.0.0.1", port)
        try:
            drv = AppDriver(HostRuntime("APP", other), ch, CostModel())
            with pytest.raises(SessionError):
                drv.call(w.calls[0].entry, w.calls[0].args)
        finally:
            ch.shutdown()
    finally:
        srv.shutdown()
        srv.server_close()
