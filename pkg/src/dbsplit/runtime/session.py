"""Two-host sessions over a simulated channel, plus the event log.

The APP runtime drives every session: it runs until control must move,
sends one TRANSFER frame and blocks until the DB runtime answers with the
frame that hands control back.  Database calls from APP-placed queries use
the same frame type (DBCALL / DBRESULT), so each frame is one control
transfer and carries the sender's stack delta and flushed heap batch.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..codegen.bundle import Bundle
from ..interp.minidb import MiniDb
from ..interp.workload import OutputTrace, Workload
from ..values import render
from . import wire as W
from .host import HostRuntime, SessionError, SessionState


@dataclass(frozen=True)
class CostModel:
    """Virtual-time prices: per frame LAT + bytes/BW, per executed statement a CPU cost."""

    lat: float = 2.0  # ms
    bw: float = 1e6  # bytes per ms
    instr_ms: float = 0.0001
    db_slowdown: float = 1.0

    def frame_ms(self, nbytes: int) -> float:
        return self.lat + nbytes / self.bw

    def compute_ms(self, app_instr: int, db_instr: int) -> float:
        return (app_instr + db_instr * self.db_slowdown) * self.instr_ms


@dataclass
class SessionStats:
    session: int
    entry: str
    frames: int = 0
    transfers: int = 0  # control transfers
    state_frames: int = 0  # frames carrying stack/heap state
    heap_only_frames: int = 0  # frames sent just for heap updates (must stay 0)
    bytes: int = 0
    heap_updates: int = 0
    app_instr: int = 0
    db_instr: int = 0
    network_ms: float = 0.0
    compute_ms: float = 0.0
    stale_reads: int = 0
    bundle: str = ""

    @property
    def latency_ms(self) -> float:
        return self.network_ms + self.compute_ms


@dataclass
class EventLog:
    """Interleaved (lamport time, session, host, event, block) records."""

    events: list[tuple[int, int, str, str, str | None]] = field(default_factory=list)
    clock: int = 0

    def __call__(self, session: int, host: str, event: str, block) -> None:
        self.clock += 1
        self.events.append((self.clock, session, host, event, block))

    def text(self) -> str:
        return "".join(f"{t} {s} {h} {e} {b or '-'}\n" for t, s, h, e, b in self.events)


def check_blocking(log: EventLog) -> list[str]:
    """Violations of the single-thread-of-control rule, per session."""
    running: dict[int, str | None] = {}
    bad = []
    for t, s, h, e, _ in log.events:
        cur = running.get(s)
        if e == "start":
            if cur is not None:
                bad.append(f"t={t}: {h} starts session {s} while {cur} is running")
            running[s] = h
        elif e == "stop":
            if cur != h:
                bad.append(f"t={t}: {h} stops session {s} but {cur} was running")
            running[s] = None
    return bad


class DbEndpoint:
    """The DB side of a channel: decodes a frame, serves it, encodes the reply."""

    def __init__(self, runtimes: dict[str, HostRuntime]):
        self.runtimes = runtimes  # bundle hash -> DB runtime
        self.bound: dict[int, HostRuntime] = {}
        self.seq: dict[int, int] = {}

    def bind(self, session: int, digest: str) -> None:
        if digest not in self.runtimes:
            raise SessionError(f"artifact hash mismatch: DB host does not have bundle {digest[:12]}")
        self.bound[session] = self.runtimes[digest]

    def handle(self, data: bytes) -> bytes:
        any_rt = next(iter(self.runtimes.values()))
        fr = W.decode(data, any_rt.class_names)
        if fr.type != W.TRANSFER:
            raise W.WireError(f"unexpected {W.TYPE_NAMES.get(fr.type, fr.type)} frame")
        rt = self.bound.get(fr.session)
        if rt is None:
            raise SessionError(f"session {fr.session} was not opened")
        # class ids follow the bound bundle
        fr = W.decode(data, rt.class_names)
        st = rt.session(fr.session)
        rt.incoming(st, fr.transfer, fr.clock)
        reply = rt.serve_transfer(st, fr.transfer)
        rt.outgoing(st, reply)
        out = W.Frame(W.TRANSFER, fr.session, fr.seq + 1, st.clock, reply)
        if reply.kind == W.FINISH:
            rt.end(fr.session)
        return W.encode(out)

    def close(self, session: int) -> None:
        rt = self.bound.pop(session, None)
        if rt is not None:
            rt.end(session)


class SimChannel:
    """In-process link to a :class:`DbEndpoint`, priced in virtual time."""

    def __init__(self, endpoint: DbEndpoint, cost: CostModel):
        self.endpoint = endpoint
        self.cost = cost
        self.transcript: list[bytes] | None = None

    def open(self, session: int, digest: str) -> None:
        self.endpoint.bind(session, digest)

    def exchange(self, data: bytes, stats: SessionStats) -> bytes:
        _account(stats, data, self.cost)
        reply = self.endpoint.handle(data)
        _account(stats, reply, self.cost)
        if self.transcript is not None:
            self.transcript += [data, reply]
        return reply

    def close(self, session: int) -> None:
        self.endpoint.close(session)


def _account(stats: SessionStats, data: bytes, cost: CostModel) -> None:
    stats.frames += 1
    stats.bytes += len(data)
    stats.network_ms += cost.frame_ms(len(data))
    typ = data[9]  # type byte after length, magic and version
    if typ == W.TRANSFER:
        stats.transfers += 1
    if typ not in (W.HELLO, W.HELLO_OK, W.BYE, W.ERROR):
        stats.state_frames += 1
        if typ != W.TRANSFER:
            stats.heap_only_frames += 1  # state moved without handing over control


class AppDriver:
    """Runs entry invocations from the APP host."""

    def __init__(self, rt: HostRuntime, channel, cost: CostModel, log: EventLog | None = None,
                 check_freshness: bool = False):
        if rt.host != "APP":
            raise ValueError("the driver runs on the APP host")
        self.rt = rt
        self.channel = channel
        self.cost = cost
        self.log = log
        self.check_freshness = check_freshness
        rt.log = log
        rt.dbcall = self._dbcall
        self._stats: SessionStats | None = None
        self._next_session = 1

    def _send(self, st: SessionState, t: W.Transfer) -> W.Transfer:
        rt = self.rt
        self.rt.outgoing(st, t)
        self._stats.heap_updates += len(t.heap)
        self._seq += 1
        data = W.encode(W.Frame(W.TRANSFER, st.sid, self._seq, st.clock, t))
        reply = W.decode(self.channel.exchange(data, self._stats), rt.class_names)
        if reply.type == W.ERROR:
            raise SessionError(f"peer error: {reply.text}")
        if reply.type != W.TRANSFER:
            raise W.WireError(f"unexpected {W.TYPE_NAMES.get(reply.type, reply.type)} frame")
        self._seq = reply.seq
        self._stats.heap_updates += len(reply.transfer.heap)
        rt.incoming(st, reply.transfer, reply.clock)
        return reply.transfer

    def _dbcall(self, st: SessionState, template: str, args: list):
        if self.log:
            self.log(st.sid, "APP", "stop", None)
        r = self._send(st, W.Transfer(W.DBCALL, template=template, args=list(args)))
        if r.kind != W.DBRESULT:
            raise W.WireError("expected a database result")
        if self.log:
            self.log(st.sid, "APP", "start", None)
        return r.rows

    def call(self, entry: str, args: tuple, truth: dict | None = None) -> tuple[object, SessionStats, list[str]]:
        rt = self.rt
        sid = self._next_session
        self._next_session += 1
        stats = SessionStats(sid, entry, bundle=rt.bundle.hash)
        self._stats = stats
        self._seq = 0
        st = rt.session(sid)
        if self.check_freshness:
            st.truth = {} if truth is None else truth
        self.channel.open(sid, rt.bundle.hash)
        try:
            bid = rt.begin(st, entry, args)
            t = rt.run(st, bid)
            while t.kind == W.RESUME:
                r = self._send(st, t)
                if r.kind == W.FINISH:
                    t = r
                    break
                if r.kind != W.RESUME:
                    raise W.WireError(f"unexpected transfer kind {r.kind}")
                t = rt.run(st, rt.table[r.target])
            result = t.value
        finally:
            self.channel.close(sid)
            rt.end(sid)
        stats.app_instr = st.counters.instr
        stats.stale_reads = st.stale_reads
        stats.compute_ms = 0.0
        return result, stats, st.lines


class Cluster:
    """APP and DB runtimes for one or more bundles sharing one database."""

    def __init__(self, bundles: list[Bundle], db: MiniDb, cost: CostModel | None = None,
                 log: EventLog | None = None, check_freshness: bool = False):
        self.cost = cost or CostModel()
        self.db = db
        self.log = log
        self.truth: dict[int, dict] = {}
        self.check_freshness = check_freshness
        self.db_rts = {b.hash: HostRuntime("DB", b, db) for b in bundles}
        for r in self.db_rts.values():
            r.log = log
            if check_freshness:
                r.truth_source = self.truth.get
        self.endpoint = DbEndpoint(self.db_rts)
        self.channel = SimChannel(self.endpoint, self.cost)
        self.drivers = {b.hash: AppDriver(HostRuntime("APP", b), self.channel, self.cost, log,
                                          check_freshness) for b in bundles}
        self.sessions = 0
        self.lines: list[str] = []

    def call(self, entry: str, args: tuple, bundle: Bundle | None = None) -> tuple[object, SessionStats]:
        key = bundle.hash if bundle is not None else next(iter(self.drivers))
        drv = self.drivers[key]
        dbrt = self.db_rts[key]
        self.sessions += 1
        sid = self.sessions
        drv._next_session = sid
        instr0, stale0 = dbrt.instr_total, dbrt.stale_total
        truth = None
        if self.check_freshness:
            truth = self.truth[sid] = {}
        try:
            result, stats, lines = drv.call(entry, args, truth)
        finally:
            self.truth.pop(sid, None)
        stats.db_instr = dbrt.instr_total - instr0
        stats.stale_reads += dbrt.stale_total - stale0
        stats.compute_ms = self.cost.compute_ms(stats.app_instr, stats.db_instr)
        self.lines.extend(lines)
        self.lines.append(f"=> {render(result)}")
        return result, stats


def run_distributed(bundle: Bundle, w: Workload, cost: CostModel | None = None,
                    log: EventLog | None = None, check_freshness: bool = False
                    ) -> tuple[OutputTrace, list[SessionStats]]:
    """Execute every call of ``w`` with ``bundle`` split over two in-process hosts."""
    db = MiniDb.from_spec(w.tables)
    cl = Cluster([bundle], db, cost, log, check_freshness)
    stats = []
    for c in w.calls:
        _, s = cl.call(c.entry, c.args)
        stats.append(s)
    return OutputTrace(cl.lines, db.snapshot()), stats
