"""Per-host block executor with an explicit stack and a versioned heap replica.

Every heap slot (object field or array element) carries a version drawn from
a session-wide logical clock that travels in each frame header.  Receivers
merge incoming slots newest-wins, so a stale copy can never overwrite a
newer one.  Objects unknown to a host are materialized lazily with default
field values at version 0; arrays must have been shipped (their length is
not implied by a reference).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

from ..codegen.bundle import Bundle
from ..interp.minidb import MiniDb, is_read
from ..interp.reference import MAX_DEPTH, InterpError
from ..values import ARRAY_CLASS, EvalError, Ref, binop, default_for, make_oid, render, truthy, unop
from . import wire as W

HOST_BIT = {"APP": 0, "DB": 1}


class SessionError(Exception):
    """Session-level failure (unknown block, protocol violation)."""


class Obj:
    __slots__ = ("vals", "vers")

    def __init__(self, vals: list, vers: list):
        self.vals = vals
        self.vers = vers


class Arr:
    __slots__ = ("items", "vers")

    def __init__(self, items: list, vers: list):
        self.items = items
        self.vers = vers


class RtFrame:
    __slots__ = ("fid", "func", "slots", "ret", "dst")

    def __init__(self, fid: int, func: int, slots: list, ret: str | None, dst: int | None):
        self.fid = fid
        self.func = func
        self.slots = slots
        self.ret = ret
        self.dst = dst


@dataclass
class Counters:
    instr: int = 0
    blocks: int = 0


@dataclass
class SessionState:
    sid: int
    host: str
    objs: dict[int, Obj] = field(default_factory=dict)
    arrs: dict[int, Arr] = field(default_factory=dict)
    stack: list[RtFrame] = field(default_factory=list)
    synced: list[tuple[int, list]] = field(default_factory=list)
    pending: dict[tuple[int, int], None] = field(default_factory=dict)
    seq: int = 0
    fids: int = 0
    clock: int = 0
    lines: list[str] = field(default_factory=list)
    counters: Counters = field(default_factory=Counters)
    # freshness instrumentation: (oid, slot) -> latest version, shared by both hosts
    truth: dict | None = None
    stale_reads: int = 0


_F64 = struct.Struct("<d")


def _same(a: object, b: object) -> bool:
    """Bit-level equality, so 0.0 / -0.0 and NaN changes are detected."""
    if type(a) is not type(b):
        return False
    if type(a) is float:
        return _F64.pack(a) == _F64.pack(b)
    return a == b


def _operand(o):
    if o[0] == "s":
        i = o[1]
        return lambda sl: sl[i]
    v = o[1]
    return lambda sl: v


def _expr(e):
    if e[0] == "bin":
        op, a, b = e[1], _operand(e[2]), _operand(e[3])
        return lambda sl: binop(op, a(sl), b(sl))
    if e[0] == "un":
        op, a = e[1], _operand(e[2])
        return lambda sl: unop(op, a(sl))
    return _operand(e)


class CBlock:
    __slots__ = ("id", "host", "ops", "term", "nops")

    def __init__(self, bid, host, ops, term):
        self.id = bid
        self.host = host
        self.ops = ops  # list of (sid, fn(sl, st))
        self.term = term
        self.nops = len(ops)


class HostRuntime:
    """Executes the blocks of one bundle placed on ``host``."""

    def __init__(self, host: str, bundle: Bundle, db: MiniDb | None = None):
        if host not in HOST_BIT:
            raise ValueError(f"unknown host {host!r}")
        self.host = host
        self.bundle = bundle
        self.db = db
        self.host_bit = HOST_BIT[host]
        self.layouts = {c.name: c for c in bundle.layouts}
        self.class_names = [""] * (max((c.index for c in bundle.layouts), default=-1) + 1)
        self.field_idx: dict[str, dict[str, int]] = {}
        self.defaults: dict[str, list] = {}
        self.part_idx: dict[tuple[str, str], list[int]] = {}
        for c in bundle.layouts:
            self.class_names[c.index] = c.name
            names = [f for f, _ in c.fields]
            self.field_idx[c.name] = {f: i for i, f in enumerate(names)}
            self.defaults[c.name] = [default_for(k) for _, k in c.fields]
            self.part_idx[(c.name, "APP")] = [names.index(f) for f in c.app_fields]
            self.part_idx[(c.name, "DB")] = [names.index(f) for f in c.db_fields]
        self.class_index = {c.name: c.index for c in bundle.layouts}
        self.table = bundle.block_table()
        self.block_index = {b: i for i, b in enumerate(self.table)}
        self.func_names = sorted(bundle.functions)
        self.func_index = {f: i for i, f in enumerate(self.func_names)}
        self.blocks = {bid: self._compile(b) for bid, b in bundle.blocks.items()}
        self.sessions: dict[int, SessionState] = {}
        # hook used by APP-side query statements: fn(st, template, args) -> rows | None
        self.dbcall = None
        self.log = None  # fn(session, host, event, block)
        # freshness instrumentation: fn(session) -> shared truth dict or None
        self.truth_source = None
        self.instr_total = 0
        self.stale_total = 0

    # ------------------------------------------------------------- compile
    def _compile(self, b) -> CBlock:
        ops = [(op[1], self._compile_op(op)) for op in b.ops]
        t = b.term
        if t[0] == "goto":
            term = ("goto", t[1])
        elif t[0] == "branch":
            term = ("branch", t[1], _expr(t[2]), t[3], t[4])
        elif t[0] == "call":
            callee = self.bundle.functions[t[2]]
            term = ("call", t[1], self.func_index[t[2]], [_operand(a) for a in t[3]], t[4], t[5],
                    callee.start, len(callee.slots))
        else:
            term = ("return", t[1], None if t[2] is None else _expr(t[2]))
        return CBlock(b.id, b.host, ops, term)

    def _compile_op(self, op):
        k = op[0]
        rt = self
        if k == "assign":
            d, f = op[2], _expr(op[3])

            def run(sl, st):
                sl[d] = f(sl)
        elif k == "fread":
            d, o, name = op[2], op[3], op[4]

            def run(sl, st):
                obj, i = rt._field(st, sl[o], name)
                if st.truth is not None:
                    rt._check_fresh(st, sl[o].oid, i, obj.vers[i])
                sl[d] = obj.vals[i]
        elif k == "fwrite":
            o, name, v = op[2], op[3], _operand(op[4])

            def run(sl, st):
                ref = sl[o]
                obj, i = rt._field(st, ref, name)
                val = v(sl)
                st.clock += 1
                obj.vals[i] = val
                obj.vers[i] = st.clock
                if st.truth is not None:
                    st.truth[(ref.oid, i)] = st.clock
        elif k == "aread":
            d, a, ix = op[2], op[3], _operand(op[4])

            def run(sl, st):
                ref = sl[a]
                arr = rt._array(st, ref)
                i = rt._index(arr, ix(sl))
                if st.truth is not None:
                    rt._check_fresh(st, ref.oid, i, arr.vers[i])
                sl[d] = arr.items[i]
        elif k == "awrite":
            a, ix, v = op[2], _operand(op[3]), _operand(op[4])

            def run(sl, st):
                ref = sl[a]
                arr = rt._array(st, ref)
                i = rt._index(arr, ix(sl))
                val = v(sl)
                st.clock += 1
                arr.items[i] = val
                arr.vers[i] = st.clock
                if st.truth is not None:
                    st.truth[(ref.oid, i)] = st.clock
        elif k == "alen":
            d, a = op[2], op[3]

            def run(sl, st):
                sl[d] = len(rt._array(st, sl[a]).items)
        elif k == "newobj":
            d, cls = op[2], op[3]
            ci = self.class_index[cls]
            defaults = self.defaults[cls]

            def run(sl, st):
                st.seq += 1
                oid = make_oid(st.seq, rt.host_bit, ci)
                st.objs[oid] = Obj(list(defaults), [0] * len(defaults))
                sl[d] = Ref(oid, cls)
        elif k == "newarr":
            d, elem, size = op[2], op[3], _operand(op[4])

            def run(sl, st):
                n = size(sl)
                if type(n) is not int or n < 0:
                    raise EvalError(f"bad array size {render(n)}")
                sl[d] = rt._new_array(st, [default_for(elem)] * n)
        elif k == "query":
            d, template, args, is_exec = op[2], op[3], [_operand(a) for a in op[4]], op[5]

            def run(sl, st):
                vals = [a(sl) for a in args]
                if rt.db is not None:
                    rows = rt.db.run(template, vals)
                else:
                    rows = rt.dbcall(st, template, vals)
                if d is not None:
                    if rows is None or not is_read(template):
                        raise EvalError("exec has no result")
                    sl[d] = rt.rowset(st, rows)
        elif k == "print":
            args = [_operand(a) for a in op[2]]

            def run(sl, st):
                st.lines.append(" ".join(render(a(sl)) for a in args))
        elif k == "send":
            kind = {"sendAPP": W.PART_APP, "sendDB": W.PART_DB, "sendNative": W.NATIVE}[op[2]]
            slots = op[3]

            def run(sl, st):
                for s in slots:
                    ref = sl[s]
                    if type(ref) is Ref:
                        st.pending[(kind, ref.oid)] = None
        else:
            raise SessionError(f"unknown micro-op {k!r}")
        return run

    # ---------------------------------------------------------------- heap
    def _field(self, st: SessionState, ref, name: str) -> tuple[Obj, int]:
        if ref is None:
            raise EvalError("null dereference")
        if type(ref) is not Ref or ref.cls is None:
            raise EvalError("expected an object")
        i = self.field_idx[ref.cls].get(name)
        if i is None:
            raise EvalError(f"class {ref.cls} has no field {name!r}")
        obj = st.objs.get(ref.oid)
        if obj is None:
            obj = st.objs[ref.oid] = self._blank(ref.cls)
        return obj, i

    def _blank(self, cls: str) -> Obj:
        d = self.defaults[cls]
        return Obj(list(d), [0] * len(d))

    def _array(self, st: SessionState, ref) -> Arr:
        if ref is None:
            raise EvalError("null dereference")
        if type(ref) is not Ref or ref.cls is not None:
            raise EvalError("expected an array")
        arr = st.arrs.get(ref.oid)
        if arr is None:
            raise SessionError(f"array {ref.oid:#x} was never shipped to {self.host}")
        return arr

    @staticmethod
    def _index(arr: Arr, i: object) -> int:
        if type(i) is not int:
            raise EvalError("array index must be an int")
        if not 0 <= i < len(arr.items):
            raise EvalError(f"index {i} out of bounds for length {len(arr.items)}")
        return i

    def _new_array(self, st: SessionState, items: list) -> Ref:
        st.seq += 1
        oid = make_oid(st.seq, self.host_bit, ARRAY_CLASS)
        st.arrs[oid] = Arr(items, [0] * len(items))
        return Ref(oid, None)

    def rowset(self, st: SessionState, rows: list[list]) -> Ref:
        return self._new_array(st, [self._new_array(st, list(r)) for r in rows])

    def _check_fresh(self, st: SessionState, oid: int, i: int, ver: int) -> None:
        if st.truth.get((oid, i), 0) != ver:
            st.stale_reads += 1

    # ------------------------------------------------------------- sessions
    def session(self, sid: int) -> SessionState:
        st = self.sessions.get(sid)
        if st is None:
            st = self.sessions[sid] = SessionState(sid, self.host)
            if self.truth_source is not None:
                st.truth = self.truth_source(sid)
        return st

    def end(self, sid: int) -> None:
        st = self.sessions.pop(sid, None)
        if st is not None:
            self.instr_total += st.counters.instr
            self.stale_total += st.stale_reads

    def begin(self, st: SessionState, entry: str, args: tuple) -> str:
        """Entry wrapper: push the argument frame; returns the start block."""
        w = self.bundle.wrappers.get(entry)
        if w is None:
            raise InterpError(f"{entry!r} is not an entry point", None)
        if len(args) != w.nparams:
            raise InterpError(f"{entry} expects {w.nparams} arguments, got {len(args)}", None)
        st.fids += 1
        fid = st.fids << 1 | self.host_bit
        st.stack.append(RtFrame(fid, self.func_index[entry],
                                list(args) + [None] * (w.nslots - w.nparams), None, None))
        return w.start

    # ------------------------------------------------------------ execution
    def run(self, st: SessionState, bid: str) -> W.Transfer:
        """Execute local blocks from ``bid`` until control must leave this host."""
        blocks = self.blocks
        host = self.host
        cnt = st.counters
        if self.log:
            self.log(st.sid, host, "start", bid)
        sid = None
        try:
            while True:
                b = blocks.get(bid)
                if b is None:
                    raise SessionError(f"unknown block {bid!r}")
                if b.host != host:
                    if self.log:
                        self.log(st.sid, host, "stop", bid)
                    return W.Transfer(W.RESUME, self.block_index[bid])
                cnt.blocks += 1
                fr = st.stack[-1]
                sl = fr.slots
                for sid, fn in b.ops:
                    fn(sl, st)
                cnt.instr += b.nops
                t = b.term
                tk = t[0]
                if tk == "goto":
                    bid = t[1]
                    continue
                cnt.instr += 1
                sid = t[1]
                if tk == "branch":
                    bid = t[3] if truthy(t[2](sl)) else t[4]
                elif tk == "call":
                    if len(st.stack) >= MAX_DEPTH:
                        raise EvalError("call stack overflow")
                    args = [a(sl) for a in t[3]]
                    st.fids += 1
                    fid = st.fids << 1 | self.host_bit
                    st.stack.append(RtFrame(fid, t[2], args + [None] * (t[7] - len(args)),
                                            t[5], t[4]))
                    bid = t[6]
                else:
                    v = None if t[2] is None else t[2](sl)
                    st.stack.pop()
                    if not st.stack:
                        if self.log:
                            self.log(st.sid, host, "stop", None)
                        return W.Transfer(W.FINISH, value=v)
                    if fr.dst is not None:
                        st.stack[-1].slots[fr.dst] = v
                    bid = fr.ret
        except EvalError as e:
            raise InterpError(str(e), sid) from None

    # ------------------------------------------------------- state transfer
    def flush(self, st: SessionState) -> list[W.HeapUpdate]:
        out: list[W.HeapUpdate] = []
        shipped: set[int] = set()
        for kind, oid in st.pending:
            if kind == W.NATIVE:
                self._ship_array(st, oid, out, shipped)
                continue
            cls = self.class_names[oid & 0xFFFF]
            obj = st.objs.get(oid)
            if obj is None:
                obj = st.objs[oid] = self._blank(cls)
            part = self.part_idx[(cls, "APP" if kind == W.PART_APP else "DB")]
            out.append(W.HeapUpdate(kind, oid, [(i, obj.vers[i], obj.vals[i]) for i in part]))
        st.pending.clear()
        return out

    def _ship_array(self, st, oid, out, shipped) -> None:
        todo = [oid]
        while todo:
            a = todo.pop()
            if a in shipped:
                continue
            shipped.add(a)
            arr = st.arrs.get(a)
            if arr is None:
                raise SessionError(f"array {a:#x} is not available on {self.host}")
            out.append(W.HeapUpdate(W.NATIVE, a, list(zip(arr.vers, arr.items))))
            for v in arr.items:
                if type(v) is Ref and v.cls is None:
                    todo.append(v.oid)

    def apply_heap(self, st: SessionState, updates: list[W.HeapUpdate]) -> None:
        for hu in updates:
            if hu.kind == W.NATIVE:
                arr = st.arrs.get(hu.oid)
                if arr is None:
                    st.arrs[hu.oid] = Arr([v for _, v in hu.entries], [ver for ver, _ in hu.entries])
                    continue
                if len(arr.items) != len(hu.entries):
                    raise W.WireError(f"array {hu.oid:#x} changed length in transit")
                for i, (ver, v) in enumerate(hu.entries):
                    if ver > arr.vers[i]:
                        arr.vers[i] = ver
                        arr.items[i] = v
            else:
                cls = self.class_names[hu.oid & 0xFFFF]
                obj = st.objs.get(hu.oid)
                if obj is None:
                    obj = st.objs[hu.oid] = self._blank(cls)
                for i, ver, v in hu.entries:
                    if ver > obj.vers[i]:
                        obj.vers[i] = ver
                        obj.vals[i] = v

    def stack_delta(self, st: SessionState) -> W.StackDelta:
        stack, synced = st.stack, st.synced
        keep = 0
        while keep < len(stack) and keep < len(synced) and stack[keep].fid == synced[keep][0]:
            keep += 1
        changed = []
        for fi in range(keep):
            old = synced[fi][1]
            for si, v in enumerate(stack[fi].slots):
                if not _same(v, old[si]):
                    changed.append((fi, si, v))
        pushed = []
        for fr in stack[keep:]:
            ret = W.NO_BLOCK if fr.ret is None else self.block_index[fr.ret]
            dst = -1 if fr.dst is None else fr.dst
            pushed.append(W.PushedFrame(fr.fid, fr.func, ret, dst, list(fr.slots)))
        return W.StackDelta(keep, changed, pushed)

    def mark_synced(self, st: SessionState) -> None:
        st.synced = [(fr.fid, list(fr.slots)) for fr in st.stack]

    def apply_stack(self, st: SessionState, sd: W.StackDelta) -> None:
        if sd.keep > len(st.stack):
            raise W.WireError("stack delta keeps more frames than exist")
        del st.stack[sd.keep:]
        for fi, si, v in sd.changed:
            st.stack[fi].slots[si] = v
        for pf in sd.pushed:
            ret = None if pf.ret == W.NO_BLOCK else self.table[pf.ret]
            st.stack.append(RtFrame(pf.fid, pf.func, list(pf.slots), ret,
                                    None if pf.dst < 0 else pf.dst))
        self.mark_synced(st)

    def outgoing(self, st: SessionState, t: W.Transfer) -> W.Transfer:
        """Attach the stack delta and the flushed batch to ``t``."""
        t.stack = self.stack_delta(st)
        t.heap = self.flush(st)
        self.mark_synced(st)
        return t

    def incoming(self, st: SessionState, t: W.Transfer, clock: int) -> None:
        st.clock = max(st.clock, clock)
        self.apply_stack(st, t.stack)
        self.apply_heap(st, t.heap)

    # --------------------------------------------------------- DB services
    def serve_transfer(self, st: SessionState, t: W.Transfer) -> W.Transfer:
        """Handle an incoming transfer on this host and produce the reply."""
        if t.kind == W.DBCALL:
            if self.db is None:
                raise SessionError("database call received by a host without a database")
            if self.log:
                self.log(st.sid, self.host, "start", None)
            try:
                rows = self.db.run(t.template, t.args)
            except EvalError as e:
                raise InterpError(str(e), None) from None
            finally:
                if self.log:
                    self.log(st.sid, self.host, "stop", None)
            return W.Transfer(W.DBRESULT, rows=rows)
        if t.kind != W.RESUME:
            raise W.WireError(f"unexpected transfer kind {W.KIND_NAMES.get(t.kind, t.kind)}")
        if t.target >= len(self.table):
            raise SessionError(f"unknown block index {t.target}")
        return self.run(st, self.table[t.target])
