"""Single-host tree-walking interpreter over normalized programs.

This is the semantic oracle every other execution path is compared with.
Optional hooks count statement executions and assigned-value sizes
(:class:`Profiler`) or record dynamic def/use pairs (:class:`DefUseTracer`).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from ..frontend import ast as A
from ..values import (
    ARRAY_CLASS, EvalError, Ref, binop, default_for, make_oid, render, scalar_size,
    truthy, unop,
)
from .minidb import MiniDb, is_read
from .workload import OutputTrace, Workload

CONSOLE = "console"
MAX_DEPTH = 2000


class InterpError(Exception):
    """A runtime failure attributed to one statement."""

    def __init__(self, message: str, sid: int | None):
        self.message = message
        self.sid = sid
        super().__init__(f"s{sid}: {message}" if sid is not None else message)


@dataclass
class HeapObj:
    cls: str
    fields: dict[str, object]


@dataclass
class HeapArr:
    elem: str
    items: list[object]


def value_size(v: object, heap: dict[int, object], _seen: set[int] | None = None) -> int:
    """Serialized payload size; arrays count their reference plus contents."""
    if type(v) is not Ref or not v.is_array:
        return scalar_size(v)
    seen = _seen if _seen is not None else set()
    if v.oid in seen:
        return 8
    seen.add(v.oid)
    arr = heap[v.oid]
    return 8 + 4 + sum(1 + value_size(x, heap, seen) for x in arr.items)


@dataclass
class Profiler:
    counts: dict[object, int] = field(default_factory=dict)
    size_sum: dict[object, int] = field(default_factory=dict)
    size_n: dict[object, int] = field(default_factory=dict)

    def hit(self, sid) -> None:
        self.counts[sid] = self.counts.get(sid, 0) + 1

    def size(self, sid, nbytes: int) -> None:
        self.size_sum[sid] = self.size_sum.get(sid, 0) + nbytes
        self.size_n[sid] = self.size_n.get(sid, 0) + 1


@dataclass
class DefUseTracer:
    """Dynamic (writer, reader) pairs; writers are statement ids or ``console``."""

    pairs: set[tuple[object, int]] = field(default_factory=set)
    heap_writer: dict[tuple, object] = field(default_factory=dict)

    def read(self, writer, reader: int) -> None:
        if writer is not None:
            self.pairs.add((writer, reader))


class _Frame:
    __slots__ = ("vals", "writers")

    def __init__(self) -> None:
        self.vals: dict[str, object] = {}
        self.writers: dict[str, object] = {}


class Interpreter:
    def __init__(
        self,
        prog: A.Program,
        db: MiniDb,
        profiler: Profiler | None = None,
        tracer: DefUseTracer | None = None,
    ):
        self.prog = prog
        self.db = db
        self.prof = profiler
        self.tr = tracer
        self.heap: dict[int, object] = {}
        self.seq = 0
        self.depth = 0
        self._ret_writer = None
        self.lines: list[str] = []
        self.funcs = {f.name: f for f in prog.functions}
        self.class_idx = {c.name: i for i, c in enumerate(prog.classes)}
        self.classes = {c.name: c for c in prog.classes}

    # --------------------------------------------------------------- public
    def call_entry(self, name: str, args: tuple[object, ...]) -> object:
        if name not in self.prog.entry_points:
            raise InterpError(f"{name!r} is not an entry point", None)
        f = self.funcs[name]
        if len(args) != len(f.params):
            raise InterpError(f"{name} expects {len(f.params)} arguments, got {len(args)}", None)
        if self.prof:
            self.prof.hit(CONSOLE)
            self.prof.size(CONSOLE, sum(scalar_size(a) for a in args))
        result = self._invoke(f, list(args), CONSOLE)
        self.lines.append(f"=> {render(result)}")
        return result

    # ------------------------------------------------------------- helpers
    def _alloc(self, obj, class_idx: int) -> int:
        self.seq += 1
        oid = make_oid(self.seq, 0, class_idx)
        self.heap[oid] = obj
        return oid

    def _deref(self, v: object, want_array: bool):
        if v is None:
            raise EvalError("null dereference")
        if type(v) is not Ref or v.is_array != want_array:
            raise EvalError("expected an array" if want_array else "expected an object")
        return self.heap[v.oid]

    def _index(self, arr: HeapArr, i: object) -> int:
        if type(i) is not int:
            raise EvalError("array index must be an int")
        if not 0 <= i < len(arr.items):
            raise EvalError(f"index {i} out of bounds for length {len(arr.items)}")
        return i

    def _operand(self, e, fr: _Frame, sid: int) -> object:
        if type(e) is A.Const:
            return e.value
        if self.tr:
            self.tr.read(fr.writers.get(e.name), sid)
        return fr.vals.get(e.name)

    def _eval(self, e, fr: _Frame, sid: int) -> object:
        t = type(e)
        if t is A.Binary:
            return binop(e.op, self._operand(e.left, fr, sid), self._operand(e.right, fr, sid))
        if t is A.Unary:
            return unop(e.op, self._operand(e.operand, fr, sid))
        return self._operand(e, fr, sid)

    def _def(self, fr: _Frame, name: str, v: object, sid: int) -> None:
        fr.vals[name] = v
        if self.tr:
            fr.writers[name] = sid
        if self.prof:
            self.prof.size(sid, value_size(v, self.heap))

    def _invoke(self, f: A.FuncDecl, args: list[object], writer) -> object:
        fr = _Frame()
        for p, a in zip(f.params, args):
            fr.vals[p] = a
            fr.writers[p] = writer
        self.depth += 1
        try:
            if self.depth > MAX_DEPTH:
                raise EvalError("call stack overflow")
            r = self._block(f.body, fr)
        finally:
            self.depth -= 1
        return r[1] if r else None

    # ---------------------------------------------------------- statements
    def _block(self, stmts, fr: _Frame):
        for s in stmts:
            if self.prof:
                self.prof.hit(s.sid)
            try:
                r = self._stmt(s, fr)
            except EvalError as e:
                raise InterpError(str(e), s.sid) from None
            if r is not None:
                return r
        return None

    def _stmt(self, s: A.Stmt, fr: _Frame):
        t = type(s)
        sid = s.sid
        tr = self.tr
        if t is A.Assign:
            self._def(fr, s.target, self._eval(s.expr, fr, sid), sid)
        elif t is A.FieldRead:
            ref = self._operand(A.Var(s.obj), fr, sid)
            obj = self._deref(ref, False)
            if s.field not in obj.fields:
                raise EvalError(f"class {obj.cls} has no field {s.field!r}")
            if tr:
                tr.read(tr.heap_writer.get((ref.oid, s.field)), sid)
            self._def(fr, s.target, obj.fields[s.field], sid)
        elif t is A.FieldWrite:
            ref = self._operand(A.Var(s.obj), fr, sid)
            obj = self._deref(ref, False)
            if s.field not in obj.fields:
                raise EvalError(f"class {obj.cls} has no field {s.field!r}")
            v = self._operand(s.value, fr, sid)
            obj.fields[s.field] = v
            if tr:
                tr.heap_writer[(ref.oid, s.field)] = sid
            if self.prof:
                self.prof.size(sid, value_size(v, self.heap))
        elif t is A.ArrayRead:
            ref = self._operand(A.Var(s.arr), fr, sid)
            arr = self._deref(ref, True)
            i = self._index(arr, self._operand(s.index, fr, sid))
            if tr:
                tr.read(tr.heap_writer.get((ref.oid, "[]", i)), sid)
            self._def(fr, s.target, arr.items[i], sid)
        elif t is A.ArrayLen:
            ref = self._operand(A.Var(s.arr), fr, sid)
            arr = self._deref(ref, True)
            if tr:
                tr.read(tr.heap_writer.get((ref.oid, "len")), sid)
            self._def(fr, s.target, len(arr.items), sid)
        elif t is A.ArrayWrite:
            ref = self._operand(A.Var(s.arr), fr, sid)
            arr = self._deref(ref, True)
            i = self._index(arr, self._operand(s.index, fr, sid))
            v = self._operand(s.value, fr, sid)
            arr.items[i] = v
            if tr:
                tr.heap_writer[(ref.oid, "[]", i)] = sid
            if self.prof:
                self.prof.size(sid, value_size(v, self.heap))
        elif t is A.NewObject:
            c = self.classes[s.cls]
            obj = HeapObj(s.cls, {f.name: default_for(f.kind) for f in c.fields})
            oid = self._alloc(obj, self.class_idx[s.cls])
            if tr:
                for f in c.fields:
                    tr.heap_writer[(oid, f.name)] = sid
            self._def(fr, s.target, Ref(oid, s.cls), sid)
        elif t is A.NewArray:
            n = self._operand(s.size, fr, sid)
            if type(n) is not int or n < 0:
                raise EvalError(f"bad array size {render(n)}")
            oid = self._alloc(HeapArr(s.elem, [default_for(s.elem)] * n), ARRAY_CLASS)
            if tr:
                tr.heap_writer[(oid, "len")] = sid
                for i in range(n):
                    tr.heap_writer[(oid, "[]", i)] = sid
            self._def(fr, s.target, Ref(oid, None), sid)
        elif t is A.Call:
            args = [self._operand(a, fr, sid) for a in s.args]
            v = self._invoke(self.funcs[s.func], args, sid)
            if s.target is not None:
                if tr:
                    tr.read(self._ret_writer, sid)
                self._def(fr, s.target, v, sid)
        elif t is A.Query:
            args = [self._operand(a, fr, sid) for a in s.args]
            rows = self.db.run(s.template, args)
            if s.target is not None:
                if rows is None or not is_read(s.template):
                    raise EvalError("exec has no result")
                self._def(fr, s.target, self._rowset(rows, sid), sid)
        elif t is A.Print:
            self.lines.append(" ".join(render(self._operand(a, fr, sid)) for a in s.args))
        elif t is A.If:
            if truthy(self._eval(s.cond, fr, sid)):
                return self._block(s.then, fr)
            return self._block(s.orelse, fr)
        elif t is A.While:
            prof = self.prof
            while truthy(self._eval(s.cond, fr, sid)):
                r = self._block(s.body, fr)
                if r is not None:
                    return r
                if prof:
                    prof.hit(sid)
        elif t is A.Return:
            v = None if s.value is None else self._eval(s.value, fr, sid)
            if self.prof and s.value is not None:
                self.prof.size(sid, value_size(v, self.heap))
            self._ret_writer = sid
            return (True, v)
        else:
            raise EvalError(f"statement kind {s.kind} is not executable")
        return None

    def _rowset(self, rows: list[list[object]], sid: int) -> Ref:
        tr = self.tr
        row_refs = []
        for row in rows:
            oid = self._alloc(HeapArr("any", list(row)), ARRAY_CLASS)
            row_refs.append(Ref(oid, None))
            if tr:
                tr.heap_writer[(oid, "len")] = sid
                for i in range(len(row)):
                    tr.heap_writer[(oid, "[]", i)] = sid
        oid = self._alloc(HeapArr("any", row_refs), ARRAY_CLASS)
        if tr:
            tr.heap_writer[(oid, "len")] = sid
            for i in range(len(row_refs)):
                tr.heap_writer[(oid, "[]", i)] = sid
        return Ref(oid, None)


def run_reference(
    prog: A.Program,
    w: Workload,
    profiler: Profiler | None = None,
    tracer: DefUseTracer | None = None,
) -> OutputTrace:
    """Execute every call of ``w`` in order against fresh tables."""
    db = MiniDb.from_spec(w.tables)
    it = Interpreter(prog, db, profiler, tracer)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        for c in w.calls:
            it.call_entry(c.entry, c.args)
    finally:
        sys.setrecursionlimit(old)
    return OutputTrace(it.lines, db.snapshot())
