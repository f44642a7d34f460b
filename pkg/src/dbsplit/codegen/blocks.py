"""Lowering of PyxIL functions to single-host execution blocks.

Locals live in an explicit per-frame slot array (parameters first, then the
function's locals in declaration order; no slot reuse).  A block is a run of
micro-ops on one host followed by a terminator that names the next block:

* ``["goto", next]``
* ``["branch", sid, cond, then_id, else_id]``
* ``["call", sid, callee, [args], dst_slot | None, return_id]``
* ``["return", sid, value | None]``

Operands are ``["s", slot]`` or ``["c", constant]``; a simple expression is
an operand, ``["bin", op, a, b]`` or ``["un", op, a]``.  Micro-ops:

* ``["assign", sid, dst, expr]``
* ``["fread", sid, dst, obj_slot, field]`` / ``["fwrite", sid, obj_slot, field, val]``
* ``["aread", sid, dst, arr_slot, idx]`` / ``["awrite", sid, arr_slot, idx, val]``
* ``["alen", sid, dst, arr_slot]``
* ``["newobj", sid, dst, cls]`` / ``["newarr", sid, dst, elem, size]``
* ``["query", sid, dst | None, template, [args], is_exec]``
* ``["print", sid, [args]]``
* ``["send", sid, op, [slots]]``
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..frontend import ast as A
from ..frontend.parser import SendOp
from ..frontend.printer import format_const
from .pyxil import PyxilProgram


@dataclass
class Block:
    id: str
    func: str
    host: str | None = None
    ops: list[list] = field(default_factory=list)
    term: list | None = None

    def to_json(self) -> dict:
        return {"id": self.id, "func": self.func, "host": self.host,
                "ops": self.ops, "term": self.term}

    @classmethod
    def from_json(cls, d: dict) -> "Block":
        return cls(d["id"], d["func"], d["host"], d["ops"], d["term"])

    def successors(self) -> list[str]:
        t = self.term
        if t[0] == "goto":
            return [t[1]]
        if t[0] == "branch":
            return [t[3], t[4]]
        if t[0] == "call":
            return [t[5]]
        return []

    def sids(self) -> list[int]:
        out = [op[1] for op in self.ops]
        if self.term[0] != "goto" and self.term[1] is not None:
            out.append(self.term[1])
        return out


@dataclass
class FuncLayout:
    name: str
    params: list[str]
    slots: list[str]  # slot index -> variable name
    start: str
    is_entry: bool = False

    def to_json(self) -> dict:
        return {"name": self.name, "params": self.params, "slots": self.slots,
                "start": self.start, "is_entry": self.is_entry}

    @classmethod
    def from_json(cls, d: dict) -> "FuncLayout":
        return cls(d["name"], d["params"], d["slots"], d["start"], d["is_entry"])


@dataclass
class SplitClassLayout:
    name: str
    index: int  # class index carried in object ids
    fields: list[tuple[str, str]]  # (name, kind) in declaration order
    app_fields: list[str]
    db_fields: list[str]

    def part(self, host: str) -> list[str]:
        return self.app_fields if host == "APP" else self.db_fields

    def to_json(self) -> dict:
        return {"name": self.name, "index": self.index,
                "fields": [list(f) for f in self.fields],
                "app": self.app_fields, "db": self.db_fields}

    @classmethod
    def from_json(cls, d: dict) -> "SplitClassLayout":
        return cls(d["name"], d["index"], [tuple(f) for f in d["fields"]], d["app"], d["db"])


@dataclass
class EntryWrapper:
    """Pushes a frame holding the arguments, runs from ``start``, pops the result."""

    func: str
    nparams: int
    nslots: int
    start: str

    def to_json(self) -> dict:
        return {"func": self.func, "nparams": self.nparams, "nslots": self.nslots,
                "start": self.start}

    @classmethod
    def from_json(cls, d: dict) -> "EntryWrapper":
        return cls(d["func"], d["nparams"], d["nslots"], d["start"])


def _operand(e, slot: dict[str, int]) -> list:
    if isinstance(e, A.Var):
        return ["s", slot[e.name]]
    return ["c", e.value]


def _expr(e, slot: dict[str, int]) -> list:
    if isinstance(e, A.Binary):
        return ["bin", e.op, _operand(e.left, slot), _operand(e.right, slot)]
    if isinstance(e, A.Unary):
        return ["un", e.op, _operand(e.operand, slot)]
    return _operand(e, slot)


def micro_op(s: A.Stmt, slot: dict[str, int]) -> list:
    sid = s.sid
    if isinstance(s, A.Assign):
        return ["assign", sid, slot[s.target], _expr(s.expr, slot)]
    if isinstance(s, A.FieldRead):
        return ["fread", sid, slot[s.target], slot[s.obj], s.field]
    if isinstance(s, A.FieldWrite):
        return ["fwrite", sid, slot[s.obj], s.field, _operand(s.value, slot)]
    if isinstance(s, A.ArrayRead):
        return ["aread", sid, slot[s.target], slot[s.arr], _operand(s.index, slot)]
    if isinstance(s, A.ArrayLen):
        return ["alen", sid, slot[s.target], slot[s.arr]]
    if isinstance(s, A.ArrayWrite):
        return ["awrite", sid, slot[s.arr], _operand(s.index, slot), _operand(s.value, slot)]
    if isinstance(s, A.NewObject):
        return ["newobj", sid, slot[s.target], s.cls]
    if isinstance(s, A.NewArray):
        return ["newarr", sid, slot[s.target], s.elem, _operand(s.size, slot)]
    if isinstance(s, A.Query):
        dst = None if s.target is None else slot[s.target]
        return ["query", sid, dst, s.template, [_operand(a, slot) for a in s.args], s.is_exec]
    if isinstance(s, A.Print):
        return ["print", sid, [_operand(a, slot) for a in s.args]]
    if isinstance(s, SendOp):
        return ["send", sid, s.op, [slot[a] for a in s.args]]
    raise TypeError(f"no micro-op for {s.kind}")


class _FuncLowerer:
    def __init__(self, f: A.FuncDecl, labels: dict[int, str]):
        self.f = f
        self.labels = labels
        self.slots = list(f.params) + [v for v in f.locals if v not in f.params]
        self.slot = {v: i for i, v in enumerate(self.slots)}
        self.blocks: list[Block] = []

    def new(self) -> Block:
        b = Block(f"{self.f.name}#{len(self.blocks)}", self.f.name)
        self.blocks.append(b)
        return b

    def on(self, cur: Block, host: str) -> Block:
        """A block on ``host`` that continues ``cur``."""
        if cur.host is None:
            cur.host = host
            return cur
        if cur.host == host:
            return cur
        nb = self.new()
        nb.host = host
        cur.term = ["goto", nb.id]
        return nb

    def lower(self, stmts, cur: Block) -> Block:
        for s in stmts:
            if cur.term is not None:
                cur = self.new()  # unreachable tail after a return
            host = self.labels[s.sid]
            if isinstance(s, A.If):
                cur = self.on(cur, host)
                join = self.new()
                then_b = self.new() if s.then else join
                else_b = self.new() if s.orelse else join
                cur.term = ["branch", s.sid, _expr(s.cond, self.slot), then_b.id, else_b.id]
                for arm, start in ((s.then, then_b), (s.orelse, else_b)):
                    if arm:
                        end = self.lower(arm, start)
                        if end.term is None:
                            end.term = ["goto", join.id]
                cur = join
            elif isinstance(s, A.While):
                head = self.new()
                head.host = host
                if cur.term is None:
                    cur.term = ["goto", head.id]
                body, exit_b = self.new(), self.new()
                head.term = ["branch", s.sid, _expr(s.cond, self.slot), body.id, exit_b.id]
                end = self.lower(s.body, body)
                if end.term is None:
                    end.term = ["goto", head.id]
                cur = exit_b
            elif isinstance(s, A.Call):
                cur = self.on(cur, host)
                ret = self.new()
                dst = None if s.target is None else self.slot[s.target]
                cur.term = ["call", s.sid, s.func, [_operand(a, self.slot) for a in s.args],
                            dst, ret.id]
                cur = ret
            elif isinstance(s, A.Return):
                cur = self.on(cur, host)
                value = None if s.value is None else _expr(s.value, self.slot)
                cur.term = ["return", s.sid, value]
            else:
                cur = self.on(cur, host)
                cur.ops.append(micro_op(s, self.slot))
        return cur

    def run(self) -> tuple[list[Block], FuncLayout]:
        start = self.new()
        end = self.lower(self.f.body, start)
        if end.term is None:
            end.term = ["return", None, None]
        return self._finish(start.id)

    def _finish(self, start: str) -> tuple[list[Block], FuncLayout]:
        # thread empty pass-through blocks
        fwd = {b.id: b.term[1] for b in self.blocks if not b.ops and b.term[0] == "goto"}

        def resolve(bid: str) -> str:
            seen = set()
            while bid in fwd and bid not in seen:
                seen.add(bid)
                bid = fwd[bid]
            return bid

        keep = [b for b in self.blocks if b.id not in fwd]
        live = _reachable(resolve(start), {b.id: b for b in keep}, resolve)
        keep = [b for b in keep if b.id in live]
        rename = {b.id: f"{self.f.name}#{i}" for i, b in enumerate(keep)}

        def rid(bid: str) -> str:
            return rename[resolve(bid)]

        for b in keep:
            t = b.term
            if t[0] == "goto":
                b.term = ["goto", rid(t[1])]
            elif t[0] == "branch":
                b.term = ["branch", t[1], t[2], rid(t[3]), rid(t[4])]
            elif t[0] == "call":
                b.term = ["call", t[1], t[2], t[3], t[4], rid(t[5])]
            b.id = rename[b.id]
            if b.host is None:
                b.host = "APP"
        layout = FuncLayout(self.f.name, list(self.f.params), self.slots, rid(start),
                            self.f.is_entry)
        return keep, layout


def _reachable(start: str, blocks: dict[str, Block], resolve) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        for n in blocks[stack.pop()].successors():
            n = resolve(n)
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return seen


@dataclass
class Lowered:
    blocks: dict[str, Block]
    functions: dict[str, FuncLayout]
    layouts: list[SplitClassLayout]
    wrappers: dict[str, EntryWrapper]


def lower(px: PyxilProgram) -> Lowered:
    p = px.program
    blocks: dict[str, Block] = {}
    funcs: dict[str, FuncLayout] = {}
    for f in p.functions:
        bl, layout = _FuncLowerer(f, px.labels).run()
        for b in bl:
            blocks[b.id] = b
        funcs[f.name] = layout
    layouts = []
    for i, c in enumerate(p.classes):
        app = [fd.name for fd in c.fields if px.field_labels.get((c.name, fd.name), "APP") == "APP"]
        db = [fd.name for fd in c.fields if fd.name not in app]
        layouts.append(SplitClassLayout(c.name, i, [(fd.name, fd.kind) for fd in c.fields],
                                        app, db))
    wrappers = {}
    for f in p.functions:
        if f.is_entry:
            fl = funcs[f.name]
            wrappers[f.name] = EntryWrapper(f.name, len(f.params), len(fl.slots), fl.start)
    return Lowered(blocks, funcs, layouts, wrappers)


# ------------------------------------------------------------------ listing


def _fmt_operand(o: list, slots: list[str]) -> str:
    if o[0] == "s":
        return f"${o[1]}"
    return format_const(o[1])


def _fmt_expr(e: list, slots: list[str]) -> str:
    if e[0] == "bin":
        return f"{_fmt_operand(e[2], slots)} {e[1]} {_fmt_operand(e[3], slots)}"
    if e[0] == "un":
        return f"{e[1]}{_fmt_operand(e[2], slots)}"
    return _fmt_operand(e, slots)


def format_op(op: list, slots: list[str]) -> str:
    k = op[0]
    o = lambda x: _fmt_operand(x, slots)  # noqa: E731
    if k == "assign":
        return f"${op[2]} = {_fmt_expr(op[3], slots)}"
    if k == "fread":
        return f"${op[2]} = ${op[3]}.{op[4]}"
    if k == "fwrite":
        return f"${op[2]}.{op[3]} = {o(op[4])}"
    if k == "aread":
        return f"${op[2]} = ${op[3]}[{o(op[4])}]"
    if k == "awrite":
        return f"${op[2]}[{o(op[3])}] = {o(op[4])}"
    if k == "alen":
        return f"${op[2]} = len(${op[3]})"
    if k == "newobj":
        return f"${op[2]} = new {op[3]}()"
    if k == "newarr":
        return f"${op[2]} = new {op[3]}[{o(op[4])}]"
    if k == "query":
        fn = "exec" if op[5] else "query"
        args = ", ".join([repr(op[3])] + [o(a) for a in op[4]])
        call = f"{fn}({args})"
        return call if op[2] is None else f"${op[2]} = {call}"
    if k == "print":
        return f"print({', '.join(o(a) for a in op[2])})"
    if k == "send":
        return f"{op[2]}({', '.join(f'${a}' for a in op[3])})"
    raise ValueError(k)


def format_term(t: list, slots: list[str]) -> str:
    if t[0] == "goto":
        return f"goto {t[1]}"
    if t[0] == "branch":
        return f"if ({_fmt_expr(t[2], slots)}) goto {t[3]} else {t[4]}"
    if t[0] == "call":
        args = ", ".join(_fmt_operand(a, slots) for a in t[3])
        dst = "" if t[4] is None else f"${t[4]} = "
        return f"call {dst}{t[2]}({args}) return-to {t[5]}"
    return "return" if t[2] is None else f"return {_fmt_expr(t[2], slots)}"


def dump_blocks(lw: Lowered) -> str:
    """Per-function slot map, then every block with host, micro-ops and terminator."""
    out: list[str] = []
    for c in lw.layouts:
        out.append(f"class {c.name} app=[{', '.join(c.app_fields)}] db=[{', '.join(c.db_fields)}]")
    for fname, fl in lw.functions.items():
        head = "entry fn" if fl.is_entry else "fn"
        out.append(f"{head} {fname} start={fl.start}")
        out.append("  slots: " + ", ".join(f"${i}={v}" for i, v in enumerate(fl.slots)))
        for b in lw.blocks.values():
            if b.func != fname:
                continue
            out.append(f"  block {b.id} @{b.host}")
            for op in b.ops:
                out.append(f"    s{op[1]}: {format_op(op, fl.slots)}")
            sid = b.term[1] if b.term[0] != "goto" else None
            tag = f"s{sid}: " if sid is not None else ""
            out.append(f"    -> {tag}{format_term(b.term, fl.slots)}")
    return "\n".join(out) + "\n"
