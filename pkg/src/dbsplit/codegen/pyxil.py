"""Placement-annotated programs (PyxIL) with explicit heap-sync markers.

A :class:`PyxilProgram` is a normalized program in which every statement
and every field carries a host label and ``sendAPP`` / ``sendDB`` /
``sendNative`` markers follow the statements whose writes are read on the
other host.  Markers only enqueue work; the runtime ships the batch with
the next control transfer.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..analysis.deps import ProgramInfo, node_sid
from ..frontend import ast as A
from ..frontend.normalize import normalize
from ..frontend.parser import Parser, SendOp, check
from ..frontend.printer import format_program
from ..optimizer.apply import PlacedGraph

SEND_APP, SEND_DB, SEND_NATIVE = "sendAPP", "sendDB", "sendNative"


@dataclass
class PyxilProgram:
    program: A.Program  # normalized, may contain SendOp statements
    labels: dict[int, str]  # sid -> host, for statements and sends
    field_labels: dict[tuple[str, str], str] = field(default_factory=dict)

    def host(self, s: A.Stmt) -> str:
        return self.labels[s.sid]

    def sends(self) -> list[SendOp]:
        return [s for _, s in self.program.statements() if isinstance(s, SendOp)]


def _data_succ(pg: PlacedGraph) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for e in pg.graph.edges:
        if e.kind == "data" and not e.summary:
            out.setdefault(e.src, []).append(e.dst)
    return out


def _remote_array_writer(pg: PlacedGraph, s: A.Stmt) -> bool:
    """An array allocated by ``s`` is written on the other host (which needs its length)."""
    src = f"s{s.sid}"
    return any(e.kind == "update" and e.src == src and pg.placement[e.dst] != pg.placement[src]
               for e in pg.graph.edges)


def _remote_heap_reader(pg: PlacedGraph, info: ProgramInfo, s: A.Stmt,
                        succ: dict[str, list[str]]) -> bool:
    """True if some statement on the other host reads a heap location ``s`` writes."""
    _, writes = info.direct_heap(s)
    if not writes:
        return False
    src = f"s{s.sid}"
    here = pg.placement[src]
    for node in succ.get(src, ()):
        dst = node_sid(node)
        if dst is None or pg.placement[node] == here:
            continue
        reads, _ = info.direct_heap(info.stmts[dst])
        if reads & writes:
            return True
    return False


def _syncs_for(pg: PlacedGraph, info: ProgramInfo, s: A.Stmt, field_home,
               succ: dict[str, list[str]]) -> list[tuple[str, tuple[str, ...]]]:
    here = pg.placement[f"s{s.sid}"]
    fn = info.func_of.get(s.sid)
    if isinstance(s, A.FieldWrite):
        homes = sorted({field_home(site[2], s.field) for site in info.pt.objects(fn, s.obj)
                        if s.field in info.fields_of[site[2]]})
        if any(h != here for h in homes) or _remote_heap_reader(pg, info, s, succ):
            # the updated field's home decides which part travels
            return [(SEND_APP if h == "APP" else SEND_DB, (s.obj,)) for h in homes]
        return []
    if isinstance(s, A.ArrayWrite):
        alloc_remote = any(pg.placement.get(f"s{site[1]}", here) != here
                           for site in info.pt.arrays(fn, s.arr) if isinstance(site[1], int))
        if alloc_remote or _remote_heap_reader(pg, info, s, succ):
            return [(SEND_NATIVE, (s.arr,))]
        return []
    if isinstance(s, (A.NewArray, A.Query)) and s.target is not None:
        if _remote_heap_reader(pg, info, s, succ) or _remote_array_writer(pg, s):
            return [(SEND_NATIVE, (s.target,))]
    return []


def insert_sync(p: A.Program, pg: PlacedGraph, info: ProgramInfo | None = None) -> PyxilProgram:
    """Label ``p`` (already reordered) and add sync markers after remote-visible writes."""
    info = info or ProgramInfo(p)
    placement = pg.placement
    succ = _data_succ(pg)

    def field_home(cls: str, name: str) -> str:
        return placement.get(f"f:{cls}.{name}", "APP")

    next_sid = max((s.sid for _, s in p.statements()), default=0) + 1
    labels: dict[int, str] = {}

    def region(stmts) -> tuple:
        nonlocal next_sid
        out = []
        for s in stmts:
            host = placement[f"s{s.sid}"]
            if isinstance(s, A.If):
                s = replace(s, then=region(s.then), orelse=region(s.orelse))
            elif isinstance(s, A.While):
                s = replace(s, body=region(s.body))
            labels[s.sid] = host
            out.append(s)
            for op, args in _syncs_for(pg, info, s, field_home, succ):
                labels[next_sid] = host
                out.append(SendOp(next_sid, s.loc, op, args))
                next_sid += 1
        return tuple(out)

    funcs = tuple(replace(f, body=region(f.body)) for f in p.functions)
    flabels = {(c.name, fd.name): field_home(c.name, fd.name)
               for c in p.classes for fd in c.fields}
    return PyxilProgram(replace(p, functions=funcs), labels, flabels)


def emit_pyxil_text(px: PyxilProgram) -> str:
    return format_program(
        px.program,
        label=lambda s: px.labels.get(s.sid),
        field_label=lambda c, f: px.field_labels.get((c, f)),
    )


def parse_pyxil(text: str, filename: str = "<pyxil>") -> PyxilProgram:
    """Read emitted PyxIL text back (statement ids are renumbered)."""
    ps = Parser(text, filename, pyxil=True)
    raw = ps.program()
    check(raw)
    order = [ps.labels.get(s.sid) for _, s in raw.statements()
             if not isinstance(s, A.VarDecl)]
    prog = normalize(raw)
    # keep the order of the explicit declaration list
    declared = {f.name: [n for s in f.body if isinstance(s, A.VarDecl) for n in s.names]
                for f in raw.functions}
    funcs = []
    for f in prog.functions:
        d = [n for n in declared.get(f.name, []) if n in f.locals]
        funcs.append(replace(f, locals=tuple(d + [n for n in f.locals if n not in d])))
    prog = replace(prog, functions=tuple(funcs))
    stmts = [s for _, s in prog.statements()]
    if len(stmts) != len(order):
        raise ValueError("PyxIL text is not in normal form")
    labels = {}
    for s, lab in zip(stmts, order):
        if lab is None:
            raise ValueError(f"statement s{s.sid} has no placement label")
        labels[s.sid] = lab
    return PyxilProgram(prog, labels, dict(ps.field_labels))
