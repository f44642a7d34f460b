"""Control, data, update, anti and output dependence edges.

Node ids are strings: ``s<sid>`` for statements, ``f:<Class>.<field>`` for
field declarations, plus the two pseudo-nodes ``db`` (database code) and
``console`` (the caller of entry points and reader of their results).

Abstract memory locations used for dependences:

* ``("var", func, name)``       a local variable or parameter
* ``("fld", site, field)``      a field of objects from one allocation site
* ``("elem", site)`` / ``("len", site)``  contents / length of arrays from a site
* ``("db",)`` and ``("console",)``        database state and console output
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..frontend import ast as A
from .cfg import ENTRY, FuncCfg, build_cfg, may_return
from .pointsto import PointsToMap, points_to

DB = "db"
CONSOLE = "console"
EDGE_KINDS = ("control", "data", "update", "anti", "output")


def snode(sid: int) -> str:
    return f"s{sid}"


def fnode(cls: str, name: str) -> str:
    return f"f:{cls}.{name}"


def node_sid(node: str) -> int | None:
    return int(node[1:]) if node.startswith("s") else None


@dataclass(frozen=True, order=True)
class DepEdge:
    src: str
    dst: str
    kind: str
    is_back_edge: bool = False
    is_interprocedural: bool = False
    # ordering-only edge derived from a call's side-effect summary; weight 0
    summary: bool = False

    def key(self) -> tuple[str, str, str]:
        return (self.src, self.dst, self.kind)

    def flags(self) -> str:
        f = ("B" if self.is_back_edge else "") + ("I" if self.is_interprocedural else "")
        f += "S" if self.summary else ""
        return f or "-"


class ProgramInfo:
    """Per-program facts shared by the individual analyses."""

    def __init__(self, p: A.Program, pt: PointsToMap | None = None):
        self.p = p
        self.pt = pt if pt is not None else points_to(p)
        self.funcs = {f.name: f for f in p.functions}
        self.cfgs: dict[str, FuncCfg] = {f.name: build_cfg(f) for f in p.functions}
        self.func_of: dict[int, str] = {}
        self.stmts: dict[int, A.Stmt] = {}
        for f, s in p.statements():
            self.func_of[s.sid] = f.name
            self.stmts[s.sid] = s
        self.callers: dict[str, list[A.Call]] = {f.name: [] for f in p.functions}
        for _, s in p.statements():
            if isinstance(s, A.Call):
                self.callers[s.func].append(s)
        self.fields_of = {c.name: c.field_names() for c in p.classes}

    # ------------------------------------------------------------ locations
    def _obj_fields(self, fn: str, obj: str, fname: str) -> set[tuple]:
        return {("fld", site, fname) for site in self.pt.objects(fn, obj)
                if fname in self.fields_of[site[2]]}

    def direct_heap(self, s: A.Stmt) -> tuple[set[tuple], set[tuple]]:
        """Heap and effect locations read / written by ``s`` itself."""
        fn = self.func_of[s.sid]
        reads: set[tuple] = set()
        writes: set[tuple] = set()
        if isinstance(s, A.FieldRead):
            reads |= self._obj_fields(fn, s.obj, s.field)
        elif isinstance(s, A.FieldWrite):
            writes |= self._obj_fields(fn, s.obj, s.field)
        elif isinstance(s, A.ArrayRead):
            reads |= {("elem", site) for site in self.pt.arrays(fn, s.arr)}
        elif isinstance(s, A.ArrayLen):
            reads |= {("len", site) for site in self.pt.arrays(fn, s.arr)}
        elif isinstance(s, A.ArrayWrite):
            writes |= {("elem", site) for site in self.pt.arrays(fn, s.arr)}
        elif isinstance(s, A.NewObject):
            site = ("obj", s.sid, s.cls)
            writes |= {("fld", site, f) for f in self.fields_of[s.cls]}
        elif isinstance(s, A.NewArray):
            site = ("arr", s.sid)
            writes |= {("elem", site), ("len", site)}
        elif isinstance(s, A.Query):
            if s.is_exec:
                writes.add(("db",))
            else:
                reads.add(("db",))
                if s.target is not None:
                    for site in (("rs", s.sid), ("row", s.sid)):
                        writes |= {("elem", site), ("len", site)}
        elif isinstance(s, A.Print):
            writes.add(("console",))
        return reads, writes

    @cached_property
    def summaries(self) -> dict[str, tuple[frozenset, frozenset]]:
        """Transitive heap/effect (reads, writes) of each function."""
        direct: dict[str, tuple[set, set]] = {}
        calls: dict[str, set[str]] = {}
        for f in self.p.functions:
            r, w = set(), set()
            cs = set()
            for s in A.walk(f.body):
                dr, dw = self.direct_heap(s)
                r |= dr
                w |= dw
                if isinstance(s, A.Call):
                    cs.add(s.func)
            direct[f.name] = (r, w)
            calls[f.name] = cs
        changed = True
        while changed:
            changed = False
            for fn, cs in calls.items():
                r, w = direct[fn]
                n = len(r) + len(w)
                for c in cs:
                    r |= direct[c][0]
                    w |= direct[c][1]
                if len(r) + len(w) != n:
                    changed = True
        return {fn: (frozenset(r), frozenset(w)) for fn, (r, w) in direct.items()}

    def var_uses(self, s: A.Stmt) -> list[str]:
        names: list[str] = []
        for attr in ("expr", "value", "index", "size", "cond"):
            v = getattr(s, attr, None)
            if v is not None and not isinstance(v, str):
                names.extend(A.operand_vars(v))
        for attr in ("obj", "arr"):
            v = getattr(s, attr, None)
            if isinstance(v, str):
                names.append(v)
        for a in getattr(s, "args", ()) or ():
            if isinstance(a, A.Var):
                names.append(a.name)
        return list(dict.fromkeys(names))

    def var_def(self, s: A.Stmt) -> str | None:
        t = getattr(s, "target", None)
        return t if isinstance(t, str) else None

    @cached_property
    def effects(self) -> dict[int, tuple[frozenset, frozenset]]:
        """(reads, writes) of every statement, including variables and call summaries.

        Compound statements report only their own condition reads.
        """
        out = {}
        for sid, s in self.stmts.items():
            fn = self.func_of[sid]
            r, w = self.direct_heap(s)
            r |= {("var", fn, v) for v in self.var_uses(s)}
            d = self.var_def(s)
            if d is not None:
                w.add(("var", fn, d))
            if isinstance(s, A.Call):
                sr, sw = self.summaries[s.func]
                r |= sr
                w |= sw
            out[sid] = (frozenset(r), frozenset(w))
        return out

    # ---------------------------------------------------------------- flags
    def flags(self, src: int, dst: int) -> tuple[bool, bool]:
        """(is_back_edge, is_interprocedural) for a statement-to-statement edge."""
        fs, fd = self.func_of[src], self.func_of[dst]
        if fs != fd:
            return False, True
        cfg = self.cfgs[fs]
        if dst not in cfg.reachable_from(src):
            return False, True
        back = dst <= src and cfg.common_loop(src, dst)
        return back, False

    def edge(self, src: int, dst: int, kind: str, summary: bool = False) -> DepEdge:
        back, inter = self.flags(src, dst)
        return DepEdge(snode(src), snode(dst), kind, back, inter, summary)


# ------------------------------------------------------------------ analyses


def control_deps(p: A.Program, info: ProgramInfo | None = None) -> set[DepEdge]:
    info = info or ProgramInfo(p)
    out: set[DepEdge] = set()

    def block(stmts) -> None:
        for i, s in enumerate(stmts):
            for blk in s.children():
                for c in blk:
                    out.add(DepEdge(snode(s.sid), snode(c.sid), "control"))
                block_children = blk
                block(block_children)
            if isinstance(s, A.Call):
                for c in info.funcs[s.func].body:
                    out.add(DepEdge(snode(s.sid), snode(c.sid), "control", False, True))
            if isinstance(s, A.Query):
                out.add(DepEdge(snode(s.sid), DB, "control"))
            if not isinstance(s, A.Return) and may_return(s):
                for later in stmts[i + 1:]:
                    out.add(DepEdge(snode(s.sid), snode(later.sid), "control"))

    for f in p.functions:
        if f.name in p.entry_points:
            for c in f.body:
                out.add(DepEdge(CONSOLE, snode(c.sid), "control", False, True))
        block(f.body)
    return out


def _reaching_defs(info: ProgramInfo, fn: str) -> dict[int, set[tuple[str, int]]]:
    """IN sets of (variable, defining sid) at each statement; params use ENTRY."""
    cfg = info.cfgs[fn]
    f = info.funcs[fn]
    gen: dict[int, tuple[str, int] | None] = {}
    for sid, s in cfg.stmts.items():
        d = info.var_def(s)
        gen[sid] = (d, sid) if d is not None else None
    preds = cfg.preds()
    out: dict[int, set] = {n: set() for n in cfg.succ}
    out[ENTRY] = {(p, ENTRY) for p in f.params}
    inn: dict[int, set] = {n: set() for n in cfg.succ}
    order = [n for n in cfg.succ if n >= 0]
    changed = True
    while changed:
        changed = False
        for n in order:
            i: set = set()
            for pr in preds.get(n, ()):
                i |= out[pr]
            inn[n] = i
            g = gen[n]
            o = i if g is None else {d for d in i if d[0] != g[0]} | {g}
            if o != out[n]:
                out[n] = o
                changed = True
    return inn


def def_use(p: A.Program, pt: PointsToMap | None = None, info: ProgramInfo | None = None) -> set[DepEdge]:
    info = info or ProgramInfo(p, pt)
    out: dict[tuple, DepEdge] = {}

    def put(e: DepEdge) -> None:
        if e.src == e.dst:
            return
        old = out.get(e.key())
        if old is None or (old.summary and not e.summary):
            out[e.key()] = e

    # variables, including parameters bound at call sites / by the console
    for f in p.functions:
        rd = _reaching_defs(info, f.name)
        for sid, s in info.cfgs[f.name].stmts.items():
            uses = set(info.var_uses(s))
            for name, d in rd[sid]:
                if name not in uses:
                    continue
                if d != ENTRY:
                    put(info.edge(d, sid, "data"))
                    continue
                for c in info.callers[f.name]:
                    put(info.edge(c.sid, sid, "data"))
                if f.name in p.entry_points:
                    put(DepEdge(CONSOLE, snode(sid), "data", False, True))

    # return values flow to the call statement (or the console)
    for f in p.functions:
        for s in A.walk(f.body):
            if isinstance(s, A.Return) and s.value is not None:
                for c in info.callers[f.name]:
                    if c.target is not None:
                        put(info.edge(s.sid, c.sid, "data"))
                if f.name in p.entry_points:
                    put(DepEdge(snode(s.sid), CONSOLE, "data", False, True))

    # heap and database: every writer/reader pair on a common location
    writers: dict[tuple, list[int]] = {}
    readers: dict[tuple, list[int]] = {}
    for sid, s in info.stmts.items():
        r, w = info.direct_heap(s)
        for loc in r:
            readers.setdefault(loc, []).append(sid)
        for loc in w:
            if loc != ("console",):
                writers.setdefault(loc, []).append(sid)
    for loc, ws in writers.items():
        for w in ws:
            for r in readers.get(loc, ()):
                put(info.edge(w, r, "data"))

    # call-site summaries: order writers before calls that read, calls before readers
    eff = info.effects
    for f in p.functions:
        cfg = info.cfgs[f.name]
        calls = [s for s in cfg.stmts.values() if isinstance(s, A.Call)]
        for c in calls:
            sr, sw = info.summaries[c.func]
            reach_c = cfg.reachable_from(c.sid)
            for sid in cfg.stmts:
                if sid == c.sid:
                    continue
                r, w = eff[sid]
                if sr & w and c.sid in cfg.reachable_from(sid):
                    put(info.edge(sid, c.sid, "data", summary=True))
                if sw & r and sid in reach_c:
                    put(info.edge(c.sid, sid, "data", summary=True))
    return set(out.values())


def update_edges(p: A.Program, pt: PointsToMap | None = None, info: ProgramInfo | None = None) -> set[DepEdge]:
    info = info or ProgramInfo(p, pt)
    out: set[DepEdge] = set()
    for sid, s in info.stmts.items():
        fn = info.func_of[sid]
        if isinstance(s, A.FieldWrite):
            for site in info.pt.objects(fn, s.obj):
                if s.field in info.fields_of[site[2]]:
                    out.add(DepEdge(fnode(site[2], s.field), snode(sid), "update"))
        elif isinstance(s, A.ArrayWrite):
            for site in info.pt.arrays(fn, s.arr):
                if site[1] != sid:
                    out.add(info.edge(site[1], sid, "update"))
    return out


def field_read_edges(p: A.Program, info: ProgramInfo) -> set[DepEdge]:
    """Data edges from a field declaration to the statements reading it."""
    out: set[DepEdge] = set()
    for sid, s in info.stmts.items():
        if isinstance(s, A.FieldRead):
            fn = info.func_of[sid]
            for site in info.pt.objects(fn, s.obj):
                if s.field in info.fields_of[site[2]]:
                    out.add(DepEdge(fnode(site[2], s.field), snode(sid), "data"))
    return out


def order_edges(p: A.Program, pt: PointsToMap | None = None, info: ProgramInfo | None = None) -> set[DepEdge]:
    info = info or ProgramInfo(p, pt)
    out: set[DepEdge] = set()
    eff = info.effects
    for f in p.functions:
        cfg = info.cfgs[f.name]
        sids = sorted(cfg.stmts)
        for a in sids:
            ra, wa = eff[a]
            if not ra and not wa:
                continue
            reach = cfg.reachable_from(a)
            for b in sids:
                if b == a or b not in reach:
                    continue
                rb, wb = eff[b]
                if wa & wb:
                    out.add(info.edge(a, b, "output"))
                if ra & wb:
                    out.add(info.edge(a, b, "anti"))

        # statements that may leave the function stay behind everything before them
        def block(stmts) -> None:
            for i, s in enumerate(stmts):
                if may_return(s):
                    for prev in stmts[:i]:
                        out.add(info.edge(prev.sid, s.sid, "output"))
                for blk in s.children():
                    block(blk)

        block(f.body)
    return out


@dataclass
class Analysis:
    program: A.Program
    info: ProgramInfo
    edges: list[DepEdge] = field(default_factory=list)


def analyze(p: A.Program) -> Analysis:
    """All dependence edges of ``p``, sorted, with duplicates removed."""
    info = ProgramInfo(p)
    edges: dict[tuple, DepEdge] = {}
    groups = (
        control_deps(p, info),
        def_use(p, info=info),
        field_read_edges(p, info),
        update_edges(p, info=info),
        order_edges(p, info=info),
    )
    for group in groups:
        for e in sorted(group, key=_edge_sort_key):
            if e.src != e.dst and e.key() not in edges:
                edges[e.key()] = e
    return Analysis(p, info, sorted(edges.values(), key=_edge_sort_key))


def _node_sort_key(n: str):
    if n.startswith("s"):
        return (1, int(n[1:]), "")
    if n == CONSOLE:
        return (0, 0, "")
    if n == DB:
        return (3, 0, "")
    return (2, 0, n)


def _edge_sort_key(e: DepEdge):
    return (EDGE_KINDS.index(e.kind), _node_sort_key(e.src), _node_sort_key(e.dst))


def dump_edges(edges) -> str:
    """One edge per line: ``kind src dst flags``."""
    return "".join(f"{e.kind} {e.src} {e.dst} {e.flags()}\n" for e in edges)


def parse_edges(text: str) -> list[DepEdge]:
    out = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        kind, src, dst, flags = line.split()[:4]
        out.append(DepEdge(src, dst, kind, "B" in flags, "I" in flags, "S" in flags))
    return out
