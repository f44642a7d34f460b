"""Statement reordering that groups same-host statements.

Each region (a function body, branch arm or loop body) is topologically
sorted over its direct statements.  Dependences between nested statements
are lifted to the region's direct statements; back edges and
interprocedural edges are ignored.  Two ready queues are kept, one per host;
the current host's queue is drained before switching.
"""

from __future__ import annotations

import heapq
from dataclasses import replace

from ..analysis.deps import node_sid
from ..frontend import ast as A
from ..optimizer.apply import PlacedGraph


class ReorderError(Exception):
    pass


def stmt_host(pg: PlacedGraph, s: A.Stmt) -> str:
    return pg.placement[f"s{s.sid}"]


def count_alternations(hosts: list[str]) -> int:
    return sum(1 for a, b in zip(hosts, hosts[1:]) if a != b)


class _Lifter:
    def __init__(self, p: A.Program, pg: PlacedGraph):
        self.parent: dict[int, int | None] = {}
        self.func_of: dict[int, str] = {}
        for f in p.functions:
            self._index(f.body, None, f.name)
        # ordering constraints as (src sid, dst sid) on statements of one function
        self.pairs: list[tuple[int, int]] = []
        for e in pg.graph.edges:
            if e.is_back_edge or e.is_interprocedural:
                continue
            a, b = node_sid(e.src), node_sid(e.dst)
            if a is None or b is None:
                continue
            if self.func_of.get(a) != self.func_of.get(b):
                continue
            self.pairs.append((a, b))

    def _index(self, stmts, parent, fn) -> None:
        for s in stmts:
            self.parent[s.sid] = parent
            self.func_of[s.sid] = fn
            for blk in s.children():
                self._index(blk, s.sid, fn)

    def member(self, sid: int, region_parent, members: set[int]) -> int | None:
        """The direct statement of the region containing ``sid``."""
        cur = sid
        while cur is not None:
            if cur in members and self.parent[cur] == region_parent:
                return cur
            cur = self.parent[cur]
        return None


def region_edges(lifter: _Lifter, stmts, parent) -> set[tuple[int, int]]:
    members = {s.sid for s in stmts}
    out = set()
    for a, b in lifter.pairs:
        ma = lifter.member(a, parent, members)
        mb = lifter.member(b, parent, members)
        if ma is None or mb is None or ma == mb:
            continue
        out.add((ma, mb))
    return out


def order_region(stmts, edges: set[tuple[int, int]], host_of) -> list:
    """Two-queue breadth-first topological order of ``stmts``."""
    pos = {s.sid: i for i, s in enumerate(stmts)}
    by_sid = {s.sid: s for s in stmts}
    succ: dict[int, list[int]] = {s.sid: [] for s in stmts}
    indeg = {s.sid: 0 for s in stmts}
    for a, b in sorted(edges):
        if pos[a] > pos[b]:
            raise ReorderError(f"dependence s{a} -> s{b} runs against program order")
        succ[a].append(b)
        indeg[b] += 1
    queues: dict[str, list[int]] = {"APP": [], "DB": []}
    for s in stmts:
        if indeg[s.sid] == 0:
            heapq.heappush(queues[host_of(s)], pos[s.sid])
    out = []
    ready = [q for q in queues.values() if q]
    if not ready:
        return out
    current = host_of(stmts[min(q[0] for q in ready)])
    while queues["APP"] or queues["DB"]:
        q = queues[current]
        if not q:
            current = "DB" if current == "APP" else "APP"
            continue
        i = heapq.heappop(q)
        s = stmts[i]
        out.append(s)
        for b in succ[s.sid]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(queues[host_of(by_sid[b])], pos[b])
    if len(out) != len(stmts):
        raise ReorderError("cycle among forward dependences")
    return out


def reorder(p: A.Program, pg: PlacedGraph) -> A.Program:
    """Reordered copy of ``p``; regions whose greedy order would alternate
    hosts more often than the original keep their original order."""
    lifter = _Lifter(p, pg)

    def host_of(s: A.Stmt) -> str:
        return stmt_host(pg, s)

    def region(stmts, parent) -> tuple:
        stmts = [_rebuild(s) for s in stmts]
        if len(stmts) < 2:
            return tuple(stmts)
        order = order_region(stmts, region_edges(lifter, stmts, parent), host_of)
        before = count_alternations([host_of(s) for s in stmts])
        after = count_alternations([host_of(s) for s in order])
        return tuple(order if after <= before else stmts)

    def _rebuild(s: A.Stmt) -> A.Stmt:
        if isinstance(s, A.If):
            return replace(s, then=region(s.then, s.sid), orelse=region(s.orelse, s.sid))
        if isinstance(s, A.While):
            return replace(s, body=region(s.body, s.sid))
        return s

    funcs = tuple(replace(f, body=region(f.body, None)) for f in p.functions)
    return replace(p, functions=funcs)


def regions(p: A.Program):
    """Yield (parent sid or function name, statements) for every region."""
    def walk(stmts, parent):
        yield parent, stmts
        for s in stmts:
            for blk in s.children():
                yield from walk(blk, s.sid)

    for f in p.functions:
        yield from walk(f.body, f.name)
