"""Statement-level control-flow graphs for normalized functions."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..frontend import ast as A

ENTRY = -1
EXIT = -2


@dataclass
class FuncCfg:
    func: A.FuncDecl
    succ: dict[int, list[int]] = field(default_factory=dict)
    stmts: dict[int, A.Stmt] = field(default_factory=dict)
    # sid -> ids of enclosing loop heads, innermost last
    loops: dict[int, tuple[int, ...]] = field(default_factory=dict)
    # sid -> id of the directly enclosing compound statement (None at top level)
    parent: dict[int, int | None] = field(default_factory=dict)
    _reach: dict[int, frozenset[int]] = field(default_factory=dict)

    def preds(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {n: [] for n in self.succ}
        for n, ss in self.succ.items():
            for s in ss:
                out.setdefault(s, []).append(n)
        return out

    def reachable_from(self, sid: int) -> frozenset[int]:
        """Statements reachable by one or more CFG steps from ``sid``."""
        r = self._reach.get(sid)
        if r is None:
            seen: set[int] = set()
            stack = list(self.succ.get(sid, ()))
            while stack:
                n = stack.pop()
                if n in seen:
                    continue
                seen.add(n)
                stack.extend(self.succ.get(n, ()))
            r = frozenset(seen)
            self._reach[sid] = r
        return r

    def common_loop(self, a: int, b: int) -> bool:
        la = set(self.loops.get(a, ()))
        if self.stmts.get(a) is not None and self.stmts[a].kind == "loop-head":
            la.add(a)
        lb = set(self.loops.get(b, ()))
        if self.stmts.get(b) is not None and self.stmts[b].kind == "loop-head":
            lb.add(b)
        return bool(la & lb)


def build_cfg(f: A.FuncDecl) -> FuncCfg:
    cfg = FuncCfg(f)
    cfg.succ[ENTRY] = []
    cfg.succ[EXIT] = []

    def link(srcs: list[int], dst: int) -> None:
        for s in srcs:
            cfg.succ[s].append(dst)

    def block(stmts, preds: list[int], loops: tuple[int, ...], parent) -> list[int]:
        """Wire ``stmts`` after ``preds``; return the fall-through exits."""
        cur = preds
        for s in stmts:
            cfg.stmts[s.sid] = s
            cfg.succ.setdefault(s.sid, [])
            cfg.loops[s.sid] = loops
            cfg.parent[s.sid] = parent
            link(cur, s.sid)
            if isinstance(s, A.If):
                a = block(s.then, [s.sid], loops, s.sid)
                b = block(s.orelse, [s.sid], loops, s.sid)
                cur = a + b
            elif isinstance(s, A.While):
                body_exits = block(s.body, [s.sid], loops + (s.sid,), s.sid)
                link(body_exits, s.sid)
                cur = [s.sid]
            elif isinstance(s, A.Return):
                link([s.sid], EXIT)
                cur = []
            else:
                cur = [s.sid]
        return cur

    ends = block(f.body, [ENTRY], (), None)
    link(ends, EXIT)
    # dedupe while keeping order
    for n, ss in cfg.succ.items():
        cfg.succ[n] = list(dict.fromkeys(ss))
    return cfg


def may_return(s: A.Stmt) -> bool:
    if isinstance(s, A.Return):
        return True
    return any(may_return(c) for blk in s.children() for c in blk)
