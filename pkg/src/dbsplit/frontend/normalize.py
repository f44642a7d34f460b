"""Decompose surface statements into the one-heap-access/one-call normal form.

Fresh temporaries are named ``$tN`` per function, numbered in statement
order.  Loops whose condition needs computation are rotated: the condition
statements run once before the loop and again at the end of the body.
Statement ids are renumbered in pre-order, so an already-normal program comes
back unchanged.
"""

from __future__ import annotations

import re
from dataclasses import replace

from . import ast as A
from .parser import DeclarationError, check

_TEMP_RE = re.compile(r"^\$t(\d+)$")


def normalize(p: A.Program) -> A.Program:
    counter = [1]
    funcs = tuple(_FuncNormalizer(f, counter).run() for f in p.functions)
    out = A.Program(p.classes, funcs, p.entry_points)
    check(out)
    return out


class _FuncNormalizer:
    def __init__(self, f: A.FuncDecl, counter: list[int]):
        self.f = f
        self.counter = counter
        self.locals: list[str] = list(f.locals)
        nums = [int(m.group(1)) for n in _all_names(f) if (m := _TEMP_RE.match(n))]
        self.next_temp = max(nums, default=0) + 1
        self.fresh: list[str] = []

    def sid(self) -> int:
        n = self.counter[0]
        self.counter[0] += 1
        return n

    def mk(self, cls, *args):
        # operands are evaluated (and their statements emitted) before the
        # id is drawn, keeping ids in textual order
        return cls(self.sid(), self.loc, *args)

    def temp(self) -> str:
        # provisional name; renumbered in definition order by run()
        name = f"$new{len(self.fresh)}"
        self.fresh.append(name)
        self.locals.append(name)
        return name

    def declare(self, name: str) -> None:
        if name not in self.locals and name not in self.f.params:
            self.locals.append(name)

    def run(self) -> A.FuncDecl:
        body = self.block(self.f.body)
        if not body or not isinstance(body[-1], A.Return):
            body.append(A.Return(self.sid(), self.f.loc, None))
        order: list[str] = []
        for s in A.walk(tuple(body)):
            t = getattr(s, "target", None)
            if t in self.fresh and t not in order:
                order.append(t)
        order += [t for t in self.fresh if t not in order]
        m = {t: f"$t{self.next_temp + i}" for i, t in enumerate(order)}
        body = [A.rename_stmt(s, m) for s in body]
        declared = [m.get(n, n) for n in self.locals]
        seen = [n for n in _names_in_order(body) if n in declared]
        local_names = list(dict.fromkeys(seen + declared))
        return replace(self.f, body=tuple(body), locals=tuple(local_names))

    def block(self, stmts) -> list[A.Stmt]:
        out: list[A.Stmt] = []
        for s in stmts:
            self.stmt(s, out)
            if out and isinstance(out[-1], A.Return):
                break  # rest of the block is unreachable
        return out

    # ------------------------------------------------------------ statements
    def stmt(self, s: A.Stmt, out: list[A.Stmt]) -> None:
        loc = s.loc
        self.loc = loc
        self.deferred: list[str] = []
        self.single_use = _single_use_vars(s)
        if isinstance(s, A.VarDecl):
            for n in s.names:
                self.declare(n)
            if s.init is not None:
                self.rhs(s.names[0], s.init, out)
        elif isinstance(s, A.AssignStmt):
            self.assign(s, out)
        elif isinstance(s, A.ExprStmt):
            self.expr_stmt(s.expr, out)
        elif isinstance(s, A.If):
            cond = self.cond(s.cond, out)
            self.flush(out)
            sid = self.sid()
            then = self.block(s.then)
            orelse = self.block(s.orelse)
            out.append(A.If(sid, loc, cond, tuple(then), tuple(orelse)))
        elif isinstance(s, A.While):
            pre: list[A.Stmt] = []
            cond = self.cond(s.cond, pre)
            self.flush(pre)
            out.extend(pre)
            sid = self.sid()
            body = self.block(s.body)
            if body and isinstance(body[-1], A.Return):
                out.append(A.While(sid, loc, cond, tuple(body)))
            else:
                body.extend(self.clone(pre))
                out.append(A.While(sid, loc, cond, tuple(body)))
        elif isinstance(s, A.ForEach):
            self.foreach(s, out)
        elif isinstance(s, A.Return):
            value = None if s.value is None else self.operand(s.value, out)
            self.flush(out)
            out.append(self.mk(A.Return, value))
            return
        else:
            # already in normal form
            out.append(replace(s, sid=self.sid()))
        self.flush(out)

    def flush(self, out: list[A.Stmt]) -> None:
        for name in self.deferred:
            delta = 1 if name.endswith("+") else -1
            v = name[:-1]
            out.append(self.mk(A.Assign, v, A.Binary("+", A.Var(v), A.Const(delta))))
        self.deferred = []

    def clone(self, stmts: list[A.Stmt]) -> list[A.Stmt]:
        return [replace(s, sid=self.sid()) for s in stmts]

    def assign(self, s: A.AssignStmt, out: list[A.Stmt]) -> None:
        t, op, value = s.target, s.op, s.value
        bop = op[0] if op != "=" else None
        if isinstance(t, A.Var):
            if bop:
                value = A.Binary(bop, A.Var(t.name), value)
            self.rhs(t.name, value, out)
        elif isinstance(t, A.FieldGet):
            obj = self.var_operand(t.obj, out)
            if bop:
                cur = self.temp()
                out.append(self.mk(A.FieldRead, cur, obj, t.name))
                v = self.operand(A.Binary(bop, A.Var(cur), value), out)
            else:
                v = self.operand(value, out)
            out.append(self.mk(A.FieldWrite, obj, t.name, v))
        else:
            arr = self.var_operand(t.arr, out)
            idx = self.operand(t.index, out)
            if bop:
                cur = self.temp()
                out.append(self.mk(A.ArrayRead, cur, arr, idx))
                v = self.operand(A.Binary(bop, A.Var(cur), value), out)
            else:
                v = self.operand(value, out)
            out.append(self.mk(A.ArrayWrite, arr, idx, v))

    def expr_stmt(self, e: A.Expr, out: list[A.Stmt]) -> None:
        if isinstance(e, A.PostIncr):
            out.append(self.mk(A.Assign, e.name,
                                A.Binary("+", A.Var(e.name), A.Const(e.delta))))
            return
        assert isinstance(e, A.CallExpr)
        args = tuple(self.operand(a, out) for a in e.args)
        if e.func == "print":
            out.append(self.mk(A.Print, args))
        elif e.func in ("query", "exec"):
            out.append(self.mk(A.Query, None, args[0].value, args[1:], e.func == "exec"))
        elif e.func == "len":
            raise DeclarationError("len(...) as a statement has no effect", self.loc)
        else:
            out.append(self.mk(A.Call, None, e.func, args))

    def foreach(self, s: A.ForEach, out: list[A.Stmt]) -> None:
        loc = self.loc
        self.declare(s.var)
        if isinstance(s.iterable, A.Var) and s.iterable.name not in _assigned_in(s.body):
            arr = s.iterable.name
        else:
            arr = self.temp()
            self.rhs(arr, s.iterable, out)
        n, i = self.temp(), self.temp()
        out.append(self.mk(A.ArrayLen, n, arr))
        out.append(self.mk(A.Assign, i, A.Const(0)))
        sid = self.sid()
        body: list[A.Stmt] = [self.mk(A.ArrayRead, s.var, arr, A.Var(i))]
        body.extend(self.block(s.body))
        if not isinstance(body[-1], A.Return):
            body.append(self.mk(A.Assign, i, A.Binary("+", A.Var(i), A.Const(1))))
        out.append(A.While(sid, loc, A.Binary("<", A.Var(i), A.Var(n)), tuple(body)))

    # ----------------------------------------------------------- expressions
    def rhs(self, target: str, e: A.Expr, out: list[A.Stmt]) -> None:
        """Emit statements computing ``e`` straight into ``target``."""
        loc = self.loc
        if isinstance(e, (A.Var, A.Const)):
            out.append(self.mk(A.Assign, target, e))
        elif isinstance(e, A.PostIncr):
            out.append(self.mk(A.Assign, target, self.operand(e, out)))
        elif isinstance(e, A.Binary):
            left = self.operand(e.left, out)
            right = self.operand(e.right, out)
            out.append(self.mk(A.Assign, target, A.Binary(e.op, left, right)))
        elif isinstance(e, A.Unary):
            out.append(self.mk(A.Assign, target, A.Unary(e.op, self.operand(e.operand, out))))
        elif isinstance(e, A.FieldGet):
            obj = self.var_operand(e.obj, out)
            out.append(self.mk(A.FieldRead, target, obj, e.name))
        elif isinstance(e, A.IndexGet):
            arr = self.var_operand(e.arr, out)
            idx = self.operand(e.index, out)
            out.append(self.mk(A.ArrayRead, target, arr, idx))
        elif isinstance(e, A.NewObj):
            out.append(self.mk(A.NewObject, target, e.cls))
        elif isinstance(e, A.NewArr):
            out.append(self.mk(A.NewArray, target, e.elem, self.operand(e.size, out)))
        elif isinstance(e, A.CallExpr):
            if e.func == "len":
                arr = self.var_operand(e.args[0], out)
                out.append(self.mk(A.ArrayLen, target, arr))
                return
            if e.func in ("print", "exec"):
                raise DeclarationError(f"{e.func}(...) has no value", loc)
            args = tuple(self.operand(a, out) for a in e.args)
            if e.func == "query":
                out.append(self.mk(A.Query, target, args[0].value, args[1:]))
            else:
                out.append(self.mk(A.Call, target, e.func, args))
        else:  # pragma: no cover
            raise TypeError(e)

    def operand(self, e: A.Expr, out: list[A.Stmt]) -> A.Operand:
        if isinstance(e, (A.Var, A.Const)):
            return e
        if isinstance(e, A.PostIncr):
            if self.single_use.get(e.name, 0) == 1:
                self.deferred.append(e.name + ("+" if e.delta > 0 else "-"))
                return A.Var(e.name)
            t = self.temp()
            out.append(self.mk(A.Assign, t, A.Var(e.name)))
            out.append(self.mk(A.Assign, e.name,
                                A.Binary("+", A.Var(t), A.Const(e.delta))))
            return A.Var(t)
        t = self.temp()
        self.rhs(t, e, out)
        return A.Var(t)

    def var_operand(self, e: A.Expr, out: list[A.Stmt]) -> str:
        if isinstance(e, A.Var):
            return e.name
        t = self.temp()
        self.rhs(t, e, out)
        return t

    def cond(self, e: A.Expr, out: list[A.Stmt]) -> A.Expr:
        if A.is_simple(e):
            return e
        if isinstance(e, A.Binary):
            return A.Binary(e.op, self.operand(e.left, out), self.operand(e.right, out))
        if isinstance(e, A.Unary):
            return A.Unary(e.op, self.operand(e.operand, out))
        return self.operand(e, out)


# -------------------------------------------------------------------- helpers


def _expr_names(e) -> list[str]:
    if isinstance(e, (A.Var, A.PostIncr)):
        return [e.name]
    if isinstance(e, A.Binary):
        return _expr_names(e.left) + _expr_names(e.right)
    if isinstance(e, A.Unary):
        return _expr_names(e.operand)
    if isinstance(e, A.FieldGet):
        return _expr_names(e.obj)
    if isinstance(e, A.IndexGet):
        return _expr_names(e.arr) + _expr_names(e.index)
    if isinstance(e, A.NewArr):
        return _expr_names(e.size)
    if isinstance(e, A.CallExpr):
        return [n for a in e.args for n in _expr_names(a)]
    return []


def _single_use_vars(s: A.Stmt) -> dict[str, int]:
    """Occurrence counts of variables within one statement (not nested blocks).

    A post-increment can be deferred past the statement only when its variable
    occurs once and is not the statement's assignment target.
    """
    names: list[str] = []
    if isinstance(s, A.VarDecl):
        names = list(s.names) + (_expr_names(s.init) if s.init is not None else [])
    elif isinstance(s, A.AssignStmt):
        names = _expr_names(s.target) + _expr_names(s.value)
    elif isinstance(s, A.ExprStmt):
        names = _expr_names(s.expr)
    elif isinstance(s, A.Return) and s.value is not None:
        names = _expr_names(s.value)
    counts: dict[str, int] = {}
    for n in names:
        counts[n] = counts.get(n, 0) + 1
    return counts


def _assigned_in(stmts) -> set[str]:
    out: set[str] = set()
    for s in A.walk(tuple(stmts)):
        if isinstance(s, A.AssignStmt) and isinstance(s.target, A.Var):
            out.add(s.target.name)
        elif isinstance(s, A.VarDecl):
            out.update(s.names)
        elif isinstance(s, A.ForEach):
            out.add(s.var)
        elif isinstance(s, A.ExprStmt) and isinstance(s.expr, A.PostIncr):
            out.add(s.expr.name)
        t = getattr(s, "target", None)
        if isinstance(t, str):
            out.add(t)
        for e in (getattr(s, "value", None), getattr(s, "init", None)):
            if e is not None and not isinstance(e, str):
                out.update(n for n in _incr_names(e))
    return out


def _incr_names(e) -> list[str]:
    if isinstance(e, A.PostIncr):
        return [e.name]
    if isinstance(e, A.Binary):
        return _incr_names(e.left) + _incr_names(e.right)
    if isinstance(e, A.Unary):
        return _incr_names(e.operand)
    if isinstance(e, A.IndexGet):
        return _incr_names(e.arr) + _incr_names(e.index)
    if isinstance(e, A.CallExpr):
        return [n for a in e.args for n in _incr_names(a)]
    return []


def _all_names(f: A.FuncDecl) -> list[str]:
    names = list(f.params) + list(f.locals)
    for s in A.walk(f.body):
        t = getattr(s, "target", None)
        if isinstance(t, str):
            names.append(t)
        if isinstance(s, A.VarDecl):
            names.extend(s.names)
    return names


def _names_in_order(stmts) -> list[str]:
    """Variable names in order of first mention (pre-order, operands first)."""
    out: list[str] = []
    for s in A.walk(tuple(stmts)):
        for attr in ("expr", "value", "index", "size", "cond"):
            v = getattr(s, attr, None)
            if v is not None and not isinstance(v, str):
                out.extend(_expr_names(v))
        for a in getattr(s, "args", ()) or ():
            out.extend(_expr_names(a))
        for attr in ("obj", "arr", "target"):
            v = getattr(s, attr, None)
            if isinstance(v, str):
                out.append(v)
    return out
