"""Render programs back to DSL text, optionally with placement labels."""

from __future__ import annotations

import json
from typing import Callable

from . import ast as A

Labeler = Callable[[A.Stmt], "str | None"]


def format_const(v: object) -> str:
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_expr(e: A.Expr, nested: bool = False) -> str:
    if isinstance(e, A.Var):
        return e.name
    if isinstance(e, A.Const):
        return format_const(e.value)
    if isinstance(e, A.Binary):
        s = f"{format_expr(e.left, True)} {e.op} {format_expr(e.right, True)}"
        return f"({s})" if nested else s
    if isinstance(e, A.Unary):
        return f"{e.op}{format_expr(e.operand, True)}"
    if isinstance(e, A.FieldGet):
        return f"{format_expr(e.obj, True)}.{e.name}"
    if isinstance(e, A.IndexGet):
        return f"{format_expr(e.arr, True)}[{format_expr(e.index)}]"
    if isinstance(e, A.CallExpr):
        return f"{e.func}({', '.join(format_expr(a) for a in e.args)})"
    if isinstance(e, A.NewObj):
        return f"new {e.cls}()"
    if isinstance(e, A.NewArr):
        return f"new {e.elem}[{format_expr(e.size)}]"
    if isinstance(e, A.PostIncr):
        return e.name + ("++" if e.delta > 0 else "--")
    raise TypeError(e)


def _args(args) -> str:
    return ", ".join(format_expr(a) for a in args)


def format_simple_stmt(s: A.Stmt) -> str:
    """One-line text of a non-compound statement (no trailing newline)."""
    if isinstance(s, A.Assign):
        return f"{s.target} = {format_expr(s.expr)};"
    if isinstance(s, A.FieldRead):
        return f"{s.target} = {s.obj}.{s.field};"
    if isinstance(s, A.FieldWrite):
        return f"{s.obj}.{s.field} = {format_expr(s.value)};"
    if isinstance(s, A.ArrayRead):
        return f"{s.target} = {s.arr}[{format_expr(s.index)}];"
    if isinstance(s, A.ArrayLen):
        return f"{s.target} = len({s.arr});"
    if isinstance(s, A.ArrayWrite):
        return f"{s.arr}[{format_expr(s.index)}] = {format_expr(s.value)};"
    if isinstance(s, A.NewObject):
        return f"{s.target} = new {s.cls}();"
    if isinstance(s, A.NewArray):
        return f"{s.target} = new {s.elem}[{format_expr(s.size)}];"
    if isinstance(s, A.Call):
        call = f"{s.func}({_args(s.args)})"
        return f"{s.target} = {call};" if s.target else f"{call};"
    if isinstance(s, A.Query):
        fn = "exec" if s.is_exec else "query"
        args = ", ".join([format_const(s.template)] + [format_expr(a) for a in s.args])
        call = f"{fn}({args})"
        return f"{s.target} = {call};" if s.target else f"{call};"
    if isinstance(s, A.Print):
        return f"print({_args(s.args)});"
    if isinstance(s, A.Return):
        return "return;" if s.value is None else f"return {format_expr(s.value)};"
    if isinstance(s, A.VarDecl):
        if s.init is not None:
            return f"var {s.names[0]} = {format_expr(s.init)};"
        return f"var {', '.join(s.names)};"
    if isinstance(s, A.AssignStmt):
        return f"{format_expr(s.target)} {s.op} {format_expr(s.value)};"
    if isinstance(s, A.ExprStmt):
        return f"{format_expr(s.expr)};"
    if s.kind == "send":
        return f"{s.op}({', '.join(s.args)});"
    raise TypeError(s)


def format_program(
    p: A.Program,
    label: Labeler | None = None,
    field_label: Callable[[str, str], "str | None"] | None = None,
) -> str:
    out: list[str] = []

    def lab(s: A.Stmt) -> str:
        if label is None:
            return ""
        v = label(s)
        return f":{v}: " if v else ""

    def block(stmts, depth: int) -> None:
        pad = "    " * depth
        for s in stmts:
            if isinstance(s, A.If):
                out.append(f"{pad}{lab(s)}if ({format_expr(s.cond)}) {{")
                block(s.then, depth + 1)
                if s.orelse:
                    out.append(f"{pad}}} else {{")
                    block(s.orelse, depth + 1)
                out.append(f"{pad}}}")
            elif isinstance(s, A.While):
                out.append(f"{pad}{lab(s)}while ({format_expr(s.cond)}) {{")
                block(s.body, depth + 1)
                out.append(f"{pad}}}")
            elif isinstance(s, A.ForEach):
                out.append(f"{pad}for (var {s.var} : {format_expr(s.iterable)}) {{")
                block(s.body, depth + 1)
                out.append(f"{pad}}}")
            else:
                out.append(f"{pad}{lab(s)}{format_simple_stmt(s)}")

    for c in p.classes:
        out.append(f"class {c.name} {{")
        for f in c.fields:
            fl = field_label(c.name, f.name) if field_label else None
            out.append(f"    {f':{fl}: ' if fl else ''}{f.kind} {f.name};")
        out.append("}")
        out.append("")
    for f in p.functions:
        head = "entry fn" if f.is_entry else "fn"
        out.append(f"{head} {f.name}({', '.join(f.params)}) {{")
        if f.locals:
            out.append(f"    var {', '.join(f.locals)};")
        block(f.body, 1)
        out.append("}")
        out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


def dump_ast(p: A.Program) -> str:
    """Indented statement listing: ``[sid] kind  text  @loc``."""
    out: list[str] = []
    for c in p.classes:
        fields = ", ".join(f"{f.kind} {f.name}" for f in c.fields)
        out.append(f"class {c.name} {{{fields}}}")
    for f in p.functions:
        entry = "entry " if f.is_entry else ""
        out.append(f"{entry}fn {f.name}({', '.join(f.params)}) locals=[{', '.join(f.locals)}]")
        _dump_block(f.body, 1, out)
    return "\n".join(out) + "\n"


def _dump_block(stmts, depth: int, out: list[str]) -> None:
    pad = "  " * depth
    for s in stmts:
        if isinstance(s, (A.If, A.While)):
            text = f"{'if' if isinstance(s, A.If) else 'while'} ({format_expr(s.cond)})"
        elif isinstance(s, A.ForEach):
            text = f"for ({s.var} : {format_expr(s.iterable)})"
        else:
            text = format_simple_stmt(s)
        out.append(f"{pad}[{s.sid}] {s.kind}  {text}  @{s.loc.line}:{s.loc.column}")
        for i, blk in enumerate(s.children()):
            if i == 1 and blk:
                out.append(f"{pad}  else")
            _dump_block(blk, depth + 1, out)
