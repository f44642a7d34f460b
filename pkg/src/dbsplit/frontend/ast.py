"""AST for the partitionable DSL.

One set of node classes serves both the surface program produced by the
parser and the statement-granular normal form produced by
:func:`dbsplit.frontend.normalize.normalize`.  Normal-form statements carry
at most one heap access or one call each; surface-only constructs
(``VarDecl``, ``AssignStmt``, ``ExprStmt``, ``ForEach``) never survive
normalization.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Union

VALUE_KINDS = ("int", "float", "bool", "string", "array")


@dataclass(frozen=True)
class SourceLoc:
    file: str = "<input>"
    line: int = 1
    column: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


NOLOC = SourceLoc()


# ---------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: object  # int | float | bool | str | None


Operand = Union[Var, Const]


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class FieldGet:
    obj: "Expr"
    name: str


@dataclass(frozen=True)
class IndexGet:
    arr: "Expr"
    index: "Expr"


@dataclass(frozen=True)
class CallExpr:
    func: str
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class NewObj:
    cls: str


@dataclass(frozen=True)
class NewArr:
    elem: str
    size: "Expr"


@dataclass(frozen=True)
class PostIncr:
    name: str
    delta: int


Expr = Union[Var, Const, Binary, Unary, FieldGet, IndexGet, CallExpr, NewObj, NewArr, PostIncr]

BUILTINS = frozenset({"len", "query", "exec", "print"})


def is_operand(e: object) -> bool:
    return isinstance(e, (Var, Const))


def is_simple(e: object) -> bool:
    """Operand, or one operator applied to operands (no heap access, no call)."""
    if is_operand(e):
        return True
    if isinstance(e, Binary):
        return is_operand(e.left) and is_operand(e.right)
    if isinstance(e, Unary):
        return is_operand(e.operand)
    return False


def operand_vars(e: object) -> tuple[str, ...]:
    if isinstance(e, Var):
        return (e.name,)
    if isinstance(e, Binary):
        return operand_vars(e.left) + operand_vars(e.right)
    if isinstance(e, Unary):
        return operand_vars(e.operand)
    return ()


# ----------------------------------------------------------------- statements


@dataclass(frozen=True)
class Stmt:
    sid: int
    loc: SourceLoc = field(compare=False)

    kind = "stmt"

    def children(self) -> tuple[tuple["Stmt", ...], ...]:
        return ()


# surface-only


@dataclass(frozen=True)
class VarDecl(Stmt):
    names: tuple[str, ...]
    init: Expr | None = None
    kind = "var-decl"


@dataclass(frozen=True)
class AssignStmt(Stmt):
    target: Expr  # Var | FieldGet | IndexGet
    op: str  # '=', '+=', '-=', '*='
    value: Expr
    kind = "assign-stmt"


@dataclass(frozen=True)
class ExprStmt(Stmt):
    expr: Expr
    kind = "expr-stmt"


@dataclass(frozen=True)
class ForEach(Stmt):
    var: str
    iterable: Expr
    body: tuple[Stmt, ...]
    kind = "foreach"

    def children(self):
        return (self.body,)


# normal form


@dataclass(frozen=True)
class Assign(Stmt):
    target: str
    expr: Expr  # simple
    kind = "assign"


@dataclass(frozen=True)
class FieldRead(Stmt):
    target: str
    obj: str
    field: str
    kind = "field-read"


@dataclass(frozen=True)
class FieldWrite(Stmt):
    obj: str
    field: str
    value: Operand
    kind = "field-write"


@dataclass(frozen=True)
class ArrayRead(Stmt):
    target: str
    arr: str
    index: Operand
    kind = "array-read"


@dataclass(frozen=True)
class ArrayLen(Stmt):
    target: str
    arr: str
    kind = "array-len"


@dataclass(frozen=True)
class ArrayWrite(Stmt):
    arr: str
    index: Operand
    value: Operand
    kind = "array-write"


@dataclass(frozen=True)
class NewObject(Stmt):
    target: str
    cls: str
    kind = "alloc-object"


@dataclass(frozen=True)
class NewArray(Stmt):
    target: str
    elem: str
    size: Operand
    kind = "alloc-array"


@dataclass(frozen=True)
class Call(Stmt):
    target: str | None
    func: str
    args: tuple[Operand, ...]
    kind = "call"


@dataclass(frozen=True)
class Query(Stmt):
    target: str | None
    template: str
    args: tuple[Operand, ...]
    is_exec: bool = False
    kind = "query"


@dataclass(frozen=True)
class Print(Stmt):
    args: tuple[Operand, ...]
    kind = "print"


# shared by surface and normal form


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: tuple[Stmt, ...]
    orelse: tuple[Stmt, ...] = ()
    kind = "if-head"

    def children(self):
        return (self.then, self.orelse)


@dataclass(frozen=True)
class While(Stmt):
    cond: Expr
    body: tuple[Stmt, ...]
    kind = "loop-head"

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class Return(Stmt):
    value: Expr | None = None
    kind = "return"


NORMAL_KINDS = frozenset(
    {
        "assign", "field-read", "field-write", "array-read", "array-len",
        "array-write", "alloc-array", "alloc-object", "call", "query",
        "print", "if-head", "loop-head", "return",
    }
)


# -------------------------------------------------------------- declarations


@dataclass(frozen=True)
class FieldDecl:
    name: str
    kind: str  # one of VALUE_KINDS, or a class name for object refs


@dataclass(frozen=True)
class ClassDecl:
    name: str
    fields: tuple[FieldDecl, ...]
    loc: SourceLoc = field(default=NOLOC, compare=False)

    def field_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.fields)


@dataclass(frozen=True)
class FuncDecl:
    name: str
    params: tuple[str, ...]
    body: tuple[Stmt, ...]
    is_entry: bool = False
    locals: tuple[str, ...] = ()
    loc: SourceLoc = field(default=NOLOC, compare=False)


@dataclass(frozen=True)
class Program:
    classes: tuple[ClassDecl, ...]
    functions: tuple[FuncDecl, ...]
    entry_points: frozenset[str] = field(default_factory=frozenset)

    def func(self, name: str) -> FuncDecl:
        for f in self.functions:
            if f.name == name:
                return f
        raise KeyError(name)

    def cls(self, name: str) -> ClassDecl:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(name)

    def class_of_field(self, fname: str) -> list[ClassDecl]:
        return [c for c in self.classes if fname in c.field_names()]

    def statements(self) -> Iterator[tuple[FuncDecl, Stmt]]:
        """Every statement in textual pre-order, paired with its function."""
        for f in self.functions:
            for s in walk(f.body):
                yield f, s

    def stmt_map(self) -> dict[int, Stmt]:
        return {s.sid: s for _, s in self.statements()}


def walk(stmts: tuple[Stmt, ...]) -> Iterator[Stmt]:
    for s in stmts:
        yield s
        for block in s.children():
            yield from walk(block)


def field_key(cls: str, name: str) -> str:
    return f"{cls}.{name}"


def rename_expr(e, m: dict[str, str]):
    if isinstance(e, Var):
        return Var(m.get(e.name, e.name))
    if isinstance(e, PostIncr):
        return PostIncr(m.get(e.name, e.name), e.delta)
    if isinstance(e, Binary):
        return Binary(e.op, rename_expr(e.left, m), rename_expr(e.right, m))
    if isinstance(e, Unary):
        return Unary(e.op, rename_expr(e.operand, m))
    if isinstance(e, FieldGet):
        return FieldGet(rename_expr(e.obj, m), e.name)
    if isinstance(e, IndexGet):
        return IndexGet(rename_expr(e.arr, m), rename_expr(e.index, m))
    if isinstance(e, CallExpr):
        return CallExpr(e.func, tuple(rename_expr(a, m) for a in e.args))
    if isinstance(e, NewArr):
        return NewArr(e.elem, rename_expr(e.size, m))
    return e


_NAME_ATTRS = ("target", "obj", "arr", "var")
_EXPR_ATTRS = ("expr", "value", "index", "size", "cond", "init", "iterable")


def rename_stmt(s: Stmt, m: dict[str, str]) -> Stmt:
    """Copy of ``s`` (recursively) with local variable names substituted."""
    changes: dict[str, object] = {}
    for a in _NAME_ATTRS:
        v = getattr(s, a, None)
        if isinstance(v, str):
            changes[a] = m.get(v, v)
        elif a == "target" and v is not None and not isinstance(v, str):
            changes[a] = rename_expr(v, m)
    for a in _EXPR_ATTRS:
        v = getattr(s, a, None)
        if v is not None:
            changes[a] = rename_expr(v, m)
    if hasattr(s, "args"):
        changes["args"] = tuple(
            m.get(x, x) if isinstance(x, str) else rename_expr(x, m) for x in s.args
        )
    if hasattr(s, "names"):
        changes["names"] = tuple(m.get(x, x) for x in s.names)
    for a in ("then", "orelse", "body"):
        if hasattr(s, a):
            changes[a] = tuple(rename_stmt(c, m) for c in getattr(s, a))
    return replace(s, **changes)
