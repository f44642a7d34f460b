"""Recursive-descent parser for ``.pyx`` sources (grammar in docs/grammar.md)."""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import ast as A


class DslError(Exception):
    """Parse or static-check failure; ``loc`` points at the offending token."""

    def __init__(self, message: str, loc: A.SourceLoc | None = None):
        self.message = message
        self.loc = loc
        super().__init__(f"{loc}: {message}" if loc else message)


class SyntaxErr(DslError):
    pass


class DeclarationError(DslError):
    pass


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*|\#[^\n]*)
  | (?P<label>:(?:APP|DB):)
  | (?P<float>\d+\.\d*(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<int>\d+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<ident>\$?[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\+\+|--|\+=|-=|\*=|==|!=|<=|>=|&&|\|\||[-+*/%<>=!(){}\[\];,.:])
    """,
    re.VERBOSE,
)

KEYWORDS = frozenset(
    {"class", "fn", "entry", "var", "if", "else", "while", "for", "return",
     "new", "true", "false", "null"}
)


@dataclass
class Token:
    kind: str
    text: str
    loc: A.SourceLoc


def tokenize(text: str, filename: str = "<input>") -> list[Token]:
    toks: list[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SyntaxErr(f"unexpected character {text[pos]!r}", A.SourceLoc(filename, line, col))
        kind = m.lastgroup
        s = m.group()
        loc = A.SourceLoc(filename, line, col)
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                if kind == "ident" and s in KEYWORDS:
                    kind = "kw"
                toks.append(Token(kind, s, loc))
            col += len(s)
        pos = m.end()
    toks.append(Token("eof", "", A.SourceLoc(filename, line, col)))
    return toks


_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


def _unquote(s: str, loc: A.SourceLoc) -> str:
    out, i, body = [], 0, s[1:-1]
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt not in _ESCAPES:
                raise SyntaxErr(f"bad escape \\{nxt}", loc)
            out.append(_ESCAPES[nxt])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


# binary operator precedence, loosest first
_PRECEDENCE = (("||",), ("&&",), ("==", "!="), ("<", "<=", ">", ">="), ("+", "-"), ("*", "/", "%"))


@dataclass(frozen=True)
class SendOp(A.Stmt):
    """``sendAPP(x)`` / ``sendDB(x)`` / ``sendNative(x, ...)``; PyxIL text only."""

    op: str
    args: tuple[str, ...]
    kind = "send"


class Parser:
    def __init__(self, text: str, filename: str = "<input>", pyxil: bool = False):
        self.toks = tokenize(text, filename)
        self.i = 0
        self.pyxil = pyxil
        # sid -> label, populated in PyxIL mode
        self.labels: dict[int, str] = {}
        self.field_labels: dict[tuple[str, str], str] = {}
        self._next_sid = 1

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("op", "kw")

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            got = self.tok.text or "end of input"
            raise SyntaxErr(f"expected {text!r}, found {got!r}", self.tok.loc)
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "ident":
            raise SyntaxErr(f"expected identifier, found {t.text or 'end of input'!r}", t.loc)
        self.i += 1
        return t

    def sid(self) -> int:
        n = self._next_sid
        self._next_sid += 1
        return n

    # -- declarations
    def program(self) -> A.Program:
        classes, funcs = [], []
        while self.tok.kind != "eof":
            if self.at("class"):
                classes.append(self.class_decl())
            elif self.at("fn") or self.at("entry"):
                funcs.append(self.func_decl())
            else:
                raise SyntaxErr(f"expected 'class' or 'fn', found {self.tok.text!r}", self.tok.loc)
        entries = frozenset(f.name for f in funcs if f.is_entry)
        return A.Program(tuple(classes), tuple(funcs), entries)

    def class_decl(self) -> A.ClassDecl:
        loc = self.expect("class").loc
        name = self.ident().text
        self.expect("{")
        fields = []
        while not self.accept("}"):
            label = self.label()
            kt = self.tok
            if kt.kind != "ident":
                raise SyntaxErr(f"expected field type, found {kt.text!r}", kt.loc)
            self.i += 1
            fname = self.ident().text
            self.expect(";")
            fields.append(A.FieldDecl(fname, kt.text))
            if label:
                self.field_labels[(name, fname)] = label
        return A.ClassDecl(name, tuple(fields), loc)

    def func_decl(self) -> A.FuncDecl:
        is_entry = self.accept("entry")
        loc = self.expect("fn").loc
        name = self.ident().text
        self.expect("(")
        params = []
        if not self.at(")"):
            params.append(self.ident().text)
            while self.accept(","):
                params.append(self.ident().text)
        self.expect(")")
        body = self.block()
        return A.FuncDecl(name, tuple(params), body, is_entry, (), loc)

    def label(self) -> str | None:
        if self.tok.kind == "label":
            if not self.pyxil:
                raise SyntaxErr("placement labels are only allowed in PyxIL text", self.tok.loc)
            text = self.tok.text
            self.i += 1
            return text.strip(":")
        return None

    # -- statements
    def block(self) -> tuple[A.Stmt, ...]:
        opening = self.tok.loc
        self.expect("{")
        out = []
        while not self.accept("}"):
            if self.tok.kind == "eof":
                raise SyntaxErr("unexpected end of input; this '{' is never closed", opening)
            out.append(self.statement())
        return tuple(out)

    def statement(self) -> A.Stmt:
        label = self.label()
        s = self._statement()
        if label:
            self.labels[s.sid] = label
        return s

    def _statement(self) -> A.Stmt:
        t = self.tok
        loc = t.loc
        if self.accept("var"):
            names = [self.ident().text]
            init = None
            if self.accept("="):
                init = self.expr()
            else:
                while self.accept(","):
                    names.append(self.ident().text)
            self.expect(";")
            return A.VarDecl(self.sid(), loc, tuple(names), init)
        if self.accept("if"):
            sid = self.sid()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            then = self.block()
            orelse: tuple[A.Stmt, ...] = ()
            if self.accept("else"):
                if self.at("if") or self.tok.kind == "label":
                    orelse = (self.statement(),)
                else:
                    orelse = self.block()
            return A.If(sid, loc, cond, then, orelse)
        if self.accept("while"):
            sid = self.sid()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            return A.While(sid, loc, cond, self.block())
        if self.accept("for"):
            sid = self.sid()
            self.expect("(")
            self.accept("var")
            var = self.ident().text
            self.expect(":")
            it = self.expr()
            self.expect(")")
            return A.ForEach(sid, loc, var, it, self.block())
        if self.accept("return"):
            sid = self.sid()
            value = None if self.at(";") else self.expr()
            self.expect(";")
            return A.Return(sid, loc, value)
        if t.kind == "ident" and t.text in ("sendAPP", "sendDB", "sendNative"):
            if not self.pyxil:
                raise SyntaxErr(f"{t.text} is only allowed in PyxIL text", loc)
            self.i += 1
            self.expect("(")
            args = [self.ident().text]
            while self.accept(","):
                args.append(self.ident().text)
            self.expect(")")
            self.expect(";")
            return SendOp(self.sid(), loc, t.text, tuple(args))
        sid = self.sid()
        lhs = self.expr()
        for op in ("=", "+=", "-=", "*="):
            if self.accept(op):
                if not isinstance(lhs, (A.Var, A.FieldGet, A.IndexGet)):
                    raise SyntaxErr("invalid assignment target", loc)
                rhs = self.expr()
                self.expect(";")
                return A.AssignStmt(sid, loc, lhs, op, rhs)
        self.expect(";")
        if not isinstance(lhs, (A.CallExpr, A.PostIncr)):
            raise SyntaxErr("expression statement has no effect", loc)
        return A.ExprStmt(sid, loc, lhs)

    # -- expressions
    def expr(self, level: int = 0) -> A.Expr:
        if level == len(_PRECEDENCE):
            return self.unary()
        left = self.expr(level + 1)
        while self.tok.kind == "op" and self.tok.text in _PRECEDENCE[level]:
            op = self.tok.text
            self.i += 1
            left = A.Binary(op, left, self.expr(level + 1))
        return left

    def unary(self) -> A.Expr:
        if self.accept("-"):
            e = self.unary()
            if isinstance(e, A.Const) and type(e.value) in (int, float):
                return A.Const(-e.value)
            return A.Unary("-", e)
        if self.accept("!"):
            return A.Unary("!", self.unary())
        return self.postfix()

    def postfix(self) -> A.Expr:
        e = self.primary()
        while True:
            if self.accept("."):
                e = A.FieldGet(e, self.ident().text)
            elif self.accept("["):
                idx = self.expr()
                self.expect("]")
                e = A.IndexGet(e, idx)
            elif self.at("++") or self.at("--"):
                if not isinstance(e, A.Var):
                    raise SyntaxErr("++/-- apply to local variables only", self.tok.loc)
                delta = 1 if self.tok.text == "++" else -1
                self.i += 1
                e = A.PostIncr(e.name, delta)
            else:
                return e

    def primary(self) -> A.Expr:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return A.Const(int(t.text))
        if t.kind == "float":
            self.i += 1
            return A.Const(float(t.text))
        if t.kind == "string":
            self.i += 1
            return A.Const(_unquote(t.text, t.loc))
        if self.accept("true"):
            return A.Const(True)
        if self.accept("false"):
            return A.Const(False)
        if self.accept("null"):
            return A.Const(None)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.accept("new"):
            name = self.ident().text
            if self.accept("("):
                self.expect(")")
                return A.NewObj(name)
            self.expect("[")
            size = self.expr()
            self.expect("]")
            return A.NewArr(name, size)
        if t.kind == "ident":
            self.i += 1
            if self.accept("("):
                args = []
                if not self.at(")"):
                    args.append(self.expr())
                    while self.accept(","):
                        args.append(self.expr())
                self.expect(")")
                return A.CallExpr(t.text, tuple(args))
            return A.Var(t.text)
        raise SyntaxErr(f"unexpected {t.text or 'end of input'!r}", t.loc)


def parse(source_text: str, filename: str = "<input>") -> A.Program:
    """Parse DSL source and run declaration checks.

    Raises :class:`SyntaxErr` or :class:`DeclarationError` with a location.
    """
    p = Parser(source_text, filename)
    prog = p.program()
    check(prog)
    return prog


# ---------------------------------------------------------------- static checks


def check(prog: A.Program) -> None:
    """Uniqueness of declarations and resolution of identifiers."""
    seen: dict[str, A.SourceLoc] = {}
    for c in prog.classes:
        if c.name in seen or c.name in A.VALUE_KINDS:
            raise DeclarationError(f"duplicate declaration of class {c.name!r}", c.loc)
        seen[c.name] = c.loc
        names = c.field_names()
        for n in names:
            if names.count(n) > 1:
                raise DeclarationError(f"duplicate field {n!r} in class {c.name!r}", c.loc)
    class_names = {c.name for c in prog.classes}
    for c in prog.classes:
        for f in c.fields:
            if f.kind not in A.VALUE_KINDS and f.kind not in class_names:
                raise DeclarationError(f"unknown field type {f.kind!r} in class {c.name!r}", c.loc)
    funcs: dict[str, A.FuncDecl] = {}
    for f in prog.functions:
        if f.name in funcs or f.name in A.BUILTINS:
            raise DeclarationError(f"duplicate declaration of function {f.name!r}", f.loc)
        funcs[f.name] = f
    all_fields = {fd.name for c in prog.classes for fd in c.fields}
    for ep in prog.entry_points:
        if ep not in funcs:
            raise DeclarationError(f"entry point {ep!r} is not a declared function")
    for f in prog.functions:
        _check_function(f, funcs, class_names, all_fields)


def _check_function(f, funcs, class_names, all_fields) -> None:
    scope: set[str] = set()
    for p in f.params:
        if p in scope:
            raise DeclarationError(f"duplicate parameter {p!r} in {f.name!r}", f.loc)
        scope.add(p)
    for name in f.locals:
        if name in scope:
            raise DeclarationError(f"duplicate declaration of {name!r} in {f.name!r}", f.loc)
        scope.add(name)

    def declare(name: str, loc) -> None:
        if name in scope:
            raise DeclarationError(f"duplicate declaration of {name!r} in {f.name!r}", loc)
        scope.add(name)

    def expr(e, loc) -> None:
        if isinstance(e, A.Var):
            if e.name not in scope:
                raise DeclarationError(f"unknown identifier {e.name!r}", loc)
        elif isinstance(e, A.PostIncr):
            if e.name not in scope:
                raise DeclarationError(f"unknown identifier {e.name!r}", loc)
        elif isinstance(e, A.Binary):
            expr(e.left, loc)
            expr(e.right, loc)
        elif isinstance(e, A.Unary):
            expr(e.operand, loc)
        elif isinstance(e, A.FieldGet):
            expr(e.obj, loc)
            if e.name not in all_fields:
                raise DeclarationError(f"unknown field {e.name!r}", loc)
        elif isinstance(e, A.IndexGet):
            expr(e.arr, loc)
            expr(e.index, loc)
        elif isinstance(e, A.NewObj):
            if e.cls not in class_names:
                raise DeclarationError(f"unknown class {e.cls!r}", loc)
        elif isinstance(e, A.NewArr):
            if e.elem not in A.VALUE_KINDS and e.elem not in class_names:
                raise DeclarationError(f"unknown element type {e.elem!r}", loc)
            expr(e.size, loc)
        elif isinstance(e, A.CallExpr):
            _check_call(e, loc, funcs)
            for a in e.args:
                expr(a, loc)

    def stmt(s: A.Stmt) -> None:
        loc = s.loc
        if isinstance(s, A.VarDecl):
            if s.init is not None:
                expr(s.init, loc)
            for n in s.names:
                declare(n, loc)
        elif isinstance(s, A.AssignStmt):
            expr(s.value, loc)
            expr(s.target, loc)
        elif isinstance(s, A.ExprStmt):
            expr(s.expr, loc)
        elif isinstance(s, A.ForEach):
            expr(s.iterable, loc)
            declare(s.var, loc)
            for c in s.body:
                stmt(c)
        elif isinstance(s, (A.If, A.While)):
            expr(s.cond, loc)
            for block in s.children():
                for c in block:
                    stmt(c)
        elif isinstance(s, A.Return):
            if s.value is not None:
                expr(s.value, loc)
        elif isinstance(s, A.Assign):
            expr(s.expr, loc)
            expr(A.Var(s.target), loc)
        else:
            for name in _normal_vars(s):
                expr(A.Var(name), loc)
            if isinstance(s, (A.FieldRead, A.FieldWrite)) and s.field not in all_fields:
                raise DeclarationError(f"unknown field {s.field!r}", loc)
            if isinstance(s, A.Call):
                _check_call(A.CallExpr(s.func, s.args), loc, funcs)

    for s in f.body:
        stmt(s)


def _normal_vars(s: A.Stmt) -> list[str]:
    out = []
    for attr in ("target", "obj", "arr"):
        v = getattr(s, attr, None)
        if isinstance(v, str):
            out.append(v)
    for attr in ("value", "index", "size"):
        v = getattr(s, attr, None)
        if isinstance(v, A.Var):
            out.append(v.name)
    for a in getattr(s, "args", ()) or ():
        if isinstance(a, A.Var):
            out.append(a.name)
    return out


def _check_call(e: A.CallExpr, loc, funcs) -> None:
    if e.func in ("query", "exec"):
        if not e.args or not (isinstance(e.args[0], A.Const) and isinstance(e.args[0].value, str)):
            raise DeclarationError(f"{e.func} needs a string-literal template", loc)
        return
    if e.func == "len":
        if len(e.args) != 1:
            raise DeclarationError("len takes one argument", loc)
        return
    if e.func == "print":
        return
    if e.func not in funcs:
        raise DeclarationError(f"unknown function {e.func!r}", loc)
    want = len(funcs[e.func].params)
    if len(e.args) != want:
        raise DeclarationError(f"{e.func} expects {want} arguments, got {len(e.args)}", loc)
