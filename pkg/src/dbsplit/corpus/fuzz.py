"""Deterministic generator of small, well-typed, terminating DSL programs.

Generated programs mix objects, arrays, loops, branches, helper calls,
queries, updates and prints.  Types are tracked while generating so runs
never fail: every array has the same fixed length, indices are reduced
modulo that length from non-negative values, object fields holding
references are initialized at allocation and only ever overwritten with
non-null values, and divisors are non-zero constants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..interp.workload import Call, Workload

TABLE_KEYS = 5


@dataclass
class _Scope:
    ints: list[str] = field(default_factory=list)
    counters: list[str] = field(default_factory=list)  # non-negative ints
    floats: list[str] = field(default_factory=list)
    objs: list[str] = field(default_factory=list)
    arrs: list[str] = field(default_factory=list)

    def copy(self) -> "_Scope":
        return _Scope(list(self.ints), list(self.counters), list(self.floats),
                      list(self.objs), list(self.arrs))


class _Gen:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self.n = 0
        self.alen = self.rng.randint(2, 5)
        self.helpers: list[tuple[str, str]] = []  # (name, kind) kind: obj | query
        self.out: list[str] = []

    def fresh(self, prefix: str) -> str:
        self.n += 1
        return f"{prefix}{self.n}"

    # ------------------------------------------------------------ expressions
    def index(self, sc: _Scope) -> str:
        r = self.rng
        if sc.counters and r.random() < 0.6:
            return f"{r.choice(sc.counters)} % {self.alen}"
        return str(r.randrange(self.alen))

    def int_atom(self, sc: _Scope) -> str:
        r = self.rng
        opts = ["const"]
        if sc.ints or sc.counters:
            opts += ["var", "var"]
        if sc.objs:
            opts += ["field", "link"]
        if sc.arrs:
            opts += ["elem", "len"]
        k = r.choice(opts)
        if k == "var":
            return r.choice(sc.ints + sc.counters)
        if k == "field":
            return f"{r.choice(sc.objs)}.a"
        if k == "link":
            return f"{r.choice(sc.objs)}.link.v"
        if k == "elem":
            return f"{r.choice(sc.arrs)}[{self.index(sc)}]"
        if k == "len":
            return f"len({r.choice(sc.arrs)})"
        return str(r.randint(-3, 12))

    def int_expr(self, sc: _Scope, depth: int = 2) -> str:
        r = self.rng
        if depth == 0 or r.random() < 0.45:
            return self.int_atom(sc)
        op = r.choice(["+", "-", "*", "+", "%", "/"])
        left = self.int_expr(sc, depth - 1)
        if op in ("%", "/"):
            return f"({left} {op} {r.randint(1, 7)})"
        return f"({left} {op} {self.int_expr(sc, depth - 1)})"

    def float_expr(self, sc: _Scope, depth: int = 2) -> str:
        r = self.rng
        opts = ["const", "scaled"]
        if sc.floats:
            opts += ["var", "var"]
        if sc.objs:
            opts.append("field")
        k = r.choice(opts)
        if k == "var":
            base = r.choice(sc.floats)
        elif k == "field":
            base = f"{r.choice(sc.objs)}.b"
        elif k == "scaled":
            base = f"({self.int_expr(sc, 1)} * {r.choice(['0.5', '1.25', '2.0'])})"
        else:
            base = r.choice(["0.25", "1.5", "3.0", "-2.5"])
        if depth > 0 and r.random() < 0.4:
            return f"({base} {r.choice(['+', '-', '*'])} {self.float_expr(sc, depth - 1)})"
        return base

    def cond(self, sc: _Scope) -> str:
        r = self.rng
        c = f"{self.int_expr(sc, 1)} {r.choice(['<', '<=', '>', '==', '!='])} {self.int_expr(sc, 1)}"
        if r.random() < 0.2:
            c = f"({c}) {r.choice(['&&', '||'])} ({self.int_expr(sc, 0)} < {r.randint(0, 9)})"
        return c

    # ------------------------------------------------------------- statements
    def emit(self, pad: str, line: str) -> None:
        self.out.append(pad + line)

    def new_obj(self, sc: _Scope, pad: str) -> None:
        o = self.fresh("o")
        self.emit(pad, f"var {o} = new C0();")
        self.emit(pad, f"{o}.xs = new int[{self.alen}];")
        self.emit(pad, f"{o}.link = new C1();")
        self.emit(pad, f"{o}.link.v = {self.int_expr(sc, 1)};")
        self.emit(pad, f"{o}.a = {self.int_expr(sc, 1)};")
        sc.objs.append(o)

    def stmt(self, sc: _Scope, pad: str, depth: int, in_helper: bool) -> None:
        r = self.rng
        kinds = ["int", "int", "float", "print"]
        if sc.objs:
            kinds += ["fwrite", "fwrite", "alias", "arrfield"]
        if sc.arrs:
            kinds += ["awrite", "foreach"]
        if depth < 2:
            kinds += ["if", "while"]
        kinds += ["newobj", "newarr", "query", "exec"]
        if self.helpers and not in_helper:
            kinds += ["call", "call"]
        if in_helper and depth > 0:
            kinds.append("ret")
        k = r.choice(kinds)
        if k == "int":
            if sc.ints and r.random() < 0.5:
                v = r.choice(sc.ints)
                op = r.choice(["=", "+=", "-=", "*="])
                self.emit(pad, f"{v} {op} {self.int_expr(sc)};")
            else:
                v = self.fresh("v")
                self.emit(pad, f"var {v} = {self.int_expr(sc)};")
                sc.ints.append(v)
        elif k == "float":
            v = self.fresh("f")
            self.emit(pad, f"var {v} = {self.float_expr(sc)};")
            sc.floats.append(v)
        elif k == "print":
            args = [f'"p{self.fresh("")}"', self.int_expr(sc, 1)]
            if sc.floats and r.random() < 0.5:
                args.append(r.choice(sc.floats))
            self.emit(pad, f"print({', '.join(args)});")
        elif k == "fwrite":
            o = r.choice(sc.objs)
            which = r.random()
            if which < 0.4:
                self.emit(pad, f"{o}.a {r.choice(['=', '+='])} {self.int_expr(sc)};")
            elif which < 0.7:
                self.emit(pad, f"{o}.b = {self.float_expr(sc)};")
            else:
                self.emit(pad, f"{o}.link.v = {self.int_expr(sc)};")
        elif k == "alias":
            a, b = r.choice(sc.objs), r.choice(sc.objs)
            if r.random() < 0.5:
                self.emit(pad, f"{a}.link = {b}.link;")
            else:
                self.emit(pad, f"{a}.xs = {b}.xs;")
        elif k == "arrfield":
            o = r.choice(sc.objs)
            self.emit(pad, f"{o}.xs[{self.index(sc)}] = {self.int_expr(sc)};")
        elif k == "awrite":
            a = r.choice(sc.arrs)
            self.emit(pad, f"{a}[{self.index(sc)}] = {self.int_expr(sc)};")
        elif k == "foreach":
            a = r.choice(sc.arrs)
            e = self.fresh("e")
            acc = self.fresh("s")
            self.emit(pad, f"var {acc} = 0;")
            self.emit(pad, f"for (var {e} : {a}) {{")
            self.emit(pad + "    ", f"{acc} = {acc} + {e} % 11;")
            self.emit(pad, "}")
            sc.ints.append(acc)
        elif k == "if":
            self.emit(pad, f"if ({self.cond(sc)}) {{")
            self.block(sc.copy(), pad + "    ", depth + 1, in_helper)
            if r.random() < 0.5:
                self.emit(pad, "} else {")
                self.block(sc.copy(), pad + "    ", depth + 1, in_helper)
            self.emit(pad, "}")
        elif k == "while":
            i = self.fresh("i")
            bound = r.randint(1, 4)
            self.emit(pad, f"var {i} = 0;")
            self.emit(pad, f"while ({i} < {bound}) {{")
            inner = sc.copy()
            inner.counters.append(i)
            self.block(inner, pad + "    ", depth + 1, in_helper)
            self.emit(pad + "    ", f"{i}++;")
            self.emit(pad, "}")
        elif k == "newobj":
            self.new_obj(sc, pad)
        elif k == "newarr":
            a = self.fresh("arr")
            self.emit(pad, f"var {a} = new int[{self.alen}];")
            self.emit(pad, f"{a}[{self.index(sc)}] = {self.int_expr(sc, 1)};")
            sc.arrs.append(a)
            if sc.objs and r.random() < 0.5:
                self.emit(pad, f"{r.choice(sc.objs)}.xs = {a};")
        elif k == "query":
            rows = self.fresh("rows")
            if r.random() < 0.5:
                # keys from 1 - TABLE_KEYS up to TABLE_KEYS: some hit, some miss
                self.emit(pad, f'var {rows} = query("get T", ({self.int_expr(sc, 1)}) % {TABLE_KEYS} + 1);')
            else:
                self.emit(pad, f'var {rows} = query("find T g", {self.int_expr(sc, 1)} % 3);')
            acc = self.fresh("q")
            row = self.fresh("row")
            self.emit(pad, f"var {acc} = len({rows});")
            self.emit(pad, f"for (var {row} : {rows}) {{")
            self.emit(pad + "    ", f"{acc} += {row}[2];")
            self.emit(pad, "}")
            sc.ints.append(acc)
        elif k == "exec":
            if r.random() < 0.6:
                key = r.randint(1, TABLE_KEYS)
                self.emit(pad, f'exec("add T v", {key}, {self.int_expr(sc, 1)});')
            else:
                self.emit(pad, f'exec("append Log", {self.int_expr(sc, 1)});')
        elif k == "call":
            name, kind = r.choice(self.helpers)
            v = self.fresh("r")
            if kind == "obj":
                if not sc.objs:
                    self.new_obj(sc, pad)
                self.emit(pad, f"var {v} = {name}({r.choice(sc.objs)}, {self.int_expr(sc, 1)});")
            else:
                self.emit(pad, f"var {v} = {name}({self.int_expr(sc, 1)});")
            sc.ints.append(v)
        elif k == "ret":
            self.emit(pad, f"if ({self.cond(sc)}) {{")
            self.emit(pad + "    ", f"return {self.int_expr(sc, 1)};")
            self.emit(pad, "}")

    def block(self, sc: _Scope, pad: str, depth: int, in_helper: bool) -> None:
        for _ in range(self.rng.randint(1, 3 if depth else 5)):
            self.stmt(sc, pad, depth, in_helper)

    # -------------------------------------------------------------- program
    def program(self) -> str:
        r = self.rng
        self.out += ["class C0 {", "    int a;", "    float b;", "    array xs;",
                     "    C1 link;", "}", "", "class C1 {", "    int v;", "}", ""]
        for h in range(r.randint(1, 3)):
            if r.random() < 0.35:
                name = f"q{h}"
                self.out.append(f"fn {name}(g) {{")
                sc = _Scope(ints=["g"])
                self.emit("    ", f'var rows = query("find T g", g % 3);')
                self.emit("    ", "var acc = 0;")
                self.emit("    ", "for (var row : rows) {")
                self.emit("        ", "acc = acc + row[2] * row[0];")
                self.emit("    ", "}")
                sc.ints.append("acc")
                self.block(sc, "    ", 1, True)
                self.emit("    ", f"return {self.int_expr(sc)};")
                kind = "query"
            else:
                name = f"h{h}"
                self.out.append(f"fn {name}(o, p) {{")
                sc = _Scope(ints=["p"], objs=["o"])
                self.block(sc, "    ", 0, True)
                self.emit("    ", f"return {self.int_expr(sc)};")
                kind = "obj"
            self.out.append("}")
            self.out.append("")
            self.helpers.append((name, kind))
        self.out.append("entry fn main(x, y) {")
        sc = _Scope(ints=["x", "y"])
        self.new_obj(sc, "    ")
        self.block(sc, "    ", 0, False)
        self.block(sc, "    ", 0, False)
        if sc.floats:
            self.emit("    ", f"print(\"f\", {r.choice(sc.floats)});")
        self.emit("    ", f"return {self.int_expr(sc)};")
        self.out.append("}")
        return "\n".join(self.out) + "\n"


def fuzz_program(seed: int) -> str:
    header = f"// generated by dbsplit.corpus.fuzz (seed {seed})\n\n"
    return header + _Gen(seed).program()


def fuzz_workload(seed: int) -> Workload:
    rng = random.Random(10_000 + seed)
    tables = {
        "T": {"columns": ["id", "g", "v"],
              "rows": [[k, rng.randint(0, 2), rng.randint(-5, 20)] for k in range(1, TABLE_KEYS + 1)]},
        "Log": {"columns": ["id", "x"], "rows": []},
    }
    calls = [Call("main", (rng.randint(-10, 30), rng.randint(0, 15))) for _ in range(3)]
    return Workload(seed, tables, calls)
