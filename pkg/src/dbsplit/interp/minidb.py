"""In-memory table store with a tiny query-template language.

Every table has an integer key column (the first column) plus named value
columns.  Templates are whitespace-separated words; arguments are positional.

Read templates (``query``) return a list of rows, each row a list of column
values with the key first:

    get T            (key)        the row with that key, if any
    find T c         (v)          rows whose column c equals v, by key
    range T          (lo, hi)     rows with lo <= key < hi, by key
    all T            ()           every row, by key
    count T          ()           one row holding the number of rows

Write templates (``exec``) return nothing:

    insert T         (key, v1, ...)   new row; the key must be unused
    append T         (v1, ...)        new row keyed max(key)+1 (1 if empty)
    set T c          (key, v)         overwrite column c of an existing row
    add T c          (key, delta)     add to a numeric column of an existing row
    delete T         (key)            remove a row if present
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..values import EvalError, Ref, binop

READ_OPS = frozenset({"get", "find", "range", "all", "count"})
WRITE_OPS = frozenset({"insert", "append", "set", "add", "delete"})


class DbError(EvalError):
    pass


@dataclass
class Table:
    columns: list[str]
    rows: dict[int, list[object]] = field(default_factory=dict)

    def col(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise DbError(f"unknown column {name!r}") from None

    def ordered(self) -> list[list[object]]:
        return [self.rows[k] for k in sorted(self.rows)]


def parse_template(template: str) -> tuple[str, str, str | None]:
    words = template.split()
    if len(words) not in (2, 3):
        raise DbError(f"malformed query template {template!r}")
    op, table = words[0], words[1]
    column = words[2] if len(words) == 3 else None
    if op not in READ_OPS and op not in WRITE_OPS:
        raise DbError(f"unknown query operation {op!r}")
    if (op in ("find", "set", "add")) != (column is not None):
        raise DbError(f"malformed query template {template!r}")
    return op, table, column


def _arity(op: str, table: Table) -> int | None:
    return {
        "get": 1, "find": 1, "range": 2, "all": 0, "count": 0,
        "insert": len(table.columns), "append": len(table.columns) - 1,
        "set": 2, "add": 2, "delete": 1,
    }[op]


def is_read(template: str) -> bool:
    return template.split()[0] in READ_OPS


class MiniDb:
    def __init__(self, tables: dict[str, Table] | None = None):
        self.tables: dict[str, Table] = tables or {}

    @classmethod
    def from_spec(cls, spec: dict) -> "MiniDb":
        """Build from ``{name: {"columns": [...], "rows": [[key, ...], ...]}}``."""
        tables = {}
        for name, t in spec.items():
            cols = list(t["columns"])
            table = Table(cols)
            for row in t.get("rows", []):
                if len(row) != len(cols):
                    raise DbError(f"row {row!r} does not match columns of {name!r}")
                if type(row[0]) is not int:
                    raise DbError(f"table {name!r}: key must be an int")
                table.rows[row[0]] = list(row)
            tables[name] = table
        return cls(tables)

    def copy(self) -> "MiniDb":
        return MiniDb({n: Table(list(t.columns), {k: list(r) for k, r in t.rows.items()})
                       for n, t in self.tables.items()})

    def snapshot(self) -> dict[str, list[list[object]]]:
        """Deterministic view of the full state, for equivalence checks."""
        return {n: [list(r) for r in self.tables[n].ordered()] for n in sorted(self.tables)}

    def table(self, name: str) -> Table:
        t = self.tables.get(name)
        if t is None:
            raise DbError(f"unknown table {name!r}")
        return t

    def run(self, template: str, args: list[object]) -> list[list[object]] | None:
        op, tname, column = parse_template(template)
        t = self.table(tname)
        want = _arity(op, t)
        if len(args) != want:
            raise DbError(f"{template!r} expects {want} arguments, got {len(args)}")
        for a in args:
            if isinstance(a, Ref):
                raise DbError("references cannot be passed to the database")
        if op == "get":
            row = t.rows.get(args[0])
            return [list(row)] if row is not None else []
        if op == "find":
            c = t.col(column)
            return [list(r) for r in t.ordered() if binop("==", r[c], args[0])]
        if op == "range":
            lo, hi = args
            return [list(t.rows[k]) for k in sorted(t.rows) if lo <= k < hi]
        if op == "all":
            return [list(r) for r in t.ordered()]
        if op == "count":
            return [[len(t.rows)]]
        if op == "insert":
            key = args[0]
            if type(key) is not int:
                raise DbError("row key must be an int")
            if key in t.rows:
                raise DbError(f"duplicate key {key} in {tname!r}")
            t.rows[key] = list(args)
            return None
        if op == "append":
            key = max(t.rows, default=0) + 1
            t.rows[key] = [key, *args]
            return None
        if op == "delete":
            t.rows.pop(args[0], None)
            return None
        key, v = args
        row = t.rows.get(key)
        if row is None:
            raise DbError(f"no row with key {key} in {tname!r}")
        c = t.col(column)
        if c == 0:
            raise DbError("the key column cannot be updated")
        row[c] = v if op == "set" else binop("+", row[c], v)
        return None
