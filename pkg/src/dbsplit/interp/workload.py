"""Workload documents and output traces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..values import Ref


@dataclass(frozen=True)
class Call:
    entry: str
    args: tuple[object, ...]


@dataclass
class Workload:
    """Initial tables plus a sequence of entry-point invocations.

    File form (JSON)::

        {"seed": 7,
         "tables": {"Item": {"columns": ["id", "price"], "rows": [[1, 2.5]]}},
         "calls": [{"entry": "newOrder", "args": [1, 0.5]}]}
    """

    seed: int = 0
    tables: dict = field(default_factory=dict)
    calls: list[Call] = field(default_factory=list)

    def to_json(self) -> str:
        doc = {
            "seed": self.seed,
            "tables": self.tables,
            "calls": [{"entry": c.entry, "args": list(c.args)} for c in self.calls],
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Workload":
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise ValueError("workload must be a JSON object")
        calls = []
        for c in doc.get("calls", []):
            args = tuple(c.get("args", []))
            for a in args:
                if isinstance(a, (list, dict)):
                    raise ValueError(f"entry arguments must be scalars, got {a!r}")
            calls.append(Call(c["entry"], args))
        return cls(int(doc.get("seed", 0)), doc.get("tables", {}), calls)

    @classmethod
    def load(cls, path: str | Path) -> "Workload":
        return cls.from_json(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())


@dataclass
class OutputTrace:
    """Printed lines and entry return values, in order, plus the final tables."""

    lines: list[str] = field(default_factory=list)
    db: dict = field(default_factory=dict)

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def check_entry_args(args: tuple[object, ...]) -> None:
    for a in args:
        if isinstance(a, Ref):
            raise ValueError("entry arguments must be scalars")
