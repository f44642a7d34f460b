"""Artifact bundle: everything either host needs to run one partitioning."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .blocks import Block, EntryWrapper, FuncLayout, Lowered, SplitClassLayout

FORMAT = "dbsplit-bundle v1"


@dataclass
class Bundle:
    lowered: Lowered
    meta: dict = field(default_factory=dict)

    @property
    def blocks(self) -> dict[str, Block]:
        return self.lowered.blocks

    @property
    def layouts(self) -> list[SplitClassLayout]:
        return self.lowered.layouts

    @property
    def wrappers(self) -> dict[str, EntryWrapper]:
        return self.lowered.wrappers

    @property
    def functions(self) -> dict[str, FuncLayout]:
        return self.lowered.functions

    def body(self) -> dict:
        lw = self.lowered
        return {
            "format": FORMAT,
            "meta": self.meta,
            "classes": [c.to_json() for c in lw.layouts],
            "functions": [f.to_json() for f in lw.functions.values()],
            "blocks": [b.to_json() for b in lw.blocks.values()],
            "wrappers": [w.to_json() for w in lw.wrappers.values()],
        }

    @property
    def hash(self) -> str:
        canon = json.dumps(self.body(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()

    def to_json(self) -> str:
        d = self.body()
        d["sha256"] = self.hash
        return json.dumps(d, indent=1, sort_keys=True) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def from_json(cls, text: str) -> "Bundle":
        d = json.loads(text)
        if d.get("format") != FORMAT:
            raise ValueError(f"not a bundle (format {d.get('format')!r})")
        lw = Lowered(
            {b["id"]: Block.from_json(b) for b in d["blocks"]},
            {f["name"]: FuncLayout.from_json(f) for f in d["functions"]},
            [SplitClassLayout.from_json(c) for c in d["classes"]],
            {w["func"]: EntryWrapper.from_json(w) for w in d["wrappers"]},
        )
        b = cls(lw, d["meta"])
        if d.get("sha256") not in (None, b.hash):
            raise ValueError("bundle hash does not match its contents")
        return b

    @classmethod
    def load(cls, path) -> "Bundle":
        return cls.from_json(Path(path).read_text())

    def block_table(self) -> list[str]:
        """Block ids in wire order (sorted)."""
        return sorted(self.lowered.blocks)
