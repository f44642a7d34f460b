"""From a placed graph to PyxIL text and execution blocks."""

from __future__ import annotations

from dataclasses import dataclass

from ..analysis.deps import Analysis
from ..optimizer.apply import PlacedGraph
from .blocks import Block, EntryWrapper, FuncLayout, Lowered, SplitClassLayout, dump_blocks, lower
from .bundle import Bundle
from .pyxil import PyxilProgram, emit_pyxil_text, insert_sync, parse_pyxil
from .reorder import ReorderError, count_alternations, reorder


@dataclass
class Artifact:
    pyxil: PyxilProgram
    lowered: Lowered
    bundle: Bundle

    def pyxil_text(self) -> str:
        return emit_pyxil_text(self.pyxil)


def generate(an: Analysis, pg: PlacedGraph, meta: dict | None = None) -> Artifact:
    """Reorder, insert sync markers, lower and bundle one placement."""
    ordered = reorder(an.program, pg)
    px = insert_sync(ordered, pg, an.info)
    lw = lower(px)
    return Artifact(px, lw, Bundle(lw, dict(meta or {})))


__all__ = [
    "Artifact", "generate", "reorder", "insert_sync", "lower", "emit_pyxil_text",
    "parse_pyxil", "dump_blocks", "count_alternations", "Bundle", "Block", "EntryWrapper",
    "FuncLayout", "Lowered", "SplitClassLayout", "PyxilProgram", "ReorderError",
]
