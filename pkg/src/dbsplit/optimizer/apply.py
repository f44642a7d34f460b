"""Attach a solved assignment to the partition graph."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import PartitionGraph, WeightedEdge
from .solve import Assignment


@dataclass
class PlacedGraph:
    graph: PartitionGraph
    placement: dict[str, str]
    # per graph edge: True/False when weighted, None for ordering-only edges
    cut: list[bool | None] = field(default_factory=list)
    objective_value: object = 0

    def host(self, node: str) -> str:
        return self.placement[node]

    def cut_edges(self) -> list[WeightedEdge]:
        return [e for e, c in zip(self.graph.edges, self.cut) if c]

    def report(self) -> str:
        """Placement report: objective, node hosts, cut edges."""
        lines = [f"objective {self.objective_value}"]
        db_load = sum(n.weight for nid, n in self.graph.nodes.items()
                      if n.kind == "stmt" and self.placement[nid] == "DB")
        lines.append(f"db-load {db_load}")
        for nid in self.graph.nodes:
            lines.append(f"node {nid} {self.placement[nid]}")
        for e in self.cut_edges():
            lines.append(f"cut {e.kind} {e.src} {e.dst} {e.weight}")
        return "\n".join(lines) + "\n"


def apply(a: Assignment, g: PartitionGraph) -> PlacedGraph:
    cut: list[bool | None] = []
    for e in g.edges:
        if not e.weighted:
            cut.append(None)
        else:
            cut.append(a.placement[e.src] != a.placement[e.dst])
    return PlacedGraph(g, dict(a.placement), cut, a.objective_value)
