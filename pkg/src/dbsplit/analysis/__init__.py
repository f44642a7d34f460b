"""Static dependence analyses feeding the partition graph."""

from __future__ import annotations

from .cfg import build_cfg
from .deps import (
    CONSOLE, DB, Analysis, DepEdge, ProgramInfo, analyze, control_deps, def_use,
    dump_edges, fnode, node_sid, order_edges, parse_edges, snode, update_edges,
)
from .pointsto import EXTERNAL, PointsToMap, points_to

__all__ = [
    "build_cfg", "CONSOLE", "DB", "Analysis", "DepEdge", "ProgramInfo", "analyze",
    "control_deps", "def_use", "dump_edges", "fnode", "node_sid", "order_edges",
    "parse_edges", "snode", "update_edges", "EXTERNAL", "PointsToMap", "points_to",
]
