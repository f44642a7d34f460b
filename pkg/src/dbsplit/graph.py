"""Partition graph: dependence edges weighted by profile and network costs.

Edge weights are exact rationals in milliseconds per workload run; statement
node weights are raw execution counts (matched against the server budget).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .analysis.deps import CONSOLE, DB, Analysis, DepEdge, node_sid
from .frontend import ast as A
from .interp.profile import Profile

HEADER = "# dbsplit-graph v1"
WEIGHTED_KINDS = ("control", "data", "update")
QUERY_GROUP = "db-api"


@dataclass(frozen=True)
class NetParams:
    lat: Fraction  # ms per cut control edge execution
    bw: Fraction  # bytes per ms

    def __post_init__(self):
        if self.lat < 0:
            raise ValueError("LAT must be >= 0")
        if self.bw <= 0:
            raise ValueError("BW must be > 0")

    @classmethod
    def of(cls, lat, bw) -> "NetParams":
        return cls(_frac(lat), _frac(bw))


def _frac(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class Node:
    id: str
    kind: str  # stmt | field | db | console
    weight: int = 0
    pin: str | None = None  # APP | DB
    group: str | None = None


@dataclass(frozen=True)
class WeightedEdge:
    src: str
    dst: str
    kind: str
    weight: Fraction | None  # None for ordering-only edges (anti/output)
    is_back_edge: bool = False
    is_interprocedural: bool = False
    summary: bool = False

    @property
    def weighted(self) -> bool:
        return self.weight is not None

    def dep(self) -> DepEdge:
        return DepEdge(self.src, self.dst, self.kind, self.is_back_edge,
                       self.is_interprocedural, self.summary)


@dataclass
class PartitionGraph:
    nodes: dict[str, Node] = field(default_factory=dict)
    edges: list[WeightedEdge] = field(default_factory=list)
    net: NetParams | None = None

    def weighted_edges(self) -> list[tuple[int, WeightedEdge]]:
        return [(i, e) for i, e in enumerate(self.edges) if e.weighted]

    def total_weight(self) -> int:
        return sum(n.weight for n in self.nodes.values())

    def dump(self) -> str:
        lines = [HEADER]
        if self.net is not None:
            lines.append(f"net {self.net.lat} {self.net.bw}")
        for n in self.nodes.values():
            lines.append(f"node {n.id} {n.kind} {n.weight} {n.pin or '-'} {n.group or '-'}")
        for e in self.edges:
            f = e.dep().flags()
            w = "-" if e.weight is None else str(e.weight)
            lines.append(f"edge {e.kind} {e.src} {e.dst} {f} {w}")
        return "\n".join(lines) + "\n"

    @classmethod
    def restore(cls, text: str) -> "PartitionGraph":
        lines = text.splitlines()
        if not lines or lines[0].strip() != HEADER:
            raise ValueError("not a partition graph dump (missing version header)")
        g = cls()
        for n, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "net":
                g.net = NetParams(Fraction(parts[1]), Fraction(parts[2]))
            elif parts[0] == "node":
                _, nid, kind, w, pin, grp = parts
                g.nodes[nid] = Node(nid, kind, int(w), None if pin == "-" else pin,
                                    None if grp == "-" else grp)
            elif parts[0] == "edge":
                _, kind, src, dst, flags, w = parts
                g.edges.append(WeightedEdge(src, dst, kind, None if w == "-" else Fraction(w),
                                            "B" in flags, "I" in flags, "S" in flags))
            else:
                raise ValueError(f"graph line {n}: unknown record {parts[0]!r}")
        return g


def skeleton(an: Analysis) -> PartitionGraph:
    """Nodes with pins and groups, edges without weights."""
    p = an.program
    g = PartitionGraph()
    g.nodes[CONSOLE] = Node(CONSOLE, "console", 0, "APP")
    for _, s in p.statements():
        nid = f"s{s.sid}"
        pin = "APP" if isinstance(s, A.Print) else None
        group = QUERY_GROUP if isinstance(s, A.Query) else None
        g.nodes[nid] = Node(nid, "stmt", 0, pin, group)
    for c in p.classes:
        for fd in c.fields:
            nid = f"f:{c.name}.{fd.name}"
            g.nodes[nid] = Node(nid, "field")
    g.nodes[DB] = Node(DB, "db", 0, "DB")
    for e in an.edges:
        g.edges.append(WeightedEdge(e.src, e.dst, e.kind, None, e.is_back_edge,
                                    e.is_interprocedural, e.summary))
    return g


def _cnt(node: str, prof: Profile) -> int | None:
    sid = node_sid(node)
    if sid is None:
        return None
    try:
        return prof.count[sid]
    except KeyError:
        raise KeyError(f"missing profile entry for statement s{sid}") from None


def edge_count(e, prof: Profile) -> int:
    """min(cnt(src), cnt(dst)); field and pseudo endpoints take the other end's count."""
    a, b = _cnt(e.src, prof), _cnt(e.dst, prof)
    if a is None and b is None:
        return 0
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def field_sizes(g: PartitionGraph, prof: Profile) -> dict[str, Fraction]:
    """Mean written size of each field, over all writes of it."""
    tot: dict[str, Fraction] = {}
    num: dict[str, int] = {}
    for e in g.edges:
        if e.kind == "update" and e.src.startswith("f:"):
            sid = node_sid(e.dst)
            c = prof.cnt(sid)
            tot[e.src] = tot.get(e.src, Fraction(0)) + c * prof.size(sid)
            num[e.src] = num.get(e.src, 0) + c
    return {f: (tot[f] / num[f] if num[f] else Fraction(0)) for f in tot}


def _src_size(node: str, prof: Profile, fsize: dict[str, Fraction]) -> Fraction:
    if node.startswith("f:"):
        return fsize.get(node, Fraction(0))
    if node == CONSOLE:
        return prof.size(CONSOLE)
    if node == DB:
        return Fraction(0)
    return prof.size(node_sid(node))


def weigh(g: PartitionGraph, prof: Profile, net: NetParams) -> PartitionGraph:
    for nid, n in g.nodes.items():
        if n.kind == "stmt":
            _cnt(nid, prof)  # raises on a missing entry
    fsize = field_sizes(g, prof)
    out = PartitionGraph(net=net)
    for nid, n in g.nodes.items():
        w = prof.count[node_sid(nid)] if n.kind == "stmt" else 0
        out.nodes[nid] = Node(nid, n.kind, w, n.pin, n.group)
    for e in g.edges:
        if e.kind not in WEIGHTED_KINDS:
            w = None
        elif e.summary:
            w = Fraction(0)
        elif e.kind == "control":
            w = net.lat * edge_count(e, prof)
        elif e.kind == "data":
            w = _src_size(e.src, prof, fsize) / net.bw * edge_count(e, prof)
        else:
            dst = _cnt(e.dst, prof)
            w = _src_size(e.src, prof, fsize) / net.bw * (dst or 0)
        out.edges.append(WeightedEdge(e.src, e.dst, e.kind, w, e.is_back_edge,
                                      e.is_interprocedural, e.summary))
    return out


def build_graph(an: Analysis, prof: Profile, net: NetParams) -> PartitionGraph:
    return weigh(skeleton(an), prof, net)
