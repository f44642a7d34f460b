"""End-to-end helpers shared by the command line and the benchmarks.

``Config`` gathers every tunable with range checks; ``compile_budgets``
runs analysis, graph weighting, solving and code generation for a list of
budgets against one profile.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from .analysis import Analysis, analyze, node_sid
from .codegen import Artifact, generate
from .frontend import ast as A
from .frontend import load
from .graph import NetParams, PartitionGraph, build_graph
from .interp import Profile, Workload, profile
from .optimizer import PlacedGraph, formulate, place
from .runtime.session import CostModel

CHANNELS = ("sim", "tcp")


@dataclass
class Config:
    lat: float = 2.0  # ms per message
    bw: float = 1e6  # bytes per ms
    budgets: list[str] = field(default_factory=lambda: ["0", "inf"])
    alpha: float = 0.2
    threshold: float = 40.0  # percent
    poll_ms: float = 100.0
    channel: str = "sim"
    instr_ms: float = 0.0001
    db_slowdown: float = 1.0
    host: str = "127.0.0.1"
    port: int = 7433
    seed: int = 0

    def validate(self) -> "Config":
        checks = [
            (self.lat >= 0, "lat must be >= 0"),
            (self.bw > 0, "bw must be > 0"),
            (0.0 <= self.alpha <= 1.0, "alpha must be in [0, 1]"),
            (0.0 <= self.threshold <= 100.0, "threshold must be in [0, 100]"),
            (self.poll_ms > 0, "poll_ms must be > 0"),
            (self.channel in CHANNELS, f"channel must be one of {', '.join(CHANNELS)}"),
            (self.instr_ms >= 0, "instr_ms must be >= 0"),
            (self.db_slowdown > 0, "db_slowdown must be > 0"),
            (0 <= self.port <= 65535, "port must be in [0, 65535]"),
            (bool(self.budgets), "at least one budget is required"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ValueError(msg)
        for b in self.budgets:
            parse_budget(b, 1)
        return self

    @classmethod
    def from_json(cls, text: str) -> "Config":
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise ValueError("config must be a JSON object")
        names = {f.name for f in fields(cls)}
        unknown = sorted(set(doc) - names)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        c = cls()
        for k, v in doc.items():
            if k == "budgets":
                v = [str(b) for b in v]
            setattr(c, k, v)
        return c

    @classmethod
    def load(cls, path) -> "Config":
        return cls.from_json(Path(path).read_text())

    def net(self) -> NetParams:
        return NetParams.of(self.lat, self.bw)

    def cost(self) -> CostModel:
        return CostModel(self.lat, self.bw, self.instr_ms, self.db_slowdown)


def parse_budget(text: str, total: int) -> int | None:
    """``inf`` -> unbounded, ``N%`` -> share of the total count, else an integer count."""
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "none"):
        return None
    if t.endswith("%"):
        pct = float(t[:-1])
        if not 0.0 <= pct <= 100.0 or math.isnan(pct):
            raise ValueError(f"budget {text!r}: percentage out of range")
        return int(total * pct / 100.0)
    try:
        n = int(t)
    except ValueError:
        raise ValueError(f"budget {text!r} is not an integer, N% or inf") from None
    if n < 0:
        raise ValueError(f"budget must be >= 0, got {n}")
    return n


def budget_label(b: int | None) -> str:
    return "inf" if b is None else str(b)


def read_program(path: str) -> tuple[str, str]:
    """Source text for a file path or a bundled ``corpus:NAME`` program."""
    if path.startswith("corpus:"):
        from . import corpus

        name = path.split(":", 1)[1]
        try:
            return corpus.source(name), name
        except OSError:
            raise FileNotFoundError(f"no corpus program {name!r}") from None
    p = Path(path)
    return p.read_text(), p.stem


@dataclass
class Compiled:
    name: str
    program: A.Program
    analysis: Analysis
    profile: Profile
    graph: PartitionGraph

    def total_count(self) -> int:
        return formulate(self.graph, None).budget


def compile_program(name: str, source: str, w: Workload | None, net: NetParams,
                    prof: Profile | None = None) -> Compiled:
    prog = load(source, name)
    if prof is None:
        if w is None:
            raise ValueError("either a workload or a profile is required")
        prof, _ = profile(prog, w)
    an = analyze(prog)
    return Compiled(name, prog, an, prof, build_graph(an, prof, net))


@dataclass
class Partition:
    budget: int | None
    placed: PlacedGraph
    artifact: Artifact

    @property
    def label(self) -> str:
        return budget_label(self.budget)


def partition(c: Compiled, budget: int | None) -> Partition:
    pg = place(c.graph, budget)
    meta = {"program": c.name, "budget": budget_label(budget)}
    return Partition(budget, pg, generate(c.analysis, pg, meta))


def compile_budgets(c: Compiled, budgets: list[str]) -> list[Partition]:
    total = c.total_count()
    return [partition(c, parse_budget(b, total)) for b in budgets]


def classify(pg: PlacedGraph, prog: A.Program) -> str:
    """``all-APP``, ``all-DB`` or ``split`` by statement placement.

    Pinned statements and the returns of entry functions (whose value is
    handed to the caller on APP in any case) are not considered.
    """
    entry_returns = {s.sid for f in prog.functions if f.is_entry
                     for s in f.body if isinstance(s, A.Return)}
    hosts = {pg.placement[nid] for nid, n in pg.graph.nodes.items()
             if n.kind == "stmt" and n.pin is None and node_sid(nid) not in entry_returns}
    if hosts <= {"APP"}:
        return "all-APP"
    if hosts == {"DB"}:
        return "all-DB"
    return "split"
