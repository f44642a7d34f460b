"""Benchmark reports: per (benchmark, budget) aggregates as CSV or a table."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, field, fields

from .runtime.session import SessionStats


@dataclass
class BenchRow:
    benchmark: str
    budget: str
    partition: str  # all-APP | split | all-DB
    calls: int
    mean_latency_ms: float
    throughput_per_s: float
    transfers: int
    bytes: int
    db_instr: int

    @classmethod
    def of(cls, benchmark: str, budget: str, partition: str, stats: list[SessionStats]) -> "BenchRow":
        n = len(stats)
        total_ms = sum(s.latency_ms for s in stats)
        mean = total_ms / n if n else 0.0
        return cls(benchmark, budget, partition, n, mean,
                   1000.0 * n / total_ms if total_ms > 0 else 0.0,
                   sum(s.transfers for s in stats), sum(s.bytes for s in stats),
                   sum(s.db_instr for s in stats))


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def columns(self) -> list[str]:
        return [f.name for f in fields(BenchRow)]

    def csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(self.columns())
        for r in self.rows:
            wr.writerow([_fmt(v) for v in astuple(r)])
        return buf.getvalue()

    def table(self) -> str:
        head = self.columns()
        body = [[_fmt(v) for v in astuple(r)] for r in self.rows]
        widths = [max(len(h), *(len(row[i]) for row in body)) if body else len(h)
                  for i, h in enumerate(head)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths))]
        lines.append("  ".join("-" * w for w in widths))
        for row in body:
            lines.append("  ".join(v.rjust(w) if _numeric(v) else v.ljust(w)
                                   for v, w in zip(row, widths)))
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.3f}"
    return str(v)


def _numeric(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True
