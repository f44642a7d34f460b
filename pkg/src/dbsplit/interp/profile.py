"""Execution profiles: per-statement counts and mean assigned-value sizes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..frontend import ast as A
from .reference import CONSOLE, DefUseTracer, Profiler, run_reference
from .workload import OutputTrace, Workload

HEADER = "# dbsplit-profile v1"

# statement kinds that define a value (an assigned variable, a written heap
# slot, or a returned value)
DEF_KINDS = frozenset({
    "assign", "field-read", "field-write", "array-read", "array-len", "array-write",
    "alloc-array", "alloc-object",
})


def defines_value(s: A.Stmt) -> bool:
    if s.kind in DEF_KINDS:
        return True
    if isinstance(s, (A.Call, A.Query)):
        return s.target is not None
    if isinstance(s, A.Return):
        return s.value is not None
    return False


@dataclass
class Profile:
    """``count[s]`` executions and ``def_size[s]`` mean bytes for each statement.

    Keys are statement ids plus the ``"console"`` pseudo-statement, whose count
    is the number of entry invocations and whose size is the mean total size
    of entry arguments.
    """

    count: dict[object, int] = field(default_factory=dict)
    def_size: dict[object, Fraction] = field(default_factory=dict)

    def cnt(self, key) -> int:
        try:
            return self.count[key]
        except KeyError:
            raise KeyError(f"no profile entry for {_key_text(key)}") from None

    def size(self, key) -> Fraction:
        return self.def_size.get(key, Fraction(0))

    def to_text(self) -> str:
        lines = [HEADER]
        for key in sorted(self.count, key=_sort_key):
            size = self.def_size.get(key)
            lines.append(f"{_key_text(key)} {self.count[key]} {'-' if size is None else size}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Profile":
        lines = text.splitlines()
        if not lines or lines[0].strip() != HEADER:
            raise ValueError("not a profile file (missing version header)")
        prof = cls()
        for n, line in enumerate(lines[1:], start=2):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"profile line {n}: expected 3 fields")
            key: object = parts[0]
            if key != CONSOLE:
                if not key.startswith("s"):
                    raise ValueError(f"profile line {n}: bad statement id {parts[0]!r}")
                key = int(key[1:])
            prof.count[key] = int(parts[1])
            if parts[2] != "-":
                prof.def_size[key] = Fraction(parts[2])
        return prof

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path: str | Path) -> "Profile":
        return cls.from_text(Path(path).read_text())

    def scaled(self, k: int) -> "Profile":
        return Profile({s: c * k for s, c in self.count.items()}, dict(self.def_size))


def _key_text(key) -> str:
    return key if key == CONSOLE else f"s{key}"


def _sort_key(key):
    return (0, 0) if key == CONSOLE else (1, key)


def profile(prog: A.Program, w: Workload) -> tuple[Profile, OutputTrace]:
    """Run ``w`` under instrumentation; every statement gets an entry."""
    raw = Profiler()
    trace = run_reference(prog, w, profiler=raw)
    return from_raw(prog, raw), trace


def from_raw(prog: A.Program, raw: Profiler) -> Profile:
    prof = Profile()
    prof.count[CONSOLE] = raw.counts.get(CONSOLE, 0)
    n = raw.size_n.get(CONSOLE, 0)
    prof.def_size[CONSOLE] = Fraction(raw.size_sum[CONSOLE], n) if n else Fraction(0)
    for _, s in prog.statements():
        prof.count[s.sid] = raw.counts.get(s.sid, 0)
        if defines_value(s):
            n = raw.size_n.get(s.sid, 0)
            prof.def_size[s.sid] = Fraction(raw.size_sum[s.sid], n) if n else Fraction(0)
    return prof


def trace_def_use(prog: A.Program, w: Workload) -> set[tuple[object, int]]:
    """Dynamically observed (writer, reader) statement pairs."""
    tr = DefUseTracer()
    run_reference(prog, w, tracer=tr)
    return tr.pairs
