"""Reference interpreter, table store, workloads and profiling."""

from __future__ import annotations

from .minidb import DbError, MiniDb
from .profile import Profile, profile, trace_def_use
from .reference import CONSOLE, InterpError, Interpreter, run_reference
from .workload import Call, OutputTrace, Workload

__all__ = [
    "MiniDb", "DbError", "Profile", "profile", "trace_def_use", "CONSOLE",
    "InterpError", "Interpreter", "run_reference", "Call", "OutputTrace", "Workload",
]
