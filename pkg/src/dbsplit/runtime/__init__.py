"""Distributed execution of execution-block bundles."""

from __future__ import annotations

from .host import HostRuntime, SessionError
from .session import (
    AppDriver, Cluster, CostModel, DbEndpoint, EventLog, SessionStats, SimChannel,
    check_blocking, run_distributed,
)

__all__ = [
    "HostRuntime", "SessionError", "AppDriver", "Cluster", "CostModel", "DbEndpoint",
    "EventLog", "SessionStats", "SimChannel", "check_blocking", "run_distributed",
]
