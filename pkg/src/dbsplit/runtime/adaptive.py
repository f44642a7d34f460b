"""Load-driven choice between pre-generated partitions.

The DB host's CPU utilization S_t is polled at a fixed interval and smoothed
as ``L_t = alpha * L_{t-1} + (1 - alpha) * S_t``.  Each entry invocation
uses the low-budget (APP-heavy) partition while ``L_t > threshold`` and the
high-budget one otherwise.  Between polls L_t is held constant.
"""

from __future__ import annotations

import bisect
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path

LOW, HIGH = "low", "high"


def ewma_update(l_prev: float, s: float, alpha: float) -> float:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    for name, v in (("L", l_prev), ("S", s)):
        if not 0.0 <= v <= 100.0:
            raise ValueError(f"{name} must be a percentage in [0, 100], got {v}")
    return alpha * l_prev + (1.0 - alpha) * s


@dataclass
class AdaptiveState:
    partitions: dict[str, str]  # regime (low | high) -> bundle id
    alpha: float = 0.2
    threshold: float = 40.0
    load: float | None = None  # None until the first load message
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def on_load(self, s: float) -> float:
        """Apply one load message; the first sample initializes L."""
        with self._lock:
            if self.load is None:
                ewma_update(s, s, self.alpha)  # range checks
                self.load = float(s)
            else:
                self.load = ewma_update(self.load, s, self.alpha)
            return self.load


def choose_regime(st: AdaptiveState) -> str:
    """LOW (APP-heavy) while the smoothed load is above the threshold."""
    load = st.load if st.load is not None else 0.0
    return LOW if load > st.threshold else HIGH


def choose_partition(st: AdaptiveState) -> str:
    if not st.partitions:
        raise ValueError("partition table is empty")
    if len(st.partitions) == 1:
        return next(iter(st.partitions.values()))
    return st.partitions[choose_regime(st)]


@dataclass
class LoadTrace:
    """Scripted samples: one ``<timestamp_ms> <S_t %>`` pair per line."""

    times: list[float]
    samples: list[float]

    @classmethod
    def parse(cls, text: str) -> "LoadTrace":
        times, samples = [], []
        for n, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"load trace line {n}: expected '<time_ms> <percent>'")
            t, s = float(parts[0]), float(parts[1])
            if not 0.0 <= s <= 100.0:
                raise ValueError(f"load trace line {n}: {s} is not a percentage")
            if times and t < times[-1]:
                raise ValueError(f"load trace line {n}: timestamps must not decrease")
            times.append(t)
            samples.append(s)
        if not times:
            raise ValueError("load trace is empty")
        return cls(times, samples)

    @classmethod
    def load(cls, path) -> "LoadTrace":
        return cls.parse(Path(path).read_text())

    def text(self) -> str:
        return "".join(f"{t:g} {s:g}\n" for t, s in zip(self.times, self.samples))

    def sample_at(self, t: float) -> float:
        i = bisect.bisect_right(self.times, t) - 1
        return self.samples[max(i, 0)]


class ScriptedSampler:
    def __init__(self, trace: LoadTrace):
        self.trace = trace

    def __call__(self, now_ms: float) -> float:
        return self.trace.sample_at(now_ms)


class SystemSampler:
    """Host CPU utilization estimated from the 1-minute load average."""

    def __call__(self, now_ms: float) -> float:
        try:
            la = os.getloadavg()[0]
        except OSError:
            return 0.0
        return max(0.0, min(100.0, 100.0 * la / (os.cpu_count() or 1)))


@dataclass
class Poller:
    """Delivers a load message every ``interval_ms`` of (virtual) time."""

    state: AdaptiveState
    sampler: object
    interval_ms: float = 100.0
    next_poll: float = 0.0
    history: list[tuple[float, float, float]] = field(default_factory=list)  # (t, S, L)

    def __post_init__(self):
        if self.interval_ms <= 0:
            raise ValueError("poll interval must be positive")

    def advance(self, now_ms: float) -> None:
        while self.next_poll <= now_ms:
            s = self.sampler(self.next_poll)
            l_t = self.state.on_load(s)
            self.history.append((self.next_poll, s, l_t))
            self.next_poll += self.interval_ms


@dataclass
class Choice:
    t_ms: float  # virtual start time of the invocation
    session: int
    regime: str  # LOW | HIGH
    load: float | None


@dataclass
class AdaptiveRun:
    choices: list[Choice]
    stats: list  # SessionStats per invocation
    polls: list[tuple[float, float, float]]  # (t, S, L)

    def shares(self, window_ms: float) -> list[tuple[float, int, int]]:
        """Per window: (window start, invocations on LOW, invocations on HIGH)."""
        if window_ms <= 0:
            raise ValueError("window must be positive")
        out: dict[int, list[int]] = {}
        for c in self.choices:
            w = out.setdefault(int(c.t_ms // window_ms), [0, 0])
            w[0 if c.regime == LOW else 1] += 1
        return [(k * window_ms, lo, hi) for k, (lo, hi) in sorted(out.items())]


def run_adaptive(cluster, bundles: dict[str, object], calls, poller: Poller,
                 think_ms: float = 0.0, log=None) -> AdaptiveRun:
    """Run ``calls`` on ``cluster`` choosing LOW/HIGH bundles from the smoothed load.

    Virtual time advances by each invocation's simulated latency plus
    ``think_ms``; load messages are delivered at every poll boundary passed.
    """
    st = poller.state
    now = 0.0
    choices, stats = [], []
    seen = 0
    for c in calls:
        poller.advance(now)
        if log is not None:
            for t, s, l_t in poller.history[seen:]:
                log(0, "DB", "load", f"t={t:g} S={s:g} L={l_t:.6f}")
        seen = len(poller.history)
        regime = choose_regime(st)
        sid = cluster.sessions + 1
        if log is not None:
            log(sid, "APP", "partition", regime)
        _, s = cluster.call(c.entry, c.args, bundles[regime])
        choices.append(Choice(now, sid, regime, st.load))
        stats.append(s)
        now += s.latency_ms + think_ms
    return AdaptiveRun(choices, stats, list(poller.history))
