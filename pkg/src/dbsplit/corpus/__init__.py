"""Bundled benchmark programs, fuzz programs and seeded workload generators."""

from __future__ import annotations

import random
from pathlib import Path

from ..interp.workload import Call, Workload

HERE = Path(__file__).parent
BENCHMARKS = ("neworder", "micro2", "linkedlist")
FUZZ_COUNT = 20


def source(name: str) -> str:
    """Text of a benchmark (``neworder``) or fuzz program (``fuzz07``)."""
    if name.startswith("fuzz"):
        return (HERE / "fuzz" / f"{name}.pyx").read_text()
    return (HERE / f"{name}.pyx").read_text()


def fuzz_names() -> list[str]:
    return [f"fuzz{i:02d}" for i in range(FUZZ_COUNT)]


def all_names() -> list[str]:
    return list(BENCHMARKS) + fuzz_names()


def neworder_workload(seed: int, items: int | None = None, orders: int = 2) -> Workload:
    rng = random.Random(seed)
    n = items if items is not None else rng.randint(3, 12)
    rows = []
    key = 1
    order_ids = [100 + k for k in range(orders)]
    for oid in order_ids:
        for _ in range(n):
            rows.append([key, oid, float(rng.randint(1, 40))])
            key += 1
    customers = [[c, float(rng.randint(50, 500))] for c in (1, 2, 3)]
    calls = [Call("newOrder", (oid, rng.randint(1, 3), rng.choice([0.5, 0.75, 0.9, 1.0])))
             for oid in order_ids]
    tables = {
        "OrderItem": {"columns": ["id", "order", "cost"], "rows": rows},
        "LineItem": {"columns": ["id", "order", "cost"], "rows": []},
        "Customer": {"columns": ["id", "balance"], "rows": customers},
    }
    return Workload(seed, tables, calls)


def micro2_workload(seed: int, n: int = 100, m: int = 500, calls: int = 1) -> Workload:
    rng = random.Random(seed)
    k = rng.randint(5, 20)
    rows = [[i, float(rng.randint(1, 100)), i % 3] for i in range(1, k + 1)]
    tables = {"Item": {"columns": ["id", "price", "tag"], "rows": rows}}
    return Workload(seed, tables, [Call("run", (k, n, m)) for _ in range(calls)])


def linkedlist_workload(seed: int, n: int | None = None) -> Workload:
    rng = random.Random(seed)
    sizes = [n] if n is not None else [rng.randint(5, 60) for _ in range(2)]
    tables = {"Stat": {"columns": ["id", "sum", "count"], "rows": []}}
    return Workload(seed, tables, [Call("listSum", (s,)) for s in sizes])


def fuzz_workload(seed: int) -> Workload:
    from .fuzz import fuzz_workload as gen
    return gen(seed)


def workload(name: str, seed: int) -> Workload:
    if name == "neworder":
        return neworder_workload(seed)
    if name == "micro2":
        return micro2_workload(seed)
    if name == "linkedlist":
        return linkedlist_workload(seed)
    if name.startswith("fuzz"):
        return fuzz_workload(seed)
    raise KeyError(f"unknown corpus program {name!r}")
