"""Independent reference implementations used only by tests."""

from __future__ import annotations

import itertools
from fractions import Fraction


def brute_force_placement(graph, budget):
    """Enumerate every 0/1 placement of graph nodes honoring pins, groups and budget.

    Works directly on the graph (not on the solver's problem form) and returns
    (min cut weight, minimizing placements) or None when nothing is feasible.
    """
    ids = list(graph.nodes)
    groups: dict[str, list[str]] = {}
    units: list[list[str]] = []
    for nid in ids:
        g = graph.nodes[nid].group
        if g is None:
            units.append([nid])
        elif g in groups:
            groups[g].append(nid)
        else:
            groups[g] = [nid]
            units.append(groups[g])
    # a unit with a pinned member is fixed; two different pins make it infeasible
    fixed: list[int | None] = []
    for unit in units:
        pins = {graph.nodes[nid].pin for nid in unit} - {None}
        if len(pins) > 1:
            return None
        fixed.append(None if not pins else (1 if pins.pop() == "DB" else 0))
    free = [i for i, f in enumerate(fixed) if f is None]
    limit = sum(n.weight for n in graph.nodes.values()) if budget is None else budget
    best, argbest = None, []
    for bits in itertools.product((0, 1), repeat=len(free)):
        choice = list(fixed)
        for i, b in zip(free, bits):
            choice[i] = b
        place = {}
        for unit, b in zip(units, choice):
            for nid in unit:
                place[nid] = b
        load = sum(graph.nodes[nid].weight for nid in ids
                   if place[nid] and graph.nodes[nid].kind == "stmt")
        if load > limit:
            continue
        cost = Fraction(0)
        for e in graph.edges:
            if e.weight is not None and place[e.src] != place[e.dst]:
                cost += e.weight
        if best is None or cost < best:
            best, argbest = cost, [place]
        elif cost == best:
            argbest.append(place)
    return None if best is None else (best, argbest)


def random_graph(rng, max_nodes=20):
    """Random partition graph: statement nodes with counts, optional pins and
    one co-location group, plus the two pinned pseudo nodes."""
    from dbsplit.graph import Node, PartitionGraph, WeightedEdge

    g = PartitionGraph()
    g.nodes["console"] = Node("console", "console", 0, "APP")
    n = rng.randint(1, max_nodes - 2)
    for i in range(1, n + 1):
        pin = rng.choice([None] * 8 + ["APP", "DB"])
        group = "db-api" if rng.random() < 0.15 else None
        g.nodes[f"s{i}"] = Node(f"s{i}", "stmt", rng.randint(0, 20), pin, group)
    g.nodes["db"] = Node("db", "db", 0, "DB")
    ids = list(g.nodes)
    for _ in range(rng.randint(0, 3 * len(ids))):
        a, b = rng.sample(ids, 2)
        kind = rng.choice(["control", "data", "update", "anti"])
        w = None if kind == "anti" else Fraction(rng.randint(0, 40), rng.choice([1, 2, 3, 10]))
        g.edges.append(WeightedEdge(a, b, kind, w))
    return g


def random_placement(g, rng):
    """A placed graph with a random host per free node; pins and groups honored."""
    from dbsplit.optimizer import Assignment, apply

    grp: dict[str, str] = {}
    pl: dict[str, str] = {}
    for nid, n in g.nodes.items():
        if n.pin:
            pl[nid] = n.pin
        elif n.group:
            pl[nid] = grp.setdefault(n.group, rng.choice(["APP", "DB"]))
        else:
            pl[nid] = rng.choice(["APP", "DB"])
    return apply(Assignment(pl, set(), Fraction(0)), g)
