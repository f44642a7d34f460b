"""Exact branch-and-bound for the placement program.

Without the budget row the program is a minimum s-t cut (APP = source side,
DB = sink side), so every subproblem is bounded by a max-flow computation.
The budget row is handled by Lagrangian relaxation: for a multiplier
``lam >= 0`` the cut with node costs ``lam * cost`` gives a valid lower bound,
and a short breakpoint search on ``lam`` tightens it.  Variables on which the
feasible and infeasible relaxed solutions disagree are branched on.

Ties are broken inside the objective: cut weight first, then fewer graph
nodes on DB, then the lexicographically smallest node vector in graph order.
The scaled integer objective therefore has a unique minimizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..graph import PartitionGraph
from .ilp import APP, DB, IlpProblem, InfeasibleError
from .maxflow import FlowNetwork


@dataclass
class Assignment:
    placement: dict[str, str]
    cut_edges: set[int]  # graph edge indices
    objective_value: Fraction
    load: int = 0
    stats: dict[str, int] = field(default_factory=dict)


class _Scaled:
    """Integer form of the tie-broken objective F(x) = M1*cut + sum(a_i x_i)."""

    def __init__(self, prob: IlpProblem):
        self.prob = prob
        self.vars = prob.node_vars
        self.idx = {v: i for i, v in enumerate(self.vars)}
        denom = 1
        for w in prob.weights:
            denom = math.lcm(denom, w.denominator)
        n_nodes = len(prob.node_order)
        lex_span = 1 << n_nodes
        m2 = lex_span
        m1 = (n_nodes + 1) * m2 + 1
        self.a = [0] * len(self.vars)
        for pos, nid in enumerate(prob.node_order):
            i = self.idx[prob.node_var[nid]]
            self.a[i] += m2 + (1 << (n_nodes - 1 - pos))
        pair: dict[tuple[int, int], int] = {}
        for (u, v), w in zip(prob.edge_ends, prob.weights):
            iu, iv = self.idx[u], self.idx[v]
            if iu == iv:
                continue
            key = (min(iu, iv), max(iu, iv))
            pair[key] = pair.get(key, 0) + int(w * denom) * m1
        self.pairs = [(i, j, w) for (i, j), w in sorted(pair.items()) if w]
        self.c = [prob.cost[v] for v in self.vars]
        self.budget = prob.budget

    def value(self, x: list[int]) -> int:
        f = sum(w for i, j, w in self.pairs if x[i] != x[j])
        return f + sum(a for a, xi in zip(self.a, x) if xi)

    def load(self, x: list[int]) -> int:
        return sum(c for c, xi in zip(self.c, x) if xi)

    def mincut(self, fix: dict[int, int], lam: Fraction) -> list[int]:
        n = len(self.vars)
        s, t = n, n + 1
        q, p = lam.denominator, lam.numerator
        net = FlowNetwork(n + 2)
        unary = [a * q + p * c for a, c in zip(self.a, self.c)]
        inf = sum(unary) + sum(w for _, _, w in self.pairs) * q + 1
        for i in range(n):
            b = fix.get(i)
            if b == 0:
                net.add_edge(s, i, inf)
            elif b == 1:
                net.add_edge(i, t, inf)
            if unary[i]:
                net.add_edge(s, i, unary[i])
        for i, j, w in self.pairs:
            net.add_edge(i, j, w * q, w * q)
        net.max_flow(s, t)
        side = net.source_side(s)
        return [0 if side[i] else 1 for i in range(n)]


def solve(prob: IlpProblem, g: PartitionGraph | None = None) -> Assignment:
    sc = _Scaled(prob)
    n = len(sc.vars)
    root_fix = {sc.idx[v]: b for v, b in prob.fixed.items()}
    best: list[int] | None = None
    best_val: int | None = None
    stats = {"nodes": 0, "maxflows": 0}

    def consider(x: list[int]) -> None:
        nonlocal best, best_val
        if sc.load(x) <= sc.budget:
            v = sc.value(x)
            if best_val is None or v < best_val:
                best, best_val = x, v

    big = Fraction(sum(sc.a) + sum(w for _, _, w in sc.pairs) + 1)
    stack = [root_fix]
    while stack:
        fix = stack.pop()
        stats["nodes"] += 1
        min_load = sum(sc.c[i] for i, b in fix.items() if b == 1)
        if min_load > sc.budget:
            continue
        x_lo = sc.mincut(fix, Fraction(0))
        stats["maxflows"] += 1
        if sc.load(x_lo) <= sc.budget:
            consider(x_lo)  # relaxation optimum is feasible: subtree solved
            continue
        bound = sc.value(x_lo)
        if best_val is not None and bound >= best_val:
            continue
        x_hi = sc.mincut(fix, big)
        stats["maxflows"] += 1
        consider(x_hi)
        # breakpoint search for the best multiplier
        f_lo, l_lo = sc.value(x_lo), sc.load(x_lo)
        f_hi, l_hi = sc.value(x_hi), sc.load(x_hi)
        lagr = Fraction(bound)
        while l_lo > l_hi:
            lam = Fraction(f_hi - f_lo, l_lo - l_hi)
            x = sc.mincut(fix, lam)
            stats["maxflows"] += 1
            fx, lx = sc.value(x), sc.load(x)
            lagr = max(lagr, fx + lam * (lx - sc.budget))
            if fx + lam * lx >= f_lo + lam * l_lo:
                break  # no cut below the line: lam maximizes the dual
            if lx <= sc.budget:
                consider(x)
                x_hi, f_hi, l_hi = x, fx, lx
            else:
                x_lo, f_lo, l_lo = x, fx, lx
        if best_val is not None and math.ceil(lagr) >= best_val:
            continue
        free = [i for i in range(n) if i not in fix]
        if not free:
            continue
        diff = [i for i in free if x_lo[i] != x_hi[i]]
        pool = diff or [i for i in free if sc.c[i] > 0] or free
        k = max(pool, key=lambda i: (sc.c[i], -i))
        stack.append({**fix, k: 1})
        stack.append({**fix, k: 0})
    if best is None:
        raise InfeasibleError("no assignment satisfies the pins and the budget")
    x = {v: best[i] for i, v in enumerate(sc.vars)}
    placement = {nid: (DB if x[prob.node_var[nid]] else APP) for nid in prob.node_order}
    cut = {prob.edge_index[k] for k, (u, v) in enumerate(prob.edge_ends) if x[u] != x[v]}
    return Assignment(placement, cut, prob.objective(x), prob.load(x), stats)
