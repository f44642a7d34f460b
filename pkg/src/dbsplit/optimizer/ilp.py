"""Binary program for statement/field placement.

Variables: one 0/1 node variable per graph node (0 = APP, 1 = DB), with all
members of a co-location group sharing a single variable, and one 0/1 edge
variable per weighted edge.  Constraints: ``n_j - n_k - e_i <= 0`` and
``n_k - n_j - e_i <= 0`` for each weighted edge, plus one budget constraint
over statement weights.  Pins are fixed variable bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..graph import PartitionGraph

APP, DB = "APP", "DB"


class InfeasibleError(Exception):
    """Pins, groups and budget admit no assignment."""


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[tuple[str, int], ...]
    rhs: int
    name: str = ""

    def holds(self, values: dict[str, int]) -> bool:
        return sum(c * values[v] for v, c in self.coeffs) <= self.rhs


@dataclass
class IlpProblem:
    node_vars: list[str] = field(default_factory=list)
    var_nodes: dict[str, list[str]] = field(default_factory=dict)
    node_var: dict[str, str] = field(default_factory=dict)
    edge_vars: list[str] = field(default_factory=list)
    # per edge variable: graph edge index, endpoint variables and weight (ms)
    edge_index: list[int] = field(default_factory=list)
    edge_ends: list[tuple[str, str]] = field(default_factory=list)
    weights: list[Fraction] = field(default_factory=list)
    cost: dict[str, int] = field(default_factory=dict)  # budget coefficients
    budget: int = 0
    fixed: dict[str, int] = field(default_factory=dict)
    constraints: list[Constraint] = field(default_factory=list)
    # graph node order, used for the lexicographic tie-break
    node_order: list[str] = field(default_factory=list)

    def objective(self, x: dict[str, int]) -> Fraction:
        return sum((w for (u, v), w in zip(self.edge_ends, self.weights) if x[u] != x[v]),
                   Fraction(0))

    def load(self, x: dict[str, int]) -> int:
        return sum(self.cost[v] * x[v] for v in self.node_vars)

    def feasible(self, x: dict[str, int]) -> bool:
        if any(x[v] != b for v, b in self.fixed.items()):
            return False
        return self.load(x) <= self.budget

    def to_lp(self) -> str:
        """LP-format text (objective, constraints, bounds, binaries)."""
        lines = ["\\ dbsplit placement problem", "Minimize"]
        terms = [f"{_num(w)} {e}" for e, w in zip(self.edge_vars, self.weights)]
        lines.append(" obj: " + (" + ".join(terms) if terms else "0"))
        lines.append("Subject To")
        for c in self.constraints:
            body = " ".join(f"{'+' if k >= 0 else '-'} {abs(k)} {v}" for v, k in c.coeffs)
            lines.append(f" {c.name}: {body.lstrip('+ ')} <= {c.rhs}")
        lines.append("Bounds")
        for v in self.node_vars:
            if v in self.fixed:
                lines.append(f" {v} = {self.fixed[v]}")
        lines.append("Binary")
        for v in self.node_vars + self.edge_vars:
            lines.append(f" {v}")
        lines.append("End")
        return "\n".join(lines) + "\n"


def _num(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{float(w)!r}"


def _var_name(node: str) -> str:
    return "n_" + "".join(ch if ch.isalnum() else "_" for ch in node)


def formulate(g: PartitionGraph, budget: int | None) -> IlpProblem:
    """Build the program; ``budget=None`` means unbounded."""
    if budget is not None and budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    prob = IlpProblem()
    prob.node_order = list(g.nodes)
    group_var: dict[str, str] = {}
    pinned_by: dict[str, tuple[str, str]] = {}
    for nid, n in g.nodes.items():
        if n.group is not None:
            var = group_var.get(n.group)
            if var is None:
                var = group_var[n.group] = "g_" + _var_name(n.group)[2:]
                prob.node_vars.append(var)
                prob.var_nodes[var] = []
                prob.cost[var] = 0
        else:
            var = _var_name(nid)
            prob.node_vars.append(var)
            prob.var_nodes[var] = []
            prob.cost[var] = 0
        prob.node_var[nid] = var
        prob.var_nodes[var].append(nid)
        if n.kind == "stmt":
            prob.cost[var] += n.weight
        if n.pin is not None:
            bit = 1 if n.pin == DB else 0
            if var in prob.fixed and prob.fixed[var] != bit:
                other = pinned_by[var][0]
                raise InfeasibleError(f"conflicting pins: {other} and {nid} share a placement "
                                      f"but are pinned to {pinned_by[var][1]} and {n.pin}")
            prob.fixed[var] = bit
            pinned_by[var] = (nid, n.pin)
    total = sum(prob.cost.values())
    prob.budget = total if budget is None else budget
    for idx, e in g.weighted_edges():
        ev = f"e{len(prob.edge_vars)}"
        u, v = prob.node_var[e.src], prob.node_var[e.dst]
        prob.edge_vars.append(ev)
        prob.edge_index.append(idx)
        prob.edge_ends.append((u, v))
        prob.weights.append(e.weight)
        prob.constraints.append(Constraint(((u, 1), (v, -1), (ev, -1)), 0, f"c{ev}a"))
        prob.constraints.append(Constraint(((v, 1), (u, -1), (ev, -1)), 0, f"c{ev}b"))
    prob.constraints.append(Constraint(tuple((v, prob.cost[v]) for v in prob.node_vars),
                                       prob.budget, "budget"))
    fixed_load = sum(prob.cost[v] for v, b in prob.fixed.items() if b == 1)
    if fixed_load > prob.budget:
        raise InfeasibleError(f"DB-pinned statements need {fixed_load} > budget {prob.budget}")
    return prob
