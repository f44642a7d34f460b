"""Placement program formulation and exact solving."""

from __future__ import annotations

from .apply import PlacedGraph, apply
from .ilp import APP, DB, Constraint, IlpProblem, InfeasibleError, formulate
from .solve import Assignment, solve


def place(g, budget: int | None) -> PlacedGraph:
    """formulate + solve + apply."""
    return apply(solve(formulate(g, budget)), g)


__all__ = [
    "APP", "DB", "Assignment", "Constraint", "IlpProblem", "InfeasibleError",
    "PlacedGraph", "apply", "formulate", "place", "solve",
]
