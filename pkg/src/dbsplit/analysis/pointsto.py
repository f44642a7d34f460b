"""Flow-insensitive allocation-site points-to analysis.

Abstract heap sites:

* ``("obj", sid, cls)``  objects from ``new C()`` at statement ``sid``
* ``("arr", sid)``       arrays from ``new K[n]``
* ``("rs", sid)``        the rowset array returned by a query
* ``("row", sid)``       row arrays inside that rowset

Heap contents are tracked per (site, field) and per site for array elements.
Entry parameters map to the ``EXTERNAL`` site (entry arguments are scalars).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..frontend import ast as A

EXTERNAL = ("external",)

Site = tuple


@dataclass
class PointsToMap:
    var: dict[tuple[str, str], frozenset[Site]] = field(default_factory=dict)
    heap: dict[tuple[Site, str], frozenset[Site]] = field(default_factory=dict)
    ret: dict[str, frozenset[Site]] = field(default_factory=dict)

    def of(self, func: str, name: str) -> frozenset[Site]:
        return self.var.get((func, name), frozenset())

    def objects(self, func: str, name: str) -> frozenset[Site]:
        return frozenset(s for s in self.of(func, name) if s[0] == "obj")

    def arrays(self, func: str, name: str) -> frozenset[Site]:
        return frozenset(s for s in self.of(func, name) if s[0] in ("arr", "rs", "row"))


def site_label(site: Site) -> str:
    if site[0] == "obj":
        return f"obj@s{site[1]}:{site[2]}"
    if site[0] == "external":
        return "external"
    return f"{site[0]}@s{site[1]}"


def points_to(p: A.Program) -> PointsToMap:
    var: dict[tuple[str, str], set[Site]] = {}
    heap: dict[tuple[Site, str], set[Site]] = {}
    ret: dict[str, set[Site]] = {f.name: set() for f in p.functions}
    fields_of = {c.name: set(c.field_names()) for c in p.classes}
    funcs = {f.name: f for f in p.functions}

    def V(fn: str, name: str) -> set[Site]:
        return var.setdefault((fn, name), set())

    def H(site: Site, key: str) -> set[Site]:
        return heap.setdefault((site, key), set())

    for f in p.functions:
        if f.name in p.entry_points:
            for prm in f.params:
                V(f.name, prm).add(EXTERNAL)

    def opvars(e) -> list[str]:
        return list(A.operand_vars(e)) if not isinstance(e, A.Binary | A.Unary) else []

    changed = True
    while changed:
        changed = False

        def add(dst: set, src) -> None:
            nonlocal changed
            before = len(dst)
            dst.update(src)
            if len(dst) != before:
                changed = True

        for fdecl, s in p.statements():
            fn = fdecl.name
            if isinstance(s, A.Assign):
                for v in opvars(s.expr):
                    add(V(fn, s.target), V(fn, v))
            elif isinstance(s, A.FieldRead):
                for site in list(V(fn, s.obj)):
                    if site[0] == "obj" and s.field in fields_of[site[2]]:
                        add(V(fn, s.target), H(site, s.field))
            elif isinstance(s, A.FieldWrite):
                if isinstance(s.value, A.Var):
                    for site in list(V(fn, s.obj)):
                        if site[0] == "obj" and s.field in fields_of[site[2]]:
                            add(H(site, s.field), V(fn, s.value.name))
            elif isinstance(s, A.ArrayRead):
                for site in list(V(fn, s.arr)):
                    if site[0] in ("arr", "rs", "row"):
                        add(V(fn, s.target), H(site, "[]"))
            elif isinstance(s, A.ArrayWrite):
                if isinstance(s.value, A.Var):
                    for site in list(V(fn, s.arr)):
                        if site[0] in ("arr", "rs", "row"):
                            add(H(site, "[]"), V(fn, s.value.name))
            elif isinstance(s, A.NewObject):
                add(V(fn, s.target), [("obj", s.sid, s.cls)])
            elif isinstance(s, A.NewArray):
                add(V(fn, s.target), [("arr", s.sid)])
            elif isinstance(s, A.Query):
                if s.target is not None:
                    add(V(fn, s.target), [("rs", s.sid)])
                    add(H(("rs", s.sid), "[]"), [("row", s.sid)])
            elif isinstance(s, A.Call):
                callee = funcs[s.func]
                for prm, a in zip(callee.params, s.args):
                    if isinstance(a, A.Var):
                        add(V(callee.name, prm), V(fn, a.name))
                if s.target is not None:
                    add(V(fn, s.target), ret[callee.name])
            elif isinstance(s, A.Return):
                if isinstance(s.value, A.Var):
                    add(ret[fn], V(fn, s.value.name))

    return PointsToMap(
        {k: frozenset(v) for k, v in var.items()},
        {k: frozenset(v) for k, v in heap.items()},
        {k: frozenset(v) for k, v in ret.items()},
    )
