"""Cop territory, robber territory and boundary edge sets for guarded subgraphs of G^x."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph_model import Edge, OnePlaneGraph, Planarization, detect_x_crossings

__all__ = [
    "TerritoryView",
    "RobberOnGuardedVertex",
    "cop_territory",
    "robber_territory",
    "check_no_x",
    "extend_with_boundary",
]


class RobberOnGuardedVertex(ValueError):
    pass


@dataclass(frozen=True)
class TerritoryView:
    guarded: frozenset  # vertices of H (G-vertices and dummies)
    cop_edges: frozenset  # G edge ids
    component: frozenset  # G-vertices of the robber territory
    component_edges: frozenset  # G edge ids inside the robber territory
    boundary: dict  # v in H -> S_H(v): G edge ids (G-vertex) or X-edge ids (dummy)
    robber: int

    def __deepcopy__(self, memo):
        return self

    def adjacent(self) -> list[int]:
        """Vertices of H with a neighbour in the robber territory."""
        return sorted(v for v, s in self.boundary.items() if s)

    def boundary_neighbours(self, p: Planarization, v: int) -> list[int]:
        """Robber-territory vertices reached from ``v`` through S_H(v)."""
        out = set()
        for eid in self.boundary.get(v, ()):
            if p.is_dummy(v):
                a, b, _ = p.xedges[eid]
                out.add(b if a == v else a)
            else:
                out.add(p.base.edge(eid).other(v))
        return sorted(out)


def cop_territory(p: Planarization, guarded: Iterable[int]) -> frozenset:
    """Edges of G whose drawing meets the guarded vertex set."""
    h = set(guarded)
    unknown = [x for x in h if x not in p.incident]
    if unknown:
        raise KeyError(f"vertices {sorted(unknown)} are not in G^x")
    return frozenset(
        eid for eid, img in p.image_vertices.items() if any(x in h for x in img)
    )


def robber_territory(p: Planarization, guarded: Iterable[int], robber: int) -> TerritoryView:
    g = p.base
    h = frozenset(guarded)
    if robber not in p.g_vertices:
        raise KeyError(f"robber vertex {robber} is not a G-vertex")
    if robber in h:
        raise RobberOnGuardedVertex(f"robber at guarded vertex {robber}")
    cop = cop_territory(p, h)

    comp = {robber}
    queue = deque([robber])
    while queue:
        x = queue.popleft()
        for eid in g.incident(x):
            if eid in cop:
                continue
            y = g.edge(eid).other(x)
            if y not in comp:
                comp.add(y)
                queue.append(y)
    comp_edges = frozenset(
        e.id for e in g.edges if e.id not in cop and e.u in comp and e.v in comp
    )

    boundary: dict[int, frozenset] = {}
    for v in sorted(h):
        if p.is_dummy(v):
            boundary[v] = frozenset(xid for y, xid in p.incident[v] if y in comp)
        else:
            s = set()
            for eid in g.incident(v):
                if g.edge(eid).other(v) not in comp:
                    continue
                if all(x == v or x not in h for x in p.image_vertices[eid]):
                    s.add(eid)
            boundary[v] = frozenset(s)
    return TerritoryView(h, cop, frozenset(comp), comp_edges, boundary, robber)


def check_no_x(p: Planarization, view: TerritoryView) -> bool:
    """True iff the robber territory, as a 1-plane graph, has no x-crossing."""
    frag = p.base.edge_subgraph(view.component_edges, view.component)
    return not detect_x_crossings(frag)


def extend_with_boundary(p: Planarization, view: TerritoryView, v: int) -> OnePlaneGraph:
    """R(H) together with S_H(v) as a 1-plane fragment.

    For a dummy ``v`` the fragment contains ``v`` itself and the half-edges of
    S_H(v) as uncrossed edges (their X-edge ids do not clash with G ids).
    """
    g = p.base
    s = view.boundary.get(v, frozenset())
    if not p.is_dummy(v):
        return g.edge_subgraph(set(view.component_edges) | set(s), view.component)
    base = g.edge_subgraph(view.component_edges, view.component)
    halves = [Edge(xid, *p.xedges[xid][:2]) for xid in sorted(s)]
    return OnePlaneGraph(
        set(base.vertices) | {v}, list(base.edges) + halves, base.crossings
    )
