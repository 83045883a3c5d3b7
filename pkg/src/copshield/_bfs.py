"""Deterministic breadth-first search helpers shared across modules."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Mapping, Sequence

Adjacency = Mapping[Hashable, Sequence[Hashable]]


def bfs_distances(adj: Adjacency, source, allowed: Iterable | None = None) -> dict:
    """Distances from ``source`` in ``adj``; neighbours are visited in sorted order."""
    keep = None if allowed is None else set(allowed)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y in dist or (keep is not None and y not in keep):
                continue
            dist[y] = dist[x] + 1
            queue.append(y)
    return dist


def bfs_path(adj: Adjacency, source, target) -> list | None:
    """Shortest path from ``source`` to ``target`` with lowest-id parents.

    Parents are fixed in BFS order with sorted neighbour lists, so the result
    only depends on the adjacency, never on dict/set iteration order.
    """
    if source == target:
        return [source]
    parent = {source: None}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y in parent:
                continue
            parent[y] = x
            if y == target:
                path = [y]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(y)
    return None


def components(adj: Adjacency, vertices: Iterable) -> list[frozenset]:
    seen: set = set()
    out = []
    for v in sorted(vertices):
        if v in seen:
            continue
        comp = bfs_distances(adj, v).keys()
        seen.update(comp)
        out.append(frozenset(comp))
    return out


def simple_adjacency(vertices: Iterable, pairs: Iterable[tuple]) -> dict:
    """Sorted neighbour tuples from an edge list; parallel edges collapse."""
    nbrs: dict = {v: set() for v in vertices}
    for u, v in pairs:
        nbrs.setdefault(u, set()).add(v)
        nbrs.setdefault(v, set()).add(u)
    return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}
