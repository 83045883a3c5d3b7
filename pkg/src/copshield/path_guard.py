"""Five-cop squads guarding a shortest path and the crossing points on it.

The special cop follows the *shadow* of the robber: on a path ``p0..pm`` that
is shortest in an ambient graph ``A``, the shadow of a robber at ``r`` is
``min(d_A(p0, r), m)``.  Because ``d_A(r, pj) >= |d_A(p0, r) - j|`` the cop
sitting on the shadow is never farther from a path vertex than the robber is,
and it moves by at most one index per robber move.  Four escorts occupy the
path vertices at offsets -2, -1, +1, +2 (clamped to the path), which is what
turns non-x crossing points on the path into guarded ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ._bfs import bfs_distances, simple_adjacency
from .graph_model import OnePlaneGraph, Planarization, detect_x_crossings

__all__ = [
    "ESCORT_OFFSETS",
    "GuardedPath",
    "SquadGuard",
    "shadow_index",
    "guard_step",
    "step_toward_index",
    "activation_potential",
    "x_crossed_path_edges",
    "place_stationary",
    "guarded_query",
]

ESCORT_OFFSETS = (-2, -1, 1, 2)


class GuardedPath:
    """A path of G-vertices that is shortest (from its first vertex) in an ambient graph."""

    def __init__(
        self,
        ambient: OnePlaneGraph,
        path: Sequence[int],
        edges: Sequence[int] = (),
    ):
        if not path:
            raise ValueError("empty path")
        self.path: tuple[int, ...] = tuple(path)
        self.edges: tuple[int, ...] = tuple(edges)
        self.m = len(self.path) - 1
        self.index = {v: i for i, v in enumerate(self.path)}
        self.ambient_edges = frozenset(e.id for e in ambient.edges)
        self.ambient_vertices = frozenset(ambient.vertices)
        self.adj = simple_adjacency(ambient.vertices, (e.ends for e in ambient.edges))
        self.dist = bfs_distances(self.adj, self.path[0])
        for i, v in enumerate(self.path):
            if self.dist.get(v) != i:
                raise ValueError(f"path is not shortest in its ambient graph at index {i}")
        self.key = (self.path, tuple(sorted(self.ambient_edges)))

    def __deepcopy__(self, memo):
        return self

    def __repr__(self) -> str:
        return f"GuardedPath({list(self.path)})"

    def contains(self, robber: int) -> bool:
        return robber in self.dist

    def distances_from(self, v: int) -> dict[int, int]:
        return bfs_distances(self.adj, v)


def shadow_index(gp: GuardedPath, robber: int) -> int | None:
    """``min(d_A(p0, robber), m)``, or None when the robber is outside the ambient graph."""
    d = gp.dist.get(robber)
    return None if d is None else min(d, gp.m)


def activation_potential(gp: GuardedPath, cop_index: int, shadow: int) -> int:
    """Strictly decreasing potential of the shadow chase before activation."""
    if cop_index < shadow:
        return gp.m - cop_index
    if cop_index > shadow:
        return cop_index
    return 0


def step_toward_index(
    gp: GuardedPath,
    pos: int,
    target: int,
    dist: Mapping[int, Mapping[int, int]],
    adj: Mapping[int, Sequence[int]],
) -> int:
    """Next vertex for a cop heading to ``gp.path[target]``.

    On the path the cop moves one index toward the target.  Off the path it
    walks a shortest route (in the game graph) to the nearest path vertex,
    lowest index on ties; that distance drops by one every turn.
    """
    i = gp.index.get(pos)
    if i is not None:
        if i < target:
            return gp.path[i + 1]
        if i > target:
            return gp.path[i - 1]
        return pos
    dpos = dist[pos]
    reach = [(dpos[v], j) for j, v in enumerate(gp.path) if v in dpos]
    if not reach:
        return pos
    _, j = min(reach)
    entry = gp.path[j]
    dentry = dist[entry]
    want = dentry[pos] - 1
    return min(y for y in adj[pos] if dentry.get(y) == want)


def _clamp(i: int, m: int) -> int:
    return 0 if i < 0 else (m if i > m else i)


@dataclass
class SquadGuard:
    """Cops of one squad assigned to a guarded path.

    ``lockstep`` cops run the shadow rule of *another* squad's path, so once
    settled they sit exactly where that squad's special cop sits.
    """

    guard: GuardedPath
    ustar: int
    escorts: tuple[int, ...]
    stationary: tuple[tuple[int, int], ...] = ()
    lockstep: tuple[tuple[int, GuardedPath], ...] = ()
    active: bool = False
    extra_limit: int = field(default=2, repr=False)

    def __post_init__(self):
        if len(self.escorts) != len(ESCORT_OFFSETS):
            raise ValueError("a squad needs exactly four escorts")
        if len(self.stationary) + len(self.lockstep) > self.extra_limit:
            raise ValueError(
                f"squad needs {len(self.stationary) + len(self.lockstep)} extra cops, "
                f"only {self.extra_limit} available"
            )

    def __deepcopy__(self, memo):
        return self

    @property
    def cops(self) -> tuple[int, ...]:
        return (
            (self.ustar,)
            + self.escorts
            + tuple(c for c, _ in self.stationary)
            + tuple(c for c, _ in self.lockstep)
        )

    def targets(self, robber: int) -> dict[int, int] | None:
        """Settled positions for the current robber position (None outside the ambient)."""
        s = shadow_index(self.guard, robber)
        if s is None:
            return None
        gp = self.guard
        out = {self.ustar: gp.path[s]}
        for cop, off in zip(self.escorts, ESCORT_OFFSETS):
            out[cop] = gp.path[_clamp(s + off, gp.m)]
        for cop, v in self.stationary:
            out[cop] = v
        for cop, other in self.lockstep:
            t = shadow_index(other, robber)
            if t is None:
                return None
            out[cop] = other.path[t]
        return out

    def is_settled(self, positions: Mapping[int, int], robber: int) -> bool:
        t = self.targets(robber)
        return t is not None and all(positions[c] == v for c, v in t.items())

    def key(self) -> tuple:
        return (
            self.guard.key,
            self.ustar,
            self.escorts,
            self.stationary,
            tuple((c, gp.key) for c, gp in self.lockstep),
            self.active,
        )


def guard_step(
    squad: SquadGuard,
    positions: Mapping[int, int],
    robber: int,
    dist: Mapping[int, Mapping[int, int]],
    adj: Mapping[int, Sequence[int]],
) -> dict[int, int]:
    """One cops' turn for every member of the squad."""
    gp = squad.guard
    s = shadow_index(gp, robber)
    moves: dict[int, int] = {}
    if s is None:
        # robber left the ambient graph: hold position
        return {c: positions[c] for c in squad.cops}
    moves[squad.ustar] = step_toward_index(gp, positions[squad.ustar], s, dist, adj)
    for cop, off in zip(squad.escorts, ESCORT_OFFSETS):
        moves[cop] = step_toward_index(gp, positions[cop], _clamp(s + off, gp.m), dist, adj)
    for cop, v in squad.stationary:
        moves[cop] = _walk(positions[cop], v, dist, adj)
    for cop, other in squad.lockstep:
        t = shadow_index(other, robber)
        if t is None:
            moves[cop] = positions[cop]
        else:
            moves[cop] = step_toward_index(other, positions[cop], t, dist, adj)
    return moves


def _walk(pos: int, target: int, dist, adj) -> int:
    if pos == target:
        return pos
    dt = dist[target]
    if pos not in dt:
        return pos
    want = dt[pos] - 1
    return min(y for y in adj[pos] if dt.get(y) == want)


def x_crossed_path_edges(ambient: OnePlaneGraph, path_edges: Iterable[int]) -> list[int]:
    """Path edges taking part in an x-crossing of the ambient graph."""
    xs = set()
    for i in detect_x_crossings(ambient):
        xs.update(ambient.crossings[i])
    return sorted(e for e in path_edges if e in xs)


def place_stationary(ambient: OnePlaneGraph, crossed: Iterable[int]) -> list[tuple[int, int]]:
    """Park one cop per x-crossed path edge on the lowest-id endpoint of its partner.

    Returns ``(path edge, parking vertex)`` pairs.
    """
    xs = set()
    for i in detect_x_crossings(ambient):
        xs.update(ambient.crossings[i])
    out = []
    for eid in crossed:
        if eid not in xs:
            raise ValueError(f"edge {eid} is not x-crossed in the ambient graph")
        partner = ambient.edge(ambient.partner(eid))
        out.append((eid, min(partner.ends)))
    return out


def guarded_query(
    p: Planarization,
    cops: Iterable[int],
    robber: int,
    v: int,
    dist: Mapping[int, Mapping[int, int]],
) -> bool:
    """Two-ply check that ``v`` is guarded against the robber's next move.

    A G-vertex is guarded when the robber cannot step onto it, or some cop is
    within distance one of it (and so captures on the following cops' turn).
    A dummy is guarded when every traversal between opposite endpoints that
    starts at the robber ends next to a cop.
    """
    cops = list(cops)

    def covered(x: int) -> bool:
        return any(dist[c].get(x, 99) <= 1 for c in cops)

    g = p.base
    if not p.is_dummy(v):
        if v != robber and v not in g.adjacency[robber]:
            return True
        return covered(v)
    for eid in p.crossing_edges_at(v):
        e = g.edge(eid)
        if robber in e.ends and not covered(e.other(robber)):
            return False
    return True
