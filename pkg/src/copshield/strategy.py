"""The 21-cop strategy for 1-plane graphs without x-crossings, and its gamma extension.

Three squads of seven cops take turns guarding shortest paths.  The part of
G^x known to be guarded (``L``) grows every iteration, and the interface
between it and the robber is either a single path (P-configuration) or a
cycle made of two paths owned by two squads (C-configuration).  A free squad
is sent to guard the next path while the old guards hold their posts; once
the new squad has settled, the iteration ends and the invariants are checked.

Squad ``i`` owns cops ``7i .. 7i+6``: cop ``7i`` is the special cop, the next
four are escorts and the last two are used as stationary or lockstep cops.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Sequence

from ._bfs import bfs_distances, bfs_path
from .game import Arena, CopStrategy, GameState
from .graph_model import (
    OnePlaneGraph,
    augment_kites,
    detect_x_crossings,
    planarize,
    xwalk,
)
from .path_guard import (
    GuardedPath,
    SquadGuard,
    guard_step,
    place_stationary,
    shadow_index,
    x_crossed_path_edges,
)
from .territory import (
    RobberOnGuardedVertex,
    TerritoryView,
    check_no_x,
    extend_with_boundary,
    robber_territory,
)

__all__ = [
    "SQUAD_SIZE",
    "SQUADS",
    "InvariantViolation",
    "Segment",
    "Interface",
    "CaseRecord",
    "Strategy21",
    "GammaStrategy",
    "shortcut",
    "gamma_reduce",
]

SQUAD_SIZE = 7
SQUADS = 3


class InvariantViolation(RuntimeError):
    def __init__(self, code: str, message: str):
        super().__init__(f"[{code}] {message}")
        self.code = code


def shortcut(walk: Sequence[int]) -> list[int]:
    """Loop-erase a walk: cut out the loop every time a vertex repeats."""
    out: list[int] = []
    where: dict[int, int] = {}
    for x in walk:
        if x in where:
            i = where[x]
            for y in out[i + 1 :]:
                del where[y]
            del out[i + 1 :]
        else:
            where[x] = len(out)
            out.append(x)
    return out


@dataclass(frozen=True)
class Segment:
    vertices: tuple[int, ...]  # X-vertices in enumeration order
    owner: int  # squad index


@dataclass(frozen=True)
class Interface:
    kind: str  # "P" or "C"
    parts: tuple[Segment, ...]

    @property
    def vertices(self) -> frozenset:
        return frozenset(x for s in self.parts for x in s.vertices)

    def owners(self) -> tuple[int, ...]:
        return tuple(s.owner for s in self.parts)


@dataclass(frozen=True)
class CaseRecord:
    eta: int
    kind: str
    label: str
    anchors: tuple[tuple[str, int], ...]
    squad: int
    path: tuple[int, ...]  # G-path guarded by the new squad
    stationary: tuple[int, ...]
    lockstep: tuple[int, ...]  # squads whose special cop is imitated

    def event(self) -> dict:
        return {
            "type": "case",
            "eta": self.eta,
            "config": self.kind,
            "case": self.label,
            "anchors": dict(self.anchors),
            "squad": self.squad,
            "path": list(self.path),
            "stationary": list(self.stationary),
            "lockstep": list(self.lockstep),
        }


@dataclass(frozen=True)
class _Finish:
    """What to do once the new squad has settled."""

    mode: str  # "P", "C2" or "C3"
    xpath: tuple[int, ...]
    free: tuple[int, ...] = ()
    keep: Segment | None = None  # P1 in mode C2
    split: int = 0  # index of the split segment in mode C3
    iu: int = 0
    iv: int = 0


@dataclass
class _Pending:
    record: CaseRecord
    finish: _Finish


class _Static:
    """Immutable per-graph data shared by all clones of a strategy."""

    def __init__(self, graph: OnePlaneGraph):
        self.graph = graph
        self.p = planarize(graph)
        self.adj = graph.adjacency
        self._dist: dict[int, dict[int, int]] = {}

    def __deepcopy__(self, memo):
        return self

    def dist(self, v: int) -> dict[int, int]:
        d = self._dist.get(v)
        if d is None:
            d = self._dist[v] = bfs_distances(self.adj, v)
        return d


class _LazyDist(dict):
    def __init__(self, fn):
        super().__init__()
        self._fn = fn

    def __missing__(self, key):
        val = self[key] = self._fn(key)
        return val


class Strategy21(CopStrategy):
    """Cop strategy for kite-augmentable graphs; needs 21 cops (plus ``len(parked)``).

    ``graph`` is the graph the strategy reasons about.  Moves are computed
    with the distances of the game graph, so the strategy can be run on a
    subgraph of the graph the game is played on (see :class:`GammaStrategy`).
    """

    name = "strategy21"

    def __init__(self, graph: OnePlaneGraph, checks: bool = True):
        aug, _ = augment_kites(graph, strict=True)
        self.static = _Static(aug)
        self.checks = checks
        self.parked: tuple[tuple[int, int], ...] = ()
        self.squads: list[SquadGuard | None] = [None] * SQUADS
        self.interface: Interface | None = None
        self.L_vertices: frozenset = frozenset()
        self.L_edges: frozenset = frozenset()
        self.eta = 0
        self.pending: _Pending | None = None
        self.territory: TerritoryView | None = None
        self.endgame = False
        self.cases: list[str] = []
        self._events: list[dict] = []

    # -- bookkeeping -------------------------------------------------------
    @property
    def cop_total(self) -> int:
        return SQUADS * SQUAD_SIZE + len(self.parked)

    def clone(self) -> "Strategy21":
        # everything but these containers is immutable once built
        c = copy.copy(self)
        c.squads = list(self.squads)
        c.cases = list(self.cases)
        c._events = []
        return c

    def state_key(self) -> tuple:
        pend = None
        if self.pending is not None:
            pend = (self.pending.record, self.pending.finish)
        return (
            self.eta,
            self.interface,
            self.L_vertices,
            self.L_edges,
            tuple(None if s is None else s.key() for s in self.squads),
            pend,
            self.endgame,
        )

    def drain_events(self) -> list[dict]:
        out, self._events = self._events, []
        return out

    def _emit(self, **ev) -> None:
        self._events.append(ev)

    def _violation(self, code: str, message: str):
        self._emit(type="invariant", check=code, ok=False, message=message)
        raise InvariantViolation(code, message)

    # -- game interface -----------------------------------------------------
    def place(self, arena: Arena, k: int) -> list[int]:
        if k < self.cop_total:
            raise ValueError(f"{self.name} needs {self.cop_total} cops, got {k}")
        start = arena.vertices[0]
        out = [start] * k
        for cop, v in self.parked:
            out[cop] = v
        return out

    def move(self, arena: Arena, state: GameState) -> list[int]:
        pos = dict(enumerate(state.cops))
        r = state.robber
        for c in sorted(pos):
            if pos[c] == r or r in arena.adj[pos[c]]:
                out = list(state.cops)
                out[c] = r
                return out

        if self.eta == 0 and self.pending is None:
            self._bootstrap(r)
        elif self.pending is None and not self.endgame:
            self._begin_iteration(r)
        if self.checks and self.territory is not None and r not in self.territory.component:
            self._violation("confinement", f"robber at {r} left its territory without capture")

        dist = _LazyDist(arena.dist.__getitem__)
        moves = dict(pos)
        for sq in self.squads:
            if sq is not None:
                moves.update(guard_step(sq, pos, r, dist, arena.adj))
        if self.endgame:
            chaser = self._chaser()
            dr = arena.dist[r]
            c = pos[chaser]
            if c in dr and c != r:
                moves[chaser] = min(y for y in arena.adj[c] if dr.get(y) == dr[c] - 1)

        if self.checks:
            self._check_guards(moves, r)
        if self.pending is not None:
            sq = self.squads[self.pending.record.squad]
            if sq.is_settled(moves, r):
                self._finish(moves, r)
        return [moves[c] for c in range(len(state.cops))]

    def _chaser(self) -> int:
        for i, sq in enumerate(self.squads):
            if sq is None:
                return i * SQUAD_SIZE
        return 0

    def _check_guards(self, positions: dict[int, int], r: int) -> None:
        """Settled squads stay settled, and the shadow-distance inequality holds."""
        pend = None if self.pending is None else self.pending.record.squad
        for i, sq in enumerate(self.squads):
            if sq is None or i == pend:
                continue
            gp = sq.guard
            s = shadow_index(gp, r)
            if s is None:
                continue
            if not sq.is_settled(positions, r):
                self._violation("guard", f"squad {i} lost its configuration")
            d = gp.distances_from(r)
            for j, v in enumerate(gp.path):
                if abs(s - j) > d[v]:
                    self._violation(
                        "obs32", f"squad {i}: special cop {abs(s - j)} from {v}, robber {d[v]}"
                    )

    # -- squads -------------------------------------------------------------
    def _free_squad(self) -> int:
        for i, sq in enumerate(self.squads):
            if sq is None:
                return i
        self._violation("I4", "no free squad")

    def _assign(
        self,
        idx: int,
        gp: GuardedPath,
        stationary: Sequence[int],
        lockstep: Sequence[int],
    ) -> SquadGuard:
        base = idx * SQUAD_SIZE
        extras = len(stationary) + len(lockstep)
        if extras > SQUAD_SIZE - 5:
            self._violation(
                "squad-budget", f"squad {idx} needs {5 + extras} cops, only {SQUAD_SIZE} exist"
            )
        spare = iter(range(base + 5, base + SQUAD_SIZE))
        sq = SquadGuard(
            guard=gp,
            ustar=base,
            escorts=tuple(range(base + 1, base + 5)),
            stationary=tuple((next(spare), v) for v in stationary),
            lockstep=tuple((next(spare), self.squads[j].guard) for j in lockstep),
        )
        self.squads[idx] = sq
        return sq

    # -- paths ----------------------------------------------------------------
    def _gpath(self, h: OnePlaneGraph, s: int, t: int) -> tuple[list[int], list[int]]:
        vs = bfs_path(h.adjacency, s, t)
        if vs is None:
            self._violation("path", f"no path from {s} to {t} in the case graph")
        g = self.static.graph
        es = [
            min(h.edges_between(a, b), key=lambda eid: (g.is_crossed(eid), eid))
            for a, b in zip(vs, vs[1:])
        ]
        return vs, es

    def _xpath(self, vs: Sequence[int], es: Sequence[int]) -> list[int]:
        return shortcut(xwalk(self.static.p, vs, es))

    def _stationary_for(
        self, h: OnePlaneGraph, es: Sequence[int], given: Sequence[int]
    ) -> list[int]:
        """Case stationary cops plus one parked cop per x-crossed path edge not yet covered."""
        out = list(given)
        crossed = x_crossed_path_edges(h, es)
        for eid, v in place_stationary(h, crossed):
            partner = h.edge(h.partner(eid))
            if not any(x in partner.ends for x in out):
                out.append(v)
        return out

    def _region(self, view: TerritoryView, edges=(), vertices=()) -> OnePlaneGraph:
        return self.static.graph.edge_subgraph(
            set(view.component_edges) | set(edges), set(view.component) | set(vertices)
        )

    def _crossing_anchors(self, view: TerritoryView, d: int) -> tuple[int, int, tuple[int, int]]:
        """(x1, x2, crossing edges) at dummy ``d``: x1 in R, x2 consecutive with x1."""
        p = self.static.p
        g = self.static.graph
        x1 = min(view.boundary_neighbours(p, d))
        ci = p.crossing_of_dummy[d]
        cyc = list(g.crossing_endpoints(ci))
        i = cyc.index(x1)
        x2 = min(cyc[(i + 1) % 4], cyc[(i - 1) % 4])
        return x1, x2, g.crossings[ci]

    # -- iterations -------------------------------------------------------
    def _bootstrap(self, r: int) -> None:
        g = self.static.graph
        adj = self.static.adj
        comp = bfs_distances(adj, r)
        x0 = min(comp)
        dx = bfs_distances(adj, x0)
        x = min(v for v in dx if dx[v] == max(dx.values()))
        dy = bfs_distances(adj, x)
        y = min(v for v in dy if dy[v] == max(dy.values()))
        ambient = g.edge_subgraph([e.id for e in g.edges if e.u in comp], comp)
        vs, es = self._gpath(ambient, x, y)
        gp = GuardedPath(ambient, vs, es)
        idx = self._free_squad()
        stat = self._stationary_for(ambient, es, ())
        self._assign(idx, gp, stat, ())
        rec = CaseRecord(1, "-", "bootstrap", (("s", x), ("t", y)), idx, tuple(vs), tuple(stat), ())
        self.pending = _Pending(rec, _Finish("P", tuple(self._xpath(vs, es))))
        self._emit(**rec.event())

    def _begin_iteration(self, r: int) -> None:
        p = self.static.p
        J = self.interface
        try:
            view = robber_territory(p, J.vertices, r)
        except RobberOnGuardedVertex:
            self._violation("guard", f"robber stands on guarded vertex {r} uncaptured")
        if self.checks:
            self._check_territory(view)
        self.territory = view
        touching = [[x for x in s.vertices if view.boundary[x]] for s in J.parts]
        total = sum(len(t) for t in touching)
        if total == 0:
            self.endgame = True
            self._emit(type="endgame", eta=self.eta, chaser=self._chaser())
            return
        eta = self.eta + 1
        if total == 1:
            a = next(t[0] for t in touching if t)
            rec, fin = self._case1(view, eta, J, a)
        elif J.kind == "P":
            rec, fin = self._case_p2(view, eta, J, touching[0])
        elif len(touching[0]) == 1 and len(touching[1]) == 1:
            rec, fin = self._case_c2(view, eta, J, touching[0][0], touching[1][0])
        else:
            rec, fin = self._case_c3(view, eta, J, touching)
        self.pending = _Pending(rec, fin)
        self.cases.append(rec.label)
        self._emit(**rec.event())

    def _check_territory(self, view: TerritoryView) -> None:
        p = self.static.p
        ok = check_no_x(p, view)
        self._emit(type="invariant", check="obs22", ok=ok)
        if not ok:
            self._violation("obs22", "robber territory has an x-crossing")
        for v in view.adjacent():
            if detect_x_crossings(extend_with_boundary(p, view, v)):
                self._violation("obs23", f"territory plus boundary of {v} has an x-crossing")
        self._emit(type="invariant", check="obs23", ok=True)

    def _case1(self, view, eta, J, a):
        p = self.static.p
        v = min(view.component)
        idx = self._free_squad()
        if not p.is_dummy(a):
            h = self._region(view, view.boundary[a], (a,))
            vs, es = self._gpath(h, a, v)
            stat = self._stationary_for(h, es, ())
            xq = self._xpath(vs, es)
            label, anchors = "1.1", (("a", a), ("v", v))
        else:
            a1, a2, cr = self._crossing_anchors(view, a)
            h = self._region(view, cr)
            vs, es = self._gpath(h, a1, v)
            stat = self._stationary_for(h, es, (a2,))
            xq = self._xpath(vs, es)
            if a not in xq:
                xq = [a] + xq
            label, anchors = "1.2", (("a", a), ("a1", a1), ("a2", a2), ("v", v))
        self._assign(idx, GuardedPath(h, vs, es), stat, ())
        rec = CaseRecord(eta, J.kind, J.kind + label, anchors, idx, tuple(vs), tuple(stat), ())
        return rec, _Finish("P", tuple(xq), free=J.owners())

    def _split_path(self, view, seg_vertices, u, v):
        """Shared construction of the P-configuration Case 2 (and C-configuration Case 3)."""
        p = self.static.p
        a = min(view.boundary_neighbours(p, u))
        b = min(view.boundary_neighbours(p, v))
        ug, vg = not p.is_dummy(u), not p.is_dummy(v)
        if ug and vg:
            h = self._region(view, view.boundary[u] | view.boundary[v], (u, v))
            s, t, cut, label, cor35 = u, v, (1, 1), "1", True
        elif ug:
            h = self._region(view, view.boundary[u], (u,))
            s, t, cut, label, cor35 = u, b, (1, 0), "2", False
        elif vg:
            h = self._region(view, view.boundary[v], (v,))
            s, t, cut, label, cor35 = a, v, (0, 1), "2", False
        else:
            h = self._region(view)
            s, t, cut, label, cor35 = a, b, (0, 0), "3", False
        vs, es = self._gpath(h, s, t)
        stat = [] if cor35 else self._stationary_for(h, es, ())
        xq = self._xpath(vs, es)
        xq = xq[cut[0] : len(xq) - cut[1]]
        if not xq or set(xq) & set(seg_vertices):
            self._violation("disjoint", f"new path {xq} is empty or meets the interface")
        anchors = (("u", u), ("v", v), ("a", a), ("b", b))
        return h, vs, es, stat, xq, label, anchors

    def _case_p2(self, view, eta, J, touching):
        seg = J.parts[0]
        u, v = touching[0], touching[-1]
        h, vs, es, stat, xq, label, anchors = self._split_path(view, seg.vertices, u, v)
        idx = self._free_squad()
        self._assign(idx, GuardedPath(h, vs, es), stat, (seg.owner,))
        iu, iv = seg.vertices.index(u), seg.vertices.index(v)
        p1 = Segment(seg.vertices[iu : iv + 1], seg.owner)
        rec = CaseRecord(eta, "P", "P2." + label, anchors, idx, tuple(vs), tuple(stat), (seg.owner,))
        return rec, _Finish("C2", tuple(xq), keep=p1)

    def _case_c2(self, view, eta, J, a, b):
        p = self.static.p
        idx = self._free_squad()
        ag, bg = not p.is_dummy(a), not p.is_dummy(b)
        if ag and bg:
            h = self._region(view, view.boundary[a] | view.boundary[b], (a, b))
            vs, es = self._gpath(h, a, b)
            stat: list[int] = []
            xq = self._xpath(vs, es)
            label, anchors = "2.1", (("a", a), ("b", b))
        elif ag or bg:
            x, y = (a, b) if ag else (b, a)
            y1, y2, cr = self._crossing_anchors(view, y)
            h = self._region(view, set(view.boundary[x]) | set(cr), (x,))
            vs, es = self._gpath(h, x, y1)
            stat = self._stationary_for(h, es, (y2,))
            xq = self._xpath(vs, es)
            if y not in xq:
                xq = xq + [y]
            label = "2.2"
            anchors = (("a", x), ("b", y), ("b1", y1), ("b2", y2))
        else:
            a1, a2, ca = self._crossing_anchors(view, a)
            b1, b2, cb = self._crossing_anchors(view, b)
            h = self._region(view, set(ca) | set(cb))
            vs, es = self._gpath(h, a1, b1)
            stat = self._stationary_for(h, es, (a2, b2))
            xq = self._xpath(vs, es)
            if a not in xq:
                xq = [a] + xq
            if b not in xq:
                xq = xq + [b]
            label = "2.3"
            anchors = (("a", a), ("b", b), ("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2))
        self._assign(idx, GuardedPath(h, vs, es), stat, ())
        rec = CaseRecord(eta, "C", "C" + label, anchors, idx, tuple(vs), tuple(stat), ())
        return rec, _Finish("P", tuple(xq), free=J.owners())

    def _case_c3(self, view, eta, J, touching):
        k = 0 if len(touching[0]) > 1 else 1
        seg = J.parts[k]
        u, v = touching[k][0], touching[k][-1]
        h, vs, es, stat, xq, label, anchors = self._split_path(view, J.vertices, u, v)
        idx = self._free_squad()
        owners = J.owners()
        self._assign(idx, GuardedPath(h, vs, es), stat, owners)
        iu, iv = seg.vertices.index(u), seg.vertices.index(v)
        rec = CaseRecord(eta, "C", "C3", anchors, idx, tuple(vs), tuple(stat), owners)
        return rec, _Finish("C3", tuple(xq), split=k, iu=iu, iv=iv)

    # -- iteration end ------------------------------------------------------
    def _interface_edges(self, J: Interface) -> set[int]:
        p = self.static.p
        out: set[int] = set()
        for seg in J.parts:
            for a, b in zip(seg.vertices, seg.vertices[1:]):
                xs = [xid for y, xid in p.incident[a] if y == b]
                if not xs:
                    self._violation("I1", f"{a} and {b} are consecutive on the interface but not adjacent")
                out.add(min(xs))
        if J.kind == "C":
            p1, p2 = J.parts[0].vertices, J.parts[1].vertices
            for a, b in ((p1[0], p2[0]), (p1[-1], p2[-1])):
                xs = [xid for y, xid in p.incident[a] if y == b]
                if not xs:
                    self._violation("I1", f"cycle is not closed between {a} and {b}")
                out.add(min(xs))
        return out

    def _new_interface(self, r: int) -> tuple[Interface, tuple[int, ...]] | None:
        fin = self.pending.finish
        sq = self.pending.record.squad
        xq = fin.xpath
        if fin.mode == "P":
            if xq[0] > xq[-1]:
                xq = xq[::-1]
            return Interface("P", (Segment(xq, sq),)), fin.free
        if fin.mode == "C2":
            return Interface("C", (fin.keep, Segment(xq, sq))), ()

        p = self.static.p
        J = self.interface
        k = fin.split
        seg, other = J.parts[k], J.parts[1 - k]
        pminus = Segment(seg.vertices[fin.iu : fin.iv + 1], seg.owner)
        p3 = Segment(xq, sq)
        pplus = Segment(seg.vertices[: fin.iu + 1] + xq + seg.vertices[fin.iv :], sq)
        left = (pminus, p3) if k == 0 else (p3, pminus)
        right = (pplus, other) if k == 0 else (other, pplus)
        dl = Interface("C", left)
        if r in dl.vertices:
            return None
        if not _touches(p, robber_territory(p, dl.vertices, r), other.vertices):
            self._emit(type="side", eta=self.eta + 1, side="L")
            return dl, (other.owner,)
        dr = Interface("C", right)
        if r in dr.vertices:
            return None
        inner = seg.vertices[fin.iu + 1 : fin.iv]
        if _touches(p, robber_territory(p, dr.vertices, r), inner):
            self._violation("c3-side", "robber territory meets both sides of the split cycle")
        self._emit(type="side", eta=self.eta + 1, side="R")
        return dr, (seg.owner,)

    def _finish(self, positions: dict[int, int], r: int) -> None:
        p = self.static.p
        made = self._new_interface(r)
        if made is None:
            return
        J, free = made
        if r in J.vertices or r in self.L_vertices:
            return  # robber sits on a guarded vertex; he is taken next turn
        rec = self.pending.record
        j_edges = self._interface_edges(J)
        L_v = self.L_vertices | J.vertices
        L_e = self.L_edges | j_edges
        for i in free:
            self.squads[i] = None
        self._emit(type="activation", eta=rec.eta, squad=rec.squad)

        view_j = robber_territory(p, J.vertices, r)
        if self.checks:
            self._check_invariants(J, j_edges, L_v, L_e, view_j, positions, r)
        self.interface = J
        self.L_vertices, self.L_edges = L_v, L_e
        self.eta = rec.eta
        self.territory = view_j
        self.pending = None
        self._emit(
            type="iteration",
            eta=self.eta,
            case=rec.label,
            config=J.kind,
            interface=[list(s.vertices) for s in J.parts],
            owners=list(J.owners()),
            freed=list(free),
            L_size=len(L_v) + len(L_e),
        )

    def _check_invariants(self, J, j_edges, L_v, L_e, view_j, positions, r) -> None:
        p = self.static.p
        # I1: owners settled, every exposed G-vertex watched by its owner's special cop
        if J.kind == "C" and set(J.parts[0].vertices) & set(J.parts[1].vertices):
            self._violation("I1", "cycle paths are not vertex disjoint")
        for seg in J.parts:
            if len(set(seg.vertices)) != len(seg.vertices):
                self._violation("I1", "interface path is not simple")
            sq = self.squads[seg.owner]
            if sq is None or not sq.is_settled(positions, r):
                self._violation("I1", f"owner squad {seg.owner} is not in position")
            for x in seg.vertices:
                if not p.is_dummy(x) and view_j.boundary[x] and x not in sq.guard.index:
                    self._violation("I1", f"exposed vertex {x} is not on squad {seg.owner}'s path")
        self._emit(type="invariant", check="I1", ok=True)
        # I2: J inside L, strict growth
        grew = len(L_v) + len(L_e) > len(self.L_vertices) + len(self.L_edges)
        if not (J.vertices <= L_v and j_edges <= L_e and grew):
            self._violation("I2", "guarded subgraph did not grow")
        self._emit(type="invariant", check="I2", ok=True)
        # I3: J is the whole interface of L
        view_l = robber_territory(p, L_v, r)
        if view_l.component != view_j.component:
            self._violation("I3", "robber territory of L differs from that of J")
        exposed = [x for x in L_v - J.vertices if view_l.boundary[x]]
        if exposed:
            self._violation("I3", f"vertices {sorted(exposed)} of L outside J touch the robber")
        self._emit(type="invariant", check="I3", ok=True)
        # I4
        if all(sq is not None for sq in self.squads):
            self._violation("I4", "no squad is free")
        self._emit(type="invariant", check="I4", ok=True)


def _touches(p, view: TerritoryView, xs) -> bool:
    """Does the robber territory reach any of the X-vertices ``xs``?"""
    for x in xs:
        if p.is_dummy(x):
            if any(e in view.component_edges for e in p.crossing_edges_at(x)):
                return True
        elif x in view.component:
            return True
    return False


def gamma_reduce(g: OnePlaneGraph) -> tuple[OnePlaneGraph, list[tuple[int, int]]]:
    """Remove one edge per x-crossing.

    For each x-crossing the lower-id edge is removed and its lowest-id
    endpoint is returned as the parking vertex: ``(vertex, removed edge)``.
    """
    parked = []
    for i in detect_x_crossings(g):
        eid = min(g.crossings[i])
        parked.append((min(g.edge(eid).ends), eid))
    return g.without_edges(e for _, e in parked), parked


class GammaStrategy(Strategy21):
    """One parked cop per x-crossing, then the 21-cop strategy on the rest."""

    name = "gamma21"

    def __init__(self, graph: OnePlaneGraph, checks: bool = True):
        reduced, parked = gamma_reduce(graph)
        super().__init__(reduced, checks=checks)
        self.removed = tuple(e for _, e in parked)
        self.parked = tuple(
            (SQUADS * SQUAD_SIZE + i, v) for i, (v, _) in enumerate(parked)
        )
