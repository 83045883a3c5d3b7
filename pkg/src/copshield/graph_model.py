"""1-plane multigraphs, their planarizations, kite edges and x-crossings.

A :class:`OnePlaneGraph` is the combinatorial description of an embedded
graph: vertices, edges (parallel edges allowed), the declared crossing pairs
and, optionally, a rotation system.  Geometry never enters the picture.

When a rotation system is present, the *order* inside a crossing pair is
significant: for a crossing ``(eA, eB)`` the dummy vertex sees the edge ends
``eA.u, eB.u, eA.v, eB.v`` in the same cyclic sense as the vertex rotations.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from ._bfs import components, simple_adjacency

__all__ = [
    "Edge",
    "OnePlaneGraph",
    "Violation",
    "ValidationReport",
    "Planarization",
    "KiteRecord",
    "InvalidGraph",
    "validate",
    "planarize",
    "detect_x_crossings",
    "augment_kites",
    "restrict",
    "trace_faces",
    "euler_ok",
    "rotation_from_coordinates",
    "load_graph",
    "save_graph",
]


class InvalidGraph(ValueError):
    """Raised when an operation needs a valid 1-plane graph and did not get one."""


@dataclass(frozen=True, order=True)
class Edge:
    id: int
    u: int
    v: int

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"vertex {x} is not an endpoint of edge {self.id}")

    @property
    def ends(self) -> tuple[int, int]:
        return (self.u, self.v)


Rotation = Mapping[int, Sequence[tuple[int, int]]]


class OnePlaneGraph:
    """Multigraph plus declared crossing pairs and an optional rotation system.

    Instances are treated as immutable; every transformation returns a new one.
    """

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[Edge | tuple[int, int, int]],
        crossings: Iterable[Sequence[int]] = (),
        rotation: Rotation | None = None,
    ):
        self.vertices: tuple[int, ...] = tuple(sorted(set(vertices)))
        es = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        self.edges: tuple[Edge, ...] = tuple(sorted(es))
        # pair order is kept (it encodes dummy orientation); list order is canonical
        self.crossings: tuple[tuple[int, int], ...] = tuple(
            sorted((tuple(c) for c in crossings), key=lambda c: (min(c), max(c)))
        )
        self.rotation: dict[int, tuple[tuple[int, int], ...]] | None = (
            None
            if rotation is None
            else {int(v): tuple((int(e), int(i)) for e, i in rot) for v, rot in rotation.items()}
        )
        self._edge = {e.id: e for e in self.edges}
        self._partner: dict[int, int] = {}
        self._crossing_index: dict[int, int] = {}
        for i, (a, b) in enumerate(self.crossings):
            # duplicates are reported by validate(); first occurrence wins here
            self._partner.setdefault(a, b)
            self._partner.setdefault(b, a)
            self._crossing_index.setdefault(a, i)
            self._crossing_index.setdefault(b, i)
        self._adj = None
        self._incident = None

    # -- basic queries -------------------------------------------------
    def edge(self, eid: int) -> Edge:
        return self._edge[eid]

    def has_edge(self, eid: int) -> bool:
        return eid in self._edge

    def partner(self, eid: int) -> int | None:
        """The edge crossing ``eid``, or None when ``eid`` is uncrossed."""
        return self._partner.get(eid)

    def crossing_of(self, eid: int) -> int | None:
        return self._crossing_index.get(eid)

    def is_crossed(self, eid: int) -> bool:
        return eid in self._partner

    @property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        """Simple adjacency (parallel edges collapsed); what the game sees."""
        if self._adj is None:
            self._adj = simple_adjacency(self.vertices, (e.ends for e in self.edges))
        return self._adj

    def incident(self, v: int) -> tuple[int, ...]:
        if self._incident is None:
            inc: dict[int, list[int]] = {x: [] for x in self.vertices}
            for e in self.edges:
                inc.setdefault(e.u, []).append(e.id)
                inc.setdefault(e.v, []).append(e.id)
            self._incident = {x: tuple(sorted(ids)) for x, ids in inc.items()}
        return self._incident.get(v, ())

    def edges_between(self, a: int, b: int) -> list[int]:
        return [eid for eid in self.incident(a) if self._edge[eid].other(a) == b]

    def crossing_endpoints(self, i: int) -> tuple[int, int, int, int]:
        """``(u, w, v, x)``: cyclic order around the crossing point."""
        a, b = self.crossings[i]
        ea, eb = self._edge[a], self._edge[b]
        return (ea.u, eb.u, ea.v, eb.v)

    def consecutive_pairs(self, i: int) -> list[tuple[int, int]]:
        u, w, v, x = self.crossing_endpoints(i)
        return [(u, w), (w, v), (v, x), (x, u)]

    def is_connected(self) -> bool:
        return len(components(self.adjacency, self.vertices)) <= 1

    @property
    def max_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1)

    # -- derived graphs ------------------------------------------------
    def edge_subgraph(self, edge_ids: Iterable[int], extra_vertices: Iterable[int] = ()) -> "OnePlaneGraph":
        keep = set(edge_ids)
        es = [e for e in self.edges if e.id in keep]
        vs = set(extra_vertices)
        for e in es:
            vs.update(e.ends)
        cr = [c for c in self.crossings if c[0] in keep and c[1] in keep]
        return OnePlaneGraph(vs, es, cr)

    def without_edges(self, edge_ids: Iterable[int]) -> "OnePlaneGraph":
        drop = set(edge_ids)
        es = [e for e in self.edges if e.id not in drop]
        cr = [c for c in self.crossings if c[0] not in drop and c[1] not in drop]
        rot = None
        if self.rotation is not None:
            rot = {v: [r for r in rs if r[0] not in drop] for v, rs in self.rotation.items()}
        return OnePlaneGraph(self.vertices, es, cr, rot)

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        d = {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "u": e.u, "v": e.v} for e in self.edges],
            "crossings": [list(c) for c in self.crossings],
        }
        if self.rotation is not None:
            d["rotation"] = {
                str(v): [["e", e, i] for e, i in self.rotation[v]] for v in sorted(self.rotation)
            }
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "OnePlaneGraph":
        try:
            rot = d.get("rotation")
            if rot is not None:
                rot = {int(v): [(int(t[1]), int(t[2])) for t in ends] for v, ends in rot.items()}
            return cls(
                [int(v) for v in d["vertices"]],
                [Edge(int(e["id"]), int(e["u"]), int(e["v"])) for e in d["edges"]],
                [tuple(int(x) for x in c) for c in d.get("crossings", [])],
                rot,
            )
        except (KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
            if isinstance(exc, InvalidGraph):
                raise
            raise InvalidGraph(f"malformed graph document ({type(exc).__name__}: {exc})") from None

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()

    def __eq__(self, other) -> bool:
        return isinstance(other, OnePlaneGraph) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(self.dumps())

    def __deepcopy__(self, memo):
        return self

    def __repr__(self) -> str:
        return (
            f"OnePlaneGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
            f"crossings={len(self.crossings)}, rotation={self.rotation is not None})"
        )


def load_graph(path: str | Path) -> OnePlaneGraph:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidGraph(f"{path}: not valid JSON ({exc})") from None
    return OnePlaneGraph.from_dict(doc)


def save_graph(g: OnePlaneGraph, path: str | Path) -> None:
    Path(path).write_text(g.dumps(), encoding="utf-8")


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    ids: tuple = ()


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    def __bool__(self) -> bool:  # truthy when something is wrong
        return bool(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def add(self, code: str, message: str, *ids) -> None:
        self.violations.append(Violation(code, message, tuple(ids)))


def validate(g: OnePlaneGraph) -> ValidationReport:
    """Collect every violated structural invariant; an empty report means valid."""
    rep = ValidationReport()
    vset = set(g.vertices)
    seen_ids: set[int] = set()
    for e in g.edges:
        if e.id in seen_ids:
            rep.add("duplicate-edge-id", f"edge id {e.id} used twice", e.id)
        seen_ids.add(e.id)
        for x in e.ends:
            if x not in vset:
                rep.add("unknown-vertex", f"edge {e.id} uses unknown vertex {x}", e.id, x)
        if e.u == e.v:
            rep.add("self-loop", f"edge {e.id} is a self-loop at {e.u}", e.id)

    times_crossed: dict[int, int] = {}
    for a, b in g.crossings:
        for x in (a, b):
            times_crossed[x] = times_crossed.get(x, 0) + 1
        if not (g.has_edge(a) and g.has_edge(b)):
            rep.add("unknown-edge", f"crossing ({a},{b}) names an unknown edge", a, b)
            continue
        if a == b:
            rep.add("self-crossing", f"edge {a} crosses itself", a)
            continue
        shared = sorted(set(g.edge(a).ends) & set(g.edge(b).ends))
        for x in shared:
            rep.add("shared-endpoint", f"crossing edges share endpoint {x}", a, b, x)
    for eid in sorted(times_crossed):
        if times_crossed[eid] > 1:
            rep.add("edge-crossed-twice", f"edge {eid} crossed twice", eid)

    if g.rotation is not None and not rep:
        _validate_rotation(g, rep)
    return rep


def _validate_rotation(g: OnePlaneGraph, rep: ValidationReport) -> None:
    for v in g.vertices:
        expected = sorted((eid, 0 if g.edge(eid).u == v else 1) for eid in g.incident(v))
        got = sorted(g.rotation.get(v, ()))
        if expected != got:
            rep.add("rotation-mismatch", f"rotation at {v} does not list its edge ends", v)
    if not rep and not euler_ok(planarize(g, check=False)):
        rep.add("euler", "face tracing of the planarization violates Euler's formula")


# ---------------------------------------------------------------------------
# planarization


class Planarization:
    """G^x: one degree-4 dummy per crossing, crossed edges split in two halves.

    Dummy ids start at ``max(vertex id) + 1``.  Uncrossed edges keep their id
    in G^x; half-edges get fresh ids above the largest edge id of G.
    """

    def __init__(self, g: OnePlaneGraph):
        self.base = g
        first_dummy = (max(g.vertices) + 1) if g.vertices else 0
        self.dummies: tuple[int, ...] = tuple(first_dummy + i for i in range(len(g.crossings)))
        self.dummy_of_crossing = dict(enumerate(self.dummies))
        self.crossing_of_dummy = {d: i for i, d in self.dummy_of_crossing.items()}
        self.vertices: tuple[int, ...] = g.vertices + self.dummies
        self.g_vertices = frozenset(g.vertices)

        next_id = g.max_edge_id + 1
        self.xedges: dict[int, tuple[int, int, int]] = {}  # xid -> (a, b, base edge id)
        self.image_vertices: dict[int, tuple[int, ...]] = {}
        self.image_edges: dict[int, tuple[int, ...]] = {}
        self.dummy_of_edge: dict[int, int] = {}
        for e in g.edges:
            ci = g.crossing_of(e.id)
            if ci is None:
                self.xedges[e.id] = (e.u, e.v, e.id)
                self.image_vertices[e.id] = (e.u, e.v)
                self.image_edges[e.id] = (e.id,)
                continue
            d = self.dummy_of_crossing[ci]
            self.dummy_of_edge[e.id] = d
            h1, h2 = next_id, next_id + 1
            next_id += 2
            self.xedges[h1] = (e.u, d, e.id)
            self.xedges[h2] = (d, e.v, e.id)
            self.image_vertices[e.id] = (e.u, d, e.v)
            self.image_edges[e.id] = (h1, h2)

        nbrs: dict[int, list[tuple[int, int]]] = {x: [] for x in self.vertices}
        for xid, (a, b, _) in self.xedges.items():
            nbrs[a].append((b, xid))
            nbrs[b].append((a, xid))
        self.incident: dict[int, tuple[tuple[int, int], ...]] = {
            x: tuple(sorted(ns)) for x, ns in nbrs.items()
        }
        self.adjacency: dict[int, tuple[int, ...]] = {
            x: tuple(sorted({y for y, _ in ns})) for x, ns in nbrs.items()
        }
        self.rotation = self._build_rotation() if g.rotation is not None else None

    def __deepcopy__(self, memo):
        return self

    def is_dummy(self, x: int) -> bool:
        return x in self.crossing_of_dummy

    def half_edge(self, eid: int, end: int) -> int:
        """The piece of edge ``eid`` at its ``end``-th endpoint (0 -> u, 1 -> v)."""
        img = self.image_edges[eid]
        return img[0] if len(img) == 1 else img[end]

    def half_towards(self, d: int, x: int) -> int:
        """X-edge joining dummy ``d`` to endpoint ``x`` of its crossing."""
        for y, xid in self.incident[d]:
            if y == x:
                return xid
        raise KeyError((d, x))

    def crossing_edges_at(self, d: int) -> tuple[int, int]:
        return self.base.crossings[self.crossing_of_dummy[d]]

    def _build_rotation(self) -> dict[int, tuple[int, ...]]:
        g = self.base
        rot: dict[int, tuple[int, ...]] = {}
        for v in g.vertices:
            rot[v] = tuple(self.half_edge(eid, end) for eid, end in g.rotation.get(v, ()))
        for i, d in self.dummy_of_crossing.items():
            a, b = g.crossings[i]
            rot[d] = (
                self.half_edge(a, 0),
                self.half_edge(b, 0),
                self.half_edge(a, 1),
                self.half_edge(b, 1),
            )
        return rot

    def xpath_edges(self, xpath: Sequence[int]) -> list[int]:
        """X-edge ids along consecutive vertices of an X-path (lowest id on ties)."""
        out = []
        for a, b in zip(xpath, xpath[1:]):
            out.append(min(xid for y, xid in self.incident[a] if y == b))
        return out


def planarize(g: OnePlaneGraph, check: bool = True) -> Planarization:
    if check:
        rep = validate(g)
        if rep:
            raise InvalidGraph("; ".join(v.message for v in rep))
    return Planarization(g)


def trace_faces(p: Planarization) -> list[list[tuple[int, int]]]:
    """Faces of G^x as lists of darts ``(xedge, tail)`` under the rotation system."""
    if p.rotation is None:
        raise ValueError("graph has no rotation system")
    pos = {}
    for x, rot in p.rotation.items():
        for i, xid in enumerate(rot):
            pos[(x, xid)] = i
    seen: set[tuple[int, int]] = set()
    faces = []
    for xid in sorted(p.xedges):
        a, b, _ = p.xedges[xid]
        for tail in (a, b):
            if (xid, tail) in seen:
                continue
            face = []
            dart = (xid, tail)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                e, t = dart
                ea, eb, _ = p.xedges[e]
                head = eb if t == ea else ea
                rot = p.rotation[head]
                nxt = rot[(pos[(head, e)] + 1) % len(rot)]
                dart = (nxt, head)
            faces.append(face)
    return faces


def euler_ok(p: Planarization) -> bool:
    """V - E + F == 2 on every connected component of G^x."""
    faces = trace_faces(p)
    comp_of = {}
    for i, comp in enumerate(components(p.adjacency, p.vertices)):
        for x in comp:
            comp_of[x] = i
    n_comp = max(comp_of.values(), default=-1) + 1
    V = [0] * n_comp
    E = [0] * n_comp
    F = [0] * n_comp
    for x in p.vertices:
        V[comp_of[x]] += 1
    for a, _, _ in p.xedges.values():
        E[comp_of[a]] += 1
    for face in faces:
        F[comp_of[face[0][1]]] += 1
    for i in range(n_comp):
        if E[i] == 0:
            F[i] = 1
        if V[i] - E[i] + F[i] != 2:
            return False
    return True


# ---------------------------------------------------------------------------
# x-crossings and kites


def _consecutive_edges(g: OnePlaneGraph, i: int) -> list[int]:
    out = []
    for p, q in g.consecutive_pairs(i):
        out.extend(g.edges_between(p, q))
    return sorted(out)


def detect_x_crossings(g: OnePlaneGraph) -> list[int]:
    """Indices of crossings whose consecutive endpoints are pairwise non-adjacent."""
    return [i for i in range(len(g.crossings)) if not _consecutive_edges(g, i)]


@dataclass(frozen=True)
class KiteRecord:
    crossing: int
    edge: int
    ends: tuple[int, int]
    inserted: bool


def augment_kites(g: OnePlaneGraph, strict: bool = True) -> tuple[OnePlaneGraph, list[KiteRecord]]:
    """Give every crossing an uncrossed kite edge, adding parallel copies if needed.

    Existing uncrossed consecutive-endpoint edges are preferred (lowest id).
    Otherwise the lowest-id crossed consecutive edge is duplicated as an
    uncrossed parallel edge.  x-crossings have nothing to duplicate; they raise
    in strict mode and are skipped otherwise.
    """
    edges = list(g.edges)
    rotation = None if g.rotation is None else {v: list(r) for v, r in g.rotation.items()}
    records: list[KiteRecord] = []
    next_id = g.max_edge_id + 1
    for i in range(len(g.crossings)):
        cands = _consecutive_edges(g, i)
        if not cands:
            if strict:
                raise InvalidGraph(f"crossing {i} {g.crossings[i]} is an x-crossing")
            continue
        uncrossed = [eid for eid in cands if not g.is_crossed(eid)]
        if uncrossed:
            e = g.edge(uncrossed[0])
            records.append(KiteRecord(i, e.id, e.ends, False))
            continue
        src = g.edge(cands[0])
        kite = Edge(next_id, src.u, src.v)
        next_id += 1
        edges.append(kite)
        records.append(KiteRecord(i, kite.id, kite.ends, True))
        if rotation is not None:
            _place_kite(g, i, kite, rotation)
    out = OnePlaneGraph(g.vertices, edges, g.crossings, rotation)
    return out, records


def _place_kite(g: OnePlaneGraph, i: int, kite: Edge, rotation: dict[int, list[tuple[int, int]]]) -> None:
    # kite (p, q) with p's crossing half immediately before q's around the dummy:
    # insert right before p's crossing end at p and right after q's at q.
    a, b = g.crossings[i]
    ends = {  # endpoint -> (crossing edge, end index)
        g.edge(a).u: (a, 0),
        g.edge(b).u: (b, 0),
        g.edge(a).v: (a, 1),
        g.edge(b).v: (b, 1),
    }
    cyc = list(g.crossing_endpoints(i))
    x, y = kite.u, kite.v
    ix, iy = cyc.index(x), cyc.index(y)
    p, q = (x, y) if (ix + 1) % 4 == iy else (y, x)
    kite_end = {kite.u: (kite.id, 0), kite.v: (kite.id, 1)}
    rp = rotation[p]
    rp.insert(rp.index(ends[p]), kite_end[p])
    rq = rotation[q]
    rq.insert(rq.index(ends[q]) + 1, kite_end[q])


# ---------------------------------------------------------------------------
# sub-drawings


@dataclass(frozen=True)
class XSub:
    """A subgraph of G^x given by vertex and X-edge sets."""

    vertices: frozenset
    edges: frozenset


def restrict(p: Planarization, edge_ids: Iterable[int], vertices: Iterable[int] = ()) -> XSub:
    """H^x for the subgraph H of G with the given edges (and extra vertices)."""
    vs: set[int] = set(vertices)
    es: set[int] = set()
    for eid in edge_ids:
        if not p.base.has_edge(eid):
            raise KeyError(f"edge {eid} is not an edge of G")
        vs.update(p.image_vertices[eid])
        es.update(p.image_edges[eid])
    bad = [v for v in vs if v not in p.g_vertices and not p.is_dummy(v)]
    if bad:
        raise KeyError(f"vertices {sorted(bad)} are not in G")
    return XSub(frozenset(vs), frozenset(es))


def xwalk(p: Planarization, gpath: Sequence[int], gedges: Sequence[int]) -> list[int]:
    """The walk P^x in G^x of a G-path given by its vertices and edge ids."""
    if not gpath:
        return []
    walk = [gpath[0]]
    for x, eid in zip(gpath, gedges):
        img = p.image_vertices[eid]
        walk.extend(img[1:] if img[0] == x else img[-2::-1])
    return walk


# ---------------------------------------------------------------------------
# rotation from coordinates


def rotation_from_coordinates(
    vertices: Iterable[int],
    edges: Sequence[Edge],
    crossings: Sequence[tuple[int, int]],
    pos: Mapping[int, tuple[float, float]],
) -> tuple[dict[int, list[tuple[int, int]]], list[tuple[int, int]]]:
    """Counter-clockwise rotation system and orientation-ordered crossing pairs.

    Edges are straight segments between ``pos`` coordinates; parallel edges are
    not supported here.
    """
    by_id = {e.id: e for e in edges}
    rot: dict[int, list[tuple[float, tuple[int, int]]]] = {v: [] for v in vertices}
    for e in edges:
        for end, (x, y) in enumerate((e.ends, e.ends[::-1])):
            ang = math.atan2(pos[y][1] - pos[x][1], pos[y][0] - pos[x][0])
            rot[x].append((ang, (e.id, end)))
    rotation = {v: [t for _, t in sorted(r)] for v, r in rot.items()}

    oriented = []
    for a, b in crossings:
        ea, eb = by_id[a], by_id[b]
        cx, cy = _intersection(pos[ea.u], pos[ea.v], pos[eb.u], pos[eb.v])

        def ang(v):
            return math.atan2(pos[v][1] - cy, pos[v][0] - cx)

        around = sorted([ea.u, eb.u, ea.v, eb.v], key=ang)
        k = around.index(ea.u)
        oriented.append((a, b) if around[(k + 1) % 4] == eb.u else (b, a))
    return rotation, oriented


def _intersection(p1, p2, p3, p4) -> tuple[float, float]:
    d = (p1[0] - p2[0]) * (p3[1] - p4[1]) - (p1[1] - p2[1]) * (p3[0] - p4[0])
    if d == 0:
        raise ValueError("segments are parallel")
    t = ((p1[0] - p3[0]) * (p3[1] - p4[1]) - (p1[1] - p3[1]) * (p3[0] - p4[0])) / d
    return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
