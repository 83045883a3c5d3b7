"""Named instances and seeded generators.

All randomness goes through :class:`random.Random` (Mersenne Twister), seeded
with the recipe's integer seed, so a recipe always yields the same bytes.

Random 1-plane graphs are grown on the integer grid: a connected set of cells
becomes the vertex set, a random connected subset of unit grid edges is kept,
and each unit square whose four corners are present receives nothing, one
diagonal, or both diagonals as a crossing pair.  Crossings therefore only ever
sit inside quadrilateral faces, which keeps every endpoint set distinct and
leaves the square's sides available as kite edges.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable

from ._bfs import components, simple_adjacency
from .graph_model import Edge, OnePlaneGraph, rotation_from_coordinates

__all__ = [
    "named",
    "NAMES",
    "LABELS",
    "random_in_ghat",
    "random_with_x",
    "random_chordal",
    "random_tree",
    "cycle",
    "path_graph",
    "complete",
    "grid",
    "petersen",
    "from_recipe",
]


def _plain(n_or_vertices, pairs) -> OnePlaneGraph:
    vs = range(n_or_vertices) if isinstance(n_or_vertices, int) else n_or_vertices
    return OnePlaneGraph(vs, [Edge(i, u, v) for i, (u, v) in enumerate(pairs)])


def cycle(n: int) -> OnePlaneGraph:
    return _plain(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> OnePlaneGraph:
    return _plain(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> OnePlaneGraph:
    return _plain(n, itertools.combinations(range(n), 2))


def grid(rows: int, cols: int) -> OnePlaneGraph:
    def vid(r, c):
        return r * cols + c

    pairs = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                pairs.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                pairs.append((vid(r, c), vid(r + 1, c)))
    pos = {vid(r, c): (c, r) for r in range(rows) for c in range(cols)}
    edges = [Edge(i, u, v) for i, (u, v) in enumerate(pairs)]
    rot, _ = rotation_from_coordinates(pos, edges, [], pos)
    return OnePlaneGraph(pos, edges, [], rot)


def petersen() -> OnePlaneGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return _plain(10, outer + spokes + inner)


def _k4x(bare: bool = False) -> OnePlaneGraph:
    pos = {1: (0, 0), 2: (1, 0), 3: (1, 1), 4: (0, 1)}
    edges = [Edge(4, 1, 3), Edge(5, 2, 4)]
    if not bare:
        edges += [Edge(0, 1, 2), Edge(1, 2, 3), Edge(2, 3, 4), Edge(3, 4, 1)]
    rot, cr = rotation_from_coordinates(pos, edges, [(4, 5)], pos)
    return OnePlaneGraph(pos, edges, cr, rot)


FIG1_LABELS = dict(zip("abcdefgh", range(1, 9)))
FIG3_LABELS = dict(zip(["u", "v", "w", "a", "b", "c", "d", "e"], range(1, 9)))


def _labelled(labels: dict, spec: list[str], crossings: list[tuple[int, int]]) -> OnePlaneGraph:
    edges = [Edge(i, labels[s[0]], labels[s[1]]) for i, s in enumerate(spec)]
    return OnePlaneGraph(labels.values(), edges, crossings)


def _fig1() -> OnePlaneGraph:
    # ab x cd, ac x ed, eg x af, gh x fc; fg is the only uncrossed edge
    spec = ["ab", "cd", "ac", "ed", "eg", "af", "gh", "fc", "fg"]
    return _labelled(FIG1_LABELS, spec, [(0, 1), (2, 3), (4, 5), (6, 7)])


def _fig3() -> OnePlaneGraph:
    spec = ["uv", "vw", "uc", "ua", "ub", "vc", "wd", "we", "ab", "bc", "cd", "de"]
    return _labelled(FIG3_LABELS, spec, [(1, 2)])


def _fig2() -> OnePlaneGraph:
    from .graph_model import augment_kites

    return augment_kites(_fig1())[0]


_NAMED: dict[str, Callable[[], OnePlaneGraph]] = {
    "K4X": _k4x,
    "K4X_BARE": lambda: _k4x(bare=True),
    "FIG1": _fig1,
    "FIG2": _fig2,
    "FIG3": _fig3,
    "PETERSEN": petersen,
    "C4": lambda: cycle(4),
    "C5": lambda: cycle(5),
    "C6": lambda: cycle(6),
    "C7": lambda: cycle(7),
    "C8": lambda: cycle(8),
    "P5": lambda: path_graph(5),
    "K5": lambda: complete(5),
    "GRID3": lambda: grid(3, 3),
}
NAMES = tuple(_NAMED)
LABELS = {"FIG1": FIG1_LABELS, "FIG2": FIG1_LABELS, "FIG3": FIG3_LABELS}


def named(name: str) -> OnePlaneGraph:
    try:
        return _NAMED[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown named graph {name!r}; known: {', '.join(NAMES)}") from None


# ---------------------------------------------------------------------------
# random generators


def random_tree(n: int, seed: int) -> OnePlaneGraph:
    rng = random.Random(seed)
    return _plain(n, [(rng.randrange(i), i) for i in range(1, n)])


def random_chordal(n: int, seed: int) -> OnePlaneGraph:
    """Connected chordal graph: each new vertex joins a subset of a known clique."""
    rng = random.Random(seed)
    cliques = [[0]]
    pairs = []
    for v in range(1, n):
        base = rng.choice(cliques)
        k = rng.randint(1, len(base))
        attach = sorted(rng.sample(base, k))
        pairs.extend((x, v) for x in attach)
        cliques.append(attach + [v])
    return _plain(n, pairs)


def _grow_cells(n: int, rng: random.Random) -> list[tuple[int, int]]:
    cells = {(0, 0), (1, 0), (0, 1), (1, 1)}
    while len(cells) < n:
        frontier = sorted(
            {
                (x + dx, y + dy)
                for x, y in cells
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
            }
            - cells
        )
        # favour cells that close squares so the scaffold stays compact
        weights = [
            sum((x + dx, y + dy) in cells for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))) ** 2
            for x, y in frontier
        ]
        cells.add(rng.choices(frontier, weights)[0])
    return sorted(cells, key=lambda c: (c[1], c[0]))


def _grid_instance(n: int, rng: random.Random, x_count: int) -> OnePlaneGraph | None:
    cells = _grow_cells(n, rng)
    vid = {c: i for i, c in enumerate(cells)}
    cellset = set(cells)

    sides = set()
    for x, y in cells:
        for dx, dy in ((1, 0), (0, 1)):
            if (x + dx, y + dy) in cellset:
                sides.add(((x, y), (x + dx, y + dy)))
    sides = sorted(sides)
    kept = set(sides)
    order = list(sides)
    rng.shuffle(order)
    for s in order:
        if rng.random() < 0.3:
            kept.discard(s)
            adj = simple_adjacency(cells, kept)
            if len(components(adj, cells)) > 1:
                kept.add(s)

    squares = [
        (x, y)
        for x, y in cells
        if {(x + 1, y), (x, y + 1), (x + 1, y + 1)} <= cellset
    ]
    if not squares:
        return None

    def square_sides(sq):
        x, y = sq
        return [
            ((x, y), (x + 1, y)),
            ((x, y), (x, y + 1)),
            ((x + 1, y), (x + 1, y + 1)),
            ((x, y + 1), (x + 1, y + 1)),
        ]

    kind = {}
    for sq in squares:
        r = rng.random()
        kind[sq] = "none" if r < 0.35 else ("diag" if r < 0.65 else "cross")
    crossing_sq = [sq for sq in squares if kind[sq] == "cross"]
    need = max(1, x_count)
    if len(crossing_sq) < need:
        spare = [sq for sq in squares if kind[sq] != "cross"]
        if len(crossing_sq) + len(spare) < need:
            return None
        for sq in rng.sample(spare, need - len(crossing_sq)):
            kind[sq] = "cross"
        crossing_sq = [sq for sq in squares if kind[sq] == "cross"]

    x_squares = set(rng.sample(crossing_sq, x_count)) if x_count else set()
    removed = {s for sq in x_squares for s in square_sides(sq)}
    kept -= removed
    for sq in squares:
        if kind[sq] != "cross" or sq in x_squares:
            continue
        present = [s for s in square_sides(sq) if s in kept]
        if present:
            continue
        avail = [s for s in square_sides(sq) if s not in removed]
        if avail:
            kept.add(rng.choice(avail))
        else:
            kind[sq] = "diag"

    pairs: list[tuple[tuple[int, int], tuple[int, int]]] = sorted(kept)
    crossing_pairs = []
    for sq in squares:
        x, y = sq
        d1 = ((x, y), (x + 1, y + 1))
        d2 = ((x + 1, y), (x, y + 1))
        if kind[sq] == "diag":
            pairs.append(d1 if rng.random() < 0.5 else d2)
        elif kind[sq] == "cross":
            pairs.extend([d1, d2])
            crossing_pairs.append((d1, d2))

    keyed = sorted((min(vid[a], vid[b]), max(vid[a], vid[b]), (a, b)) for a, b in pairs)
    eid = {}
    edges = []
    for i, (u, v, key) in enumerate(keyed):
        eid[key] = i
        edges.append(Edge(i, u, v))
    crossings = [(eid[a], eid[b]) for a, b in crossing_pairs]
    pos = {vid[c]: c for c in cells}
    rot, crossings = rotation_from_coordinates(pos, edges, crossings, pos)
    return OnePlaneGraph(pos, edges, crossings, rot)


def random_in_ghat(n: int, seed: int) -> OnePlaneGraph:
    """Connected 1-plane graph without x-crossings, with a rotation system."""
    if n < 4:
        raise ValueError("random_in_ghat needs n >= 4")
    rng = random.Random(seed)
    for _ in range(1000):
        g = _grid_instance(n, rng, 0)
        if g is not None:
            return g
    raise RuntimeError("generator failed to place a crossing")  # pragma: no cover


def random_with_x(n: int, gamma: int, seed: int) -> OnePlaneGraph:
    """Like :func:`random_in_ghat` but with exactly ``gamma`` x-crossings.

    Outputs with ``n >= 6`` are connected; smaller ones may not be (``n=4``,
    ``gamma=1`` is the bare crossing).
    """
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    if n < 4:
        raise ValueError("random_with_x needs n >= 4")
    rng = random.Random(seed)
    for _ in range(500):
        g = _grid_instance(n, rng, gamma)
        if g is None:
            continue
        if n >= 6 and not g.is_connected():
            continue
        return g
    raise ValueError(f"cannot place {gamma} x-crossings on {n} vertices")


_RECIPES = {
    "ghat": lambda p: random_in_ghat(p["n"], p.get("seed", 0)),
    "xcross": lambda p: random_with_x(p["n"], p.get("gamma", 1), p.get("seed", 0)),
    "chordal": lambda p: random_chordal(p["n"], p.get("seed", 0)),
    "tree": lambda p: random_tree(p["n"], p.get("seed", 0)),
    "cycle": lambda p: cycle(p["n"]),
    "path": lambda p: path_graph(p["n"]),
    "complete": lambda p: complete(p["n"]),
    "grid": lambda p: grid(p.get("r", 3), p.get("c", p.get("r", 3))),
}


def from_recipe(spec: str) -> OnePlaneGraph:
    """Build a graph from ``kind:key=value:...``, e.g. ``ghat:n=20:seed=7`` or ``named:K4X``."""
    kind, *parts = spec.split(":")
    if kind == "named":
        if len(parts) != 1:
            raise ValueError(f"bad recipe {spec!r}")
        return named(parts[0])
    if kind not in _RECIPES:
        raise ValueError(f"unknown recipe kind {kind!r}")
    params = {}
    for part in parts:
        key, _, value = part.partition("=")
        params[key] = int(value)
    return _RECIPES[kind](params)
