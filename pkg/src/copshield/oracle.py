"""Exact k-cop game solver by retrograde analysis, cop numbers and dismantlability.

Positions are (sorted cop multiset, robber vertex, side to move).  Positions
won by the cops are found backwards from the captures; a robber-to-move
position is won once every robber move leads to a won position, which is
tracked with one counter per position.  Depths are distances to capture in
half-turns, so the extracted policies are "win fastest" for the cops and
"survive, else lose slowest" for the robber.
"""

from __future__ import annotations

import os
import pickle
import zlib
from array import array
from collections import deque
from itertools import combinations_with_replacement, product
from math import comb
from pathlib import Path

from .game import Arena, CopStrategy, GameState, RobberStrategy
from .graph_model import OnePlaneGraph

__all__ = [
    "DEFAULT_CAP",
    "OracleCapExceeded",
    "OracleSolution",
    "solve",
    "cop_win",
    "cop_number",
    "dismantlable",
    "OracleCops",
    "OracleRobber",
]

DEFAULT_CAP = 50_000_000
CACHE_VERSION = 1
UNKNOWN = -1


class OracleCapExceeded(RuntimeError):
    pass


def position_count(n: int, k: int) -> int:
    return comb(n + k - 1, k) * n * 2


class OracleSolution:
    """Value and depth tables for one graph and one cop count."""

    def __init__(self, graph: OnePlaneGraph, k: int, tables=None):
        self.graph = graph
        self.k = k
        self.vertices = graph.vertices
        self.n = n = len(self.vertices)
        self.vid = {v: i for i, v in enumerate(self.vertices)}
        adj = graph.adjacency
        self.closed = [
            tuple(sorted({i} | {self.vid[y] for y in adj[v]})) for i, v in enumerate(self.vertices)
        ]
        self.configs = list(combinations_with_replacement(range(n), k))
        self.cindex = {c: i for i, c in enumerate(self.configs)}
        self._succ: dict[int, tuple[int, ...]] = {}
        if tables is None:
            self.cop_depth, self.rob_depth = self._retrograde()
        else:
            self.cop_depth, self.rob_depth = tables
        self.placement = self._best_placement()

    def __deepcopy__(self, memo):
        return self

    # -- game graph ---------------------------------------------------------
    def successors(self, ci: int) -> tuple[int, ...]:
        """Cop configurations reachable in one cops' turn (the relation is symmetric)."""
        s = self._succ.get(ci)
        if s is None:
            opts = [self.closed[x] for x in self.configs[ci]]
            s = tuple(sorted({self.cindex[tuple(sorted(m))] for m in product(*opts)}))
            self._succ[ci] = s
        return s

    def _retrograde(self):
        n = self.n
        total = len(self.configs) * n
        cop_depth = array("i", [UNKNOWN]) * total  # cops to move
        rob_depth = array("i", [UNKNOWN]) * total  # robber to move
        counter = array("i", [0]) * total
        queue: deque[tuple[int, int]] = deque()  # (position, 0 = cops to move / 1 = robber)
        for ci, conf in enumerate(self.configs):
            occupied = set(conf)
            for r in range(n):
                pos = ci * n + r
                if r in occupied:
                    cop_depth[pos] = 0
                    rob_depth[pos] = 0
                    queue.append((pos, 0))
                    queue.append((pos, 1))
                else:
                    counter[pos] = len(self.closed[r])
        while queue:
            pos, side = queue.popleft()
            ci, r = divmod(pos, n)
            if side == 0:
                d = cop_depth[pos] + 1
                for r0 in self.closed[r]:
                    q = ci * n + r0
                    if rob_depth[q] != UNKNOWN:
                        continue
                    counter[q] -= 1
                    if counter[q] == 0:
                        rob_depth[q] = d
                        queue.append((q, 1))
            else:
                d = rob_depth[pos] + 1
                for c0 in self.successors(ci):
                    q = c0 * n + r
                    if cop_depth[q] == UNKNOWN:
                        cop_depth[q] = d
                        queue.append((q, 0))
        return cop_depth, rob_depth

    def _best_placement(self):
        n = self.n
        best = None
        for ci, conf in enumerate(self.configs):
            worst = 0
            for r in range(n):
                d = self.cop_depth[ci * n + r]
                if d == UNKNOWN:
                    worst = None
                    break
                worst = max(worst, d)
            if worst is not None and (best is None or worst < best[0]):
                best = (worst, ci)
        return None if best is None else best[1]

    # -- queries ------------------------------------------------------------
    @property
    def cop_wins(self) -> bool:
        return self.placement is not None

    @property
    def positions(self) -> int:
        return 2 * len(self.configs) * self.n

    def _conf(self, cops) -> int:
        return self.cindex[tuple(sorted(self.vid[c] for c in cops))]

    def cops_win_from(self, cops, robber, cops_to_move: bool = True) -> bool:
        pos = self._conf(cops) * self.n + self.vid[robber]
        table = self.cop_depth if cops_to_move else self.rob_depth
        return table[pos] != UNKNOWN

    def cop_place(self) -> list[int]:
        ci = self.placement if self.placement is not None else 0
        return [self.vertices[i] for i in self.configs[ci]]

    def cop_move(self, cops, robber) -> list[int]:
        """Target multiset for the cops (fastest win; stay put when losing)."""
        n = self.n
        ci = self._conf(cops)
        r = self.vid[robber]
        best = None
        for c0 in self.successors(ci):
            d = self.rob_depth[c0 * n + r]
            if d != UNKNOWN and (best is None or d < best[0]):
                best = (d, c0)
        c0 = ci if best is None else best[1]
        return [self.vertices[i] for i in self.configs[c0]]

    def robber_place(self, cops) -> int:
        ci = self._conf(cops)
        return self.vertices[self._robber_choice(ci, range(self.n), self.cop_depth)]

    def robber_move(self, cops, robber) -> int:
        ci = self._conf(cops)
        r = self.vid[robber]
        return self.vertices[self._robber_choice(ci, self.closed[r], self.cop_depth)]

    def _robber_choice(self, ci, options, table) -> int:
        n = self.n
        safe = [x for x in options if table[ci * n + x] == UNKNOWN]
        if safe:
            return min(safe)
        return min(options, key=lambda x: (-table[ci * n + x], x))

    def to_bytes(self) -> bytes:
        payload = pickle.dumps(
            (self.vertices, self.k, self.cop_depth.tobytes(), self.rob_depth.tobytes()),
            protocol=4,
        )
        return bytes([CACHE_VERSION]) + zlib.compress(payload)

    @classmethod
    def from_bytes(cls, graph: OnePlaneGraph, data: bytes) -> "OracleSolution":
        if not data or data[0] != CACHE_VERSION:
            raise ValueError("unsupported policy cache version")
        vertices, k, cd, rd = pickle.loads(zlib.decompress(data[1:]))
        if tuple(vertices) != graph.vertices:
            raise ValueError("policy cache does not match the graph")
        cop_depth, rob_depth = array("i"), array("i")
        cop_depth.frombytes(cd)
        rob_depth.frombytes(rd)
        return cls(graph, k, (cop_depth, rob_depth))


def _cache_path(graph: OnePlaneGraph, k: int, cache_dir) -> Path | None:
    d = cache_dir if cache_dir is not None else os.environ.get("COPSHIELD_CACHE")
    if not d:
        return None
    return Path(d) / f"{graph.digest()[:32]}-k{k}.bin"


def solve(
    graph: OnePlaneGraph, k: int, cap: int = DEFAULT_CAP, cache_dir=None
) -> OracleSolution:
    if k < 1:
        raise ValueError("k must be at least 1")
    if not graph.vertices:
        raise ValueError("empty graph")
    need = position_count(len(graph.vertices), k)
    if need > cap:
        raise OracleCapExceeded(f"{need} positions exceed the cap of {cap}")
    path = _cache_path(graph, k, cache_dir)
    if path is not None and path.exists():
        try:
            return OracleSolution.from_bytes(graph, path.read_bytes())
        except (ValueError, OSError, pickle.UnpicklingError, zlib.error):
            pass
    sol = OracleSolution(graph, k)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(sol.to_bytes())
    return sol


def cop_win(graph: OnePlaneGraph, k: int, cap: int = DEFAULT_CAP, cache_dir=None) -> bool:
    return solve(graph, k, cap, cache_dir).cop_wins


def cop_number(
    graph: OnePlaneGraph, k_max: int, cap: int = DEFAULT_CAP, cache_dir=None
) -> int | None:
    """Least k <= k_max with a cop win, or None when more cops are needed."""
    for k in range(1, k_max + 1):
        if cop_win(graph, k, cap, cache_dir):
            return k
    return None


def dismantlable(graph: OnePlaneGraph) -> tuple[bool, list[int]]:
    """Repeatedly delete the lowest-id dominated vertex; returns (emptied, order)."""
    adj = {v: set(ns) for v, ns in graph.adjacency.items()}
    order: list[int] = []
    while len(adj) > 1:
        for u in sorted(adj):
            nu = adj[u] | {u}
            if any(nu <= adj[v] | {v} for v in adj[u]):
                break
        else:
            return False, order
        for y in adj.pop(u):
            adj[y].discard(u)
        order.append(u)
    order.extend(adj)
    return True, order


def _assign(cops, targets, adj) -> list[int]:
    """Match each cop to a target it can reach in one move (backtracking)."""
    targets = list(targets)
    out = [None] * len(cops)
    used = [False] * len(targets)

    def go(i):
        if i == len(cops):
            return True
        for j, t in enumerate(targets):
            if not used[j] and (t == cops[i] or t in adj[cops[i]]):
                used[j] = True
                out[i] = t
                if go(i + 1):
                    return True
                used[j] = False
        return False

    if not go(0):
        raise RuntimeError("oracle target is not reachable in one move")
    return out


class OracleCops(CopStrategy):
    name = "oracle"

    def __init__(self, solution: OracleSolution):
        self.sol = solution

    def place(self, arena, k):
        if k != self.sol.k:
            raise ValueError(f"oracle policy was solved for {self.sol.k} cops, not {k}")
        return self.sol.cop_place()

    def move(self, arena, state: GameState):
        return _assign(state.cops, self.sol.cop_move(state.cops, state.robber), arena.adj)


class OracleRobber(RobberStrategy):
    name = "oracle"

    def __init__(self, solution: OracleSolution):
        self.sol = solution

    def place(self, arena, state):
        return self.sol.robber_place(state.cops)

    def move(self, arena, state):
        return self.sol.robber_move(state.cops, state.robber)
