"""Property suites over a graph corpus, and an exhaustive adversary for the 21-cop strategy.

Every suite returns a :class:`SuiteResult`; ``run_suites`` collects them into
a JSON-friendly report.  The adversary explores *every* robber placement and
move against the deterministic cop strategy, so a strategy that passes it
beats any robber, including an optimal one.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ._bfs import bfs_distances
from .corpus import NAMES, named, random_in_ghat
from .game import (
    Arena,
    GameState,
    GreedyRobber,
    IllegalMove,
    RandomRobber,
    StallRobber,
    run,
)
from .graph_model import (
    OnePlaneGraph,
    augment_kites,
    detect_x_crossings,
    planarize,
    xwalk,
)
from .path_guard import GuardedPath, SquadGuard
from .strategy import SQUAD_SIZE, SQUADS, InvariantViolation, Strategy21, shortcut
from .territory import check_no_x, extend_with_boundary, robber_territory

__all__ = [
    "SUITES",
    "SuiteResult",
    "AdversaryResult",
    "default_corpus",
    "remove_kites",
    "round_budget",
    "standard_robbers",
    "shortest_paths_from",
    "squad_guard_counterexamples",
    "adversary_search",
    "run_suites",
]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def to_dict(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "checked": self.checked, "failures": self.failures}


def round_budget(g: OnePlaneGraph) -> int:
    nx = len(planarize(g).vertices)
    return 50 * nx * nx


def standard_robbers():
    return [GreedyRobber(), RandomRobber(0), RandomRobber(1), RandomRobber(2), StallRobber()]


def default_corpus(seeds: int = 40) -> list[tuple[str, OnePlaneGraph]]:
    """Connected named graphs without x-crossings plus generated ones."""
    out = []
    for name in NAMES:
        g = named(name)
        if g.is_connected() and not detect_x_crossings(g):
            out.append((name, g))
    for seed in range(seeds):
        n = 6 + seed % 12
        out.append((f"ghat:n={n}:seed={seed}", random_in_ghat(n, seed)))
    return out


def remove_kites(g: OnePlaneGraph) -> OnePlaneGraph:
    """Mutation: drop every edge joining consecutive endpoints of a crossing."""
    drop = set()
    for i in range(len(g.crossings)):
        for a, b in g.consecutive_pairs(i):
            drop.update(g.edges_between(a, b))
    return g.without_edges(drop)


def shortest_paths_from(g: OnePlaneGraph, root: int, limit: int = 2000):
    """All shortest G-paths from ``root`` as (vertices, edge ids), parallel edges included."""
    adj = g.adjacency
    dist = bfs_distances(adj, root)
    out = []

    def extend(vs, es):
        if len(out) >= limit:
            return
        out.append((tuple(vs), tuple(es)))
        x = vs[-1]
        for y in adj[x]:
            if dist.get(y) == dist[x] + 1:
                for eid in g.edges_between(x, y):
                    extend(vs + [y], es + [eid])

    extend([root], [])
    return out


# ---------------------------------------------------------------------------
# shadow guarding of a single path


def _squad_for(gp: GuardedPath) -> SquadGuard:
    return SquadGuard(gp, 0, (1, 2, 3, 4))


def squad_guard_counterexamples(g: OnePlaneGraph, root: int | None = None) -> tuple[int, list[str]]:
    """Exhaustive 2-ply check of a settled five-cop squad on every shortest path from ``root``.

    For each robber vertex not already next to a cop the squad sits at its
    settled position; then every robber move that lands on a G-vertex of Q or
    crosses a dummy of Q between opposite endpoints must end next to a cop.
    Q is the shortcut of P^x with x-crossing dummies left out.  Returns the
    number of (path, robber vertex) pairs examined and the counterexamples.
    """
    p = planarize(g)
    adj = g.adjacency
    dist = {v: bfs_distances(adj, v) for v in g.vertices}
    root = g.vertices[0] if root is None else root
    xs = {i for i in detect_x_crossings(g)}
    bad: list[str] = []
    checked = 0
    for vs, es in shortest_paths_from(g, root):
        gp = GuardedPath(g, vs, es)
        sq = _squad_for(gp)
        q = shortcut(xwalk(p, vs, es))
        q_gv = {x for x in q if not p.is_dummy(x)}
        q_d = {x for x in q if p.is_dummy(x) and p.crossing_of_dummy[x] not in xs}
        cross_moves = {}  # (from, to) -> dummies crossed
        for d in q_d:
            for eid in p.crossing_edges_at(d):
                e = g.edge(eid)
                cross_moves.setdefault((e.u, e.v), set()).add(d)
                cross_moves.setdefault((e.v, e.u), set()).add(d)
        for r in g.vertices:
            t = sq.targets(r)
            if t is None:
                continue  # robber cannot reach the path at all
            checked += 1
            cops = set(t.values())
            if any(dist[c].get(r, 99) <= 1 for c in cops):
                continue
            for r2 in (r,) + adj[r]:
                need = r2 in q_gv or (r, r2) in cross_moves
                if not need:
                    continue
                if not any(dist[c].get(r2, 99) <= 1 for c in cops):
                    bad.append(f"path {list(vs)}: robber {r}->{r2} escapes cops {sorted(cops)}")
    return checked, bad


# ---------------------------------------------------------------------------
# exhaustive adversary


@dataclass
class AdversaryResult:
    ok: bool
    states: int
    worst_rounds: int
    counterexample: list[tuple[tuple[int, ...], int]] | None = None
    reason: str = ""


class _Escape(Exception):
    def __init__(self, reason, line):
        super().__init__(reason)
        self.reason = reason
        self.line = line


def adversary_search(
    g: OnePlaneGraph,
    make_strategy: Callable[[], Strategy21] | None = None,
    cop_count: int | None = None,
    budget: int | None = None,
    max_states: int = 2_000_000,
) -> AdversaryResult:
    """Try every robber strategy against a deterministic cop strategy.

    States are memoized on (strategy state, cop positions, robber vertex).
    Revisiting a state on the current line means the robber can loop forever.
    Returns the worst-case number of rounds until capture when all lines end
    in capture.
    """
    make_strategy = make_strategy or (lambda: Strategy21(g))
    arena = Arena(g)
    strat = make_strategy()
    k = cop_count or strat.cop_total
    budget = budget or round_budget(g)
    cops = tuple(strat.place(arena, k))
    strat.drain_events()
    memo: dict = {}
    onstack: set = set()
    line: list = []

    def explore(s, cops, robber, rnd) -> int:
        key = (s.state_key(), cops, robber)
        if key in memo:
            return memo[key]
        if key in onstack:
            raise _Escape("robber can repeat a position forever", list(line))
        if rnd > budget:
            raise _Escape("round budget exceeded", list(line))
        if len(memo) >= max_states:
            raise _Escape("state limit reached", list(line))
        onstack.add(key)
        line.append((cops, robber))
        state = GameState(k, cops, robber, rnd, "cops")
        s2 = s.clone()
        try:
            new = tuple(s2.move(arena, state))
        except InvariantViolation as exc:
            raise _Escape(f"invariant violation: {exc}", list(line))
        for old, nxt in zip(cops, new):
            if nxt != old and nxt not in arena.adj[old]:
                raise IllegalMove(f"strategy moved {old} -> {nxt}")
        s2.drain_events()
        if robber in new:
            worst = 1
        else:
            worst = 1
            for r2 in arena.closed(robber):
                if r2 in new:
                    continue
                worst = max(worst, 1 + explore(s2.clone(), new, r2, rnd + 1))
        line.pop()
        onstack.discard(key)
        memo[key] = worst
        return worst

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20 * budget + 1000))
    try:
        worst = 0
        for r in arena.vertices:
            if r in cops:
                continue
            worst = max(worst, explore(strat.clone(), cops, r, 2))
        return AdversaryResult(True, len(memo), worst)
    except _Escape as esc:
        return AdversaryResult(False, len(memo), 0, esc.line, esc.reason)
    finally:
        sys.setrecursionlimit(old_limit)


# ---------------------------------------------------------------------------
# suites


def _suite_obs22(corpus, mutate) -> SuiteResult:
    """Robber territories of guarded shortest paths contain no x-crossing."""
    res = SuiteResult("obs22")
    for name, g in corpus:
        h = augment_kites(g, strict=False)[0]
        if mutate:
            h = remove_kites(h)
        p = planarize(h)
        for vs, es in shortest_paths_from(h, h.vertices[0], limit=200):
            q = shortcut(xwalk(p, vs, es))
            for r in h.vertices:
                if r in q:
                    continue
                res.checked += 1
                view = robber_territory(p, q, r)
                if not check_no_x(p, view):
                    res.fail(f"{name}: path {list(vs)}, robber {r}")
    return res


def _suite_obs23(corpus, mutate) -> SuiteResult:
    """Adding one boundary vertex to a robber territory creates no x-crossing."""
    res = SuiteResult("obs23")
    for name, g in corpus:
        h = augment_kites(g, strict=False)[0]
        if mutate:
            h = remove_kites(h)
        p = planarize(h)
        for vs, es in shortest_paths_from(h, h.vertices[0], limit=100):
            q = shortcut(xwalk(p, vs, es))
            for r in h.vertices:
                if r in q:
                    continue
                view = robber_territory(p, q, r)
                for v in view.adjacent():
                    res.checked += 1
                    if detect_x_crossings(extend_with_boundary(p, view, v)):
                        res.fail(f"{name}: path {list(vs)}, robber {r}, boundary of {v}")
    return res


def _suite_obs32(corpus, mutate) -> SuiteResult:
    """The settled special cop is never farther from a path vertex than the robber."""
    res = SuiteResult("obs32")
    for name, g in corpus:
        for vs, es in shortest_paths_from(g, g.vertices[0], limit=200):
            gp = GuardedPath(g, vs, es)
            for r in g.vertices:
                s = min(gp.dist[r], gp.m)
                d = gp.distances_from(r)
                for j, v in enumerate(vs):
                    res.checked += 1
                    if abs(s - j) > d[v]:
                        res.fail(f"{name}: path {list(vs)}, robber {r}, vertex {v}")
    return res


def _suite_lemma31(corpus, mutate) -> SuiteResult:
    res = SuiteResult("lemma31")
    for name, g in corpus:
        h = augment_kites(g, strict=False)[0]
        if mutate:
            h = remove_kites(h)
        checked, bad = squad_guard_counterexamples(h)
        res.checked += checked
        res.failures.extend(f"{name}: {b}" for b in bad)
    return res


def _suite_strategy(corpus, mutate) -> SuiteResult:
    """Capture by the 21-cop strategy with all invariants asserted in-engine."""
    res = SuiteResult("strategy")
    for name, g in corpus:
        budget = round_budget(g)
        for robber in standard_robbers():
            res.checked += 1
            try:
                t = run(Arena(g), Strategy21(g), robber, SQUADS * SQUAD_SIZE, budget)
            except InvariantViolation as exc:
                res.fail(f"{name} vs {robber.name}: {exc}")
                continue
            if t.outcome != "captured":
                res.fail(f"{name} vs {robber.name}: no capture in {budget} rounds")
    return res


def _suite_adversary(corpus, mutate) -> SuiteResult:
    res = SuiteResult("adversary")
    for name, g in corpus:
        if len(g.vertices) > 10:
            continue
        res.checked += 1
        out = adversary_search(g)
        if not out.ok:
            res.fail(f"{name}: {out.reason}")
    return res


SUITES: dict[str, Callable[[list, bool], SuiteResult]] = {
    "obs22": _suite_obs22,
    "obs23": _suite_obs23,
    "obs32": _suite_obs32,
    "lemma31": _suite_lemma31,
    "strategy": _suite_strategy,
    "adversary": _suite_adversary,
}


def run_suites(
    names: Iterable[str] | None = None,
    corpus: Sequence[tuple[str, OnePlaneGraph]] | None = None,
    mutate: str | None = None,
) -> list[SuiteResult]:
    if mutate not in (None, "remove-kites"):
        raise ValueError(f"unknown mutation {mutate!r}")
    corpus = list(corpus) if corpus is not None else default_corpus()
    names = list(names) if names else list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites {unknown}")
    return [SUITES[n](corpus, mutate is not None) for n in names]
