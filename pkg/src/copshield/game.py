"""Cops and Robbers game engine, built-in strategies and JSON-Lines traces.

Rounds follow the usual order: in round 1 the cops place themselves and then
the robber does; in every later round all cops move (as one batch) and then
the robber moves.  A move is either staying put or stepping to a neighbour.
Capture is checked after every half-turn.
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence, TextIO

from ._bfs import bfs_distances
from .graph_model import OnePlaneGraph

__all__ = [
    "EXIT_CAPTURE",
    "EXIT_INVALID",
    "EXIT_BUDGET",
    "EXIT_INVARIANT",
    "EXIT_CAP",
    "Arena",
    "GameState",
    "IllegalMove",
    "CopStrategy",
    "RobberStrategy",
    "GreedyCops",
    "RandomRobber",
    "GreedyRobber",
    "StallRobber",
    "InteractiveRobber",
    "Trace",
    "new_game",
    "step",
    "run",
]

EXIT_CAPTURE = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4
EXIT_CAP = 5


class IllegalMove(RuntimeError):
    pass


class Arena:
    """The graph the game is played on, with cached distances."""

    def __init__(self, graph: OnePlaneGraph):
        if not graph.vertices:
            raise ValueError("cannot play on an empty graph")
        self.graph = graph
        self.adj = graph.adjacency
        self.vertices = graph.vertices
        self._dist: dict[int, dict[int, int]] | None = None

    def __deepcopy__(self, memo):
        return self

    @property
    def dist(self) -> dict[int, dict[int, int]]:
        if self._dist is None:
            self._dist = {v: bfs_distances(self.adj, v) for v in self.vertices}
        return self._dist

    def closed(self, v: int) -> tuple[int, ...]:
        return tuple(sorted((v,) + self.adj[v]))

    def min_cop_distance(self, v: int, cops: Sequence[int]) -> float:
        dv = self.dist[v]
        return min((dv.get(c, float("inf")) for c in cops), default=float("inf"))


@dataclass(frozen=True)
class GameState:
    cop_count: int
    cops: tuple[int, ...] = ()  # position of cop i; empty before placement
    robber: int | None = None
    round: int = 1
    phase: str = "cops"
    captured: bool = False


class CopStrategy:
    name = "cops"

    def place(self, arena: Arena, k: int) -> list[int]:
        raise NotImplementedError

    def move(self, arena: Arena, state: GameState) -> list[int]:
        raise NotImplementedError

    def drain_events(self) -> list[dict]:
        return []


class RobberStrategy:
    name = "robber"

    def place(self, arena: Arena, state: GameState) -> int:
        raise NotImplementedError

    def move(self, arena: Arena, state: GameState) -> int:
        raise NotImplementedError


def new_game(arena: Arena, cop_count: int) -> GameState:
    if cop_count < 1:
        raise ValueError("at least one cop is required")
    return GameState(cop_count=cop_count)


def step(
    arena: Arena, state: GameState, cops: CopStrategy, robber: RobberStrategy
) -> tuple[GameState, list[dict]]:
    """Apply one half-turn; returns the new state and the cop strategy's events."""
    if state.captured:
        raise ValueError("game is already over")
    if state.phase == "cops":
        if not state.cops:
            pos = tuple(cops.place(arena, state.cop_count))
            if len(pos) != state.cop_count or any(v not in arena.adj for v in pos):
                raise IllegalMove(f"{cops.name}: invalid placement {pos}")
        else:
            pos = tuple(cops.move(arena, state))
            if len(pos) != state.cop_count:
                raise IllegalMove(f"{cops.name}: returned {len(pos)} moves")
            for old, new in zip(state.cops, pos):
                if new != old and new not in arena.adj[old]:
                    raise IllegalMove(f"{cops.name}: cop cannot move {old} -> {new}")
        caught = state.robber is not None and state.robber in pos
        return replace(state, cops=pos, phase="robber", captured=caught), cops.drain_events()

    if state.robber is None:
        r = robber.place(arena, state)
        if r not in arena.adj:
            raise IllegalMove(f"{robber.name}: invalid placement {r}")
    else:
        r = robber.move(arena, state)
        if r != state.robber and r not in arena.adj[state.robber]:
            raise IllegalMove(f"{robber.name}: robber cannot move {state.robber} -> {r}")
    return (
        replace(state, robber=r, phase="cops", round=state.round + 1, captured=r in state.cops),
        [],
    )


# ---------------------------------------------------------------------------
# traces


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class Trace:
    header: dict
    records: list[dict] = field(default_factory=list)
    outcome: str = "running"
    capture_round: int | None = None
    rounds: int = 0

    def events(self, kind: str | None = None) -> list[dict]:
        out = []
        for rec in self.records:
            for ev in rec.get("events", ()):
                if kind is None or ev.get("type") == kind:
                    out.append(ev)
        return out

    def dumps(self) -> str:
        lines = [_dumps({"type": "header", **self.header})]
        lines.extend(_dumps({"type": "turn", **rec}) for rec in self.records)
        lines.append(
            _dumps(
                {
                    "type": "result",
                    "outcome": self.outcome,
                    "capture_round": self.capture_round,
                    "rounds": self.rounds,
                }
            )
        )
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())


def run(
    arena: Arena,
    cops: CopStrategy,
    robber: RobberStrategy,
    cop_count: int,
    budget: int,
    header: dict | None = None,
    on_record: Callable[[dict], None] | None = None,
) -> Trace:
    """Play until capture or until ``budget`` rounds have been used."""
    if budget <= 0:
        raise ValueError("round budget must be positive")
    hdr = {
        "graph": arena.graph.digest(),
        "cops": cops.name,
        "robber": robber.name,
        "cop_count": cop_count,
        "budget": budget,
    }
    hdr.update(header or {})
    trace = Trace(hdr)
    state = new_game(arena, cop_count)
    while not state.captured and state.round <= budget:
        rnd, phase = state.round, state.phase
        state, events = step(arena, state, cops, robber)
        rec = {
            "round": rnd,
            "phase": phase,
            "cops": list(state.cops),
            "robber": state.robber,
            "events": events,
        }
        if state.captured:
            rec["events"] = events + [{"type": "capture", "vertex": state.robber}]
        trace.records.append(rec)
        if on_record is not None:
            on_record(rec)
    trace.rounds = min(state.round, budget)
    if state.captured:
        trace.outcome = "captured"
        trace.capture_round = trace.records[-1]["round"]
    else:
        trace.outcome = "budget"
    return trace


# ---------------------------------------------------------------------------
# built-in strategies


def _argmax(cands, score):
    best = max(score(v) for v in cands)
    return min(v for v in cands if score(v) == best)


class GreedyCops(CopStrategy):
    """Every cop steps along a shortest path toward the robber."""

    name = "greedy"

    def place(self, arena, k):
        return [arena.vertices[0]] * k

    def move(self, arena, state):
        r = state.robber
        dr = arena.dist[r]
        out = []
        for c in state.cops:
            if c not in dr or c == r:
                out.append(c)
                continue
            want = dr[c] - 1
            out.append(min(y for y in arena.adj[c] if dr.get(y) == want))
        return out


class RandomRobber(RobberStrategy):
    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = random.Random(seed)
        self.name = f"random:{seed}"

    def place(self, arena, state):
        free = [v for v in arena.vertices if v not in state.cops] or list(arena.vertices)
        return self.rng.choice(free)

    def move(self, arena, state):
        return self.rng.choice(arena.closed(state.robber))


class GreedyRobber(RobberStrategy):
    """Maximize the distance to the nearest cop; ties go to the lowest id."""

    name = "greedy"

    def place(self, arena, state):
        return _argmax(arena.vertices, lambda v: arena.min_cop_distance(v, state.cops))

    def move(self, arena, state):
        return _argmax(arena.closed(state.robber), lambda v: arena.min_cop_distance(v, state.cops))


class StallRobber(GreedyRobber):
    """Stay put while no cop can reach the robber's vertex; flee greedily otherwise."""

    name = "stall"

    def move(self, arena, state):
        if arena.min_cop_distance(state.robber, state.cops) > 1:
            return state.robber
        return super().move(arena, state)


class InteractiveRobber(RobberStrategy):
    """Reads robber moves (vertex ids) from a text stream."""

    name = "interactive"

    def __init__(self, infile: TextIO | None = None, outfile: TextIO | None = None):
        self.infile = infile or sys.stdin
        self.outfile = outfile or sys.stdout

    def _ask(self, arena: Arena, state: GameState, options: Sequence[int], prompt: str) -> int:
        cops = sorted(state.cops)
        print(f"round {state.round}: cops at {cops}", file=self.outfile)
        if state.robber is not None:
            for v in options:
                tag = " (cop)" if v in cops else ""
                print(f"  {v}{tag}: neighbours {list(arena.adj[v])}", file=self.outfile)
        while True:
            print(prompt, end="", file=self.outfile, flush=True)
            line = self.infile.readline()
            if not line:
                raise EOFError("no more robber moves on input")
            try:
                v = int(line.strip())
            except ValueError:
                print("enter a vertex id", file=self.outfile)
                continue
            if v in options:
                return v
            print(f"{v} is not one of {list(options)}", file=self.outfile)

    def place(self, arena, state):
        return self._ask(arena, state, arena.vertices, "robber start vertex> ")

    def move(self, arena, state):
        return self._ask(arena, state, arena.closed(state.robber), f"move from {state.robber}> ")
