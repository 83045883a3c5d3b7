"""Cops and Robbers on 1-plane graphs: planarization, territories, the 21-cop strategy and an exact solver."""

from .game import Arena, GameState, Trace, new_game, run, step
from .graph_model import (
    Edge,
    InvalidGraph,
    OnePlaneGraph,
    Planarization,
    augment_kites,
    detect_x_crossings,
    load_graph,
    planarize,
    save_graph,
    validate,
)
from .oracle import cop_number, cop_win, dismantlable, solve
from .strategy import GammaStrategy, InvariantViolation, Strategy21

__version__ = "0.1.0"

__all__ = [
    "Arena",
    "Edge",
    "GameState",
    "GammaStrategy",
    "InvalidGraph",
    "InvariantViolation",
    "OnePlaneGraph",
    "Planarization",
    "Strategy21",
    "Trace",
    "augment_kites",
    "cop_number",
    "cop_win",
    "detect_x_crossings",
    "dismantlable",
    "load_graph",
    "new_game",
    "planarize",
    "run",
    "save_graph",
    "solve",
    "step",
    "validate",
]
