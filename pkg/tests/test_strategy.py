import pytest
from hypothesis import given, strategies as st

from copshield.corpus import named, path_graph, random_in_ghat, random_with_x
from copshield.game import Arena, GreedyRobber, StallRobber, run
from copshield.graph_model import Edge, OnePlaneGraph, detect_x_crossings, planarize, xwalk
from copshield.oracle import cop_number
from copshield.strategy import (
    SQUAD_SIZE,
    SQUADS,
    GammaStrategy,
    Strategy21,
    Interface,
    Segment,
    gamma_reduce,
    shortcut,
)
from copshield.verify import adversary_search, round_budget, standard_robbers


def play(g, robber, strat=None):
    s = strat or (GammaStrategy(g) if detect_x_crossings(g) else Strategy21(g))
    return s, run(Arena(g), s, robber, s.cop_total, round_budget(g))


def test_shortcut_examples():
    assert shortcut([]) == []
    assert shortcut([1, 2, 3]) == [1, 2, 3]
    assert shortcut([1, 2, 3, 2, 4]) == [1, 2, 4]
    assert shortcut([1, 2, 3, 1, 5]) == [1, 5]


def test_shortcut_self_crossing_path():
    # path 1-2-3-4 drawn so that (1,2) crosses (3,4)
    g = OnePlaneGraph([1, 2, 3, 4], [Edge(0, 1, 2), Edge(1, 2, 3), Edge(2, 3, 4)], [(0, 2)])
    p = planarize(g)
    d = p.dummies[0]
    walk = xwalk(p, [1, 2, 3, 4], [0, 1, 2])
    assert walk == [1, d, 2, 3, d, 4]
    q = shortcut(walk)
    assert q == [1, d, 4]
    assert len(set(q)) == len(q)


def test_shortcut_planar_path_unchanged():
    g = path_graph(5)
    p = planarize(g)
    walk = xwalk(p, [0, 1, 2, 3, 4], [0, 1, 2, 3])
    assert shortcut(walk) == walk == [0, 1, 2, 3, 4]


def test_k4x_bootstrap_and_capture():
    g = named("K4X")
    s = Strategy21(g)
    s._bootstrap(3)
    rec = s.pending.record
    assert rec.label == "bootstrap"
    assert sorted(rec.path) == [1, 2]  # the double sweep from vertex 1 ends on the edge (1,2)
    xq = s.pending.finish.xpath
    assert sum(s.static.p.is_dummy(x) for x in xq) <= 1
    _, trace = play(g, GreedyRobber())
    assert trace.outcome == "captured"


def test_endgame_chaser():
    # the strategy sees 3 as cut off from the guarded vertex 0; the game graph is the path 0-1-2-3
    view = OnePlaneGraph([0, 1, 2, 3], [Edge(0, 0, 1), Edge(1, 1, 2)], [])
    s = Strategy21(view)
    s.eta = 1
    s.interface = Interface("P", (Segment((0,), 0),))
    trace = run(Arena(path_graph(4)), s, StallRobber(), s.cop_total, 100)
    ends = trace.events("endgame")
    assert len(ends) == 1 and ends[0]["chaser"] == 0
    assert trace.outcome == "captured"
    assert trace.capture_round == 1 + 3


def test_p5_needs_no_cycle_phase():
    s, trace = play(path_graph(5), GreedyRobber())
    assert trace.outcome == "captured"
    assert all(ev["config"] == "P" for ev in trace.events("iteration"))
    assert cop_number(path_graph(5), 2) == 1


def test_too_few_cops():
    s = Strategy21(named("K4X"))
    with pytest.raises(ValueError):
        run(Arena(named("K4X")), s, GreedyRobber(), 20, 10)
    assert s.cop_total == SQUADS * SQUAD_SIZE == 21


def test_checks_off_emits_no_invariant_events():
    g = random_in_ghat(15, 3)
    _, trace = play(g, GreedyRobber(), Strategy21(g, checks=False))
    assert trace.outcome == "captured"
    assert not trace.events("invariant")


CASE_RUNS = None


def case_runs():
    """Case and endgame events, with the planarization the strategy used."""
    global CASE_RUNS
    if CASE_RUNS is None:
        out = []
        graphs = [random_in_ghat(6 + s % 35, s) for s in range(300)]
        graphs += [random_with_x(9 + s % 12, 1 + s % 3, s) for s in range(40)]
        for g in graphs:
            for robber in standard_robbers():
                s, trace = play(g, robber)
                out.append((s, trace))
        CASE_RUNS = out
    return CASE_RUNS


def test_all_runs_capture_with_checks():
    for s, trace in case_runs():
        assert trace.outcome == "captured"
        assert all(ev["ok"] for ev in trace.events("invariant"))


def test_case_preconditions():
    seen = set()
    for s, trace in case_runs():
        p = s.static.p
        for ev in trace.events("case"):
            lab, an = ev["case"], ev["anchors"]
            seen.add(lab)
            dummy = {k: p.is_dummy(v) for k, v in an.items()}
            if lab in ("P1.1", "C1.1"):
                assert not dummy["a"]
            elif lab in ("P1.2", "C1.2"):
                assert dummy["a"]
            elif lab.startswith("P2.") or lab == "C3":
                kinds = (dummy["u"], dummy["v"])
                want = {"1": [(False, False)], "2": [(False, True), (True, False)], "3": [(True, True)]}
                if lab != "C3":
                    assert kinds in want[lab[-1]]
            elif lab == "C2.1":
                assert not dummy["a"] and not dummy["b"]
            elif lab == "C2.2":
                assert not dummy["a"] and dummy["b"]
            elif lab == "C2.3":
                assert dummy["a"] and dummy["b"]
    assert {"P1.1", "P2.1", "P2.2", "C2.1", "C3"} <= seen


def test_p2_builds_disjoint_cycle_and_c3_picks_a_side():
    checked = 0
    for s, trace in case_runs():
        its = trace.events("iteration")
        for ev in its:
            if ev["case"].startswith("P2."):
                p1, p2 = ev["interface"]
                assert p1 and p2 and not set(p1) & set(p2)
                assert ev["config"] == "C"
                checked += 1
        c3 = [ev for ev in its if ev["case"] == "C3"]
        assert len(trace.events("side")) >= len(c3)
    assert checked


def test_gamma_reduce_two_crossings():
    g = random_with_x(12, 2, 0)
    assert len(detect_x_crossings(g)) == 2
    g2, parked = gamma_reduce(g)
    assert len(parked) == 2
    assert detect_x_crossings(g2) == []
    s = GammaStrategy(g)
    assert s.cop_total == 23
    assert [v for _, v in s.parked] == [v for v, _ in parked]


def test_gamma_identity_on_ghat():
    g = random_in_ghat(10, 1)
    g2, parked = gamma_reduce(g)
    assert parked == [] and g2.digest() == g.digest()


def test_bare_crossing_gamma():
    # bare crossing (1,3)x(2,4) connected through 5 and 6
    g = OnePlaneGraph(
        range(1, 7),
        [Edge(0, 1, 3), Edge(1, 2, 4), Edge(2, 1, 5), Edge(3, 5, 2), Edge(4, 3, 6), Edge(5, 6, 4)],
        [(0, 1)],
    )
    s = GammaStrategy(g)
    assert s.cop_total == 22 and s.parked == ((21, 1),)
    for robber in standard_robbers():
        _, trace = play(g, robber, GammaStrategy(g))
        assert trace.outcome == "captured"
    assert cop_number(g, 3) == 2


@given(st.integers(9, 20), st.integers(1, 3), st.integers(0, 10_000))
def test_gamma_prepass_yields_ghat(n, gamma, seed):
    g = random_with_x(n, gamma, seed)
    g2, parked = gamma_reduce(g)
    assert len(parked) == gamma
    assert detect_x_crossings(g2) == []


def test_deterministic_traces():
    g = random_in_ghat(22, 5)
    for make in standard_robbers, standard_robbers:
        a = [play(g, r)[1].dumps() for r in make()]
    b = [play(g, r)[1].dumps() for r in standard_robbers()]
    assert a == b


@pytest.mark.parametrize("name", ["K4X", "FIG2", "FIG3", "C6", "PETERSEN", "GRID3", "P5"])
def test_no_robber_escapes_small_named(name):
    res = adversary_search(named(name))
    assert res.ok, res.counterexample


@pytest.mark.parametrize("seed", range(8))
def test_no_robber_escapes_small_generated(seed):
    res = adversary_search(random_in_ghat(6 + seed % 5, seed))
    assert res.ok, res.counterexample
