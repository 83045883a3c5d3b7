import pytest
from hypothesis import given, strategies as st

from brute import brute_cop_number, brute_cop_win, capture_levels
from copshield.corpus import (
    complete,
    cycle,
    grid,
    named,
    path_graph,
    petersen,
    random_chordal,
    random_in_ghat,
    random_tree,
)
from copshield.game import Arena, GreedyRobber, RandomRobber, StallRobber, run
from copshield.graph_model import augment_kites
from copshield.oracle import (
    OracleCapExceeded,
    OracleCops,
    OracleRobber,
    OracleSolution,
    cop_number,
    cop_win,
    dismantlable,
    solve,
)


@pytest.mark.parametrize("n", [1, 2, 5, 7])
def test_complete_one_cop(n):
    assert cop_win(complete(n), 1)


def test_cycle_c6():
    assert not cop_win(cycle(6), 1)
    assert cop_win(cycle(6), 2)


def test_petersen():
    g = petersen()
    assert not cop_win(g, 2)
    assert cop_win(g, 3)
    assert not brute_cop_win(g.adjacency, 2)


@given(st.integers(1, 25), st.integers(0, 10_000))
def test_trees(n, seed):
    assert cop_number(random_tree(n, seed), 3) == 1


def test_grid3_matches_brute():
    g = grid(3, 3)
    assert cop_number(g, 3) == brute_cop_number(g.adjacency, 3) == 2


@pytest.mark.parametrize("n", range(4, 9))
def test_cycles(n):
    assert cop_number(cycle(n), 3) == 2


def test_path_dismantlable():
    ok, order = dismantlable(path_graph(5))
    assert ok and sorted(order) == list(range(5))


def test_c4_not_dismantlable():
    assert dismantlable(cycle(4)) == (False, [])


@pytest.mark.parametrize("seed", range(100))
def test_chordal_dismantlable_agrees(seed):
    g = random_chordal(4 + seed % 9, seed)
    assert dismantlable(g)[0]
    assert cop_win(g, 1)


def small_graphs():
    out = [named(n) for n in ("K4X", "C5", "P5", "FIG3", "FIG2")]
    out += [random_in_ghat(n, s) for n in (5, 6, 7) for s in range(3)]
    return out


@pytest.mark.parametrize("g", small_graphs(), ids=lambda g: g.digest()[:8])
@pytest.mark.parametrize("k", [1, 2])
def test_depths_match_brute(g, k):
    sol = solve(g, k)
    level = capture_levels(g.adjacency, k)
    vs = g.vertices
    for ci, conf in enumerate(sol.configs):
        cops = tuple(vs[i] for i in conf)
        for ri, r in enumerate(vs):
            pos = ci * sol.n + ri
            for side, table in ((0, sol.cop_depth), (1, sol.rob_depth)):
                want = level.get((cops, r, side), -1)
                assert table[pos] == want, (cops, r, side)


@given(st.integers(5, 9), st.integers(0, 2000))
def test_cop_number_matches_brute(n, seed):
    g = random_in_ghat(n, seed)
    assert cop_number(g, 2) == brute_cop_number(g.adjacency, 2)


@pytest.mark.parametrize("seed", range(6))
def test_corpus_values_are_small_and_strategy_agrees(seed):
    from copshield.strategy import Strategy21
    from copshield.verify import round_budget

    g, _ = augment_kites(random_in_ghat(6 + seed, seed))
    c = cop_number(g, 3)
    assert c is not None and c <= 21
    s = Strategy21(g)
    trace = run(Arena(g), s, GreedyRobber(), s.cop_total, round_budget(g))
    assert trace.outcome == "captured"


@pytest.mark.parametrize("g,k", [(cycle(7), 2), (petersen(), 3), (grid(3, 3), 2)])
def test_oracle_cops_beat_every_robber(g, k):
    sol = solve(g, k)
    for robber in (GreedyRobber(), StallRobber(), RandomRobber(1), OracleRobber(sol)):
        trace = run(Arena(g), OracleCops(sol), robber, k, 500)
        assert trace.outcome == "captured"
        worst = max(sol.cop_depth[sol.placement * sol.n + r] for r in range(sol.n))
        # placement is round 1, each later round is two half-turns
        assert trace.capture_round <= 1 + (worst + 1) // 2


def test_oracle_robber_escapes_too_few_cops():
    g = petersen()
    sol = solve(g, 2)
    trace = run(Arena(g), OracleCops(sol), OracleRobber(sol), 2, 300)
    assert trace.outcome == "budget"


def test_oracle_cops_reject_wrong_count():
    sol = solve(cycle(5), 2)
    with pytest.raises(ValueError):
        run(Arena(cycle(5)), OracleCops(sol), GreedyRobber(), 3, 10)


def test_cap():
    with pytest.raises(OracleCapExceeded):
        solve(petersen(), 3, cap=100)


def test_cache_round_trip(tmp_path, monkeypatch):
    g = grid(3, 3)
    first = solve(g, 2, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and files[0].name.endswith("-k2.bin")
    again = solve(g, 2, cache_dir=tmp_path)
    assert again.cop_depth == first.cop_depth and again.rob_depth == first.rob_depth
    monkeypatch.setenv("COPSHIELD_CACHE", str(tmp_path / "env"))
    solve(g, 1)
    assert list((tmp_path / "env").iterdir())


def test_cache_rejects_other_graph():
    data = solve(cycle(5), 2).to_bytes()
    with pytest.raises(ValueError):
        OracleSolution.from_bytes(cycle(6), data)
    with pytest.raises(ValueError):
        OracleSolution.from_bytes(cycle(5), b"\x09" + data[1:])


def test_corrupt_cache_is_recomputed(tmp_path):
    g = cycle(5)
    solve(g, 2, cache_dir=tmp_path)
    f = next(tmp_path.iterdir())
    f.write_bytes(b"junk")
    assert solve(g, 2, cache_dir=tmp_path).cop_wins


def test_bad_arguments():
    with pytest.raises(ValueError):
        solve(cycle(4), 0)
