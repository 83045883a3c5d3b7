import pytest

from copshield.corpus import (
    NAMES,
    complete,
    from_recipe,
    named,
    petersen,
    random_chordal,
    random_in_ghat,
    random_tree,
    random_with_x,
)
from copshield.graph_model import detect_x_crossings, euler_ok, planarize, validate
from copshield.strategy import gamma_reduce


def test_named_graphs():
    k4x = named("K4X")
    assert len(k4x.vertices) == 4 and len(k4x.edges) == 6 and len(k4x.crossings) == 1
    assert len(named("FIG1").crossings) == 4
    p = petersen()
    assert len(p.vertices) == 10 and len(p.edges) == 15 and not p.crossings
    assert all(len(p.adjacency[v]) == 3 for v in p.vertices)
    for name in NAMES:
        assert not validate(named(name))
    with pytest.raises(KeyError):
        named("NOPE")


def test_small_ghat_is_one_kite_covered_crossing():
    for seed in range(20):
        g = random_in_ghat(4, seed)
        assert len(g.vertices) == 4 and len(g.crossings) == 1
        assert detect_x_crossings(g) == []


def test_generator_self_check():
    for seed in range(1000):
        g = random_in_ghat(4 + seed % 22, seed)
        assert not validate(g), seed
        assert detect_x_crossings(g) == []
        assert euler_ok(planarize(g))
        assert g.is_connected()


def test_generators_are_deterministic():
    assert random_in_ghat(18, 4).dumps() == random_in_ghat(18, 4).dumps()
    assert random_with_x(15, 2, 4).dumps() == random_with_x(15, 2, 4).dumps()
    assert random_in_ghat(18, 4).dumps() != random_in_ghat(18, 5).dumps()


def test_bare_crossing():
    g = random_with_x(4, 1, 0)
    assert len(g.edges) == 2 and len(detect_x_crossings(g)) == 1


@pytest.mark.parametrize("gamma", [1, 2, 3])
def test_with_x_counts(gamma):
    for seed in range(30):
        g = random_with_x(20, gamma, seed)
        assert len(detect_x_crossings(g)) == gamma
        g2, _ = gamma_reduce(g)
        assert detect_x_crossings(g2) == []


def test_with_x_infeasible_sizes():
    with pytest.raises(ValueError):
        random_with_x(6, 3, 0)


def test_trees_and_chordal():
    t = random_tree(15, 2)
    assert len(t.edges) == 14 and t.is_connected()
    c = random_chordal(10, 2)
    assert c.is_connected() and not c.crossings
    assert len(complete(5).edges) == 10


@pytest.mark.parametrize(
    "recipe,n",
    [
        ("ghat:n=12:seed=3", 12),
        ("xcross:n=12:gamma=2:seed=1", 12),
        ("tree:n=7:seed=1", 7),
        ("chordal:n=8:seed=2", 8),
        ("cycle:n=6", 6),
        ("path:n=5", 5),
        ("complete:n=4", 4),
        ("grid:r=2:c=3", 6),
        ("named:PETERSEN", 10),
    ],
)
def test_recipes(recipe, n):
    assert len(from_recipe(recipe).vertices) == n


@pytest.mark.parametrize("bad", ["blob:n=3", "named", "named:A:B", "ghat:n=x"])
def test_bad_recipes(bad):
    with pytest.raises(ValueError):
        from_recipe(bad)
