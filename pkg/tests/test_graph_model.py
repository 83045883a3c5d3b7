import json

import pytest
from hypothesis import given, strategies as st

from copshield.corpus import LABELS, grid, named, random_in_ghat, random_with_x
from copshield.graph_model import (
    Edge,
    InvalidGraph,
    OnePlaneGraph,
    augment_kites,
    detect_x_crossings,
    euler_ok,
    load_graph,
    planarize,
    restrict,
    save_graph,
    validate,
)

L = LABELS["FIG1"]


def k4x_with(edges=(), crossings=()):
    g = named("K4X")
    return OnePlaneGraph(g.vertices, list(g.edges) + list(edges), list(g.crossings) + list(crossings))


def test_k4x_is_valid():
    assert not validate(named("K4X"))


def test_shared_endpoint_crossing_reported():
    # (1,2) is edge 0, (1,3) is edge 4
    g = OnePlaneGraph(
        [1, 2, 3, 4],
        [Edge(0, 1, 2), Edge(4, 1, 3)],
        [(0, 4)],
    )
    rep = validate(g)
    assert rep
    assert any("share" in v.message and "1" in v.message for v in rep)


def test_edge_crossed_twice_reported():
    g = k4x_with([Edge(6, 1, 2)], [(4, 6)])
    rep = validate(g)
    assert any("crossed twice" in v.message for v in rep)


def test_self_loop_reported():
    g = OnePlaneGraph([1, 2], [Edge(0, 1, 1), Edge(1, 1, 2)], [])
    assert validate(g)


def test_parallel_edges_allowed():
    g = OnePlaneGraph([1, 2], [Edge(0, 1, 2), Edge(1, 1, 2)], [])
    assert not validate(g)


def test_planarize_k4x_counts():
    p = planarize(named("K4X"))
    assert len(p.vertices) == 5
    assert len(p.dummies) == 1
    assert len(p.xedges) == 8


def test_planarize_grid_is_identity():
    g = grid(3, 3)
    p = planarize(g)
    assert not p.dummies
    assert sorted(p.vertices) == sorted(g.vertices)
    assert sorted((a, b) for a, b, _ in p.xedges.values()) == sorted(e.ends for e in g.edges)


def test_fig1_has_four_dummies():
    assert len(planarize(named("FIG1")).dummies) == 4


@pytest.mark.parametrize("g", [named("K4X"), random_in_ghat(14, 3), random_in_ghat(20, 8)])
def test_dummy_degree_and_alternation(g):
    p = planarize(g)
    assert p.dummies
    for d in p.dummies:
        assert len(p.incident[d]) == 4
        bases = [p.xedges[xid][2] for xid in p.rotation[d]]
        assert len(set(bases)) == 2
        assert all(bases[i] != bases[(i + 1) % 4] for i in range(4))


def test_planarize_rejects_invalid():
    g = k4x_with([Edge(6, 1, 2)], [(4, 6)])
    with pytest.raises(InvalidGraph):
        planarize(g)


def test_detect_x():
    assert detect_x_crossings(named("K4X")) == []
    assert detect_x_crossings(named("K4X_BARE")) == [0]
    assert detect_x_crossings(named("FIG1")) == []


def test_augment_k4x_uses_existing_edge():
    g2, kites = augment_kites(named("K4X"))
    assert len(kites) == 1
    assert not kites[0].inserted
    assert kites[0].edge == 0  # lowest-id uncrossed consecutive edge, (1,2)
    assert len(g2.edges) == len(named("K4X").edges)


def test_augment_fig1_caption():
    g = named("FIG1")
    g2, kites = augment_kites(g)
    inserted = sorted(tuple(sorted(k.ends)) for k in kites if k.inserted)
    assert inserted == sorted([tuple(sorted((L["a"], L["c"]))), tuple(sorted((L["c"], L["d"])))])
    fg = [e.id for e in g.edges if set(e.ends) == {L["f"], L["g"]}]
    sharing = [k for k in kites if k.edge in fg]
    assert len(sharing) == 2


def test_augment_inserts_parallel_when_only_kite_is_crossed():
    # 7 vertices: crossing (1,3)x(2,4); the only consecutive edge (1,2) is itself
    # crossed by (5,6); 7 hangs off 5 to make the graph connected
    g = OnePlaneGraph(
        range(1, 8),
        [
            Edge(0, 1, 3), Edge(1, 2, 4), Edge(2, 1, 2), Edge(3, 5, 6),
            Edge(4, 5, 7), Edge(5, 6, 7), Edge(6, 7, 1),
            Edge(7, 5, 1), Edge(8, 5, 2), Edge(9, 2, 6),
        ],
        [(0, 1), (2, 3)],
    )
    assert not validate(g)
    assert detect_x_crossings(g) == []
    g2, kites = augment_kites(g)
    rec = next(k for k in kites if k.crossing == 0)
    assert rec.inserted
    assert set(rec.ends) == {1, 2}
    assert not g2.is_crossed(rec.edge)
    assert len(g2.edges_between(1, 2)) == 2


def test_augment_strict_rejects_x():
    with pytest.raises(InvalidGraph):
        augment_kites(named("K4X_BARE"))


def test_restrict_examples():
    g = named("K4X")
    p = planarize(g)
    d = p.dummies[0]
    sub = restrict(p, [0])
    assert sorted(sub.vertices) == [1, 2]
    sub = restrict(p, [4])
    assert sorted(sub.vertices) == sorted([1, 3, d])
    assert len(sub.edges) == 2
    sub = restrict(p, [4, 5])
    assert sorted(sub.vertices) == sorted([1, 2, 3, 4, d])
    assert len(sub.edges) == 4
    assert all(d in p.xedges[x][:2] for x in sub.edges)
    with pytest.raises(KeyError):
        restrict(p, [99])


def test_restrict_whole_graph_is_planarization():
    p = planarize(named("FIG2"))
    sub = restrict(p, [e.id for e in p.base.edges])
    assert sorted(sub.vertices) == sorted(p.vertices)
    assert sorted(sub.edges) == sorted(p.xedges)


def test_json_round_trip(tmp_path):
    g = named("FIG2")
    path = tmp_path / "g.json"
    save_graph(g, path)
    first = path.read_bytes()
    g2 = load_graph(path)
    save_graph(g2, path)
    assert path.read_bytes() == first
    assert g2.digest() == g.digest()
    assert json.loads(first)["crossings"]


def test_k4x_rotation_euler():
    g = named("K4X")
    assert g.rotation
    assert euler_ok(planarize(g))


@given(st.integers(4, 25), st.integers(0, 10_000))
def test_generated_counts(n, seed):
    g = random_in_ghat(n, seed)
    assert not validate(g)
    p = planarize(g)
    c = len(g.crossings)
    assert len(p.vertices) == len(g.vertices) + c
    assert len(p.xedges) == len(g.edges) + 2 * c
    assert euler_ok(p)
    assert detect_x_crossings(g) == []
    g2, kites = augment_kites(g)
    assert detect_x_crossings(g2) == []
    assert len(kites) == c
    for k in kites:
        assert not g2.is_crossed(k.edge)
        assert tuple(sorted(k.ends)) in {tuple(sorted(pr)) for pr in g2.consecutive_pairs(k.crossing)}
    assert g2.adjacency == g.adjacency


@given(st.integers(9, 20), st.integers(1, 3), st.integers(0, 500))
def test_generated_x_counts(n, gamma, seed):
    g = random_with_x(n, gamma, seed)
    assert not validate(g)
    assert len(detect_x_crossings(g)) == gamma
    assert euler_ok(planarize(g))
