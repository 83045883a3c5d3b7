import pytest
from hypothesis import given, strategies as st

from copshield.corpus import LABELS, named, random_in_ghat
from copshield.graph_model import Edge, OnePlaneGraph, augment_kites, detect_x_crossings, planarize
from copshield.territory import (
    RobberOnGuardedVertex,
    check_no_x,
    cop_territory,
    extend_with_boundary,
    robber_territory,
)

F = LABELS["FIG2"]
F3 = LABELS["FIG3"]


def edge_ids(g, *pairs):
    out = set()
    for pr in pairs:
        out.update(g.edges_between(F[pr[0]], F[pr[1]]))
    return out


@pytest.fixture
def fig2():
    g = named("FIG2")
    p = planarize(g)
    # z is the crossing point of (a,b) and (c,d)
    ab = g.edges_between(F["a"], F["b"])[0]
    z = p.dummy_of_edge[ab]
    h = [F["a"], F["c"], z, F["b"]]
    return g, p, h


def test_fig2_cop_territory(fig2):
    g, p, h = fig2
    cop = cop_territory(p, h)
    caption = edge_ids(g, "ab", "cd", "fa", "fc")
    kites = {e.id for e in g.edges if e.id > 8}  # e1, e2: the inserted kite copies of ac and cd
    assert len(kites) == 2
    assert caption | kites <= cop
    # the only other edge meeting H is the crossed copy of (a,c), incident with a
    extra = cop - caption - kites
    assert extra == {2}
    assert set(g.edge(2).ends) == {F["a"], F["c"]}


def test_fig2_robber_territory(fig2):
    g, p, h = fig2
    view = robber_territory(p, h, F["f"])
    assert view.component_edges == edge_ids(g, "ge", "gf", "gh", "ed")
    assert check_no_x(p, view)


def test_empty_h():
    g = named("FIG2")
    p = planarize(g)
    assert cop_territory(p, []) == frozenset()
    view = robber_territory(p, [], F["f"])
    assert view.component == frozenset(g.vertices)


def test_k4x_dummy_territory():
    g = named("K4X")
    p = planarize(g)
    d = p.dummies[0]
    assert cop_territory(p, [d]) == {4, 5}
    view = robber_territory(p, [d], 1)
    assert check_no_x(p, view)
    ext = extend_with_boundary(p, view, d)
    # every vertex of the crossing is in the robber's component, so all four halves join it
    halves = {e.id for e in ext.edges} - set(view.component_edges)
    assert halves == set(p.image_edges[4] + p.image_edges[5])
    assert d in ext.vertices


def test_fig3_boundaries():
    g = named("FIG3")
    p = planarize(g)
    u, v, w = F3["u"], F3["v"], F3["w"]
    vw = g.edges_between(v, w)[0]
    z = p.dummy_of_edge[vw]
    view = robber_territory(p, [u, v, w, z], F3["c"])

    def s(x, *names):
        return {eid for n in names for eid in g.edges_between(x, F3[n])}

    assert view.boundary[u] == s(u, "a", "b")
    assert g.edges_between(u, F3["c"])  # (u,c) exists but crosses (v,w)
    assert view.boundary[v] == s(v, "c")
    assert view.boundary[w] == s(w, "d", "e")
    ext = extend_with_boundary(p, view, u)
    assert {e.id for e in ext.edges} == set(view.component_edges) | s(u, "a", "b")


def test_empty_boundary_leaves_territory(fig2):
    g, p, h = fig2
    view = robber_territory(p, h, F["f"])
    assert view.boundary[F["b"]] == frozenset()
    ext = extend_with_boundary(p, view, F["b"])
    assert {e.id for e in ext.edges} == set(view.component_edges)


def test_robber_on_guarded_vertex():
    p = planarize(named("K4X"))
    with pytest.raises(RobberOnGuardedVertex):
        robber_territory(p, [1], 1)


def test_bare_crossing_flagged():
    # bare crossing (1,3)x(2,4) plus a hub 5 joined to all four endpoints
    g = OnePlaneGraph(
        range(1, 6),
        [Edge(0, 1, 3), Edge(1, 2, 4)] + [Edge(2 + i, 5, i + 1) for i in range(4)],
        [(0, 1)],
    )
    p = planarize(g)
    assert not check_no_x(p, robber_territory(p, [], 5))


def test_kite_augmented_k4x_any_h():
    g, _ = augment_kites(named("K4X"))
    p = planarize(g)
    for mask in range(32):
        h = [x for i, x in enumerate(p.vertices) if mask >> i & 1]
        for r in g.vertices:
            if r not in h:
                assert check_no_x(p, robber_territory(p, h, r))


@given(st.integers(5, 20), st.integers(0, 5000), st.data())
def test_territory_has_no_x_and_extensions_stay_in_ghat(n, seed, data):
    g, _ = augment_kites(random_in_ghat(n, seed))
    p = planarize(g)
    h = data.draw(st.sets(st.sampled_from(p.vertices), max_size=len(p.vertices) - 1))
    free = [v for v in g.vertices if v not in h]
    if not free:
        return
    r = data.draw(st.sampled_from(free))
    view = robber_territory(p, h, r)
    assert check_no_x(p, view)
    assert view.component_edges.isdisjoint(view.cop_edges)
    for v in sorted(h):
        assert detect_x_crossings(extend_with_boundary(p, view, v)) == []
