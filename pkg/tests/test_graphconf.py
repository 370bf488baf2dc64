from math import factorial

import pytest
from hypothesis import given, settings

from cellstrat.acyclic import nerve_chains, order_complex, validate_category
from cellstrat.complexes import deltaset_homology
from cellstrat.errors import InvalidStructure
from cellstrat.graphconf import (
    ConfCell,
    Graph,
    abrams_complex,
    apply_pins,
    complete_graph,
    conf_face_category,
    graph_css,
    interval_graph,
    loop_graph,
    star_graph,
    subdivide_graph,
    theta_graph,
    unordered_quotient,
    y_graph,
)
from cellstrat.strata import barycentric_subdivision, fixture, sd_homology, validate_css

from helpers import trees


def abrams_homology(g, k, ordered=True, n=3):
    return deltaset_homology(order_complex(abrams_complex(subdivide_graph(g, n), k, ordered).poset))


# -- graphs ------------------------------------------------------------------


def test_graph_rejects_unknown_endpoint():
    with pytest.raises(InvalidStructure):
        Graph.from_pairs(["a"], [("e", "a", "b")])


def test_graph_rejects_shared_ids():
    with pytest.raises(InvalidStructure):
        Graph.from_pairs(["a", "e"], [("e", "a", "a")])


def test_subdivide_y():
    g = subdivide_graph(y_graph(), 3)
    assert (len(g.vertices), len(g.edges)) == (10, 9)


def test_subdivide_loop_gives_triangle():
    g = subdivide_graph(loop_graph(), 3)
    assert (len(g.vertices), len(g.edges)) == (3, 3)
    assert all(not e.is_loop for e in g.edges)


@pytest.mark.parametrize(
    "g, counts, betti",
    [
        (loop_graph(), (1, 1), (1, 1)),
        (interval_graph(), (2, 1), (1,)),
        (y_graph(), (4, 3), (1,)),
        (theta_graph(), (2, 3), (1, 2)),
    ],
)
def test_graph_css(g, counts, betti):
    s = graph_css(g)
    assert s.f_vector() == counts
    assert validate_css(s, closed_mode=True).ok
    assert sd_homology(s).betti_trimmed() == betti


def test_loop_graph_matches_circle_fixture():
    assert barycentric_subdivision(graph_css(loop_graph())).counts() == barycentric_subdivision(
        fixture("circle_min")
    ).counts()


# -- the configuration model ---------------------------------------------------


def test_conf_cell_ids():
    c = ConfCell((("v", "a"), ("e", "e", 0)))
    assert c.id == "1@a|2@e:0"
    assert c.dim == 1


def test_collision_returns_none():
    g = interval_graph()
    edges = {e.id: e for e in g.edges}
    c = ConfCell((("v", "a"), ("e", "e", 0)))
    assert apply_pins(g, edges, c, [(1, -1)]) is None
    assert apply_pins(g, edges, c, [(1, 1)]) == ConfCell((("v", "a"), ("v", "b")))


@pytest.mark.parametrize(
    "g, k, f_vector, betti",
    [
        (loop_graph(), 2, (0, 2, 2), (1, 1)),
        (interval_graph(), 2, (2, 4, 2), (2,)),
        (y_graph(), 2, (12, 24, 12), (1, 1)),
        (theta_graph(), 2, (2, 12, 12), (1, 5)),
    ],
)
def test_conf_examples(g, k, f_vector, betti):
    model = conf_face_category(g, k)
    assert model.f_vector() == f_vector
    assert validate_css(model).ok
    assert sd_homology(model).betti_trimmed() == betti


@pytest.mark.parametrize("g", [loop_graph(), interval_graph(), y_graph(), theta_graph()])
def test_one_token_is_the_graph(g):
    model = conf_face_category(g, 1)
    assert model.f_vector() == graph_css(g).f_vector()
    assert sd_homology(model) == sd_homology(graph_css(g))


def test_unordered_loop():
    d = unordered_quotient(conf_face_category(loop_graph(), 2))
    assert d.counts() == (2, 2)
    assert deltaset_homology(d).betti == (1, 1)


def test_unordered_requires_conf_model():
    with pytest.raises(InvalidStructure):
        unordered_quotient(fixture("torus"))


@pytest.mark.parametrize("g", [loop_graph(), y_graph(), theta_graph(), star_graph(4)])
def test_closed_cells_are_spherical(g):
    model = conf_face_category(g, 2)
    report = validate_css(model, closed_mode=True, closed_cells=model.closed_cells())
    assert report.ok, str(report)


def test_closed_cells_exclude_shared_edges():
    model = conf_face_category(interval_graph(), 2)
    assert all(model.cell[c].dim == 0 for c in model.closed_cells())


@pytest.mark.parametrize("g, k", [(y_graph(), 2), (theta_graph(), 2), (star_graph(3), 3)])
def test_pin_composition_is_union(g, k):
    model = conf_face_category(g, k)
    assert validate_category(model.category).ok
    pm = model.pin_morphism
    for (gid, fid), hid in model.category.compose.items():
        assert pm[hid].pins == pm[gid].pins | pm[fid].pins
        assert pm[hid].source == pm[fid].source


@pytest.mark.parametrize("g, k", [(loop_graph(), 2), (y_graph(), 2), (theta_graph(), 2), (star_graph(3), 3)])
def test_token_action_is_free(g, k):
    model = conf_face_category(g, k)
    ordered = [len(level) for level in nerve_chains(model.category)]
    unordered = unordered_quotient(model).counts()
    assert [n * factorial(k) for n in unordered] == ordered


# -- Abrams oracle -------------------------------------------------------------


def test_abrams_edge_two_tokens():
    cx = abrams_complex(interval_graph(), 2)
    assert cx.f_vector() == (2,)
    assert deltaset_homology(order_complex(cx.poset)).betti == (2,)


def test_abrams_one_token_is_graph():
    g = theta_graph()
    assert abrams_complex(g, 1).f_vector() == graph_css(g).f_vector()


def test_abrams_unordered_ids():
    cx = abrams_complex(subdivide_graph(interval_graph(), 3), 2, ordered=False)
    assert all(x.startswith("{") for x in cx.poset.elements)


@pytest.mark.parametrize(
    "g",
    [loop_graph(), subdivide_graph(loop_graph(), 3), interval_graph(), y_graph(), theta_graph(), star_graph(4)],
)
def test_model_matches_abrams(g):
    model = conf_face_category(g, 2)
    assert sd_homology(model) == abrams_homology(g, 2)
    assert deltaset_homology(unordered_quotient(model)) == abrams_homology(g, 2, ordered=False)


def test_model_matches_abrams_k4():
    g = complete_graph(4)
    model = conf_face_category(g, 2)
    assert model.f_vector() == (12, 48, 42)
    assert sd_homology(model).betti_trimmed() == abrams_homology(g, 2).betti_trimmed() == (1, 7)


@settings(max_examples=20, deadline=None)
@given(trees(max_edges=5))
def test_trees_match_abrams(g):
    model = conf_face_category(g, 2)
    assert sd_homology(model) == abrams_homology(g, 2)
    assert deltaset_homology(unordered_quotient(model)) == abrams_homology(g, 2, ordered=False)
