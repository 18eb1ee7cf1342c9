import itertools

import pytest

from orbicluster.gentlerep import is_isomorphic
from orbicluster.taufan import (
    RealizationError,
    air_mutate,
    cone_of,
    cones_separated,
    initial_pair,
    realize,
    stau_exchange_graph,
)
from orbicluster.tropical import tropical_path
from orbicluster.verify import DIGON_PATH, DIGON_RAYS, air_along, graph_correspondence


@pytest.fixture(scope="module")
def graph(kappa0):
    _, q, b = kappa0
    return stau_exchange_graph(initial_pair(q, b), 4)


def test_mutation_at_slot3_gives_n(kappa0, mods):
    t, _, _ = kappa0
    p = air_along(t, DIGON_PATH)
    q2 = air_mutate(p, 2)
    assert is_isomorphic(q2.summands[2].module(), mods["N"])
    for i in (0, 1):
        assert q2.summands[i] == p.summands[i]
    assert q2.is_support_tau_tilting()


def test_mutation_is_an_involution(graph):
    for node in graph.nodes:
        for k in range(3):
            back = air_mutate(air_mutate(node.pair, k), k)
            assert back.key() == node.pair.key()


def test_pairs_at_kappa0(kappa0, mods):
    t, _, _ = kappa0
    p = air_along(t, DIGON_PATH)
    assert p.gvectors == DIGON_RAYS[0]
    for s, name in zip(p.summands, ("M1", "M2", "M3")):
        assert is_isomorphic(s.module(), mods[name])


def test_graph_depth0(kappa0):
    _, q, b = kappa0
    assert len(stau_exchange_graph(initial_pair(q, b), 0).nodes) == 1


def test_graph_contains_row0(graph):
    assert tuple(sorted(DIGON_RAYS[0])) in graph.index()
    assert graph.counts_by_depth() == [1, 3, 5, 7, 8]
    assert len(graph.edges) == 30


@pytest.mark.parametrize("depth", [2, 4])
def test_graph_matches_seeds(kappa0, depth):
    check, tg, sg = graph_correspondence(kappa0[0], depth)
    assert check.ok, check.line()
    assert tg.counts_by_depth() == sg.counts_by_depth()


def test_graph_matches_seeds_on_kappa4(tris):
    check, tg, _ = graph_correspondence(tris[4], 4)
    assert check.ok, check.line()
    assert tg.counts_by_depth() == [1, 3, 6, 9, 11]


def test_initial_cone(kappa0):
    _, q, b = kappa0
    c = cone_of(initial_pair(q, b))
    assert c.rays == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert c.contains((1, 2, 3)) and not c.contains((-1, 0, 0))


def test_adjacent_cones_share_one_facet(graph):
    for (u, v), k in graph.edges.items():
        a, b = graph.nodes[u].pair, graph.nodes[v].pair
        shared = set(a.gvectors) & set(b.gvectors)
        assert len(shared) == 2
        ca, cb = cone_of(a), cone_of(b)
        assert cones_separated(ca, cb)
        # the separating normal vanishes on the shared facet
        normal = ca.normals[[i for i, g in enumerate(a.gvectors) if g not in shared][0]]
        assert all(sum(x * y for x, y in zip(normal, g)) == 0 for g in shared)


def test_fan_property(graph):
    cones = [cone_of(n.pair) for n in graph.nodes]
    for a, b in itertools.combinations(cones, 2):
        assert cones_separated(a, b)
        assert not b.contains(a.interior_point())


def test_normals_rebuild_b(graph, kappa0):
    _, _, b0 = kappa0
    for node in graph.nodes:
        st = tropical_path(b0, node.path)[-1]
        assert node.pair.b_matrix() == st.b.b
        assert node.pair.gvectors == st.g


def test_realization_failure_is_explicit(kappa0):
    _, q, _ = kappa0
    with pytest.raises(RealizationError):
        realize(q, (3, -2, -2), 6)
    assert realize(q, (3, -2, -2)).string.dims() == (6, 6, 4)


def test_pairs_verify(graph):
    for node in graph.nodes:
        assert node.pair.verify()
        assert node.pair.is_support_tau_tilting()
