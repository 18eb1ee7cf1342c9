import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from orbicluster.genseed import ExchangeMatrix, explore_exchange_graph, initial_seed, matrix_mutation
from orbicluster.gentlerep import StringModule, enumerate_strings, perp_sk, reflect, string_of
from orbicluster.orbsurf import flip, quiver_of
from orbicluster.stability import chamber_path, semistable_string, stability_value, t_map, t_map_pl
from orbicluster.taufan import air_mutate, cone_of
from orbicluster.tropical import tropical_path
from orbicluster.verify import DIGON_PATH, DIGON_B, DIGON_RAYS, air_along, digon_triangulations

B0 = ExchangeMatrix(DIGON_B[0], (2, 1, 2))
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def test_fixed_hyperplane():
    theta = (Fraction(3), Fraction(-1), Fraction(0))
    for sign in (1, -1):
        assert t_map(theta, 2, sign, B0) == theta[:2] + (0,)


@settings(max_examples=60, deadline=None)
@given(st.tuples(rationals, rationals, rationals), st.integers(0, 2))
def test_t_plus_then_t_minus(theta, k):
    back = t_map(t_map(theta, k, 1, B0), k, -1, matrix_mutation(B0, k))
    assert back == tuple(theta)


@settings(max_examples=60, deadline=None)
@given(st.tuples(rationals, rationals, rationals), st.integers(0, 2))
def test_piecewise_linear_map_is_invertible(theta, k):
    there = t_map_pl(theta, k, B0)
    assert t_map_pl(there, k, matrix_mutation(B0, k)) == tuple(theta)


def test_single_flip(tris):
    for k in range(3):
        cp = chamber_path(tris[0], (k,))
        assert cp.signs == (1,)
        b1 = quiver_of(flip(tris[0], tris[0].arc_ids[k]))[1]
        unit = [tuple(int(i == j) for j in range(3)) for i in range(3)]
        assert cp.cones[0] == tuple(t_map(e, k, 1, b1) for e in unit)


def test_digon_chambers(tris):
    cp = chamber_path(tris[0], DIGON_PATH)
    assert cp.signs == (1, 1, 1, 1)
    for j in range(5):
        assert tuple(tuple(int(v) for v in r) for r in cp.cones[j]) == DIGON_RAYS[j]
        rays, normals = cp.cones[j], cp.normals(j)
        for i, c in enumerate(normals):
            assert all(v >= 0 for v in c) or all(v <= 0 for v in c)
            for l, r in enumerate(rays):
                assert sum(a * b for a, b in zip(c, r)) == int(i == l)


def test_chambers_match_g_vectors(tris):
    g = explore_exchange_graph(initial_seed(B0), 4)
    for node in g.nodes:
        cp = chamber_path(tris[0], node.path)
        assert tuple(tuple(int(v) for v in r) for r in cp.cones[0]) == tropical_path(B0, node.path)[-1].g


def test_positive_theta_is_unstable(kappa0):
    _, q, _ = kappa0
    for s in enumerate_strings(q, 4):
        assert semistable_string(s, (1, 2, Fraction(1, 3))) == "unstable"


def test_simple_on_its_hyperplane_is_stable(kappa0):
    _, q, _ = kappa0
    for i, v in enumerate(q.vertices):
        theta = [Fraction(3), Fraction(-7, 2), Fraction(5)]
        theta[i] = 0
        assert semistable_string(StringModule(q, v, ()), theta) == "stable"


def test_wall_category_on_shared_facet(kappa0):
    t, q, _ = kappa0
    p = air_along(t, DIGON_PATH)
    nb = air_mutate(p, 2)
    shared = [g for g in p.gvectors if g in nb.gvectors]
    theta = tuple(Fraction(sum(g[i] for g in shared)) for i in range(3))
    d = tuple(abs(v) for v in cone_of(p).normals[2])
    # the flip at slot 3 keeps the wall: both chambers see the same generator
    assert tuple(abs(v) for v in cone_of(nb).normals[2]) == d
    assert stability_value(theta, d) == 0
    semistable = [s for s in enumerate_strings(q, 12) if semistable_string(s, theta) != "unstable"]
    assert semistable
    generator = min(semistable, key=lambda s: sum(s.dims()))
    assert generator.dims() == d
    for s in semistable:
        m = s.dims()
        ratio = Fraction(sum(m), sum(d))
        assert all(Fraction(a) == ratio * b for a, b in zip(m, d))


def transport_samples(max_len, per_string, seed=1):
    """(string, k, theta) with theta(dim M) = 0 and theta_k > 0."""
    rng = random.Random(seed)
    for j, t in enumerate(digon_triangulations()):
        q, _ = quiver_of(t)
        strings = enumerate_strings(q, max_len)
        for kk, k in enumerate(t.arc_ids):
            for s in strings:
                d = s.dims()
                for _ in range(per_string):
                    theta = [Fraction(rng.randint(-4, 4)) for _ in range(3)]
                    theta[kk] = Fraction(rng.randint(1, 4))
                    free = [i for i in range(3) if i != kk and d[i]]
                    if not free:
                        continue
                    i = rng.choice(free)
                    theta[i] = 0
                    theta[i] = -stability_value(theta, d) / d[i]
                    yield t, s, kk, k, tuple(theta)


def semistability_transported(t, s, kk, k, theta):
    lhs = semistable_string(s, theta) != "unstable"
    m = s.module()
    if not perp_sk(m, k):
        return lhs is False
    out = reflect(m, t, k, 1)
    if out.is_zero():
        return lhs
    image = string_of(out)
    assert image is not None, "reflected string module is not a string"
    b = quiver_of(t)[1]
    return lhs == (semistable_string(image, t_map(theta, kk, 1, b)) != "unstable")


def test_semistability_transport():
    count = semistable = 0
    for sample in transport_samples(4, 2):
        assert semistability_transported(*sample), sample
        count += 1
        semistable += semistable_string(sample[1], sample[4]) != "unstable"
    assert count >= 100 and semistable > 0
