import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbicluster.gentlerep import (
    QuiverRep,
    StringModule,
    WalkError,
    check_relations,
    direct_sum,
    enumerate_strings,
    g_vector,
    hom_dim,
    is_isomorphic,
    min_presentation,
    pair_compatible,
    pair_g_vector,
    perp_sk,
    projective,
    reflect,
    simple,
    string_hom_count,
    string_module,
    tau_rigid_check,
)
from orbicluster.orbsurf import flip, quiver_of, triangulation_from_json
from orbicluster.verify import check_pairs, digon_triangulations

from test_orbsurf import PENTAGON

TRIS = digon_triangulations()
STRINGS = {j: enumerate_strings(quiver_of(t)[0], 4) for j, t in enumerate(TRIS)}


def test_pairs_along_the_flip_path():
    for c in check_pairs():
        assert c.ok, c.line()


def test_simples_satisfy_relations(kappa0):
    _, q, _ = kappa0
    for v in q.vertices:
        assert check_relations(simple(q, v)) is None


def test_eps_squared_violation(kappa0):
    _, q, _ = kappa0
    m = QuiverRep(q, (2, 0, 0), {"e1": [[1, 0], [0, 1]]})
    assert check_relations(m) == ("e1", "e1")


def test_projective_dimensions(kappa0, mods):
    _, q, _ = kappa0
    assert projective(q, 3).dims == (4, 2, 2)
    assert is_isomorphic(projective(q, 3), mods["M3"])
    assert projective(q, 2).dims == (2, 1, 0)
    n = mods["N"].dims
    assert n == tuple(a - 2 * b for a, b in zip(projective(q, 3).dims, projective(q, 2).dims))


def test_projective_at_a_sink_is_simple():
    q, _ = quiver_of(triangulation_from_json(PENTAGON))
    assert projective(q, 1).dims == simple(q, 1).dims


def test_hom_small_cases(kappa0, mods):
    _, q, _ = kappa0
    for u, v in itertools.product(q.vertices, repeat=2):
        assert hom_dim(simple(q, u), simple(q, v)) == int(u == v)
    assert hom_dim(projective(q, 3), projective(q, 3)) >= 1


def test_hom_of_m1_two_ways(kappa0, mods):
    _, q, _ = kappa0
    m1 = next(s for s in enumerate_strings(q, 4) if is_isomorphic(s.module(), mods["M1"]))
    assert hom_dim(mods["M1"], mods["M1"]) == string_hom_count(m1, m1)


def test_g_vectors(kappa0, mods):
    _, q, _ = kappa0
    assert g_vector(mods["M3"]) == (0, 0, -1)
    assert g_vector(mods["N"]) == (0, 2, -1)
    pres = min_presentation(mods["N"])
    assert list(pres.p0) == [0, 0, 1] and list(pres.p1) == [0, 2, 0]
    for i, v in enumerate(q.vertices):
        assert pair_g_vector([], [v], q) == tuple(int(j == i) for j in range(3))


def test_tau_rigidity(kappa0, mods):
    _, q, _ = kappa0
    for v in q.vertices:
        assert pair_compatible([], [v])
        assert not pair_compatible([projective(q, v)], [v])
    assert tau_rigid_check(mods["N"])
    assert pair_compatible([mods["M1"], mods["M2"], mods["N"]], [])


def test_strings():
    q, _ = quiver_of(TRIS[0])
    assert string_module(q, 2).dims == (0, 1, 0)
    with pytest.raises(WalkError):
        StringModule(q, 1, (("e1", 1), ("e1", 1)))
    with pytest.raises(WalkError):
        StringModule(q, 1, (("2>1/b2", 1),))


def test_projective_three_as_a_string(kappa0):
    _, q, _ = kappa0
    p3 = projective(q, 3)
    hits = [s for s in enumerate_strings(q, 7) if s.length == 7 and is_isomorphic(s.module(), p3)]
    assert len(hits) == 1
    assert hits[0].dims() == (4, 2, 2)


def test_string_hom_count_matches_solver():
    ss = STRINGS[0][:25]
    for a, b in itertools.product(ss, repeat=2):
        assert string_hom_count(a, b) == hom_dim(a.module(), b.module())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.data())
def test_projective_pairing(j, data):
    q, _ = quiver_of(TRIS[j])
    s = data.draw(st.sampled_from(STRINGS[j]))
    m = s.module()
    for i, v in enumerate(q.vertices):
        assert hom_dim(projective(q, v), m) == m.dims[i]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.data())
def test_g_vector_additivity(j, data):
    a = data.draw(st.sampled_from(STRINGS[j])).module()
    b = data.draw(st.sampled_from(STRINGS[j])).module()
    want = tuple(x + y for x, y in zip(g_vector(a), g_vector(b)))
    assert g_vector(direct_sum([a, b])) == want


def test_reflect_simple_is_zero(kappa0):
    t, q, _ = kappa0
    assert reflect(simple(q, 1), t, 1, 1).is_zero()


def reflection_cases():
    for j, t in enumerate(TRIS):
        for k in t.arc_ids:
            yield j, t, k


@pytest.mark.parametrize("j,t,k", list(reflection_cases()), ids=lambda v: str(v) if isinstance(v, int) else "")
def test_reflection_round_trip(j, t, k):
    for s in STRINGS[j]:
        m = s.module()
        out = reflect(m, t, k, 1)
        assert check_relations(out) is None
        if perp_sk(m, k):
            assert is_isomorphic(reflect(out, flip(t, k), k, -1), m)


def test_adjunction_on_many_pairs():
    rng = random.Random(7)
    count = 0
    for j, t, k in reflection_cases():
        sigma = flip(t, k)
        others = enumerate_strings(quiver_of(sigma)[0], 3)
        for _ in range(4):
            m = rng.choice(STRINGS[j]).module()
            n = rng.choice(others).module()
            lhs = hom_dim(n, reflect(m, t, k, 1))
            rhs = hom_dim(reflect(n, sigma, k, -1), m)
            assert lhs == rhs
            count += 1
    assert count >= 50
