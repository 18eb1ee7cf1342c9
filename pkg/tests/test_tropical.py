import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbicluster.genseed import ExchangeMatrix, explore_exchange_graph, initial_seed, mutate_path
from orbicluster.tropical import check_invariants, initial_state, sign_of_row, tropical_path, tropical_step, verify_separation
from orbicluster.verify import DIGON_PATH, DIGON_B, DIGON_RAYS, poly_from_terms

R = (2, 1, 2)
B0 = ExchangeMatrix(DIGON_B[0], R)


def test_first_step():
    for k in range(3):
        s = tropical_step(initial_state(B0), k)
        assert s.c[k] == tuple(-int(j == k) for j in range(3))
        for i in range(3):
            if i == k:
                continue
            assert s.g[i] == tuple(int(j == i) for j in range(3))
            # other c-rows only pick up a multiple of e_k
            assert all(s.c[i][j] == int(j == i) for j in range(3) if j != k)


def test_chamber_rays_as_g_vectors():
    # r^j are the g-vectors reached from kappa_j along the remaining flips
    for j in range(5):
        b = ExchangeMatrix(DIGON_B[j], R)
        st_ = tropical_path(b, DIGON_PATH[j:])[-1]
        assert st_.g == DIGON_RAYS[j]


def test_f_polynomial_of_third_slot(golden):
    st_ = tropical_path(B0, DIGON_PATH)[-1]
    f = st_.f[2]
    assert f == poly_from_terms(3, golden["F"]["M3"])
    assert f.coefficient((4, 2, 2)) == 1
    assert len(f.terms) == 14


def test_separation_small_cases():
    assert verify_separation(initial_state(B0), initial_seed(B0))
    s = tropical_step(initial_state(B0), 0)
    assert s.g[0] == (-1, 0, 0)
    assert verify_separation(s, mutate_path(initial_seed(B0), (0,)))


def test_separation_and_invariants_to_depth4():
    g = explore_exchange_graph(initial_seed(B0), 4)
    for node in g.nodes:
        st_ = tropical_path(B0, node.path)[-1]
        check_invariants(st_)
        assert verify_separation(st_, node.seed)


def test_sign_of_row_rejects_mixed():
    assert sign_of_row((0, 2, 1)) == 1
    assert sign_of_row((-1, 0, 0)) == -1
    with pytest.raises(AssertionError):
        sign_of_row((1, -1, 0))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=6))
def test_invariants_along_random_paths(path):
    states = tropical_path(B0, path)
    for s in states:
        check_invariants(s)
    assert states[-1].b == mutate_path(initial_seed(B0), path).matrix
