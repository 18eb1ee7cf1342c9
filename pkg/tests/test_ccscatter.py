import itertools

import pytest
import sympy

import orbicluster.ccscatter as cs
import orbicluster.verify as v
from hypothesis import given, settings
from hypothesis import strategies as st

from orbicluster.ccscatter import (
    TruncSeries,
    Wall,
    arrow_closed_count,
    cc_function,
    path_product,
    string_f_polynomial,
    verify_exchange,
    wall_action,
    walls_along,
)
from orbicluster.genseed import generalized_mutate, initial_seed
from orbicluster.gentlerep import enumerate_strings, is_isomorphic
from orbicluster.orbsurf import quiver_of
from orbicluster.symbolic import LaurentPoly
from orbicluster.taufan import air_mutate, initial_pair, stau_exchange_graph
from orbicluster.tropical import tropical_path
from orbicluster.verify import (
    DIGON_PATH,
    air_along,
    check_exchange_all,
    check_scattering,
    digon_triangulations,
    pentagon_check,
    poly_from_terms,
)

ZERO3 = ((0, 0, 0),) * 3
STRINGS = enumerate_strings(quiver_of(digon_triangulations()[0])[0], 6)


@pytest.fixture(scope="module")
def row0(kappa0):
    return air_along(kappa0[0], DIGON_PATH)


def test_wall_fixes_orthogonal_monomials():
    s = TruncSeries.monomial(3, 5, (0, 1, 0))
    assert wall_action(Wall.for_rank((1, 0, 0), 1), s, ZERO3) == s


def test_wall_on_pairing_one():
    s = TruncSeries.monomial(3, 5, (1, 0, 0))
    want = s + TruncSeries.monomial(3, 5, (1, 0, 0), (1, 0, 0))
    assert wall_action(Wall.for_rank((1, 0, 0), 1), s, ZERO3) == want


def test_inverse_wall_function_expansion():
    y = sympy.Symbol("y")
    coeffs = sympy.Poly(sympy.series(1 / (1 + y + y ** 2), y, 0, 5).removeO(), y).all_coeffs()[::-1]
    s = TruncSeries.monomial(1, 4, (-1,))
    got = wall_action(Wall.for_rank((1,), 2), s, ((0,),))
    want = {((i,), (-1,)): int(c) for i, c in enumerate(coeffs) if c}
    assert got.as_dict() == want
    assert want == {((0,), (-1,)): 1, ((1,), (-1,)): -1, ((3,), (-1,)): 1, ((4,), (-1,)): -1}


def test_wall_rejects_unknown_rank():
    with pytest.raises(ValueError):
        Wall.for_rank((1, 0), 3)


def test_empty_path_is_identity(kappa0):
    _, _, b = kappa0
    s = TruncSeries.monomial(3, 6, (1, -1, 2))
    assert path_product(walls_along(b, ()), s, b.bbar_matrix()) == s


def test_scattering_along_digon_path(kappa0):
    c = check_scattering(kappa0[0], 10)
    assert c.ok, c.line()


def test_pentagon():
    c = pentagon_check(8)
    assert c.ok, c.line()


def test_sign_flip_breaks_scattering(kappa0, monkeypatch):
    real = cs.walls_along
    monkeypatch.setattr(v, "walls_along", lambda b, p: [(w, -e) for w, e in real(b, p)])
    assert not check_scattering(kappa0[0], 6).ok
    assert not pentagon_check(6).ok


def test_f_polynomials(golden, row0):
    for name, s in zip(("M1", "M2", "M3"), row0.summands):
        assert string_f_polynomial(s.string) == poly_from_terms(3, golden["F"][name])
    f3 = string_f_polynomial(row0.summands[2].string)
    assert f3.evaluate((1, 1, 1)) == 21 == arrow_closed_count(row0.summands[2].string)
    assert max(f3.terms.values()) == 3


def test_f_polynomial_of_n(kappa0, mods, golden):
    _, q, _ = kappa0
    n = next(s for s in enumerate_strings(q, 2) if s.dims() == (0, 0, 2) and is_isomorphic(s.module(), mods["N"]))
    assert string_f_polynomial(n) == poly_from_terms(3, golden["F"]["N"])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(STRINGS))
def test_f_polynomial_shape(s):
    f = string_f_polynomial(s)
    assert f.evaluate((1, 1, 1)) == arrow_closed_count(s)
    assert f.coefficient((0, 0, 0)) == 1
    assert f.coefficient(s.dims()) == 1
    assert all(all(a <= b for a, b in zip(e, s.dims())) for e in f.terms)


def test_cc_functions(kappa0, golden, row0):
    _, q, b = kappa0
    p0 = initial_pair(q, b)
    for i, s in enumerate(p0.summands):
        assert cc_function([s], b) == LaurentPoly.var(3, i)
    for name, s in zip(("M1", "M2", "M3"), row0.summands):
        assert cc_function([s], b) == poly_from_terms(3, golden["CC"][name])


def test_exchange_identity_row0(row0):
    ok, detail = verify_exchange(row0, 2)
    assert ok, detail


def test_exchange_identity_at_initial_pair(kappa0):
    _, q, b = kappa0
    p0 = initial_pair(q, b)
    for k in range(3):
        assert verify_exchange(p0, k)[0]
        new = cc_function([air_mutate(p0, k).summands[k]], b)
        assert new == generalized_mutate(initial_seed(b), k).cluster[k]


def test_exchange_identity_everywhere(kappa0):
    c = check_exchange_all(kappa0[0], 4)
    assert c.ok, c.line()


@pytest.fixture(scope="module")
def explored(kappa0):
    _, q, b = kappa0
    return stau_exchange_graph(initial_pair(q, b), 4)


def test_cc_is_injective(explored, kappa0):
    _, _, b = kappa0
    seen = {}
    for node in explored.nodes:
        for s in node.pair.summands:
            seen.setdefault(s.g, cc_function([s], b))
    values = list(seen.values())
    assert all(a != c for a, c in itertools.combinations(values, 2))


def test_quotients_pair_negatively_with_g(explored):
    # a nonzero quotient Q of a tau-rigid M has <g(M), dim Q> = -hom(M, Q) < 0
    for node in explored.nodes:
        for s in node.pair.summands:
            if s.string is None:
                continue
            for e in string_f_polynomial(s.string).terms:
                if any(e):
                    assert sum(a * b for a, b in zip(s.g, e)) < 0


def test_cc_matches_tropical_cluster(explored, kappa0):
    _, _, b = kappa0
    for node in explored.nodes:
        st_ = tropical_path(b, node.path)[-1]
        assert node.pair.gvectors == st_.g
        for s, f in zip(node.pair.summands, st_.f):
            if s.string is not None:
                assert string_f_polynomial(s.string) == f
