"""End-to-end checks on the digon example and exchange-graph comparisons.

Every check returns ``Check(name, ok, detail)`` so the command line and the
test-suite can report them the same way.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .ccscatter import TruncSeries, cc_function, path_product, string_f_polynomial, verify_exchange, walls_along
from .genseed import ExchangeMatrix, GenSeed, canonical_key, explore_exchange_graph, initial_seed, matrix_mutation
from .gentlerep import QuiverRep, g_vector, is_isomorphic, pair_compatible
from .orbsurf import flip, load_triangulation, quiver_of
from .stability import chamber_path
from .symbolic import LaurentPoly
from .taufan import DEFAULT_MAX_LEN, air_mutate, initial_pair, stau_exchange_graph
from .tropical import check_invariants, tropical_path

FIXTURE_ENV = "ORBICLUSTER_FIXTURES"
DIGON_PATH = (0, 2, 1, 2)  # flips 1,3,2,3


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def fixture_root() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else Path(__file__).parent / "fixtures"


def resolve(path) -> Path:
    """A path as given, else the file of the same name under the fixture root."""
    p = Path(path)
    if p.exists():
        return p
    alt = fixture_root() / p.name
    if alt.exists():
        return alt
    raise FileNotFoundError(f"{path} (also looked in {fixture_root()})")


def load_fixture(name):
    return json.loads(resolve(name).read_text())


def digon_triangulations(root=None):
    """kappa_0 .. kappa_4 from the fixture files."""
    base = Path(root) if root else fixture_root()
    return [load_triangulation(base / f"digon_kappa{j}.json") for j in range(5)]


def poly_from_terms(nvars, terms):
    """Sum of [coeff, exps] entries; repeated monomials add up."""
    out = LaurentPoly.zero(nvars)
    for c, e in terms:
        out = out + LaurentPoly.monomial(tuple(e), c)
    return out


def pair_module(q, entry):
    return QuiverRep.from_json(q, entry)


def kappa0_modules(root=None):
    """M_{1;0}, M_{2;0}, M_{3;0} and N over P(kappa_0) as stored in the fixtures."""
    base = Path(root) if root else fixture_root()
    table = json.loads((base / "digon_pairs.json").read_text())
    q, _ = quiver_of(load_triangulation(base / "digon_kappa0.json"))
    row = table["rows"]["0"]["summands"]
    out = {f"M{i + 1}": pair_module(q, row[i]) for i in range(3)}
    out["N"] = pair_module(q, table["extra"]["N"])
    return q, out


def air_along(t, path, max_len=DEFAULT_MAX_LEN):
    q, b = quiver_of(t)
    p = initial_pair(q, b)
    for k in path:
        p = air_mutate(p, k, max_len)
    return p


def check_matrices(tris, expected=None):
    """B matrices along the flip path agree with matrix mutation."""
    checks = []
    for j, k in enumerate(DIGON_PATH):
        bj = quiver_of(tris[j])[1]
        bn = quiver_of(tris[j + 1])[1]
        flipped = quiver_of(flip(tris[j], tris[j].arc_ids[k]))[1]
        ok = flipped == bn and matrix_mutation(bj, k) == bn
        checks.append(Check(f"B(kappa_{j + 1}) = mu_{k + 1} B(kappa_{j})", ok))
    if expected:
        for j, b in expected.items():
            got = quiver_of(tris[j])[1].b
            checks.append(Check(f"B(kappa_{j}) as expected", got == b, "" if got == b else str(got)))
    return checks


def check_chambers(t0, expected_r=None):
    cp = chamber_path(t0, DIGON_PATH)
    checks = [Check("chamber signs are (+,+,+,+)", cp.signs == (1, 1, 1, 1), str(cp.signs))]
    if expected_r:
        for j, cols in expected_r.items():
            got = [tuple(int(v) for v in r) for r in cp.cones[j]]
            checks.append(Check(f"r-vectors at kappa_{j}", got == [tuple(c) for c in cols], str(got)))
    return checks


def check_kappa0_values(root=None):
    """g-vectors, F-polynomials and CC functions of the kappa_0 modules, and the exchange identity."""
    golden = load_fixture("golden_kappa0.json") if root is None else json.loads((Path(root) / "golden_kappa0.json").read_text())
    q, mods = kappa0_modules(root)
    t0 = digon_triangulations(root)[0]
    _, b0 = quiver_of(t0)
    p = air_along(t0, DIGON_PATH)
    n_pair = air_mutate(p, 2)
    found = {"M1": p.summands[0], "M2": p.summands[1], "M3": p.summands[2], "N": n_pair.summands[2]}
    checks = []
    for name, m in mods.items():
        g = g_vector(m)
        checks.append(Check(f"g({name})", list(g) == golden["g"][name], str(g)))
        s = found[name]
        iso = is_isomorphic(s.module(), m)
        checks.append(Check(f"AIR mutation realizes {name}", iso, s.render()))
        f = string_f_polynomial(s.string)
        want_f = poly_from_terms(3, golden["F"][name])
        checks.append(Check(f"F({name})", f == want_f, f.render(prefix="y")))
        cc = cc_function([s], b0)
        want_cc = poly_from_terms(3, golden["CC"][name])
        checks.append(Check(f"CC({name})", cc == want_cc, cc.render()))
    ok, diff = verify_exchange(p, 2)
    checks.append(Check("CC(M3) CC(N) = CC(M1)^2 + CC(M1) CC(M2) + CC(M2)^2", ok, diff))
    return checks


def check_pairs(root=None):
    base = Path(root) if root else fixture_root()
    table = json.loads((base / "digon_pairs.json").read_text())
    checks = []
    for j, row in sorted(table["rows"].items()):
        t = load_triangulation(base / row["triangulation"])
        q, _ = quiver_of(t)
        p = air_along(t, [k - 1 for k in row["air_path"]])
        ok = [list(g) for g in p.gvectors] == row["g"]
        for s, entry in zip(p.summands, row["summands"]):
            if "projective" in entry:
                ok = ok and s.is_shifted_projective and s.vertex == entry["projective"]
            else:
                ok = ok and not s.is_shifted_projective and is_isomorphic(s.module(), pair_module(q, entry))
        mods = [pair_module(q, e) for e in row["summands"] if "projective" not in e]
        projs = [e["projective"] for e in row["summands"] if "projective" in e]
        ok = ok and pair_compatible(mods, projs)
        checks.append(Check(f"pairs at kappa_{j}", ok, str(p.gvectors)))
    return checks


def graph_correspondence(t, depth, max_len=DEFAULT_MAX_LEN, jobs=1):
    """Compare the AIR exchange graph with the seed exchange graph.

    Each pair is sent to the seed (CC of its summands, B rebuilt from its
    c-vectors); the map must be a bijection on nodes and on edges.
    """
    q, b0 = quiver_of(t)
    sg = explore_exchange_graph(initial_seed(b0), depth, jobs)
    tg = stau_exchange_graph(initial_pair(q, b0), depth, max_len)
    seed_index = sg.index()
    images = []
    for node in tg.nodes:
        p = node.pair
        cluster = [cc_function([s], b0) for s in p.summands]
        seed = GenSeed(cluster, ExchangeMatrix(p.b_matrix(), b0.r))
        images.append(seed_index.get(canonical_key(seed)))
    problems = []
    if len(tg.nodes) != len(sg.nodes):
        problems.append(f"{len(tg.nodes)} pairs vs {len(sg.nodes)} seeds")
    if None in images:
        problems.append(f"{images.count(None)} pairs have no matching seed")
    elif len(set(images)) != len(images):
        problems.append("two pairs map to the same seed")
    else:
        mapped = {(min(images[u], images[v]), max(images[u], images[v])) for u, v in tg.edges}
        if mapped != set(sg.edges):
            problems.append("edge sets differ")
    return Check(f"pairs and seeds agree to depth {depth}", not problems,
                 "; ".join(problems) or f"{len(tg.nodes)} nodes, {len(tg.edges)} edges"), tg, sg


def check_exchange_all(t, depth, max_len=DEFAULT_MAX_LEN):
    q, b0 = quiver_of(t)
    tg = stau_exchange_graph(initial_pair(q, b0), depth, max_len)
    bad = []
    for i, node in enumerate(tg.nodes):
        for k in range(node.pair.n):
            ok, _ = verify_exchange(node.pair, k, max_len=max_len)
            if not ok:
                bad.append((i, k + 1))
    return Check(f"exchange identity at every node to depth {depth}", not bad,
                 f"failures at {bad}" if bad else f"{len(tg.nodes)} nodes")


def check_scattering(t0, order=10, path=DIGON_PATH):
    """p_t(x^g) = x^g F along every prefix of ``path``."""
    _, b0 = quiver_of(t0)
    bbar = b0.bbar_matrix()
    states = tropical_path(b0, path)
    walls = walls_along(b0, path)
    bad = []
    for j in range(1, len(path) + 1):
        st = states[j]
        for i in range(b0.n):
            lhs = path_product(walls[:j], TruncSeries.monomial(b0.n, order, st.g[i]), bbar)
            rhs = TruncSeries.from_ypoly(st.f[i], st.g[i], order)
            if lhs != rhs:
                bad.append((j, i + 1))
    return Check(f"wall-crossing reproduces x^g F to order {order}", not bad, str(bad) if bad else "")


def pentagon_check(order=8):
    """Two wall-crossing paths around the joint of the rank-2 piece (arcs 1, 2)."""
    b = ExchangeMatrix(((0, -1), (2, 0)), (2, 1))
    bbar = b.bbar_matrix()
    ok = True
    monos = [(1, 0), (0, 1), (-1, 0), (0, -1), (2, -1), (-1, 2)]
    one = walls_along(b, (0, 1, 0))
    two = walls_along(b, (1, 0, 1))
    for m in monos:
        s = TruncSeries.monomial(2, order, m)
        if path_product(one, s, bbar) != path_product(two, s, bbar):
            ok = False
    for ny in ((1, 0), (0, 1)):
        s = TruncSeries.monomial(2, order, (0, 0), ny)
        if path_product(one, s, bbar) != path_product(two, s, bbar):
            ok = False
    return Check(f"paths 1,2,1 and 2,1,2 agree to order {order}", ok)


def check_separation(t, depth):
    _, b0 = quiver_of(t)
    sg = explore_exchange_graph(initial_seed(b0), depth)
    from .tropical import verify_separation

    bad = 0
    for node in sg.nodes:
        st = tropical_path(b0, node.path)[-1]
        check_invariants(st)
        bad += not verify_separation(st, node.seed)
    return Check(f"separation formula at {len(sg.nodes)} seeds", bad == 0, f"{bad} failures" if bad else "")


DIGON_B = {
    4: ((0, 1, -2), (-2, 0, 2), (2, -1, 0)),
    3: ((0, -1, 2), (2, 0, -2), (-2, 1, 0)),
    2: ((0, 1, 0), (-2, 0, 2), (0, -1, 0)),
    1: ((0, 1, 0), (-2, 0, -2), (0, 1, 0)),
    0: ((0, -1, 0), (2, 0, -2), (0, 1, 0)),
}

# columns r_1^j, r_2^j, r_3^j
DIGON_RAYS = {
    4: ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    3: ((1, 0, 0), (0, 1, 0), (0, 2, -1)),
    2: ((1, 0, 0), (0, -1, 1), (0, -2, 1)),
    1: ((1, 0, 0), (0, 1, -1), (0, 0, -1)),
    0: ((-1, 0, 0), (0, 1, -1), (0, 0, -1)),
}


def verify_main(root=None, depth=4, order=10):
    """The whole worked example, as a list of checks."""
    tris = digon_triangulations(root)
    checks = []
    checks += check_matrices(tris, DIGON_B)
    checks += check_chambers(tris[0], DIGON_RAYS)
    checks += check_pairs(root)
    checks += check_kappa0_values(root)
    checks.append(check_separation(tris[0], depth))
    checks.append(graph_correspondence(tris[0], depth)[0])
    checks.append(check_scattering(tris[0], order))
    checks.append(pentagon_check(min(order, 8)))
    return checks


def fraction_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
