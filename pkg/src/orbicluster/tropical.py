"""c-vectors, g-vectors and F-polynomials along mutation paths.

Rows of ``c`` and ``g`` are the vectors of the current seed, written in the
coordinates of the root seed.  One step at ``k`` uses

    c_k' = -c_k,   c_i' = c_i + (r_k / r_i) b_ki [-+c_k]_+   (i != k, sign by b_ik)
    g_k' = -g_k + sum_j [b_jk]_+ g_j - sum_j (r_k / r_j) [c_kj]_+ b^0_j
    F_k' F_k = theta_k(prod y^[c_k]_+ F^[bbar_.k]_+, prod y^[-c_k]_+ F^[-bbar_.k]_+)

where ``[-+c_k]_+`` means ``[-c_k]_+`` when ``b_ik > 0`` and ``[c_k]_+``
otherwise, and ``b^0_j`` is column ``j`` of the root matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .genseed import ExchangeMatrix, GenSeed, default_theta, exchange_polynomial, hat_ys, matrix_mutation
from .symbolic import YPoly, laurent_divexact, substitute_monomials

__all__ = [
    "TropicalState",
    "initial_state",
    "tropical_step",
    "tropical_path",
    "verify_separation",
    "sign_of_row",
    "reconstruct_b",
    "integer_det",
    "check_invariants",
]


def _pos(a):
    return a if a > 0 else 0


def sign_of_row(row) -> int:
    """Common sign of a sign-coherent nonzero vector; raises otherwise."""
    pos = any(v > 0 for v in row)
    neg = any(v < 0 for v in row)
    if pos and neg:
        raise AssertionError(f"vector {row} is not sign-coherent")
    if not pos and not neg:
        raise AssertionError("zero c-vector")
    return 1 if pos else -1


@dataclass(frozen=True)
class TropicalState:
    path: tuple
    c: tuple
    g: tuple
    f: tuple
    b: ExchangeMatrix
    b0: ExchangeMatrix
    theta: tuple

    @property
    def n(self):
        return self.b.n


def initial_state(b0: ExchangeMatrix, theta=None) -> TropicalState:
    n = b0.n
    eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return TropicalState((), eye, eye, tuple(YPoly.one(n) for _ in range(n)), b0, b0,
                         theta if theta is not None else default_theta(b0.r))


def tropical_step(s: TropicalState, k: int) -> TropicalState:
    n = s.n
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for rank {n}")
    b, r, b0 = s.b.b, s.b.r, s.b0.b
    ck = s.c[k]
    sign_of_row(ck)

    c = []
    for i in range(n):
        if i == k:
            c.append(tuple(-v for v in ck))
            continue
        # split on the sign of b_ik, as in the displayed recursion
        part = [_pos(-v) for v in ck] if b[i][k] > 0 else [_pos(v) for v in ck]
        coef = Fraction(r[k] * b[k][i], r[i])
        row = [ci + coef * p for ci, p in zip(s.c[i], part)]
        if any(x.denominator != 1 for x in row):
            raise AssertionError("non-integral c-vector update")
        c.append(tuple(int(x) for x in row))

    gk = [-v for v in s.g[k]]
    for j in range(n):
        if b[j][k] > 0:
            gk = [a + b[j][k] * v for a, v in zip(gk, s.g[j])]
    for j in range(n):
        w = Fraction(r[k], r[j]) * _pos(ck[j])
        if w:
            gk = [a - w * b0[i][j] for i, a in enumerate(gk)]
    if any(Fraction(v).denominator != 1 for v in gk):
        raise AssertionError("non-integral g-vector update")
    g = list(s.g)
    g[k] = tuple(int(v) for v in gk)

    one = YPoly.one(n)
    u, v = one, one
    for i in range(n):
        if ck[i] > 0:
            u = u * YPoly.monomial(tuple(ck[i] * (j == i) for j in range(n)))
        elif ck[i] < 0:
            v = v * YPoly.monomial(tuple(-ck[i] * (j == i) for j in range(n)))
        e = s.b.bbar(i, k)
        if e > 0:
            u = u * s.f[i] ** e
        elif e < 0:
            v = v * s.f[i] ** (-e)
    rhs = exchange_polynomial(s.theta[k], u, v)
    fk = YPoly.from_laurent(laurent_divexact(rhs, s.f[k]))
    f = list(s.f)
    f[k] = fk

    return TropicalState(s.path + (k,), tuple(c), tuple(g), tuple(f),
                         matrix_mutation(s.b, k), s.b0, s.theta)


def tropical_path(b0: ExchangeMatrix, path, theta=None):
    """States along ``path``, starting with the root state."""
    states = [initial_state(b0, theta)]
    for k in path:
        states.append(tropical_step(states[-1], k))
    return states


def verify_separation(s: TropicalState, seed: GenSeed) -> bool:
    """Check x_{j;t} = x^{g_j} F_j(yhat) for every j."""
    ys = hat_ys(s.b0)
    for j in range(s.n):
        rhs = substitute_monomials(s.f[j], ys).shift(s.g[j])
        if rhs != seed.cluster[j]:
            return False
    return True


def reconstruct_b(c, b0: ExchangeMatrix):
    """b_ij(t) = c_i . Bbar . (r_j c_j)^T from the root matrix and c-rows."""
    n = b0.n
    bbar = b0.bbar_matrix()
    r = b0.r
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(sum(c[i][p] * bbar[p][q] * r[j] * c[j][q]
                           for p in range(n) for q in range(n)))
        out.append(tuple(row))
    return tuple(out)


def integer_det(m) -> int:
    """Exact determinant by fraction-valued elimination."""
    a = [[Fraction(v) for v in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f:
                for j in range(col, n):
                    a[i][j] -= f * a[col][j]
    return int(det)


def check_invariants(s: TropicalState):
    """Assert sign-coherence, unimodularity, duality and B reconstruction."""
    n = s.n
    for row in s.c:
        sign_of_row(row)
    if abs(integer_det(s.g)) != 1:
        raise AssertionError(f"g-vectors {s.g} are not a Z-basis")
    for i in range(n):
        for j in range(n):
            if sum(a * b for a, b in zip(s.c[i], s.g[j])) != int(i == j):
                raise AssertionError("c-rows are not dual to g-rows")
    if reconstruct_b(s.c, s.b0) != s.b.b:
        raise AssertionError("B(t) differs from its c-vector reconstruction")
    for fpoly in s.f:
        if fpoly.coefficient((0,) * n) != 1:
            raise AssertionError("F-polynomial without constant term 1")
