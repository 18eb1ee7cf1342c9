"""King stability, the piecewise-linear maps T_k^{+-} and chambers along flips."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .genseed import ExchangeMatrix
from .gentlerep import StringModule
from .orbsurf import Triangulation, flip, quiver_of
from .tropical import integer_det, sign_of_row

__all__ = [
    "t_map",
    "t_map_pl",
    "ChamberPath",
    "chamber_path",
    "stability_value",
    "semistable_string",
]


def _bmat(b):
    return b.b if isinstance(b, ExchangeMatrix) else b


def t_map(theta, k: int, sign: int, b) -> tuple:
    """T_k^+ (sign > 0) or T_k^- (sign < 0) relative to the exchange matrix ``b``.

    theta'_i = theta_i + [+-b_ik]_+ theta_k for i != k, theta'_k = -theta_k.
    """
    b = _bmat(b)
    out = []
    for i, t in enumerate(theta):
        if i == k:
            out.append(-Fraction(t))
        else:
            w = max(b[i][k] if sign > 0 else -b[i][k], 0)
            out.append(Fraction(t) + w * Fraction(theta[k]))
    return tuple(out)


def t_map_pl(theta, k: int, b) -> tuple:
    """The piecewise-linear T_k: T_k^+ where theta_k >= 0, T_k^- elsewhere."""
    return t_map(theta, k, 1 if theta[k] >= 0 else -1, b)


@dataclass(frozen=True)
class ChamberPath:
    flips: tuple
    signs: tuple
    cones: tuple  # cones[j] = rays of C_j in the coordinates of kappa_j
    triangulations: tuple

    def normals(self, j):
        """Facet normals of C_j: rows dual to its rays."""
        return _dual_rows(self.cones[j])


def _dual_rows(rays):
    from .linalg import Matrix

    n = len(rays)
    g = Matrix(n, n, [[Fraction(v) for v in r] for r in rays])
    inv = g.transpose().solve(Matrix.identity(n))
    return tuple(tuple(v for v in row) for row in inv.data)


def chamber_path(kappa0: Triangulation, flips) -> ChamberPath:
    """Cones C_j = T_{k_{j+1}} ... T_{k_l} (C^+) with the signs chosen backwards.

    ``flips`` are 0-based vertex positions; kappa_j = flip(kappa_{j-1}, k_j).
    The sign of T_{k_j} is read off at the sum of the rays of C_j.
    """
    flips = tuple(flips)
    tris = [kappa0]
    for k in flips:
        tris.append(flip(tris[-1], tris[-1].arc_ids[k]))
    mats = [quiver_of(t)[1] for t in tris]
    n = kappa0.n
    rays = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    cones = [rays]
    signs = []
    for j in range(len(flips), 0, -1):
        k = flips[j - 1]
        point = [sum(r[i] for r in rays) for i in range(n)]
        if point[k] == 0:
            raise AssertionError("interior point lies on the flipped hyperplane")
        eps = 1 if point[k] > 0 else -1
        signs.append(eps)
        rays = tuple(t_map(r, k, eps, mats[j]) for r in rays)
        cones.append(rays)
    cones.reverse()
    signs.reverse()
    for c in cones:
        if abs(integer_det(c)) != 1:
            raise AssertionError("chamber is not unimodular")
        for row in _dual_rows(c):
            sign_of_row(row)
    return ChamberPath(flips, tuple(signs), tuple(cones), tuple(tris))


def stability_value(theta, dims):
    return sum(Fraction(t) * d for t, d in zip(theta, dims))


def semistable_string(s: StringModule, theta) -> str:
    """'unstable', 'semistable' or 'stable' for a string module.

    Submodules are tested through the arrow-closed subsets of the string
    basis, scanned along the walk while tracking whether the subset is
    nonempty and whether it is proper.
    """
    q = s.quiver
    nodes = s.nodes
    w = [Fraction(theta[q.index(v)]) for v in nodes]
    if sum(w) != 0:
        return "unstable"
    if len(nodes) == 1:
        return "stable"
    # state: (last node inside, some node inside, some node outside) -> min theta(S)
    best = {(True, True, False): w[0], (False, False, True): Fraction(0)}
    for i, (_, sign) in enumerate(s.letters):
        new = {}
        for (prev, has_in, has_out), val in best.items():
            for inside in (True, False):
                ok = (inside or not prev) if sign == 1 else (prev or not inside)
                if not ok:
                    continue
                key = (inside, has_in or inside, has_out or not inside)
                cand = val + (w[i + 1] if inside else 0)
                if key not in new or cand < new[key]:
                    new[key] = cand
        best = new
    vals = [v for (_, has_in, has_out), v in best.items() if has_in and has_out]
    if not vals:
        return "stable"
    low = min(vals)
    if low < 0:
        return "unstable"
    return "semistable" if low == 0 else "stable"
