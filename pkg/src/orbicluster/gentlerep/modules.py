"""Representations of gentle Jacobian algebras over the rationals.

Convention: an arrow ``a: i -> j`` acts as a matrix of shape
``dims[j] x dims[i]``; a path is a tuple of arrow ids in the order they are
traversed, so ``(a, b)`` means apply ``a`` first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..linalg import Matrix, block_diag, sparse_nullspace
from ..orbsurf import QuiverWithPotential

__all__ = [
    "QuiverRep",
    "RelationError",
    "check_relations",
    "path_basis",
    "projective",
    "simple",
    "hom_basis",
    "hom_dim",
    "is_isomorphic",
    "Presentation",
    "min_presentation",
    "g_vector",
    "pair_g_vector",
    "tau_hom",
    "tau_rigid_check",
    "pair_compatible",
    "direct_sum",
]


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class QuiverRep:
    quiver: QuiverWithPotential
    dims: tuple
    maps: dict

    def __post_init__(self):
        q = self.quiver
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != q.n or any(d < 0 for d in dims):
            raise ValueError(f"need {q.n} nonnegative dimensions, got {dims}")
        object.__setattr__(self, "dims", dims)
        maps = {}
        for a in q.arrows:
            shape = (dims[q.index(a.head)], dims[q.index(a.tail)])
            m = self.maps.get(a.id)
            if m is None:
                m = Matrix.zeros(*shape)
            elif not isinstance(m, Matrix):
                m = Matrix(shape[0], shape[1], m) if shape[0] else Matrix(0, shape[1])
            if m.shape != shape:
                raise ValueError(f"arrow {a.id}: matrix shape {m.shape}, expected {shape}")
            maps[a.id] = m
        unknown = set(self.maps) - set(maps)
        if unknown:
            raise ValueError(f"unknown arrows {sorted(unknown)}")
        object.__setattr__(self, "maps", maps)

    def dim(self, vertex):
        return self.dims[self.quiver.index(vertex)]

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return not any(self.dims)

    def path_map(self, path, vertex):
        """Matrix of a path starting at ``vertex`` (possibly the lazy path)."""
        m = Matrix.identity(self.dim(vertex))
        for aid in path:
            m = self.maps[aid] @ m
        return m

    def to_json(self):
        return {
            "dims": list(self.dims),
            "maps": {aid: m.to_strings() for aid, m in sorted(self.maps.items()) if not m.is_zero()},
        }

    @classmethod
    def from_json(cls, q, data):
        maps = {}
        for aid, rows in data.get("maps", {}).items():
            a = q.arrow(aid)
            dims = data["dims"]
            shape = (dims[q.index(a.head)], dims[q.index(a.tail)])
            maps[aid] = Matrix(shape[0], shape[1], [[Fraction(v) for v in row] for row in rows])
        return cls(q, tuple(data["dims"]), maps)


def check_relations(m: QuiverRep):
    """None if every relation holds, else the first violated relation."""
    for first, second in sorted(m.quiver.relations):
        if not (m.maps[second] @ m.maps[first]).is_zero():
            return (first, second)
    return None


def require_relations(m: QuiverRep):
    bad = check_relations(m)
    if bad:
        raise RelationError(f"relation {bad[0]} then {bad[1]} does not vanish")


def simple(q: QuiverWithPotential, vertex) -> QuiverRep:
    dims = tuple(int(v == vertex) for v in q.vertices)
    return QuiverRep(q, dims, {})


def path_basis(q: QuiverWithPotential, max_len: int = 64):
    """Nonzero paths from each vertex, lazy path first."""
    out = {}
    for v in q.vertices:
        paths = [()]
        frontier = [((), v)]
        while frontier:
            nxt = []
            for p, end in frontier:
                for a in q.out_arrows(end):
                    if p and (p[-1], a.id) in q.relations:
                        continue
                    np = p + (a.id,)
                    if len(np) > max_len:
                        raise RelationError("path closure does not terminate: algebra is not finite dimensional")
                    paths.append(np)
                    nxt.append((np, a.head))
            frontier = nxt
        out[v] = paths
    return out


def _path_end(q, start, path):
    return q.arrow(path[-1]).head if path else start


def projective(q: QuiverWithPotential, vertex, basis=None) -> QuiverRep:
    """P_vertex with basis the nonzero paths from ``vertex``."""
    paths = (basis or path_basis(q))[vertex]
    local = {v: [] for v in q.vertices}
    for p in paths:
        local[_path_end(q, vertex, p)].append(p)
    pos = {p: i for v in q.vertices for i, p in enumerate(local[v])}
    dims = tuple(len(local[v]) for v in q.vertices)
    maps = {}
    for a in q.arrows:
        m = Matrix.zeros(len(local[a.head]), len(local[a.tail]))
        for p in local[a.tail]:
            if p and (p[-1], a.id) in q.relations:
                continue
            np = p + (a.id,)
            m.data[pos[np]][pos[p]] = Fraction(1)
        maps[a.id] = m
    return QuiverRep(q, dims, maps)


def direct_sum(modules) -> QuiverRep:
    modules = list(modules)
    q = modules[0].quiver
    dims = tuple(sum(m.dims[i] for m in modules) for i in range(q.n))
    maps = {a.id: block_diag([m.maps[a.id] for m in modules]) for a in q.arrows}
    return QuiverRep(q, dims, maps)


def _hom_system(m: QuiverRep, n: QuiverRep):
    q = m.quiver
    offsets = {}
    total = 0
    for i, v in enumerate(q.vertices):
        offsets[v] = total
        total += n.dims[i] * m.dims[i]

    def var(v, r, c):  # entry (r, c) of X_v : M_v -> N_v
        return offsets[v] + r * m.dim(v) + c

    eqs = []
    for a in q.arrows:
        ma, na = m.maps[a.id], n.maps[a.id]
        mt, mh = m.dim(a.tail), m.dim(a.head)
        nt, nh = n.dim(a.tail), n.dim(a.head)
        # (X_head M_a - N_a X_tail)[r][c] = 0 for r < n_head, c < m_tail
        for r in range(nh):
            for c in range(mt):
                eq = {}
                for s in range(mh):
                    coef = ma.data[s][c]
                    if coef:
                        key = var(a.head, r, s)
                        eq[key] = eq.get(key, 0) + coef
                for s in range(nt):
                    coef = na.data[r][s]
                    if coef:
                        key = var(a.tail, s, c)
                        eq[key] = eq.get(key, 0) - coef
                if eq:
                    eqs.append(eq)
    return eqs, total, var


def hom_basis(m: QuiverRep, n: QuiverRep):
    """Basis of Hom(m, n) as dicts {vertex: Matrix}."""
    if m.quiver is not n.quiver and m.quiver != n.quiver:
        raise ValueError("modules over different quivers")
    eqs, total, var = _hom_system(m, n)
    q = m.quiver
    out = []
    for vec in sparse_nullspace(eqs, total):
        hom = {}
        for v in q.vertices:
            x = Matrix.zeros(n.dim(v), m.dim(v))
            for r in range(n.dim(v)):
                for c in range(m.dim(v)):
                    val = vec.get(var(v, r, c))
                    if val:
                        x.data[r][c] = val
            hom[v] = x
        out.append(hom)
    return out


def hom_dim(m: QuiverRep, n: QuiverRep) -> int:
    if m.is_zero() or n.is_zero():
        return 0
    eqs, total, _ = _hom_system(m, n)
    return len(sparse_nullspace(eqs, total))


def is_isomorphic(m: QuiverRep, n: QuiverRep, tries: int = 8, seed: int = 0) -> bool:
    """Dimension and Hom checks, then a search for an invertible intertwiner."""
    if m.dims != n.dims:
        return False
    if m.is_zero():
        return True
    hmm = hom_dim(m, m)
    if hom_dim(m, n) != hmm or hom_dim(n, m) != hmm or hom_dim(n, n) != hmm:
        return False
    basis = hom_basis(m, n)
    rng = random.Random(seed)
    q = m.quiver
    for _ in range(tries):
        coeffs = [rng.randint(-50, 50) for _ in basis]
        ok = True
        for v in q.vertices:
            d = m.dim(v)
            x = Matrix.zeros(d, d)
            for c, h in zip(coeffs, basis):
                if c:
                    x = x + h[v].scale(c)
            if d and x.det() == 0:
                ok = False
                break
        if ok:
            return True
    return False


@dataclass(frozen=True)
class Presentation:
    p1: tuple
    p0: tuple

    @property
    def g(self):
        return tuple(a - b for a, b in zip(self.p1, self.p0))


def _top_vectors(m: QuiverRep, v):
    """Vectors of M_v completing a basis of rad(M)_v to M_v."""
    q = m.quiver
    d = m.dim(v)
    span = Matrix(d, 0)
    for a in q.in_arrows(v):
        span = span.hstack(m.maps[a.id])
    basis = span.column_basis() if span.cols else Matrix(d, 0)
    chosen = []
    current = basis
    for i in range(d):
        e = Matrix.from_columns(d, [[int(i == j) for j in range(d)]])
        trial = current.hstack(e)
        if trial.rank() > current.cols:
            current = trial
            chosen.append(e.column(0))
    return chosen


def min_presentation(m: QuiverRep, basis=None) -> Presentation:
    """Multiplicities of the minimal projective presentation P^1 -> P^0 -> M."""
    require_relations(m)
    q = m.quiver
    basis = basis or path_basis(q)
    gens = []  # (vertex, vector)
    for v in q.vertices:
        for vec in _top_vectors(m, v):
            gens.append((v, vec))
    p0 = tuple(sum(1 for g, _ in gens if g == v) for v in q.vertices)
    if not gens:
        return Presentation((0,) * q.n, p0)
    projs = {v: projective(q, v, basis) for v in {g for g, _ in gens}}
    big = direct_sum([projs[v] for v, _ in gens])
    # pi_w : P^0_w -> M_w, columns follow the block order of direct_sum
    kernels = {}
    for w in q.vertices:
        cols = []
        for v, vec in gens:
            local = [p for p in basis[v] if _path_end(q, v, p) == w]
            for p in local:
                cols.append(m.path_map(p, v).apply(vec))
        pi = Matrix.from_columns(m.dim(w), cols)
        kernels[w] = pi.nullspace()
    p1 = []
    for w in q.vertices:
        omega = kernels[w]
        rad = Matrix(big.dim(w), 0)
        for a in q.in_arrows(w):
            rad = rad.hstack(big.maps[a.id] @ kernels[a.tail])
        p1.append(omega.cols - rad.rank())
    return Presentation(tuple(p1), p0)


def g_vector(m: QuiverRep, basis=None) -> tuple:
    return min_presentation(m, basis).g


def pair_g_vector(modules, projectives, q: QuiverWithPotential) -> tuple:
    """g(M, P) = g(M) - g(P), where g(0, P_v) is the basis vector at v."""
    g = [0] * q.n
    for m in modules:
        for i, x in enumerate(g_vector(m)):
            g[i] += x
    for v in projectives:
        g[q.index(v)] += 1
    return tuple(g)


def tau_hom(m: QuiverRep, n: QuiverRep, g_m=None) -> int:
    """dim Hom(n, tau m) from the pairing <g(m), dim n> = -hom(m, n) + hom(n, tau m)."""
    g_m = g_m if g_m is not None else g_vector(m)
    return sum(a * b for a, b in zip(g_m, n.dims)) + hom_dim(m, n)


def tau_rigid_check(m: QuiverRep, g_m=None) -> bool:
    return tau_hom(m, m, g_m) == 0


def pair_compatible(modules, projectives, gvecs=None) -> bool:
    """Whether (sum of modules, sum of P_v) is a tau-rigid pair."""
    modules = list(modules)
    gvecs = gvecs or [g_vector(m) for m in modules]
    for i, mi in enumerate(modules):
        for j, mj in enumerate(modules):
            if tau_hom(mi, mj, gvecs[i]) != 0:
                return False
    for v in projectives:
        if any(m.dim(v) for m in modules):
            return False
    return True
