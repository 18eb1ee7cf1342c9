"""Labeled seeds of generalized cluster algebras and their exchange graphs.

A seed is a cluster of Laurent polynomials in the initial variables together
with an exchange matrix ``B``, a tuple ``r`` of positive integers (``r_j``
divides column ``j`` of ``B``) and the coefficients of the exchange
polynomials.  Mutation at ``k`` replaces ``x_k`` by

    x_k' = x_k^{-1} * sum_l c_{k,l} u^l v^{r_k - l},

with ``u = prod x_j^{[b_jk / r_k]_+}`` and ``v = prod x_j^{[-b_jk / r_k]_+}``.
Indices are 0-based throughout the Python API.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .symbolic import LaurentPoly, laurent_divexact

__all__ = [
    "ExchangeMatrix",
    "GenSeed",
    "ExchangeGraph",
    "matrix_mutation",
    "initial_seed",
    "generalized_mutate",
    "mutate_path",
    "hat_y",
    "canonical_form",
    "explore_exchange_graph",
    "seed_from_json",
    "MAX_CANONICAL_RANK",
]

MAX_CANONICAL_RANK = 12


def _sgn(a):
    return (a > 0) - (a < 0)


def skew_symmetrizer(b):
    """Positive integer diagonal d with d_i b_ij = -d_j b_ji, or None."""
    n = len(b)
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j:
                    if b[i][i]:
                        return None
                    continue
                if (b[i][j] == 0) != (b[j][i] == 0):
                    return None
                if b[i][j] == 0:
                    continue
                if _sgn(b[i][j]) == _sgn(b[j][i]):
                    return None
                dj = d[i] * Fraction(b[i][j], -b[j][i])
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    return None
    scale = lcm(*(x.denominator for x in d)) if d else 1
    return tuple(int(x * scale) for x in d)


@dataclass(frozen=True)
class ExchangeMatrix:
    b: tuple
    r: tuple

    def __post_init__(self):
        b = tuple(tuple(int(v) for v in row) for row in self.b)
        r = tuple(int(v) for v in self.r)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "r", r)
        n = len(b)
        if any(len(row) != n for row in b):
            raise ValueError("exchange matrix must be square")
        if len(r) != n:
            raise ValueError(f"r has length {len(r)}, expected {n}")
        if any(v <= 0 for v in r):
            raise ValueError("entries of r must be positive")
        for j in range(n):
            for i in range(n):
                if b[i][j] % r[j]:
                    raise ValueError(f"r_{j + 1} = {r[j]} does not divide column {j + 1}")
        if skew_symmetrizer(b) is None:
            raise ValueError("matrix is not skew-symmetrizable")

    @property
    def n(self):
        return len(self.b)

    def bbar(self, i, j):
        return self.b[i][j] // self.r[j]

    def bbar_matrix(self):
        return tuple(tuple(self.bbar(i, j) for j in range(self.n)) for i in range(self.n))

    def column(self, j):
        return tuple(self.b[i][j] for i in range(self.n))

    def permuted(self, perm):
        """Matrix with new index i taking old index perm[i]."""
        b = tuple(tuple(self.b[p][q] for q in perm) for p in perm)
        return ExchangeMatrix(b, tuple(self.r[p] for p in perm))

    def to_json(self):
        return {"b": [list(row) for row in self.b], "r": list(self.r)}


def matrix_mutation(m: ExchangeMatrix, k: int) -> ExchangeMatrix:
    n = m.n
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for rank {n}")
    b = m.b
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + _sgn(b[i][k]) * max(b[i][k] * b[k][j], 0))
        new.append(tuple(row))
    return ExchangeMatrix(tuple(new), m.r)


def default_theta(r):
    return tuple((1,) * (ri + 1) for ri in r)


def _check_theta(theta, r):
    if len(theta) != len(r):
        raise ValueError("one coefficient tuple per index is required")
    for i, (cs, ri) in enumerate(zip(theta, r)):
        if len(cs) != ri + 1:
            raise ValueError(f"theta_{i + 1} needs {ri + 1} coefficients")
        if cs[0] != 1 or cs[-1] != 1:
            raise ValueError(f"theta_{i + 1} is not monic")
        if tuple(cs) != tuple(reversed(cs)):
            raise ValueError(f"theta_{i + 1} is not palindromic")
        if any(c < 0 for c in cs):
            raise ValueError(f"theta_{i + 1} has a negative coefficient")


@dataclass(frozen=True)
class GenSeed:
    cluster: tuple
    matrix: ExchangeMatrix
    theta: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "cluster", tuple(self.cluster))
        theta = self.theta if self.theta is not None else default_theta(self.matrix.r)
        theta = tuple(tuple(int(c) for c in cs) for cs in theta)
        _check_theta(theta, self.matrix.r)
        object.__setattr__(self, "theta", theta)
        if len(self.cluster) != self.matrix.n:
            raise ValueError("cluster size does not match the matrix")
        if any(x.is_zero() for x in self.cluster):
            raise ValueError("cluster entries must be nonzero")

    @property
    def n(self):
        return self.matrix.n

    def permuted(self, perm):
        return GenSeed(
            tuple(self.cluster[p] for p in perm),
            self.matrix.permuted(perm),
            tuple(self.theta[p] for p in perm),
        )


def initial_seed(m: ExchangeMatrix, theta=None) -> GenSeed:
    n = m.n
    return GenSeed(tuple(LaurentPoly.var(n, i) for i in range(n)), m, theta)


def exchange_polynomial(theta_k, u, v):
    """theta_k(u, v) = sum_l c_l u^l v^{r-l} for ring elements u, v."""
    r = len(theta_k) - 1
    total = None
    for ell, c in enumerate(theta_k):
        if not c:
            continue
        term = (u ** ell) * (v ** (r - ell)) * c
        total = term if total is None else total + term
    return total


def generalized_mutate(s: GenSeed, k: int) -> GenSeed:
    m = s.matrix
    if not 0 <= k < m.n:
        raise IndexError(f"mutation index {k} out of range for rank {m.n}")
    n = m.n
    u = LaurentPoly.one(s.cluster[0].nvars)
    v = LaurentPoly.one(s.cluster[0].nvars)
    for j in range(n):
        e = m.bbar(j, k)
        if e > 0:
            u = u * s.cluster[j] ** e
        elif e < 0:
            v = v * s.cluster[j] ** (-e)
    rhs = exchange_polynomial(s.theta[k], u, v)
    new_x = laurent_divexact(rhs, s.cluster[k])
    cluster = list(s.cluster)
    cluster[k] = new_x
    return GenSeed(tuple(cluster), matrix_mutation(m, k), s.theta)


def mutate_path(s: GenSeed, path) -> GenSeed:
    for k in path:
        s = generalized_mutate(s, k)
    return s


def hat_y(m: ExchangeMatrix, j: int) -> LaurentPoly:
    """The monomial prod_i x_i^{b_ij / r_j}."""
    if not 0 <= j < m.n:
        raise IndexError(f"index {j} out of range for rank {m.n}")
    return LaurentPoly.monomial(tuple(m.bbar(i, j) for i in range(m.n)))


def hat_ys(m: ExchangeMatrix):
    return [hat_y(m, j) for j in range(m.n)]


def _seed_key(s: GenSeed):
    return (
        tuple(x.render() for x in s.cluster),
        tuple(v for row in s.matrix.b for v in row),
        s.matrix.r,
        s.theta,
    )


def canonical_form(s: GenSeed):
    """Least representative over simultaneous permutations, and the permutation.

    The returned permutation ``perm`` satisfies ``canonical.cluster[i] ==
    s.cluster[perm[i]]``.
    """
    n = s.n
    if n > MAX_CANONICAL_RANK:
        raise ValueError(f"canonicalization is limited to rank {MAX_CANONICAL_RANK}")
    rendered = [x.render() for x in s.cluster]
    best = None
    best_perm = None
    for perm in itertools.permutations(range(n)):
        key = (
            tuple(rendered[p] for p in perm),
            tuple(s.matrix.b[p][q] for p in perm for q in perm),
            tuple(s.matrix.r[p] for p in perm),
            tuple(s.theta[p] for p in perm),
        )
        if best is None or key < best:
            best, best_perm = key, perm
    return s.permuted(best_perm), best_perm


def canonical_key(s: GenSeed):
    return _seed_key(canonical_form(s)[0])


@dataclass
class GraphNode:
    key: tuple
    seed: GenSeed
    depth: int
    path: tuple


@dataclass
class ExchangeGraph:
    nodes: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)

    def index(self):
        return {node.key: i for i, node in enumerate(self.nodes)}

    def edge_set(self):
        return set(self.edges)

    def counts_by_depth(self):
        out: dict = {}
        for node in self.nodes:
            out[node.depth] = out.get(node.depth, 0) + 1
        return [out[d] for d in sorted(out)]

    def to_dot(self, name="exchange"):
        lines = [f"graph {name} {{"]
        for i, node in enumerate(self.nodes):
            path = ",".join(str(k + 1) for k in node.path) or "root"
            lines.append(f'  n{i} [label="{i}: {path}"];')
        for (u, v), label in sorted(self.edges.items()):
            lines.append(f'  n{u} -- n{v} [label="{label + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _expand(seed: GenSeed):
    """Mutations of a labeled seed in every direction, with their keys."""
    out = []
    for k in range(seed.n):
        nb = generalized_mutate(seed, k)
        out.append((k, nb, canonical_key(nb)))
    return out


def explore_exchange_graph(s0: GenSeed, depth: int, jobs: int = 1) -> ExchangeGraph:
    """Breadth-first exploration of unlabeled seeds within ``depth`` mutations.

    Edges are recorded for every mutation out of a node of depth < ``depth``;
    an edge label is the labeled index (in ``s0``'s labeling) used from the
    endpoint discovered first.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    graph = ExchangeGraph()
    index = {}
    root_key = canonical_key(s0)
    graph.nodes.append(GraphNode(root_key, s0, 0, ()))
    index[root_key] = 0
    frontier = [0]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for d in range(depth):
            seeds = [graph.nodes[i].seed for i in frontier]
            results = list(pool.map(_expand, seeds)) if pool else [_expand(s) for s in seeds]
            nxt = []
            for u, expansions in zip(frontier, results):
                for k, nb, key in expansions:
                    v = index.get(key)
                    if v is None:
                        v = len(graph.nodes)
                        index[key] = v
                        graph.nodes.append(GraphNode(key, nb, d + 1, graph.nodes[u].path + (k,)))
                        nxt.append(v)
                    edge = (min(u, v), max(u, v))
                    graph.edges.setdefault(edge, k)
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    return graph


def seed_from_json(data: dict) -> GenSeed:
    m = ExchangeMatrix(data["b"], data.get("r") or [1] * len(data["b"]))
    return initial_seed(m, data.get("theta"))
