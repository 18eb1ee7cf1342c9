"""Support tau-tilting pairs, AIR mutation and the g-vector fan.

A pair is stored slot by slot, one indecomposable summand per cluster index.
Mutation is driven by g-vectors: the new ray is

    g_k' = -g_k + sum_i [-sgn(c_k) b_ik(t)]_+ g_i

with B(t) rebuilt from the c-vectors, and the new summand is then found among
string modules (or is (0, P_j) when the ray is e_j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .genseed import ExchangeMatrix
from .gentlerep import (
    StringModule,
    enumerate_strings,
    g_vector,
    pair_compatible,
    path_basis,
    projective,
    tau_rigid_check,
)
from .linalg import Matrix
from .orbsurf import QuiverWithPotential
from .tropical import integer_det, reconstruct_b, sign_of_row

__all__ = [
    "RealizationError",
    "Summand",
    "TauRigidPair",
    "FanCone",
    "initial_pair",
    "realize",
    "air_mutate",
    "StauNode",
    "StauGraph",
    "stau_exchange_graph",
    "cone_of",
    "cones_separated",
]

# rays at depth 4 on the digon already need 15-letter strings
DEFAULT_MAX_LEN = 24


class RealizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Summand:
    """An indecomposable tau-rigid pair: a string module, or (0, P_vertex)."""

    g: tuple
    string: StringModule | None = None
    vertex: object = None

    @property
    def is_shifted_projective(self):
        return self.string is None

    def module(self):
        return self.string.module() if self.string is not None else None

    def render(self):
        if self.string is None:
            return f"P{self.vertex}[1]"
        return self.string.render()

    def to_json(self):
        if self.string is None:
            return {"g": list(self.g), "projective": self.vertex}
        return {"g": list(self.g), "string": self.string.to_json()}


@dataclass(frozen=True)
class TauRigidPair:
    quiver: QuiverWithPotential
    b0: ExchangeMatrix
    summands: tuple

    @property
    def n(self):
        return len(self.summands)

    @property
    def gvectors(self):
        return tuple(s.g for s in self.summands)

    @property
    def module_summands(self):
        return [s.module() for s in self.summands if s.string is not None]

    @property
    def projective_summands(self):
        return [s.vertex for s in self.summands if s.string is None]

    def key(self):
        return tuple(sorted(self.gvectors))

    def is_support_tau_tilting(self):
        return self.n == self.quiver.n and abs(integer_det(self.gvectors)) == 1

    def c_vectors(self):
        """Rows c_i with c_i . g_j = delta_ij."""
        g = Matrix(self.n, self.n, [list(r) for r in self.gvectors])
        inv = g.transpose().solve(Matrix.identity(self.n))
        if any(v.denominator != 1 for row in inv.data for v in row):
            raise AssertionError("g-vectors are not a Z-basis")
        return tuple(tuple(int(v) for v in row) for row in inv.data)

    def b_matrix(self):
        return reconstruct_b(self.c_vectors(), self.b0)

    def verify(self):
        modules = self.module_summands
        gvecs = [s.g for s in self.summands if s.string is not None]
        return pair_compatible(modules, self.projective_summands, gvecs)

    def to_json(self):
        return {"summands": [s.to_json() for s in self.summands]}


def initial_pair(q: QuiverWithPotential, b0: ExchangeMatrix) -> TauRigidPair:
    """(0, A): every slot holds a shifted projective, with g = e_i."""
    n = q.n
    summands = tuple(Summand(tuple(int(i == j) for j in range(n)), None, v)
                     for i, v in enumerate(q.vertices))
    return TauRigidPair(q, b0, summands)


@lru_cache(maxsize=None)
def _proj_dims(q):
    basis = path_basis(q)
    return {v: projective(q, v, basis).dims for v in q.vertices}


@lru_cache(maxsize=None)
def realize(q: QuiverWithPotential, g: tuple, max_len: int = DEFAULT_MAX_LEN) -> Summand:
    """The indecomposable tau-rigid pair with g-vector ``g``.

    For a tau-rigid module the minimal presentation has P^0 = [-g]_+, so the
    top is [-g]_+ and the dimension vector is bounded by that of P^0.
    """
    n = q.n
    if sum(abs(x) for x in g) == 1 and max(g) == 1:
        return Summand(tuple(g), None, q.vertices[g.index(1)])
    top = tuple(max(-x, 0) for x in g)
    pdims = _proj_dims(q)
    bound = [0] * n
    for i, v in enumerate(q.vertices):
        for j in range(n):
            bound[j] += top[i] * pdims[v][j]
    for s in enumerate_strings(q, max_len, dim_bound=bound):
        if s.top() != top:
            continue
        m = s.module()
        if g_vector(m) == tuple(g) and tau_rigid_check(m, g):
            return Summand(tuple(g), s, None)
    raise RealizationError(f"realization bound exceeded: no string of length <= {max_len} has g-vector {g}")


def air_mutate(p: TauRigidPair, k: int, max_len: int = DEFAULT_MAX_LEN, check: bool = True) -> TauRigidPair:
    """Replace slot ``k`` by the other completion of the remaining summands."""
    if not 0 <= k < p.n:
        raise IndexError(f"slot {k} out of range")
    c = p.c_vectors()
    b = reconstruct_b(c, p.b0)
    eps = sign_of_row(c[k])
    g = [-x for x in p.gvectors[k]]
    for i in range(p.n):
        w = max(-eps * b[i][k], 0)
        if w:
            g = [a + w * x for a, x in zip(g, p.gvectors[i])]
    new = realize(p.quiver, tuple(g), max_len)
    summands = list(p.summands)
    summands[k] = new
    out = TauRigidPair(p.quiver, p.b0, tuple(summands))
    if check and not out.verify():
        raise AssertionError(f"mutation at slot {k} produced a pair that is not tau-rigid")
    return out


@dataclass
class StauNode:
    key: tuple
    pair: TauRigidPair
    depth: int
    path: tuple


@dataclass
class StauGraph:
    nodes: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)

    def index(self):
        return {node.key: i for i, node in enumerate(self.nodes)}

    def counts_by_depth(self):
        out: dict = {}
        for node in self.nodes:
            out[node.depth] = out.get(node.depth, 0) + 1
        return [out[d] for d in sorted(out)]

    def to_dot(self, name="stau"):
        lines = [f"graph {name} {{"]
        for i, node in enumerate(self.nodes):
            label = " ".join("(" + ",".join(map(str, g)) + ")" for g in node.key)
            lines.append(f'  n{i} [label="{label}"];')
        for (u, v), k in sorted(self.edges.items()):
            lines.append(f'  n{u} -- n{v} [label="{k + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "nodes": [{"depth": n.depth, "path": [k + 1 for k in n.path], "pair": n.pair.to_json()}
                      for n in self.nodes],
            "edges": [[u, v, k + 1] for (u, v), k in sorted(self.edges.items())],
        }


def stau_exchange_graph(start: TauRigidPair, depth: int, max_len: int = DEFAULT_MAX_LEN,
                        check: bool = True) -> StauGraph:
    """Breadth-first AIR mutation, nodes keyed by their sorted g-vectors."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    graph = StauGraph()
    index = {start.key(): 0}
    graph.nodes.append(StauNode(start.key(), start, 0, ()))
    frontier = [0]
    for d in range(depth):
        nxt = []
        for u in frontier:
            node = graph.nodes[u]
            for k in range(start.n):
                p = air_mutate(node.pair, k, max_len, check)
                v = index.get(p.key())
                if v is None:
                    v = len(graph.nodes)
                    index[p.key()] = v
                    graph.nodes.append(StauNode(p.key(), p, d + 1, node.path + (k,)))
                    nxt.append(v)
                graph.edges.setdefault((min(u, v), max(u, v)), k)
        frontier = nxt
    return graph


@dataclass(frozen=True)
class FanCone:
    rays: tuple
    normals: tuple

    def contains(self, x) -> bool:
        return all(sum(a * b for a, b in zip(c, x)) >= 0 for c in self.normals)

    def interior_point(self):
        return tuple(sum(r[i] for r in self.rays) for i in range(len(self.rays[0])))


def cone_of(p: TauRigidPair) -> FanCone:
    if abs(integer_det(p.gvectors)) != 1:
        raise AssertionError(f"g-vectors {p.gvectors} are not unimodular")
    normals = p.c_vectors()
    for c in normals:
        sign_of_row(c)
    return FanCone(p.gvectors, normals)


def cones_separated(a: FanCone, b: FanCone) -> bool:
    """Whether a facet normal of one cone weakly separates the other cone from it."""
    for x, y in ((a, b), (b, a)):
        for c in x.normals:
            if all(sum(Fraction(u) * v for u, v in zip(c, r)) <= 0 for r in y.rays):
                return True
    return False
