"""Triangulations of unpunctured surfaces with order-3 orbifold points.

A triangulation is pure gluing data.  Arcs carry integer ids and a pending
flag; boundary segments are string labels.  A non-singular triangle lists its
three sides in clockwise order, a singular triangle names the pending arc that
cuts it off.

Quiver rule: inside a non-singular triangle with clockwise sides (s0, s1, s2)
there is an arrow s_p -> s_{p+1} whenever both sides are arcs.  Arrow ids are
``"tail>head/third"`` where ``third`` is the remaining side, and the loop at a
pending arc ``j`` is ``"e{j}"``.

Flip rules (sides rotated so that the flipped arc ``k`` comes first):

    quadrilateral:  (k, a, b), (k, c, d)  ->  (k, b, c), (k, d, a)
    pending:        (k, a, b)             ->  (k, b, a)

The pending rule moves the loop ``k`` to the other vertex of the digon bounded
by ``a`` and ``b``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .genseed import ExchangeMatrix

__all__ = [
    "NonSingular",
    "Singular",
    "Triangulation",
    "Arrow",
    "QuiverWithPotential",
    "TriangulationError",
    "validate",
    "quiver_of",
    "flip",
    "flip_local",
    "flip_graph",
    "gentle_violations",
    "load_triangulation",
    "triangulation_from_json",
]


class TriangulationError(ValueError):
    pass


@dataclass(frozen=True)
class NonSingular:
    sides: tuple

    def rotated_to(self, side):
        i = self.sides.index(side)
        return self.sides[i:] + self.sides[:i]

    def canonical(self):
        rots = [self.sides[i:] + self.sides[:i] for i in range(3)]
        return min(rots, key=lambda s: tuple(_side_key(x) for x in s))


@dataclass(frozen=True)
class Singular:
    arc: int


def _side_key(side):
    return (0, side, "") if isinstance(side, int) else (1, 0, side)


def _tri_key(tri):
    if isinstance(tri, Singular):
        return (1, (_side_key(tri.arc),))
    return (0, tuple(_side_key(s) for s in tri.canonical()))


@dataclass(frozen=True)
class Triangulation:
    arcs: tuple  # ((id, pending), ...) sorted by id
    boundary: tuple
    triangles: tuple

    @property
    def arc_ids(self):
        return tuple(a for a, _ in self.arcs)

    @property
    def n(self):
        return len(self.arcs)

    def is_pending(self, arc):
        return dict(self.arcs)[arc]

    def index_of(self, arc):
        return self.arc_ids.index(arc)

    def normalized(self):
        return (self.arcs, tuple(sorted(self.boundary)), tuple(sorted(_tri_key(t) for t in self.triangles)))

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def to_json(self):
        def side(s):
            return {"arc": s} if isinstance(s, int) else {"boundary": s}

        tris = []
        for t in self.triangles:
            if isinstance(t, Singular):
                tris.append({"kind": "singular", "side": {"arc": t.arc}})
            else:
                tris.append({"kind": "nonsingular", "sides": [side(s) for s in t.sides]})
        return {
            "arcs": [{"id": a, "pending": p} for a, p in self.arcs],
            "boundary": list(self.boundary),
            "triangles": tris,
        }


def triangulation_from_json(data) -> Triangulation:
    def side(d):
        if "arc" in d:
            return int(d["arc"])
        if "boundary" in d:
            return str(d["boundary"])
        raise TriangulationError(f"side {d!r} names neither an arc nor a boundary segment")

    arcs = tuple(sorted((int(a["id"]), bool(a.get("pending", False))) for a in data["arcs"]))
    tris = []
    for t in data["triangles"]:
        if t["kind"] == "singular":
            tris.append(Singular(side(t["side"])))
        elif t["kind"] == "nonsingular":
            tris.append(NonSingular(tuple(side(s) for s in t["sides"])))
        else:
            raise TriangulationError(f"unknown triangle kind {t['kind']!r}")
    return Triangulation(arcs, tuple(str(b) for b in data.get("boundary", [])), tuple(tris))


def load_triangulation(path) -> Triangulation:
    return triangulation_from_json(json.loads(Path(path).read_text()))


def validate(t: Triangulation) -> list:
    """Diagnostics for every violated gluing rule; empty when valid."""
    problems = []
    ids = [a for a, _ in t.arcs]
    if len(set(ids)) != len(ids):
        problems.append("duplicate arc id")
    if len(set(t.boundary)) != len(t.boundary):
        problems.append("duplicate boundary label")
    pending = dict(t.arcs)
    slots: dict = {a: [] for a in ids}
    bslots: dict = {b: 0 for b in t.boundary}
    singular: dict = {a: 0 for a in ids}
    seen = set()
    for idx, tri in enumerate(t.triangles):
        if isinstance(tri, Singular):
            if tri.arc not in pending:
                problems.append(f"unknown arc {tri.arc} in singular triangle")
            elif not pending[tri.arc]:
                problems.append(f"singular triangle on non-pending arc {tri.arc}")
            else:
                singular[tri.arc] += 1
            continue
        if len(tri.sides) != 3:
            problems.append(f"triangle {idx} does not have three sides")
            continue
        if len(set(tri.sides)) != 3:
            problems.append(f"degenerate triangle {idx}: repeated side")
        key = _tri_key(tri)
        if key in seen:
            problems.append(f"duplicate triangle {idx}")
        seen.add(key)
        npend = 0
        for s in tri.sides:
            if isinstance(s, int):
                if s not in pending:
                    problems.append(f"unknown arc {s} in triangle {idx}")
                    continue
                slots[s].append(idx)
                npend += pending[s]
            else:
                if s not in bslots:
                    problems.append(f"unknown boundary segment {s!r} in triangle {idx}")
                    continue
                bslots[s] += 1
        if npend > 2:
            problems.append(f"more than two pending sides in triangle {idx}")
    for a in ids:
        if pending[a]:
            if singular[a] != 1:
                problems.append(f"pending arc multiplicity: arc {a} bounds {singular[a]} singular triangles")
            if len(slots[a]) != 1:
                problems.append(f"pending arc multiplicity: arc {a} is a side of {len(slots[a])} non-singular triangles")
        else:
            if len(slots[a]) != 2:
                problems.append(f"arc multiplicity: arc {a} is a side of {len(slots[a])} triangles")
            elif slots[a][0] == slots[a][1]:
                problems.append(f"self-folded configuration at arc {a}")
    for b, count in bslots.items():
        if count != 1:
            problems.append(f"boundary multiplicity: segment {b!r} occurs {count} times")
    return problems


def require_valid(t: Triangulation):
    problems = validate(t)
    if problems:
        raise TriangulationError("; ".join(problems))


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: int
    head: int

    @property
    def is_loop(self):
        return self.tail == self.head


@dataclass(frozen=True)
class QuiverWithPotential:
    vertices: tuple
    arrows: tuple
    potential_terms: tuple
    relations: frozenset  # pairs (first, second): the path "first, then second"
    _by_id: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {a.id: a for a in self.arrows})

    @property
    def n(self):
        return len(self.vertices)

    def arrow(self, aid) -> Arrow:
        return self._by_id[aid]

    def index(self, vertex):
        return self.vertices.index(vertex)

    def out_arrows(self, v):
        return [a for a in self.arrows if a.tail == v]

    def in_arrows(self, v):
        return [a for a in self.arrows if a.head == v]


def arrow_id(tail, head, third):
    return f"{tail}>{head}/{third}"


def loop_id(j):
    return f"e{j}"


def quiver_of(t: Triangulation):
    """The quiver with potential and the exchange matrix B = Bbar D."""
    require_valid(t)
    verts = t.arc_ids
    pos = {a: i for i, a in enumerate(verts)}
    arrows = []
    terms = []
    relations = set()
    n = len(verts)
    bbar = [[0] * n for _ in range(n)]
    for tri in t.triangles:
        if isinstance(tri, Singular):
            continue
        s = tri.sides
        tri_arrows = []
        for p in range(3):
            tail, head, third = s[p], s[(p + 1) % 3], s[(p + 2) % 3]
            if isinstance(tail, int) and isinstance(head, int):
                a = Arrow(arrow_id(tail, head, third), tail, head)
                arrows.append(a)
                tri_arrows.append(a)
                bbar[pos[tail]][pos[head]] += 1
                bbar[pos[head]][pos[tail]] -= 1
        if len(tri_arrows) == 3:
            terms.append(tuple(a.id for a in tri_arrows))
            for p in range(3):
                relations.add((tri_arrows[p].id, tri_arrows[(p + 1) % 3].id))
    for a, pend in t.arcs:
        if pend:
            e = loop_id(a)
            arrows.append(Arrow(e, a, a))
            terms.append((e, e, e))
            relations.add((e, e))
    d = [2 if pend else 1 for _, pend in t.arcs]
    b = tuple(tuple(bbar[i][j] * d[j] for j in range(n)) for i in range(n))
    arrows.sort(key=lambda a: (pos[a.tail], pos[a.head], a.id))
    # cyclic terms up to rotation, so flipping twice gives an equal quiver
    terms = sorted(min(t[i:] + t[:i] for i in range(len(t))) for t in terms)
    q = QuiverWithPotential(verts, tuple(arrows), tuple(terms), frozenset(relations))
    return q, ExchangeMatrix(b, tuple(d))


def gentle_violations(q: QuiverWithPotential) -> list:
    """Failures of the four gentle conditions; empty when gentle."""
    problems = []
    for v in q.vertices:
        if len(q.out_arrows(v)) > 2:
            problems.append(f"more than two arrows start at {v}")
        if len(q.in_arrows(v)) > 2:
            problems.append(f"more than two arrows end at {v}")
    for a in q.arrows:
        after = q.out_arrows(a.head)
        good = [b for b in after if (a.id, b.id) not in q.relations]
        bad = [b for b in after if (a.id, b.id) in q.relations]
        if len(good) > 1 or len(bad) > 1:
            problems.append(f"arrow {a.id}: successors violate the gentle condition")
        before = q.in_arrows(a.tail)
        good = [b for b in before if (b.id, a.id) not in q.relations]
        bad = [b for b in before if (b.id, a.id) in q.relations]
        if len(good) > 1 or len(bad) > 1:
            problems.append(f"arrow {a.id}: predecessors violate the gentle condition")
    return problems


def _triangles_with(t: Triangulation, k):
    return [i for i, tri in enumerate(t.triangles)
            if isinstance(tri, NonSingular) and k in tri.sides]


def flip_local(t: Triangulation, k):
    """Local configuration around arc ``k``.

    Returns ``("pending", i, (a, b))`` or ``("quad", (i1, i2), (a, b, c, d))``
    with the triangle indices holding (k, a, b) and (k, c, d).
    """
    if not isinstance(k, int) or k not in t.arc_ids:
        raise TriangulationError(f"{k!r} is not an arc; only arcs can be flipped")
    idx = _triangles_with(t, k)
    if t.is_pending(k):
        (i,) = idx
        _, a, b = t.triangles[i].rotated_to(k)
        return ("pending", i, (a, b))
    i1, i2 = idx
    _, a, b = t.triangles[i1].rotated_to(k)
    _, c, d = t.triangles[i2].rotated_to(k)
    return ("quad", (i1, i2), (a, b, c, d))


def flip(t: Triangulation, k) -> Triangulation:
    require_valid(t)
    kind, where, sides = flip_local(t, k)
    tris = list(t.triangles)
    if kind == "pending":
        a, b = sides
        tris[where] = NonSingular((k, b, a))
    else:
        a, b, c, d = sides
        i1, i2 = where
        tris[i1] = NonSingular((k, b, c))
        tris[i2] = NonSingular((k, d, a))
    return Triangulation(t.arcs, t.boundary, tuple(tris))


def _coord_max(u, v):
    return tuple(max(x, y) for x, y in zip(u, v))


def _flip_coordinate(t, coords, k):
    """Tropical exchange of arc coordinates across the flip at ``k``."""
    zero = (0,) * len(next(iter(coords.values())))

    def c(side):
        return coords[side] if isinstance(side, int) else zero

    kind, _, sides = flip_local(t, k)
    if kind == "pending":
        a, b = sides
        m = _coord_max(c(a), c(b))
        return tuple(2 * x - y for x, y in zip(m, c(k)))
    a, b, cc, d = sides
    m = _coord_max(tuple(x + y for x, y in zip(c(a), c(cc))), tuple(x + y for x, y in zip(c(b), c(d))))
    return tuple(x - y for x, y in zip(m, c(k)))


@dataclass
class FlipNode:
    key: frozenset
    triangulation: Triangulation
    coords: dict
    depth: int
    path: tuple


@dataclass
class FlipGraph:
    nodes: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)

    def counts_by_depth(self):
        out: dict = {}
        for node in self.nodes:
            out[node.depth] = out.get(node.depth, 0) + 1
        return [out[d] for d in sorted(out)]

    def to_dot(self, name="flips"):
        lines = [f"graph {name} {{"]
        for i, node in enumerate(self.nodes):
            path = ",".join(str(k) for k in node.path) or "root"
            lines.append(f'  n{i} [label="{i}: {path}"];')
        for (u, v), label in sorted(self.edges.items()):
            lines.append(f'  n{u} -- n{v} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def flip_graph(t0: Triangulation, depth: int) -> FlipGraph:
    """Breadth-first flip graph within ``depth`` flips.

    Gluing data alone cannot tell apart triangulations that differ by a
    mapping class, so each arc also carries an integer coordinate vector:
    the root arcs get ``-e_i`` and a flip applies the tropical exchange rule
    (max-plus form of the Ptolemy relation, and of its pending-arc analogue).
    A node is the set of its arcs' coordinates, which is independent of how
    the arcs are labeled.
    """
    require_valid(t0)
    n = t0.n
    coords = {a: tuple(-int(i == j) for j in range(n)) for i, a in enumerate(t0.arc_ids)}

    def key_of(cs):
        return frozenset(cs.values())

    graph = FlipGraph()
    root = key_of(coords)
    graph.nodes.append(FlipNode(root, t0, coords, 0, ()))
    index = {root: 0}
    frontier = [0]
    for d in range(depth):
        nxt = []
        for u in frontier:
            node = graph.nodes[u]
            for k in node.triangulation.arc_ids:
                new_coords = dict(node.coords)
                new_coords[k] = _flip_coordinate(node.triangulation, node.coords, k)
                key = key_of(new_coords)
                v = index.get(key)
                if v is None:
                    v = len(graph.nodes)
                    index[key] = v
                    graph.nodes.append(FlipNode(key, flip(node.triangulation, k), new_coords,
                                                d + 1, node.path + (k,)))
                    nxt.append(v)
                graph.edges.setdefault((min(u, v), max(u, v)), k)
        frontier = nxt
    return graph
