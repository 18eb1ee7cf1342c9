"""Reflection functors across a flip.

``reflect(m, t, k, +1)`` builds the kernel construction: the new space at
``k`` is the kernel of the map from ``H_k (x) M_i`` over the arrows ``i -> k``
into ``M_k``.  ``reflect(m, t, k, -1)`` is the dual cokernel construction.
At a pending vertex ``H_k = k[eps]/(eps^2)`` and ``H_k (x) M_i`` is stored as
two blocks, the eps-part followed by the 1-part; eps moves the 1-part into the
eps-part.
"""

from __future__ import annotations

from fractions import Fraction

from ..linalg import Matrix
from ..orbsurf import Triangulation, arrow_id, flip, flip_local, loop_id, quiver_of
from .modules import QuiverRep, hom_dim, require_relations, simple

__all__ = ["reflect", "perp_sk"]


def _local_arrows(t: Triangulation, k):
    """Arrows at ``k`` before the flip and their counterparts after it.

    ins:   dicts(id, tail, star)                         arrows i -> k
    outs:  dicts(id, head, star, rem, partner)           arrows k -> j
    comps: (new id, index into ins, index into outs)     composites i -> k -> j
    rems:  arrows that disappear
    """
    kind, _, sides = flip_local(t, k)

    def arc(s):
        return isinstance(s, int)

    ins, outs, comps, rems = [], [], [], []
    if kind == "pending":
        # (k, a, b) becomes (k, b, a)
        a, b = sides
        if arc(b):
            ins.append({"id": arrow_id(b, k, a), "tail": b, "star": arrow_id(k, b, a)})
        if arc(a):
            out = {"id": arrow_id(k, a, b), "head": a, "star": arrow_id(a, k, b),
                   "rem": None, "partner": None}
            if arc(b):
                out["rem"] = arrow_id(a, b, k)
                out["partner"] = 0
                rems.append(out["rem"])
            outs.append(out)
        if arc(a) and arc(b):
            comps.append((arrow_id(b, a, k), 0, 0))
        return ins, outs, comps, rems

    a, b, c, d = sides
    in_pos = {}
    if arc(b):
        in_pos["b"] = len(ins)
        ins.append({"id": arrow_id(b, k, a), "tail": b, "star": arrow_id(k, b, c)})
    if arc(d):
        in_pos["d"] = len(ins)
        ins.append({"id": arrow_id(d, k, c), "tail": d, "star": arrow_id(k, d, a)})
    out_pos = {}
    for name, head, other, star_third, partner in (("a", a, b, d, "b"), ("c", c, d, b, "d")):
        if not arc(head):
            continue
        out = {"id": arrow_id(k, head, other), "head": head, "star": arrow_id(head, k, star_third),
               "rem": None, "partner": None}
        if arc(other):
            out["rem"] = arrow_id(head, other, k)
            out["partner"] = in_pos[partner]
            rems.append(out["rem"])
        out_pos[name] = len(outs)
        outs.append(out)
    if "b" in in_pos and "c" in out_pos:
        comps.append((arrow_id(b, c, k), in_pos["b"], out_pos["c"]))
    if "d" in in_pos and "a" in out_pos:
        comps.append((arrow_id(d, a, k), in_pos["d"], out_pos["a"]))
    return ins, outs, comps, rems


def _blocks(m: QuiverRep, vertices, pending):
    """Offsets of the H (x) M_v blocks: list of (eps_offset, one_offset, size)."""
    out = []
    pos = 0
    for v in vertices:
        size = m.dim(v)
        if pending:
            out.append((pos, pos + size, size))
            pos += 2 * size
        else:
            out.append((None, pos, size))
            pos += size
    return out, pos


def _embed(total, offset, size):
    """Inclusion of a block of ``size`` coordinates at ``offset``."""
    e = Matrix.zeros(total, size)
    for i in range(size):
        e.data[offset + i][i] = Fraction(1)
    return e


def _eps_on_blocks(blocks, total):
    e = Matrix.zeros(total, total)
    for eps_off, one_off, size in blocks:
        for i in range(size):
            e.data[eps_off + i][one_off + i] = Fraction(1)
    return e


def _complement(basis: Matrix, total):
    """Columns extending ``basis`` to a basis of the ambient space."""
    current = basis
    extra = []
    for i in range(total):
        e = _embed(total, i, 1)
        trial = current.hstack(e)
        if trial.rank() > current.cols:
            current = trial
            extra.append(e.column(0))
    return Matrix.from_columns(total, extra), current


def reflect(m: QuiverRep, t: Triangulation, k, sign: int) -> QuiverRep:
    """The module F_k^{sign}(m) over the algebra of flip(t, k)."""
    q = m.quiver
    if quiver_of(t)[0] != q:
        raise ValueError("module is not over the quiver of the given triangulation")
    require_relations(m)
    sigma = flip(t, k)
    q2, _ = quiver_of(sigma)
    pending = t.is_pending(k)
    ins, outs, comps, rems = _local_arrows(t, k)
    eps = m.maps[loop_id(k)] if pending else None
    mk = m.dim(k)
    new = {}

    if sign > 0:
        blocks, total = _blocks(m, [x["tail"] for x in ins], pending)
        alpha = Matrix.zeros(mk, total)
        for x, (eo, oo, size) in zip(ins, blocks):
            ma = m.maps[x["id"]]
            alpha = alpha + ma @ _embed(total, oo, size).transpose()
            if pending:
                alpha = alpha + (eps @ ma) @ _embed(total, eo, size).transpose()
        kern = alpha.nullspace()
        dim_k = kern.cols
        for x, (eo, oo, size) in zip(ins, blocks):
            proj = _embed(total, eo if pending else oo, size).transpose()
            new[x["star"]] = proj @ kern
        for y in outs:
            if y["rem"] is None:
                new[y["star"]] = Matrix.zeros(dim_k, m.dim(y["head"]))
                continue
            eo, oo, size = blocks[y["partner"]]
            v = _embed(total, oo, size) @ m.maps[y["rem"]]
            new[y["star"]] = kern.solve(v)
        if pending:
            new[loop_id(k)] = kern.solve(_eps_on_blocks(blocks, total) @ kern)
    else:
        blocks, total = _blocks(m, [y["head"] for y in outs], pending)
        beta = Matrix.zeros(total, mk)
        for y, (eo, oo, size) in zip(outs, blocks):
            mb = m.maps[y["id"]]
            if pending:
                beta = beta + _embed(total, eo, size) @ mb + _embed(total, oo, size) @ (mb @ eps)
            else:
                beta = beta + _embed(total, oo, size) @ mb
        image = beta.column_basis() if beta.cols else Matrix(total, 0)
        sect, full = _complement(image, total)
        dim_k = sect.cols
        # quotient map: coordinates along the complement in the basis [image | sect]
        inv = full.solve(Matrix.identity(total))
        quot = inv.submatrix(range(image.cols, total), range(total))
        for y, (eo, oo, size) in zip(outs, blocks):
            new[y["star"]] = quot @ _embed(total, oo, size)
        for idx, x in enumerate(ins):
            partners = [(y, blocks[j]) for j, y in enumerate(outs) if y["partner"] == idx]
            lift = Matrix.zeros(m.dim(x["tail"]), total)
            for y, (eo, oo, size) in partners:
                target = eo if pending else oo
                lift = lift + m.maps[y["rem"]] @ _embed(total, target, size).transpose()
            new[x["star"]] = lift @ sect
        if pending:
            new[loop_id(k)] = quot @ _eps_on_blocks(blocks, total) @ sect

    for cid, i, j in comps:
        mid = eps if pending else Matrix.identity(mk)
        new[cid] = m.maps[outs[j]["id"]] @ mid @ m.maps[ins[i]["id"]]

    dims = tuple(dim_k if v == k else m.dim(v) for v in q2.vertices)
    maps = {}
    touched = {x["id"] for x in ins} | {y["id"] for y in outs} | set(rems)
    for a in q2.arrows:
        if a.id in new:
            maps[a.id] = new[a.id]
        else:
            if a.id in touched or a.id not in m.maps:
                raise AssertionError(f"no rule for arrow {a.id} after the flip")
            maps[a.id] = m.maps[a.id]
    out = QuiverRep(q2, dims, maps)
    require_relations(out)
    return out


def perp_sk(m: QuiverRep, k) -> bool:
    """Whether Hom(m, S_k) = 0, i.e. m has no quotient S_k."""
    return hom_dim(m, simple(m.quiver, k)) == 0
