"""String combinatorics for gentle algebras.

A string is a start vertex and a sequence of letters ``(arrow_id, +1)``
(walk along the arrow) or ``(arrow_id, -1)`` (walk against it).  Basis point
``z_i`` sits after the first ``i`` letters; a direct letter between ``z_{i-1}``
and ``z_i`` means the arrow sends ``z_{i-1}`` to ``z_i``, an inverse letter means
it sends ``z_i`` to ``z_{i-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..linalg import Matrix
from ..orbsurf import QuiverWithPotential
from .modules import QuiverRep, is_isomorphic

__all__ = [
    "StringModule",
    "WalkError",
    "string_module",
    "enumerate_strings",
    "string_hom_count",
    "string_of",
]


class WalkError(ValueError):
    pass


def _step(q, cur, letter):
    aid, sign = letter
    a = q.arrow(aid)
    if sign == 1:
        return a.head if a.tail == cur else None
    return a.tail if a.head == cur else None


def _bad_pair(q, prev, letter):
    """Reason the two consecutive letters cannot appear in a string, or None."""
    (a, s), (b, t) = prev, letter
    if a == b and s != t:
        return "backtracking"
    if s == 1 and t == 1 and (a, b) in q.relations:
        return f"relation {a} then {b}"
    if s == -1 and t == -1 and (b, a) in q.relations:
        return f"relation {b} then {a}"
    return None


@dataclass(frozen=True)
class StringModule:
    quiver: QuiverWithPotential
    start: int
    letters: tuple

    def __post_init__(self):
        letters = tuple((str(a), int(s)) for a, s in self.letters)
        object.__setattr__(self, "letters", letters)
        q = self.quiver
        if self.start not in q.vertices:
            raise WalkError(f"unknown start vertex {self.start}")
        cur = self.start
        for i, letter in enumerate(letters):
            if letter[1] not in (1, -1):
                raise WalkError(f"position {i}: direction must be +1 or -1")
            if letter[0] not in {a.id for a in q.arrows}:
                raise WalkError(f"position {i}: unknown arrow {letter[0]}")
            nxt = _step(q, cur, letter)
            if nxt is None:
                raise WalkError(f"position {i}: letter {letter} does not start at vertex {cur}")
            if i:
                why = _bad_pair(q, letters[i - 1], letter)
                if why:
                    raise WalkError(f"position {i}: {why}")
            cur = nxt

    @property
    def nodes(self):
        out = [self.start]
        for letter in self.letters:
            out.append(_step(self.quiver, out[-1], letter))
        return out

    @property
    def length(self):
        return len(self.letters)

    def inverse(self):
        return StringModule(self.quiver, self.nodes[-1],
                            tuple((a, -s) for a, s in reversed(self.letters)))

    def key(self):
        return (self.start, self.letters)

    def canonical(self):
        inv = self.inverse()
        return self if self.key() <= inv.key() else inv

    def dims(self):
        q = self.quiver
        d = [0] * q.n
        for v in self.nodes:
            d[q.index(v)] += 1
        return tuple(d)

    def module(self) -> QuiverRep:
        q = self.quiver
        nodes = self.nodes
        local = []
        counts = {v: 0 for v in q.vertices}
        for v in nodes:
            local.append(counts[v])
            counts[v] += 1
        maps = {a.id: Matrix.zeros(counts[a.head], counts[a.tail]) for a in q.arrows}
        for i, (aid, s) in enumerate(self.letters):
            src, dst = (i, i + 1) if s == 1 else (i + 1, i)
            maps[aid].data[local[dst]][local[src]] = Fraction(1)
        return QuiverRep(q, tuple(counts[v] for v in q.vertices), maps)

    def top(self):
        """Dimension vector of M/rad M: basis points no letter maps into."""
        q = self.quiver
        d = [0] * q.n
        steps = [s for _, s in self.letters]
        for i, v in enumerate(self.nodes):
            hit = (i > 0 and steps[i - 1] == 1) or (i < len(steps) and steps[i] == -1)
            if not hit:
                d[q.index(v)] += 1
        return tuple(d)

    def arrow_steps(self):
        """For each adjacent pair (i, i+1): +1 if z_i maps to z_{i+1}, -1 if reverse."""
        return [s for _, s in self.letters]

    def render(self):
        if not self.letters:
            return f"e_{self.start}"
        return " ".join(a if s == 1 else f"{a}^-1" for a, s in self.letters)

    def to_json(self):
        return {"start": self.start, "letters": [[a, s] for a, s in self.letters]}


def string_module(q: QuiverWithPotential, start, letters=()) -> QuiverRep:
    return StringModule(q, start, tuple(letters)).module()


def enumerate_strings(q: QuiverWithPotential, max_len: int = 12, dim_bound=None):
    """All strings with at most ``max_len`` letters, one per inverse pair.

    ``dim_bound`` (a dimension vector) prunes strings whose dimension vector
    exceeds it somewhere.
    """
    out = []
    seen = set()
    idx = {v: i for i, v in enumerate(q.vertices)}

    def fits(d):
        return dim_bound is None or all(x <= y for x, y in zip(d, dim_bound))

    def visit(start, letters, end, d):
        # letters are valid by construction, so skip re-validation
        s = StringModule.__new__(StringModule)
        object.__setattr__(s, "quiver", q)
        object.__setattr__(s, "start", start)
        object.__setattr__(s, "letters", letters)
        c = s.canonical() if letters else s
        if c.key() not in seen:
            seen.add(c.key())
            out.append(c)
        if len(letters) == max_len:
            return
        for a in q.arrows:
            for sign in (1, -1):
                letter = (a.id, sign)
                nxt = _step(q, end, letter)
                if nxt is None:
                    continue
                if letters and _bad_pair(q, letters[-1], letter):
                    continue
                nd = list(d)
                nd[idx[nxt]] += 1
                if not fits(nd):
                    continue
                visit(start, letters + (letter,), nxt, nd)

    for v in q.vertices:
        d = [0] * q.n
        d[idx[v]] = 1
        if fits(d):
            visit(v, (), v, d)
    out.sort(key=lambda s: (s.length, s.key()))
    return out


def _substrings(s: StringModule):
    """Pairs (i, j) with the substring on nodes z_i..z_j and its kind flags."""
    steps = s.arrow_steps()
    m = len(steps)
    for i in range(m + 1):
        for j in range(i, m + 1):
            # factor: the letters joining the substring to the rest point outwards
            left_out = i == 0 or steps[i - 1] == -1
            right_out = j == m or steps[j] == 1
            # image: the joining letters point inwards
            left_in = i == 0 or steps[i - 1] == 1
            right_in = j == m or steps[j] == -1
            yield i, j, left_out and right_out, left_in and right_in


def string_hom_count(c: StringModule, d: StringModule) -> int:
    """dim Hom(M(c), M(d)) by counting factor/image substring matches.

    Independent of linear algebra: each basis homomorphism of string modules
    matches a factor substring of ``c`` with an image substring of ``d``.
    """
    factors = [(i, j) for i, j, f, _ in _substrings(c) if f]
    images = [(i, j) for i, j, _, im in _substrings(d) if im]
    count = 0
    cn, dn = c.nodes, d.nodes
    for i, j in factors:
        fl = c.letters[i:j]
        for k, l in images:
            il = d.letters[k:l]
            if j - i != l - k:
                continue
            if not fl:
                count += cn[i] == dn[k]
                continue
            if fl == il and cn[i] == dn[k]:
                count += 1
            if fl == tuple((a, -t) for a, t in reversed(il)) and cn[i] == dn[l]:
                count += 1
    return count


def string_of(m: QuiverRep, max_len: int = 12):
    """A string whose module is isomorphic to ``m``, or None within ``max_len``."""
    for s in enumerate_strings(m.quiver, max_len, dim_bound=m.dims):
        if s.dims() == m.dims and is_isomorphic(s.module(), m):
            return s
    return None
