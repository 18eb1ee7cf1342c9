"""Wall-crossing on truncated series, string F-polynomials and CC functions.

Series live in Z[[y]] (x) Z[x^{+-1}] and are truncated on total y-degree.
The wall with dimension vector ``d`` and function ``f`` raised to ``power``
sends

    y^n x^m  ->  y^n x^m f(y^d)^(power * (<m, d> - n^T Bbar d))

so it fixes y^d and every y^n x^(Bbar^T n).  Along a mutation path the wall
crossed at step j has d = |c_(k_j)| and power -sgn(c_(k_j)); the composite
applies the most recent wall first.  These choices are the ones for which
p_t(x^g) = x^g F(y) holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .genseed import ExchangeMatrix, exchange_polynomial, hat_ys
from .gentlerep import StringModule
from .symbolic import LaurentPoly, YPoly, substitute_monomials
from .tropical import sign_of_row, tropical_path

__all__ = [
    "DEFAULT_ORDER",
    "TruncSeries",
    "Wall",
    "wall_action",
    "walls_along",
    "path_product",
    "string_f_polynomial",
    "arrow_closed_count",
    "cc_function",
    "verify_exchange",
]

DEFAULT_ORDER = 10


@dataclass(frozen=True)
class TruncSeries:
    """Finite sum of c * y^n x^m with sum(n) <= order."""

    n: int
    order: int
    terms: tuple  # sorted ((n, m), coeff) pairs

    @classmethod
    def from_dict(cls, nvars, order, terms):
        kept = tuple(sorted((k, c) for k, c in terms.items() if c and sum(k[0]) <= order))
        return cls(nvars, order, kept)

    @classmethod
    def monomial(cls, nvars, order, m, ny=None):
        ny = tuple(ny) if ny is not None else (0,) * nvars
        return cls.from_dict(nvars, order, {(ny, tuple(m)): 1})

    @classmethod
    def from_ypoly(cls, f: LaurentPoly, m, order):
        """x^m * f(y), truncated."""
        return cls.from_dict(f.nvars, order, {(e, tuple(m)): c for e, c in f.items()})

    def as_dict(self):
        return dict(self.terms)

    def __add__(self, other):
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, 0) + c
        return TruncSeries.from_dict(self.n, min(self.order, other.order), d)

    def __mul__(self, other):
        order = min(self.order, other.order)
        d = {}
        for (n1, m1), c1 in self.terms:
            for (n2, m2), c2 in other.terms:
                ny = tuple(a + b for a, b in zip(n1, n2))
                if sum(ny) > order:
                    continue
                key = (ny, tuple(a + b for a, b in zip(m1, m2)))
                d[key] = d.get(key, 0) + c1 * c2
        return TruncSeries.from_dict(self.n, order, d)

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for (ny, mx), c in self.terms:
            mono = "*".join([f"y{i + 1}^{e}" for i, e in enumerate(ny) if e]
                            + [f"x{i + 1}^{e}" for i, e in enumerate(mx) if e])
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts) + f" + O(y^{self.order + 1})"


@dataclass(frozen=True)
class Wall:
    d: tuple
    f: tuple  # coefficients of f(z), z = y^d

    @classmethod
    def for_rank(cls, d, r):
        """1 + z for an ordinary wall, 1 + z + z^2 for a pending one."""
        if r not in (1, 2):
            raise ValueError("wall functions are known for r in {1, 2}")
        return cls(tuple(d), (1,) * (r + 1))


def _series_power(coeffs, e, maxdeg):
    """Coefficients of f(z)^e up to z^maxdeg; negative e via the inverse series."""
    base = [0] * (maxdeg + 1)
    for i, c in enumerate(coeffs[: maxdeg + 1]):
        base[i] = c
    if base[0] != 1:
        raise ValueError("wall function must have constant term 1")
    if e < 0:
        inv = [1] + [0] * maxdeg
        for k in range(1, maxdeg + 1):
            inv[k] = -sum(base[j] * inv[k - j] for j in range(1, k + 1))
        base, e = inv, -e
    out = [1] + [0] * maxdeg
    for _ in range(e):
        out = [sum(out[j] * base[k - j] for j in range(k + 1)) for k in range(maxdeg + 1)]
    return out


def wall_action(w: Wall, s: TruncSeries, bbar, power: int = 1) -> TruncSeries:
    """Apply the wall automorphism (to the given power) to a truncated series."""
    n = s.n
    dsum = sum(w.d)
    if dsum == 0:
        raise ValueError("wall vector must be nonzero")
    bd = [sum(bbar[i][j] * w.d[j] for j in range(n)) for i in range(n)]
    out = {}
    for (ny, mx), c in s.terms:
        e = Fraction(sum(a * b for a, b in zip(mx, w.d)) - sum(a * b for a, b in zip(ny, bd))) * power
        if e.denominator != 1:
            raise ValueError("non-integral wall exponent")
        series = _series_power(w.f, int(e), (s.order - sum(ny)) // dsum)
        for k, coef in enumerate(series):
            if coef:
                key = (tuple(a + k * b for a, b in zip(ny, w.d)), mx)
                out[key] = out.get(key, 0) + c * coef
    return TruncSeries.from_dict(n, s.order, out)


def walls_along(b0: ExchangeMatrix, path):
    """(wall, power) for each step of a mutation path from the root seed."""
    states = tropical_path(b0, path)
    out = []
    for j, k in enumerate(path):
        c = states[j].c[k]
        eps = sign_of_row(c)
        out.append((Wall.for_rank(tuple(abs(v) for v in c), b0.r[k]), -eps))
    return out


def path_product(walls, s: TruncSeries, bbar) -> TruncSeries:
    """Composite of the wall automorphisms, most recent wall applied first."""
    for w, power in reversed(list(walls)):
        s = wall_action(w, s, bbar, power)
    return s


def _allowed(sign, prev, inside):
    """Closure across one letter: direct z_i -> z_{i+1}, inverse z_{i+1} -> z_i."""
    if sign == 1:
        return inside or not prev
    return prev or not inside


def string_f_polynomial(s: StringModule) -> YPoly:
    """F_M = sum over arrow-closed S of y^(dim M - dim S), by a walk along the string."""
    q = s.quiver
    n = q.n
    nodes = s.nodes

    def out_of_s(v):
        return YPoly.monomial(tuple(int(i == q.index(v)) for i in range(n)))

    dp = {True: YPoly.one(n), False: out_of_s(nodes[0])}
    for i, (_, sign) in enumerate(s.letters):
        v = nodes[i + 1]
        new = {}
        for inside in (True, False):
            acc = YPoly.zero(n)
            for prev, val in dp.items():
                if _allowed(sign, prev, inside):
                    acc = acc + val
            new[inside] = acc if inside else acc * out_of_s(v)
        dp = new
    return dp[True] + dp[False]


def arrow_closed_count(s: StringModule) -> int:
    """Number of subsets closed under the arrows, by brute force."""
    nodes = s.nodes
    m = len(nodes)
    count = 0
    for mask in range(1 << m):
        ok = True
        for i, (_, sign) in enumerate(s.letters):
            if not _allowed(sign, (mask >> i) & 1, (mask >> (i + 1)) & 1):
                ok = False
                break
        count += ok
    return count


def cc_function(components, b0: ExchangeMatrix, multiplicities=None) -> LaurentPoly:
    """prod of x^g F_M(yhat) over the components (Summand-like objects)."""
    n = b0.n
    ys = hat_ys(b0)
    multiplicities = multiplicities or [1] * len(components)
    out = LaurentPoly.one(n)
    for comp, mult in zip(components, multiplicities):
        string = getattr(comp, "string", None)
        if string is None:
            if getattr(comp, "vertex", None) is None:
                raise TypeError("CC functions are implemented for string modules and shifted projectives")
            f = YPoly.one(n)
        else:
            if not isinstance(string, StringModule):
                raise TypeError("CC functions are implemented for string modules only")
            f = string_f_polynomial(string)
        val = substitute_monomials(f, ys).shift(tuple(comp.g))
        out = out * val ** mult
    return out


def verify_exchange(p, k: int, theta=None, max_len=None):
    """Check CC(M_k) CC(M_k') = theta_k(u, v) for the AIR neighbour at slot k.

    Returns (ok, detail) where detail renders both sides on failure.
    """
    from .genseed import default_theta
    from .taufan import DEFAULT_MAX_LEN, air_mutate

    b0 = p.b0
    q2 = air_mutate(p, k, max_len or DEFAULT_MAX_LEN)
    b = p.b_matrix()
    r = b0.r
    theta = theta or default_theta(r)
    ccs = [cc_function([s], b0) for s in p.summands]
    u = LaurentPoly.one(b0.n)
    v = LaurentPoly.one(b0.n)
    for i in range(p.n):
        e = b[i][k] // r[k] if b[i][k] % r[k] == 0 else None
        if e is None:
            raise AssertionError("non-integral exchange exponent")
        if e > 0:
            u = u * ccs[i] ** e
        elif e < 0:
            v = v * ccs[i] ** (-e)
    lhs = ccs[k] * cc_function([q2.summands[k]], b0)
    rhs = exchange_polynomial(theta[k], u, v)
    if lhs == rhs:
        return True, ""
    return False, f"lhs = {lhs.render()}\nrhs = {rhs.render()}"
