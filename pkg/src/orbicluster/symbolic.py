"""Exact multivariate Laurent polynomials with integer coefficients.

Every cluster-side object in the package (cluster variables, F-polynomials,
Caldero-Chapoton functions) is one of these.  Values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "YPoly",
    "DivisibilityError",
    "laurent_mul",
    "laurent_divexact",
    "substitute_monomials",
]


class DivisibilityError(ArithmeticError):
    """Raised when an exact division does not exist."""


def _add_exp(a, b):
    return tuple(i + j for i, j in zip(a, b))


def _sub_exp(a, b):
    return tuple(i - j for i, j in zip(a, b))


class LaurentPoly:
    """Element of Z[x_1^{+-1}, ..., x_n^{+-1}] stored as {exponent tuple: coeff}."""

    __slots__ = ("nvars", "_terms", "_hash")
    prefix = "x"

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], int] | None = None):
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if c:
                clean[exp] = clean.get(exp, 0) + int(c)
                if clean[exp] == 0:
                    del clean[exp]
        self._check(clean)
        self._terms = clean
        self._hash = None

    def _check(self, terms):
        pass

    # constructors

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1):
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    # inspection

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def coefficient(self, exps) -> int:
        return self._terms.get(tuple(exps), 0)

    def min_exponents(self):
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self._terms) for i in range(self.nvars))

    def max_exponents(self):
        if not self._terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self._terms) for i in range(self.nvars))

    def evaluate(self, values):
        """Evaluate at numeric values (ints or Fractions)."""
        total = 0
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(values, exp):
                term = term * Fraction(v) ** e
            total += term
        return total

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return type(self).const(self.nvars, other)
        return NotImplemented

    def _result_type(self, other):
        return type(self) if type(other) is type(self) else LaurentPoly

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return self._result_type(other)(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                terms[e] = terms.get(e, 0) + c1 * c2
        return self._result_type(other)(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise DivisibilityError("negative power of a non-monomial")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise DivisibilityError("negative power of a monomial with coefficient != +-1")
            return LaurentPoly(self.nvars, {tuple(i * k for i in e): c ** (-k)})
        result = type(self).one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps):
        """Multiply by the monomial x^exps."""
        exps = tuple(exps)
        return LaurentPoly(self.nvars, {_add_exp(e, exps): c for e, c in self._terms.items()})

    def divexact(self, other: LaurentPoly) -> LaurentPoly:
        return laurent_divexact(self, other)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # rendering

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def render(self, names: Sequence[str] | None = None, prefix: str | None = None) -> str:
        if not self._terms:
            return "0"
        prefix = prefix or self.prefix
        names = names or [f"{prefix}{i + 1}" for i in range(self.nvars)]
        out = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"{type(self).__name__}({self.render()!r})"


class YPoly(LaurentPoly):
    """Ordinary polynomial in y_1..y_n (all exponents nonnegative)."""

    __slots__ = ()
    prefix = "y"

    def _check(self, terms):
        for exp in terms:
            if any(e < 0 for e in exp):
                raise DivisibilityError(f"negative exponent {exp} in a Y-polynomial")

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> YPoly:
        return cls(p.nvars, p.terms)


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def _poly_divexact(a: dict, b: dict, nvars: int) -> dict:
    """Exact division of ordinary polynomials by leading terms in lex order."""
    lead_b = max(b)
    cb = b[lead_b]
    rem = dict(a)
    quot: dict = {}
    while rem:
        lead = max(rem)
        c = rem[lead]
        shift = _sub_exp(lead, lead_b)
        if any(s < 0 for s in shift) or c % cb:
            raise DivisibilityError("inexact division")
        q = c // cb
        quot[shift] = q
        for e, cc in b.items():
            t = _add_exp(e, shift)
            v = rem.get(t, 0) - q * cc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return quot


def laurent_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient q with q*b == a; raises DivisibilityError otherwise."""
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    cls = a._result_type(b)
    if a.is_zero():
        return cls(a.nvars)
    if b.is_monomial():
        ((eb, cb),) = b.items()
        terms = {}
        for e, c in a.items():
            if c % cb:
                raise DivisibilityError("inexact coefficient division")
            terms[_sub_exp(e, eb)] = c // cb
        return cls(a.nvars, terms)
    # Clear denominators so both sides are ordinary polynomials not divisible
    # by any variable; then the quotient is an ordinary polynomial too.
    ma, mb = a.min_exponents(), b.min_exponents()
    pa = {_sub_exp(e, ma): c for e, c in a.items()}
    pb = {_sub_exp(e, mb): c for e, c in b.items()}
    q = _poly_divexact(pa, pb, a.nvars)
    offset = _sub_exp(ma, mb)
    return cls(a.nvars, {_add_exp(e, offset): c for e, c in q.items()})


def substitute_monomials(f: LaurentPoly, images: Sequence[LaurentPoly]) -> LaurentPoly:
    """Replace y_j by the Laurent monomial images[j] and expand."""
    if len(images) != f.nvars:
        raise ValueError(f"expected {f.nvars} images, got {len(images)}")
    exps = []
    for img in images:
        if not img.is_monomial():
            raise ValueError("substitute_monomials needs monomial images")
        ((e, c),) = img.items()
        if c != 1:
            raise ValueError("monomial images must have coefficient 1")
        exps.append(e)
    nv = images[0].nvars if images else 0
    terms: dict = {}
    for exp, c in f.items():
        target = [0] * nv
        for j, k in enumerate(exp):
            if k:
                for i in range(nv):
                    target[i] += k * exps[j][i]
        t = tuple(target)
        terms[t] = terms.get(t, 0) + c
    return LaurentPoly(nv, terms)

