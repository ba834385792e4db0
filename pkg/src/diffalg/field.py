"""Exact arithmetic in the base field K = Q(t1,...,tv) with partial derivations.

Elements are reduced fractions of sparse multivariate polynomials over Q.
Every RatFun is kept in a canonical form (numerator and denominator coprime,
denominator monic under lex order), so equal values have identical
representations and compare bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import BadDerivation, DivisionByZero


@dataclass(frozen=True)
class DiffFieldConfig:
    """Base field layout: m commuting derivations over Q(t1..tv), v <= m.

    Derivation i acts as d/dt_i for i < num_vars and as zero otherwise,
    so a pure constants field with nonzero derivation set is allowed.
    Indices are 0-based throughout the Python API.
    """

    num_derivations: int
    num_vars: int

    def __post_init__(self):
        if self.num_derivations < 1:
            raise ValueError("need at least one derivation")
        if not 0 <= self.num_vars <= self.num_derivations:
            raise ValueError("need 0 <= num_vars <= num_derivations")

    @property
    def m(self):
        return self.num_derivations

    @property
    def v(self):
        return self.num_vars

    def check_derivation(self, i):
        if not 0 <= i < self.num_derivations:
            raise BadDerivation(f"derivation index {i} not in [0, {self.m})")


class MPoly:
    """Sparse polynomial in Q[t1..tv]: exponent tuple -> Fraction."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    if len(exps) != nvars:
                        raise ValueError("exponent vector of wrong length")
                    clean[exps] = Fraction(coeff)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, value):
        value = Fraction(value)
        if not value:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def var(cls, nvars, i):
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    # -- predicates and views ------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if self.is_zero():
            return Fraction(0)
        return self.terms[(0,) * self.nvars]

    def lex_leading(self):
        """(exponents, coefficient) of the lex-maximal term."""
        exps = max(self.terms)
        return exps, self.terms[exps]

    def degree_in(self, i):
        if self.is_zero():
            return -1
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            c = terms.get(exps, 0) + coeff
            if c:
                terms[exps] = c
            else:
                terms.pop(exps, None)
        return MPoly(self.nvars, terms)

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return MPoly(self.nvars)
        x = _main_var(self, other)
        if x is not None and _univariate_in(self, x) \
                and _univariate_in(other, x):
            return _mul_univariate(self, other, x)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = terms.get(e, 0) + c1 * c2
                if c:
                    terms[e] = c
                else:
                    del terms[e]
        return MPoly(self.nvars, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, q):
        q = Fraction(q)
        if not q:
            return MPoly(self.nvars)
        return MPoly(self.nvars, {e: c * q for e, c in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def partial(self, i):
        """Derivative with respect to t_i (0-based)."""
        terms = {}
        for exps, coeff in self.terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                terms[tuple(e)] = terms.get(tuple(e), 0) + coeff * exps[i]
        return MPoly(self.nvars, terms)

    # -- exact division and gcd ----------------------------------------

    def divexact(self, other):
        """Quotient self/other, assuming the division is exact."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if other.is_const():
            return self.scale(1 / other.const_value())
        x = _main_var(self, other)
        if x is not None and _univariate_in(self, x) \
                and _univariate_in(other, x):
            return _divexact_univariate(self, other, x)
        rem = self
        quo = {}
        lead_e, lead_c = other.lex_leading()
        while not rem.is_zero():
            re, rc = rem.lex_leading()
            qe = tuple(a - b for a, b in zip(re, lead_e))
            if any(x < 0 for x in qe):
                raise ArithmeticError("inexact polynomial division")
            qc = rc / lead_c
            quo[qe] = quo.get(qe, 0) + qc
            rem = rem - MPoly(self.nvars, {qe: qc}) * other
        return MPoly(self.nvars, quo)

    def monic_lex(self):
        if self.is_zero():
            return self
        _, c = self.lex_leading()
        return self.scale(1 / c)

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.terms!r})"


def _main_var(f, g):
    """Largest variable index occurring in f or g, or None."""
    best = None
    for p in (f, g):
        for exps in p.terms:
            for i in range(p.nvars - 1, -1, -1):
                if exps[i] and (best is None or i > best):
                    best = i
                    break
    return best


def _coeffs_in(f, x):
    """View f as univariate in t_x: degree -> MPoly coefficient (t_x-free)."""
    out = {}
    for exps, coeff in f.terms.items():
        d = exps[x]
        e = list(exps)
        e[x] = 0
        key = tuple(e)
        bucket = out.setdefault(d, {})
        bucket[key] = bucket.get(key, 0) + coeff
    return {d: MPoly(f.nvars, t) for d, t in out.items()}


def _from_coeffs(nvars, x, coeffs):
    terms = {}
    for d, poly in coeffs.items():
        for exps, coeff in poly.terms.items():
            e = list(exps)
            e[x] = d
            terms[tuple(e)] = coeff
    return MPoly(nvars, terms)


def _content_pp(f, x):
    """Content (gcd of t_x-coefficients) and primitive part of f."""
    coeffs = _coeffs_in(f, x)
    content = MPoly.zero(f.nvars)
    for poly in coeffs.values():
        content = mpoly_gcd(content, poly)
        if content.is_const():
            break
    content = content.monic_lex()
    return content, f.divexact(content)


def _prem(f, g, x):
    """Pseudo-remainder of f by g with respect to t_x."""
    dg = g.degree_in(x)
    lc_g = _coeffs_in(g, x)[dg]
    rem = f
    while not rem.is_zero() and rem.degree_in(x) >= dg:
        dr = rem.degree_in(x)
        lc_r = _coeffs_in(rem, x)[dr]
        shift = MPoly(f.nvars, {tuple(dr - dg if i == x else 0
                                      for i in range(f.nvars)): Fraction(1)})
        rem = rem * lc_g - lc_r * shift * g
    return rem


def _univariate_in(f, x):
    """True when f involves no variable other than t_x."""
    return all(not e for exps in f.terms for i, e in enumerate(exps) if i != x)


def _dense_int_coeffs(f, x):
    """(ascending integer coefficients, denominator) of a t_x-univariate f."""
    coeffs = [Fraction(0)] * (f.degree_in(x) + 1)
    for exps, c in f.terms.items():
        coeffs[exps[x]] = c
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // _int_gcd(scale, c.denominator)
    return [int(c * scale) for c in coeffs], scale


def _mul_univariate(f, g, x):
    """Dense integer convolution for t_x-univariate factors."""
    a, sa = _dense_int_coeffs(f, x)
    b, sb = _dense_int_coeffs(g, x)
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    scale = Fraction(1, sa * sb)
    return MPoly(f.nvars, {tuple(k if i == x else 0 for i in range(f.nvars)):
                           c * scale for k, c in enumerate(out) if c})


def _divexact_univariate(f, g, x):
    """Dense synthetic division for t_x-univariate polynomials.

    On primitive integer parts an exact quotient is again an integer
    polynomial (Gauss), so the whole division runs over Z; the rational
    contents are reattached at the end.
    """
    a, sa = _dense_int_coeffs(f, x)
    b, sb = _dense_int_coeffs(g, x)
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    ca, cb = 0, 0
    for c in a:
        ca = _int_gcd(ca, c)
    for c in b:
        cb = _int_gcd(cb, c)
    if ca > 1:
        a = [c // ca for c in a]
    if cb > 1:
        b = [c // cb for c in b]
    lb = b[-1]
    quo = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c, r = divmod(a[db + k], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[k] = c
        if c:
            for i, bc in enumerate(b):
                if bc:
                    a[i + k] -= c * bc
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    scale = Fraction(ca * sb, cb * sa)
    return MPoly(f.nvars, {tuple(k if i == x else 0 for i in range(f.nvars)):
                           c * scale for k, c in enumerate(quo) if c})


def _uni_int_coeffs(f, x):
    """Primitive integer coefficient list (ascending) of a t_x-univariate f."""
    coeffs = [Fraction(0)] * (f.degree_in(x) + 1)
    for exps, c in f.terms.items():
        coeffs[exps[x]] = c
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // _int_gcd(scale, c.denominator)
    return _int_primitive([int(c * scale) for c in coeffs])


def _int_primitive(coeffs):
    content = 0
    for c in coeffs:
        content = _int_gcd(content, c)
    if content > 1:
        coeffs = [c // content for c in coeffs]
    return coeffs


def _int_prem(a, b):
    """Primitive pseudo-remainder of integer coefficient lists (ascending)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [lb * c for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r.pop()
        while r and not r[-1]:
            r.pop()
        if r:
            r = _int_primitive(r)
        else:
            break
    return r


def _gcd_univariate(f, g, x):
    """Monic gcd via a primitive integer remainder sequence in Z[t_x]."""
    a = _uni_int_coeffs(f, x)
    b = _uni_int_coeffs(g, x)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _int_prem(a, b)
    lead = Fraction(a[-1])
    terms = {tuple(i if j == x else 0 for j in range(f.nvars)):
             Fraction(c) / lead for i, c in enumerate(a) if c}
    return MPoly(f.nvars, terms)


def mpoly_gcd(f, g):
    """Gcd in Q[t1..tv], normalized monic under lex order.

    Univariate inputs use the ordinary Euclidean algorithm; the general
    case uses primitive pseudo-remainder sequences recursing on the main
    variable, adequate at the small degrees this toolkit targets.
    """
    if f.is_zero():
        return g.monic_lex()
    if g.is_zero():
        return f.monic_lex()
    x = _main_var(f, g)
    if x is None:
        return MPoly.const(f.nvars, 1)
    if _univariate_in(f, x) and _univariate_in(g, x):
        return _gcd_univariate(f, g, x)
    cf, pf = _content_pp(f, x)
    cg, pg = _content_pp(g, x)
    c = mpoly_gcd(cf, cg)
    if pf.degree_in(x) < pg.degree_in(x):
        pf, pg = pg, pf
    while not pg.is_zero():
        r = _prem(pf, pg, x)
        if r.is_zero():
            pf = pg
            break
        _, r = _content_pp(r, x)
        pf, pg = pg, r
    return (c * pf).monic_lex()


class RatFun:
    """Element of K = Q(t1..tv) in canonical form (monic denominator)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical=False, _coprime=False):
        if den is None:
            den = MPoly.const(num.nvars, 1)
        if not _canonical:
            num, den = _normalize(num, den, coprime=_coprime)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def from_const(cls, nvars, value):
        return cls(MPoly.const(nvars, value), MPoly.const(nvars, 1),
                   _canonical=True)

    @classmethod
    def var(cls, nvars, i):
        return cls(MPoly.var(nvars, i), MPoly.const(nvars, 1),
                   _canonical=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return (self.num.is_const() and self.den.is_const()
                and self.num.const_value() == self.den.const_value() == 1)

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    # -- field arithmetic -----------------------------------------------

    def __add__(self, other):
        other = _coerce(other, self.nvars)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        # with coprime inputs, any common factor of the raw sum divides
        # g = gcd of the denominators, so only small gcds are ever taken
        g = mpoly_gcd(self.den, other.den)
        if g.is_const():
            return RatFun(self.num * other.den + other.num * self.den,
                          self.den * other.den, _coprime=True)
        d2r = other.den.divexact(g)
        num = self.num * d2r + other.num * self.den.divexact(g)
        if num.is_zero():
            return RatFun.from_const(self.nvars, 0)
        den = self.den * d2r
        h = mpoly_gcd(num, g)
        if not h.is_const():
            num = num.divexact(h)
            den = den.divexact(h)
        return RatFun(num, den, _coprime=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other, self.nvars)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other, self.nvars)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFun.from_const(self.nvars, 0)
        # cross-cancel before multiplying: the result is already coprime
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        g1 = mpoly_gcd(n1, d2)
        if not g1.is_const():
            n1 = n1.divexact(g1)
            d2 = d2.divexact(g1)
        g2 = mpoly_gcd(n2, d1)
        if not g2.is_const():
            n2 = n2.divexact(g2)
            d1 = d1.divexact(g2)
        return RatFun(n1 * n2, d1 * d2, _coprime=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self.nvars)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero in the base field")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other, self.nvars)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFun(self.den, self.num, _coprime=True)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun(self.num ** k, self.den ** k, _coprime=True)

    def derive(self, i):
        """Partial derivative; zero for indices past the variable count."""
        if i < 0:
            raise BadDerivation(f"derivation index {i} is negative")
        if i >= self.nvars:
            return RatFun.from_const(self.nvars, 0)
        num = self.num.partial(i) * self.den - self.num * self.den.partial(i)
        if num.is_zero():
            return RatFun.from_const(self.nvars, 0)
        den = self.den * self.den
        # common factors all divide the original denominator; two rounds of
        # cancellation against it reach the coprime form
        for _ in range(2):
            h = mpoly_gcd(num, self.den)
            if h.is_const():
                break
            num = num.divexact(h)
            den = den.divexact(h)
        return RatFun(num, den, _coprime=True)

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other, self.nvars)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RatFun({self.num!r}, {self.den!r})"


def _coerce(value, nvars):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, (int, Fraction)):
        return RatFun.from_const(nvars, value)
    return NotImplemented


def _normalize(num, den, coprime=False):
    """Reduced form with monic denominator; zero is 0/1."""
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        one = MPoly.const(num.nvars, 1)
        return MPoly.zero(num.nvars), one
    if not coprime:
        g = mpoly_gcd(num, den)
        if not (g.is_const() and g.const_value() == 1):
            num = num.divexact(g)
            den = den.divexact(g)
    _, lead = den.lex_leading()
    if lead != 1:
        inv = 1 / lead
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def normalize(num, den):
    """Public canonicalizer: build a RatFun from a numerator/denominator pair."""
    return RatFun(num, den)
