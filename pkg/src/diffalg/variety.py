"""Differential polynomials, K-rational points, and the tangent-space pipeline.

A differential polynomial lives in K{y_1..y_n}: a sum of monomials in the
derivative indeterminates theta*y_i with base-field coefficients.  At a
K-rational point every derivative of a coordinate is induced by the field
derivations, so evaluation is a differential homomorphism.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigMismatch, PointNotOnVariety
from .field import RatFun
from .ore import _as_ratfun
from .diffmodule import ModElement, characteristic_set, orderly_ranking
from .dimension import dimension_report
from .normalform import OreMatrix, classify_tangent

# A monomial is a sorted tuple of ((component, theta exponents), power).


class DiffPoly:
    """Element of K{y_1,...,y_n}."""

    __slots__ = ("config", "n", "terms", "_hash")

    def __init__(self, config, n, terms=None):
        self.config = config
        self.n = n
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _as_ratfun(coeff, config)
                if not coeff:
                    continue
                for (comp, exps), power in mono:
                    if not 0 <= comp < n:
                        raise ValueError(f"variable index {comp} out of range")
                    if len(exps) != config.m or power <= 0:
                        raise ValueError("malformed monomial")
                clean[tuple(sorted(mono))] = coeff
        self.terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, config, n):
        return cls(config, n)

    @classmethod
    def const(cls, config, n, value):
        return cls(config, n, {(): _as_ratfun(value, config)})

    @classmethod
    def indeterminate(cls, config, n, comp, exps=None):
        if exps is None:
            exps = (0,) * config.m
        return cls(config, n, {(((comp, tuple(exps)), 1),): 1})

    # -- ring structure (commutative) --------------------------------------

    def _check(self, other):
        if self.config != other.config or self.n != other.n:
            raise ConfigMismatch("differential polynomials of different rings")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = terms.get(mono)
            c = coeff if c is None else c + coeff
            if c:
                terms[mono] = c
            else:
                terms.pop(mono, None)
        return DiffPoly(self.config, self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly(self.config, self.n,
                        {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _merge_monomials(m1, m2)
                c = terms.get(mono)
                prod = c1 * c2
                c = prod if c is None else c + prod
                if c:
                    terms[mono] = c
                else:
                    terms.pop(mono, None)
        return DiffPoly(self.config, self.n, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DiffPoly):
            if other.terms and set(other.terms) == {()}:
                other = other.terms[()]
            else:
                raise ValueError("can only divide by a base-field element")
        return self * _as_ratfun(other, self.config).inverse()

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a differential polynomial")
        result = DiffPoly.const(self.config, self.n, 1)
        for _ in range(k):
            result = result * self
        return result

    def _coerce(self, value):
        if isinstance(value, DiffPoly):
            return value
        if isinstance(value, (int, Fraction, RatFun)):
            return DiffPoly.const(self.config, self.n, value)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.config == other.config and self.n == other.n
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.config, self.n,
                               frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"DiffPoly(n={self.n}, {self.terms!r})"

    # -- calculus ----------------------------------------------------------

    def partial_indeterminate(self, comp, exps):
        """Formal partial derivative with respect to the indeterminate."""
        key = (comp, tuple(exps))
        terms = {}
        for mono, coeff in self.terms.items():
            entries = dict(mono)
            power = entries.get(key)
            if not power:
                continue
            if power == 1:
                del entries[key]
            else:
                entries[key] = power - 1
            new_mono = tuple(sorted(entries.items()))
            c = terms.get(new_mono, None)
            add = coeff * power
            c = add if c is None else c + add
            if c:
                terms[new_mono] = c
            else:
                terms.pop(new_mono, None)
        return DiffPoly(self.config, self.n, terms)


def _merge_monomials(m1, m2):
    entries = dict(m1)
    for key, power in m2:
        entries[key] = entries.get(key, 0) + power
    return tuple(sorted(entries.items()))


def formal_derive(f, i):
    """delta_i applied in K{y}: Leibniz over coefficient and indeterminates."""
    f.config.check_derivation(i)
    result = DiffPoly.zero(f.config, f.n)
    for mono, coeff in f.terms.items():
        der = coeff.derive(i)
        if der:
            result = result + DiffPoly(f.config, f.n, {mono: der})
        for idx, ((comp, exps), power) in enumerate(mono):
            raised = list(exps)
            raised[i] += 1
            factor = DiffPoly.indeterminate(f.config, f.n, comp, raised)
            rest = dict(mono)
            if power == 1:
                del rest[(comp, exps)]
            else:
                rest[(comp, exps)] = power - 1
            piece = DiffPoly(f.config, f.n,
                             {tuple(sorted(rest.items())): coeff * power})
            result = result + piece * factor
    return result


class VarietyPoint:
    """K-rational point: n base-field coordinates."""

    __slots__ = ("config", "coordinates")

    def __init__(self, config, coordinates):
        self.config = config
        self.coordinates = tuple(_as_ratfun(c, config) for c in coordinates)

    @property
    def n(self):
        return len(self.coordinates)

    def derivative_of_coordinate(self, comp, exps):
        value = self.coordinates[comp]
        for i, k in enumerate(exps):
            for _ in range(k):
                value = value.derive(i) if i < self.config.v \
                    else RatFun.from_const(self.config.v, 0)
        return value

    def __repr__(self):
        return f"VarietyPoint({self.coordinates!r})"


def eval_diffpoly(f, x):
    """Substitute theta*y_i -> the theta-derivative of x_i, exactly."""
    if f.n != x.n or f.config != x.config:
        raise ConfigMismatch("polynomial and point of different shapes")
    result = RatFun.from_const(f.config.v, 0)
    for mono, coeff in f.terms.items():
        value = coeff
        for (comp, exps), power in mono:
            value = value * x.derivative_of_coordinate(comp, exps) ** power
        result = result + value
    return result


def linearize_at_point(f, x):
    """The differential df at x: coefficient of theta*e_i is df/d(theta*y_i)(x)."""
    if f.n != x.n or f.config != x.config:
        raise ConfigMismatch("polynomial and point of different shapes")
    terms = {}
    keys = set()
    for mono in f.terms:
        keys.update(key for key, _ in mono)
    for comp, exps in keys:
        coeff = eval_diffpoly(f.partial_indeterminate(comp, exps), x)
        if coeff:
            terms[(comp, exps)] = coeff
    return ModElement(f.config, f.n, terms)


def tangent_pipeline(eqs, x, rk=None):
    """Linearize at x, complete to a CharSet, and report (phi, d, k).

    Every equation must vanish at x.  The TangentClass is computed only
    for m = 1 (the operator ring is Euclidean there); callers with m >= 2
    receive None in that slot.
    """
    eqs = list(eqs)
    if not eqs:
        raise ValueError("need at least one equation")
    config = eqs[0].config
    n = eqs[0].n
    for idx, f in enumerate(eqs):
        value = eval_diffpoly(f, x)
        if value:
            raise PointNotOnVariety(idx, value)
    if rk is None:
        rk = orderly_ranking(n)
    lins = [linearize_at_point(f, x) for f in eqs]
    charset = characteristic_set(lins, rk, config=config, n=n)
    report = dimension_report(
        charset if rk.kind == "orderly"
        else characteristic_set(lins, orderly_ranking(n), config=config, n=n),
        n)
    tangent = None
    if config.m == 1:
        columns = [w.operator_vector() for w in lins if not w.is_zero()]
        matrix = OreMatrix.from_columns(config, columns, n)
        tangent = classify_tangent(matrix)
    return charset, report, tangent
