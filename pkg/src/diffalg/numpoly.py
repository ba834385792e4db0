"""Integer-valued numerical polynomials and the staircase-counting kernel.

phi(t) counts lattice points of N^m of weight <= t avoiding the staircase
above each leader exponent; by inclusion-exclusion over subsets of each
component's antichain,

    phi(t) = sum_i sum_{S subseteq E_i} (-1)^|S| C(t - |max S| + m, m),

valid for t >= max_S |max S|.  Polynomials are stored in the binomial
basis C(t+i, i), whose coefficients are the Kolchin invariants directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .errors import NotAntichain

#: Sentinel differential type of the zero polynomial.
ZERO_TYPE = float("-inf")


def _binomial_basis_poly(i):
    """Monomial coefficients (Fractions, ascending) of C(t+i, i)."""
    coeffs = [Fraction(1)]
    for j in range(1, i + 1):
        # multiply by (t + j)
        coeffs = [Fraction(0)] + coeffs
        for k in range(len(coeffs) - 1):
            coeffs[k] += j * coeffs[k + 1]
    inv = Fraction(1, factorial(i))
    return [c * inv for c in coeffs]


def _to_binomial(mono):
    """Convert ascending monomial Fraction coefficients to the binomial basis."""
    mono = list(mono)
    while mono and not mono[-1]:
        mono.pop()
    coeffs = []
    for i in range(len(mono) - 1, -1, -1):
        a_i = mono[i] * factorial(i)
        basis = _binomial_basis_poly(i)
        for k in range(i + 1):
            mono[k] -= a_i * basis[k]
        coeffs.append(a_i)
    coeffs.reverse()
    if any(mono):
        raise AssertionError("binomial-basis conversion left a remainder")
    return coeffs


@dataclass(frozen=True)
class NumericalPolynomial:
    """phi(t) = sum_i coeffs[i] * C(t+i, i), exact for all t >= valid_from."""

    coeffs: tuple
    valid_from: int = 0

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        for c in coeffs:
            if c != int(c):
                raise ValueError("binomial-basis coefficients must be integers")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def from_monomial(cls, mono_coeffs, valid_from=0):
        return cls(tuple(_to_binomial(mono_coeffs)), valid_from)

    def degree(self):
        """Degree, or the ZERO_TYPE sentinel for the zero polynomial."""
        if not self.coeffs:
            return ZERO_TYPE
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, t):
        return sum(a * comb(t + i, i) for i, a in enumerate(self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        coeffs = tuple(
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n))
        return NumericalPolynomial(coeffs,
                                   max(self.valid_from, other.valid_from))

    def monomial_coeffs(self):
        """Ascending ordinary coefficients, as Fractions."""
        out = [Fraction(0)] * max(len(self.coeffs), 1)
        for i, a in enumerate(self.coeffs):
            for k, b in enumerate(_binomial_basis_poly(i)):
                out[k] += a * b
        return out

    def first_difference(self):
        """phi(t) - phi(t-1) in the binomial basis (drop the constant shift)."""
        # C(t+i, i) - C(t-1+i, i) = C(t-1+i, i-1) = C(t + (i-1), i-1) at t-1;
        # evaluate directly instead: delta coefficients are the shifted ones.
        if len(self.coeffs) <= 1:
            return NumericalPolynomial((), self.valid_from + 1)
        return NumericalPolynomial(self.coeffs[1:], self.valid_from + 1)

    def to_json(self):
        return {"binomial_coeffs": list(self.coeffs),
                "valid_from": self.valid_from}

    def __str__(self):
        mono = self.monomial_coeffs()
        parts = []
        for k in range(len(mono) - 1, -1, -1):
            c = mono[k]
            if not c:
                continue
            if k == 0:
                term = str(c)
            elif k == 1:
                term = "t" if c == 1 else ("-t" if c == -1 else f"{c}*t")
            else:
                term = (f"t^{k}" if c == 1
                        else (f"-t^{k}" if c == -1 else f"{c}*t^{k}"))
            if parts and not term.startswith("-"):
                parts.append("+ " + term)
            elif parts:
                parts.append("- " + term.lstrip("-"))
            else:
                parts.append(term)
        return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Antichain:
    """Per-component sets of pairwise incomparable exponent vectors in N^m."""

    m: int
    components: tuple  # tuple of frozensets of exponent tuples

    def __post_init__(self):
        comps = []
        for E in self.components:
            E = frozenset(tuple(e) for e in E)
            for e in E:
                if len(e) != self.m:
                    raise NotAntichain("exponent vector of wrong length")
            for a in E:
                for b in E:
                    if a != b and all(x <= y for x, y in zip(a, b)):
                        raise NotAntichain(f"{a} <= {b} componentwise")
            comps.append(E)
        object.__setattr__(self, "components", tuple(comps))

    @property
    def n(self):
        return len(self.components)


def count_cofilter(antichain):
    """Numerical polynomial counting staircase-free lattice points.

    For each component, counts {v in N^m : |v| <= t, v >= e for no e in E_i}
    by inclusion-exclusion over subsets of E_i.
    """
    m = antichain.m
    total = [Fraction(0)] * (m + 1)
    valid_from = 0
    for E in antichain.components:
        vectors = sorted(E)
        for size in range(len(vectors) + 1):
            for subset in combinations(vectors, size):
                join = [0] * m
                for e in subset:
                    join = [max(a, b) for a, b in zip(join, e)]
                c = sum(join)
                valid_from = max(valid_from, c)
                sign = -1 if size % 2 else 1
                # C(t - c + m, m) = prod_{j=1..m} (t - c + j) / m!
                poly = [Fraction(1)]
                for j in range(1, m + 1):
                    poly = [Fraction(0)] + poly
                    for k in range(len(poly) - 1):
                        poly[k] += (j - c) * poly[k + 1]
                inv = Fraction(sign, factorial(m))
                for k in range(len(poly)):
                    total[k] += poly[k] * inv
    return NumericalPolynomial.from_monomial(total, valid_from)


def brute_count(antichain, t):
    """Direct enumeration of the counted set (testing oracle)."""
    m = antichain.m
    count = 0
    for E in antichain.components:
        for v in _weight_bounded(m, t):
            if not any(all(x >= y for x, y in zip(v, e)) for e in E):
                count += 1
    return count


def _weight_bounded(m, t):
    if m == 0:
        yield ()
        return
    for head in range(t + 1):
        for tail in _weight_bounded(m - 1, t - head):
            yield (head,) + tail


def eval_numpoly(p, t):
    """Exact integer value of p at a nonnegative integer t."""
    if t < 0:
        raise ValueError("evaluation point must be nonnegative")
    return p(t)


def type_and_heights(p, m):
    """(differential type l, typical height d_l, differential height d_m).

    d_l = l! * (leading ordinary coefficient), which in the binomial basis
    is the leading coefficient itself; d_m = 0 whenever deg p < m.
    The zero polynomial reports (ZERO_TYPE, 0, 0).
    """
    deg = p.degree()
    if deg is ZERO_TYPE or p.is_zero():
        return ZERO_TYPE, 0, 0
    if deg > m:
        raise ValueError(f"degree {deg} exceeds the derivation count {m}")
    d_l = p.coeffs[-1]
    d_m = p.coeffs[m] if len(p.coeffs) > m else 0
    return deg, d_l, d_m
