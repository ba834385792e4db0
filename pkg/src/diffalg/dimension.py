"""Differential dimension polynomials of K[Delta]^n/N from a characteristic set.

Under an orderly ranking the derivative terms that are not derivatives of
any leader form a K-basis of each filtration slice M_k, so the dimension
polynomial is the staircase count of the leader antichain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OrderlyRequired, UnsupportedForPartial
from .numpoly import (Antichain, NumericalPolynomial, count_cofilter,
                      type_and_heights)
from .diffmodule import leader
from .ore import monomial_ord


@dataclass(frozen=True)
class DimensionReport:
    """Dimension polynomial plus the m = 1 free/torsion bookkeeping.

    For m = 1 the polynomial decomposes as phi(t) = d*(t+1) + B, where d is
    the differential dimension and B counts the derivative terms strictly
    below the leaders; the free term is r = d + B.
    """

    dimpoly: NumericalPolynomial
    diff_dimension: int
    type: object  # int, or the ZERO_TYPE sentinel
    typical_height: int
    free_components: tuple
    below_leader_count: int | None  # defined for m = 1 only

    @property
    def free_term(self):
        """r = phi evaluated as d + B (m = 1)."""
        if self.below_leader_count is None:
            return None
        return self.diff_dimension + self.below_leader_count

    def to_json(self):
        out = {
            "dimension_polynomial": self.dimpoly.to_json(),
            "diff_dimension": self.diff_dimension,
            "type": None if isinstance(self.type, float) else self.type,
            "typical_height": self.typical_height,
            "free_components": list(self.free_components),
        }
        if self.below_leader_count is not None:
            out["below_leader_count"] = self.below_leader_count
        return out


def leader_antichain(charset, n=None):
    """Leader exponents of a characteristic set, grouped by component."""
    rk = charset.ranking
    if n is None:
        n = charset.n
    sets = [set() for _ in range(n)]
    for f in charset.elements:
        comp, exps = leader(f, rk)
        sets[comp].add(exps)
    return Antichain(charset.config.m, tuple(frozenset(s) for s in sets))


def _require_orderly(charset):
    if charset.ranking.kind != "orderly":
        raise OrderlyRequired("dimension computations need an orderly ranking")


def dimension_polynomial(charset, n=None):
    """phi(k) = dim_K M_k for M = K[Delta]^n / N."""
    _require_orderly(charset)
    return count_cofilter(leader_antichain(charset, n))


def diff_dimension(charset, n=None):
    """Differential dimension: m! times the leading t^m coefficient of phi.

    Cross-checked against the count of components without leaders; the two
    agree for any complete characteristic set under an orderly ranking.
    """
    _require_orderly(charset)
    if n is None:
        n = charset.n
    anti = leader_antichain(charset, n)
    phi = count_cofilter(anti)
    m = anti.m
    d = phi.coeffs[m] if len(phi.coeffs) > m else 0
    led = sum(1 for E in anti.components if E)
    if d != n - led:
        raise AssertionError(
            f"dimension mismatch: a_m = {d}, free components = {n - led}")
    return d


def free_split(charset, n=None):
    """(free components, B) for m = 1 modules.

    free components carry no leader; B sums the leader orders, i.e. the
    number of derivative terms strictly below a leader on its component.
    """
    _require_orderly(charset)
    anti = leader_antichain(charset, n)
    if anti.m != 1:
        raise UnsupportedForPartial("free/torsion split needs m = 1")
    free = tuple(i for i, E in enumerate(anti.components) if not E)
    below = 0
    for E in anti.components:
        for exps in E:
            below += monomial_ord(exps)
    return free, below


def dimension_report(charset, n=None):
    """Assemble the full report for K[Delta]^n / N."""
    _require_orderly(charset)
    if n is None:
        n = charset.n
    anti = leader_antichain(charset, n)
    phi = count_cofilter(anti)
    d = diff_dimension(charset, n)
    level, d_l, _ = type_and_heights(phi, anti.m)
    if anti.m == 1:
        free, below = free_split(charset, n)
    else:
        free = tuple(i for i, E in enumerate(anti.components) if not E)
        below = None
    return DimensionReport(dimpoly=phi, diff_dimension=d, type=level,
                           typical_height=d_l, free_components=free,
                           below_leader_count=below)
