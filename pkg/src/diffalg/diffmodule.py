"""Free differential modules K[Delta]^n: rankings, reduction, characteristic sets.

A module term is a pair (component, derivation exponents); a module element
is a sparse map from terms to base-field coefficients.  Characteristic sets
are computed by a Buchberger-style completion for left submodules, with
S-pairs formed only between elements whose leaders share a component.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigMismatch, ZeroElement
from .field import RatFun
from .ore import OrePoly, monomial_ord, ore_apply, _as_ratfun


@dataclass(frozen=True)
class Ranking:
    """Total order on module terms (component, exponents).

    orderly: order of derivation dominates, ties broken by component
    position (earlier in component_order = lower), then lex on exponents.
    elimination: component position dominates, then order, then lex.
    component_order lists 0-based components from lowest to highest.
    """

    kind: str
    component_order: tuple

    def __post_init__(self):
        if self.kind not in ("orderly", "elimination"):
            raise ValueError(f"unknown ranking kind {self.kind!r}")
        if sorted(self.component_order) != list(range(len(self.component_order))):
            raise ValueError("component_order must be a permutation of 0..n-1")

    @property
    def n(self):
        return len(self.component_order)

    def position(self, comp):
        return self.component_order.index(comp)

    def key(self, term):
        comp, exps = term
        if self.kind == "orderly":
            return (monomial_ord(exps), self.position(comp), exps)
        return (self.position(comp), monomial_ord(exps), exps)

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def orderly_ranking(n):
    return Ranking("orderly", tuple(range(n)))


def elimination_ranking(n):
    return Ranking("elimination", tuple(range(n)))


class ModElement:
    """Element of K[Delta]^n: (component, exponents) -> RatFun."""

    __slots__ = ("config", "n", "terms", "_hash")

    def __init__(self, config, n, terms=None):
        self.config = config
        self.n = n
        clean = {}
        if terms:
            for (comp, exps), coeff in terms.items():
                if not 0 <= comp < n:
                    raise ValueError(f"component {comp} out of range")
                if len(exps) != config.m:
                    raise ValueError("derivation monomial of wrong length")
                coeff = _as_ratfun(coeff, config)
                if coeff:
                    clean[(comp, exps)] = coeff
        self.terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, config, n):
        return cls(config, n)

    @classmethod
    def basis(cls, config, n, comp, exps=None, coeff=1):
        if exps is None:
            exps = (0,) * config.m
        return cls(config, n, {(comp, tuple(exps)): coeff})

    @classmethod
    def from_operator_vector(cls, ops, n=None):
        """Build from a list of OrePoly coordinates."""
        if n is None:
            n = len(ops)
        config = ops[0].config
        terms = {}
        for comp, op in enumerate(ops):
            if op.config != config:
                raise ConfigMismatch("mixed configurations in a vector")
            for exps, coeff in op.terms.items():
                terms[(comp, exps)] = coeff
        return cls(config, n, terms)

    def operator_vector(self):
        """Coordinates as a list of n OrePoly."""
        coords = [dict() for _ in range(self.n)]
        for (comp, exps), coeff in self.terms.items():
            coords[comp][exps] = coeff
        return [OrePoly(self.config, c) for c in coords]

    # -- views -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def max_order(self):
        if not self.terms:
            return -1
        return max(monomial_ord(e) for (_, e) in self.terms)

    # -- linear structure ----------------------------------------------------

    def _check(self, other):
        if self.config != other.config or self.n != other.n:
            raise ConfigMismatch("elements of different modules")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            c = terms.get(key)
            c = coeff if c is None else c + coeff
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return ModElement(self.config, self.n, terms)

    def __neg__(self):
        return ModElement(self.config, self.n,
                          {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale_left(self, c):
        c = _as_ratfun(c, self.config)
        if not c:
            return ModElement.zero(self.config, self.n)
        return ModElement(self.config, self.n,
                          {k: c * a for k, a in self.terms.items()})

    def apply_delta(self, i):
        self.config.check_derivation(i)
        terms = {}
        for (comp, exps), coeff in self.terms.items():
            shifted = list(exps)
            shifted[i] += 1
            _acc(terms, (comp, tuple(shifted)), coeff)
            if i < self.config.v:
                der = coeff.derive(i)
                if der:
                    _acc(terms, (comp, exps), der)
        return ModElement(self.config, self.n, terms)

    def apply_theta(self, exps):
        out = self
        for i, k in enumerate(exps):
            for _ in range(k):
                out = out.apply_delta(i)
        return out

    def op_mul(self, op):
        """Left action of an OrePoly: op * self."""
        result = ModElement.zero(self.config, self.n)
        for exps, coeff in op.terms.items():
            result = result + self.apply_theta(exps).scale_left(coeff)
        return result

    def __eq__(self, other):
        if not isinstance(other, ModElement):
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
        return f"ModElement(n={self.n}, {self.terms!r})"


def _acc(terms, key, value):
    c = terms.get(key)
    c = value if c is None else c + value
    if c:
        terms[key] = c
    else:
        terms.pop(key, None)


def leader(w, rk):
    """The ranking-maximal term of a nonzero element."""
    if w.is_zero():
        raise ZeroElement("the zero element has no leader")
    return max(w.terms, key=rk.key)


def leader_coeff(w, rk):
    return w.terms[leader(w, rk)]


def monic(w, rk):
    if w.is_zero():
        return w
    return w.scale_left(leader_coeff(w, rk).inverse())


def _divides(lead, term):
    """Does some theta send lead to term (same component, exps <=)?"""
    lc, le = lead
    tc, te = term
    return lc == tc and all(a <= b for a, b in zip(le, te))


def reduce(w, A, rk, want_cofactors=False):
    """Normal form of w modulo the left span of A.

    Cancels the highest reducible term first; the result is free of every
    derivative theta*u_f (theta = identity included) of every leader in A.
    With want_cofactors=True also returns {index in A: OrePoly q} with
    w = sum q_i * A[i] + normal_form, exactly.
    """
    active = [(idx, f, leader(f, rk)) for idx, f in enumerate(A)
              if not f.is_zero()]
    cofactors = {}
    current = w
    while True:
        target = None
        for term in sorted(current.terms, key=rk.key, reverse=True):
            for idx, f, lead in active:
                if _divides(lead, term):
                    target = (term, idx, f, lead)
                    break
            if target:
                break
        if target is None:
            break
        term, idx, f, lead = target
        theta = tuple(a - b for a, b in zip(term[1], lead[1]))
        shifted = f.apply_theta(theta)
        factor = current.terms[term] / shifted.terms[term]
        current = current - shifted.scale_left(factor)
        if want_cofactors:
            q = OrePoly.monomial(w.config, theta, factor)
            cofactors[idx] = cofactors.get(idx, OrePoly.zero(w.config)) + q
    if want_cofactors:
        return current, cofactors
    return current


@dataclass(frozen=True)
class AutoreducedSet:
    """Monic, pairwise-reduced elements sorted by increasing leader rank."""

    elements: tuple
    ranking: Ranking

    def leaders(self):
        return [leader(f, self.ranking) for f in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def autoreduce(S, rk):
    """Interreduce a list of elements into an autoreduced set."""
    elems = [monic(w, rk) for w in S if not w.is_zero()]
    while True:
        elems.sort(key=lambda w: rk.key(leader(w, rk)))
        changed = False
        for i in range(len(elems)):
            others = elems[:i] + elems[i + 1:]
            r = reduce(elems[i], others, rk)
            if r != elems[i]:
                changed = True
                if r.is_zero():
                    del elems[i]
                else:
                    elems[i] = monic(r, rk)
                break
        if not changed:
            break
    return AutoreducedSet(tuple(elems), rk)


def compare_autoreduced(A, B):
    """'lower' / 'equal' / 'higher': the Ritt-Kolchin rank order on sets."""
    if A.ranking != B.ranking:
        raise ConfigMismatch("autoreduced sets under different rankings")
    rk = A.ranking
    ua = A.leaders()
    ub = B.leaders()
    for la, lb in zip(ua, ub):
        c = rk.compare(la, lb)
        if c < 0:
            return "lower"
        if c > 0:
            return "higher"
    if len(ua) > len(ub):
        return "lower"
    if len(ua) < len(ub):
        return "higher"
    return "equal"


@dataclass(frozen=True)
class CharSet:
    """Complete characteristic set: an autoreduced Groebner-style basis."""

    autoreduced: AutoreducedSet
    generators: tuple
    config: object
    n: int
    complete: bool = True

    @property
    def ranking(self):
        return self.autoreduced.ranking

    @property
    def elements(self):
        return self.autoreduced.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _spair(f, g, rk):
    """S-pair at the exponentwise max of the two leaders (same component)."""
    (comp, ef) = leader(f, rk)
    (_, eg) = leader(g, rk)
    gamma = tuple(max(a, b) for a, b in zip(ef, eg))
    sf = f.apply_theta(tuple(a - b for a, b in zip(gamma, ef)))
    sg = g.apply_theta(tuple(a - b for a, b in zip(gamma, eg)))
    lt = (comp, gamma)
    return sf.scale_left(sf.terms[lt].inverse()) \
        - sg.scale_left(sg.terms[lt].inverse())


def _lcm_term(f, g, rk):
    (comp, ef) = leader(f, rk)
    (_, eg) = leader(g, rk)
    return (comp, tuple(max(a, b) for a, b in zip(ef, eg)))


def characteristic_set(gens, rk, config=None, n=None):
    """Characteristic set of the left submodule generated by gens.

    Buchberger-style completion: S-pairs only between elements whose
    leaders share a component, processed in increasing rank of the lcm
    term; the final basis is interreduced and monic.  config and n are
    inferred from the generators when any are present.
    """
    gens = list(gens)
    for g in gens:
        config = config or g.config
        n = n if n is not None else g.n
    if config is None or n is None:
        raise ValueError("need config and n for an empty generator list")
    basis = [monic(g, rk) for g in gens if not g.is_zero()]
    basis = list(autoreduce(basis, rk).elements)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))
             if leader(basis[i], rk)[0] == leader(basis[j], rk)[0]]
    while pairs:
        pairs.sort(key=lambda p: rk.key(_lcm_term(basis[p[0]], basis[p[1]], rk)))
        i, j = pairs.pop(0)
        s = _spair(basis[i], basis[j], rk)
        nf = reduce(s, basis, rk)
        if nf.is_zero():
            continue
        nf = monic(nf, rk)
        new_idx = len(basis)
        basis.append(nf)
        nf_comp = leader(nf, rk)[0]
        pairs.extend((k, new_idx) for k in range(new_idx)
                     if leader(basis[k], rk)[0] == nf_comp)
    final = autoreduce(basis, rk)
    charset = CharSet(final, tuple(gens), config, n)
    _verify_complete(charset)
    return charset


def _verify_complete(charset):
    rk = charset.ranking
    elems = list(charset.elements)
    for g in charset.generators:
        if not reduce(g, elems, rk).is_zero():
            raise AssertionError("generator does not reduce to zero")
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if leader(elems[i], rk)[0] != leader(elems[j], rk)[0]:
                continue
            if not reduce(_spair(elems[i], elems[j], rk), elems, rk).is_zero():
                raise AssertionError("S-pair does not reduce to zero")


def eval_point(w, xs):
    """xi(x) = sum_i xi_i(x_i) for a point with n base-field coordinates."""
    if len(xs) != w.n:
        raise ConfigMismatch(f"point of length {len(xs)}, module rank {w.n}")
    result = RatFun.from_const(w.config.v, 0)
    for op, x in zip(w.operator_vector(), xs):
        result = result + ore_apply(op, x)
    return result


def member(w, charset):
    """Exact membership of w in the submodule presented by the CharSet."""
    if not charset.complete:
        raise ValueError("membership needs a complete characteristic set")
    return reduce(w, list(charset.elements), charset.ranking).is_zero()
