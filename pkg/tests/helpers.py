"""Shared test utilities: random generators and independent oracles.

The oracles deliberately avoid the library's own fast paths: operator
products are re-derived from the closed binomial commutation formula, and
module dimensions are recomputed by exact Gaussian elimination over the
base field on truncated derivative spans.
"""

from math import comb

from diffalg import MPoly, ModElement, OrePoly, RatFun


# ---------------------------------------------------------------------------
# random data

def rand_mpoly(rng, nvars, max_deg=2, max_terms=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        terms[exps] = rng.randint(-3, 3)
    return MPoly(nvars, terms)


def rand_ratfun(rng, config, frac_prob=0.15, coeff_deg=2, nonzero=False):
    v = config.v
    while True:
        num = rand_mpoly(rng, v, max_deg=coeff_deg)
        den = MPoly.const(v, 1)
        if v and rng.random() < frac_prob:
            cand = rand_mpoly(rng, v, max_deg=1)
            if not cand.is_zero():
                den = cand
        value = RatFun(num, den)
        if value or not nonzero:
            return value


def rand_orepoly(rng, config, max_deg=2, max_terms=2, nonzero=False,
                 frac_prob=0.15, coeff_deg=2):
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            exps = [0] * config.m
            for _ in range(rng.randint(0, max_deg)):
                exps[rng.randrange(config.m)] += 1
            terms[tuple(exps)] = rand_ratfun(rng, config, frac_prob, coeff_deg)
        op = OrePoly(config, terms)
        if op or not nonzero:
            return op


def rand_modelement(rng, config, n, max_ord=3, max_terms=3, nonzero=False,
                    frac_prob=0.15, coeff_deg=2):
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            comp = rng.randrange(n)
            exps = [0] * config.m
            for _ in range(rng.randint(0, max_ord)):
                exps[rng.randrange(config.m)] += 1
            terms[(comp, tuple(exps))] = rand_ratfun(rng, config, frac_prob,
                                                     coeff_deg)
        w = ModElement(config, n, terms)
        if w or not nonzero:
            return w


# ---------------------------------------------------------------------------
# closed-form product oracle

def _sub_indices(theta):
    """All tau with 0 <= tau <= theta componentwise."""
    out = [()]
    for bound in theta:
        out = [tau + (j,) for tau in out for j in range(bound + 1)]
    return out


def ore_mul_binomial(f, g):
    """Product via theta*a = sum_{tau <= theta} C(theta,tau) d^(theta-tau)(a) tau."""
    config = f.config
    terms = {}
    for theta, a in f.terms.items():
        for sigma, b in g.terms.items():
            for tau in _sub_indices(theta):
                coeff = 1
                for ti, si in zip(theta, tau):
                    coeff *= comb(ti, si)
                value = b
                for i, (ti, si) in enumerate(zip(theta, tau)):
                    for _ in range(ti - si):
                        value = value.derive(i)
                if not value:
                    continue
                key = tuple(x + y for x, y in zip(tau, sigma))
                c = terms.get(key)
                add = a * value * coeff
                c = add if c is None else c + add
                if c:
                    terms[key] = c
                else:
                    terms.pop(key, None)
    return OrePoly(config, terms)


# ---------------------------------------------------------------------------
# exact Gaussian elimination over the base field

class RowReducer:
    """Incremental row echelon form for sparse vectors over RatFun.

    Vectors are dicts keyed by arbitrary orderable keys; `add` returns True
    when the vector enlarged the span.
    """

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, vec):
        vec = {k: c for k, c in vec.items() if c}
        while vec:
            key = max(vec)
            row = self.pivots.get(key)
            if row is None:
                inv = vec[key].inverse()
                self.pivots[key] = {k: c * inv for k, c in vec.items()}
                return True
            factor = vec[key]
            for k, c in row.items():
                delta = factor * c
                cur = vec.get(k)
                cur = -delta if cur is None else cur - delta
                if cur:
                    vec[k] = cur
                else:
                    vec.pop(k, None)
        return False

    def contains(self, vec):
        """Membership in the current span, without mutating the basis."""
        vec = {k: c for k, c in vec.items() if c}
        while vec:
            key = max(vec)
            row = self.pivots.get(key)
            if row is None:
                return False
            factor = vec[key]
            for k, c in row.items():
                cur = vec.get(k)
                delta = factor * c
                cur = -delta if cur is None else cur - delta
                if cur:
                    vec[k] = cur
                else:
                    vec.pop(k, None)
        return True


# ---------------------------------------------------------------------------
# truncated-span dimension oracle

def multiindices(m, total):
    """All exponent tuples of length m with entries summing to total."""
    if m == 1:
        return [(total,)]
    out = []
    for head in range(total + 1):
        out.extend((head,) + tail for tail in multiindices(m - 1, total - head))
    return out


def truncated_module_dims(gens, n, config, kmax, extra_pad=2, stable_runs=2):
    """dim_K M_k for k = 0..kmax, M = K[Delta]^n / leftspan(gens).

    dim(N intersect W_k) = rank(span of theta*g) - rank(its projection to
    the coordinates of order > k); the derivative order theta is padded
    until the whole dimension vector stabilizes.
    """
    gens = [g for g in gens if not g.is_zero()]
    m = config.m
    if not gens:
        return [n * comb(k + m, m) for k in range(kmax + 1)]
    maxord = max(g.max_order() for g in gens)
    full = RowReducer()
    projections = [RowReducer() for _ in range(kmax + 1)]
    min_pad = kmax + maxord + extra_pad
    dims = None
    stable = 0
    pad = 0
    while True:
        for theta in multiindices(m, pad):
            for g in gens:
                vec = g.apply_theta(theta).terms
                full.add(dict(vec))
                for k in range(kmax + 1):
                    projections[k].add({term: c for term, c in vec.items()
                                        if sum(term[1]) > k})
        new_dims = [full.rank - projections[k].rank for k in range(kmax + 1)]
        if new_dims == dims:
            stable += 1
        else:
            stable = 0
            dims = new_dims
        if pad >= min_pad and stable >= stable_runs:
            break
        pad += 1
    return [n * comb(k + m, m) - dims[k] for k in range(kmax + 1)]


def in_span_truncated(w, gens, config, extra_pad=3, stable_runs=3):
    """Membership of w in the left span of gens by padded linear algebra."""
    gens = [g for g in gens if not g.is_zero()]
    if w.is_zero():
        return True
    if not gens:
        return False
    reducer = RowReducer()
    answer = None
    stable = 0
    min_pad = w.max_order() + max(g.max_order() for g in gens) + extra_pad
    pad = 0
    while True:
        for theta in multiindices(config.m, pad):
            for g in gens:
                reducer.add(dict(g.apply_theta(theta).terms))
        new_answer = reducer.contains(dict(w.terms))
        if new_answer == answer:
            stable += 1
        else:
            stable = 0
            answer = new_answer
        if answer or (pad >= min_pad and stable >= stable_runs):
            return answer
        pad += 1
