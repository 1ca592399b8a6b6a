"""
The BCH star product on truncated symmetric algebras S(h)_{<=D}.

S(h) is identified with U(h) by symmetrization, so that e^X ⋆ e^Y = e^{BCH(X,Y)}.
Left multiplication by a generator comes from the part of BCH(sX, Y) linear
in s, x ⋆ e^Y = W(Y)·e^Y with W(Y) = Σ_n B_n/n! ad_Y^n(x); products by
higher monomials are symmetrized products of these operators. The full
series is available through ``bch_series`` and ``exp_bch`` for cross-checks.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from .multilinear import LinMap, Space, compose

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def bernoulli(n):
    """Bernoulli numbers with B_1 = -1/2."""
    if n == 1:
        return Fraction(-1, 2)
    b = sympy.bernoulli(n)
    return Fraction(int(b.p), int(b.q))


@dataclass(frozen=True)
class LieStructure:
    """A Lie algebra in coordinates: bracket[(i, j)] = {k: c}."""

    labels: tuple
    bracket: dict

    @property
    def dim(self):
        return len(self.labels)

    @classmethod
    def from_lie_bialgebra(cls, b):
        br = {}
        for ((i, j), (k,)), c in b.bracket.entries.items():
            br.setdefault((i, j), {})[k] = c
        return cls(tuple(b.space.labels), br)

    @classmethod
    def from_subalgebra(cls, double, basis, labels):
        """Structure constants of a subalgebra of the double spanned by ``basis``.

        The span must be closed under the bracket; coordinates are found
        by exact elimination.
        """
        from .liebialg import Subspace
        sub = Subspace(double.space.dim, basis)
        coords = _coordinate_solver(basis, double.space.dim)
        br = {}
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                z = double.bracket_of(x, y)
                if not z:
                    continue
                if not sub.contains(z):
                    raise ValueError("span is not closed under the bracket")
                br[(i, j)] = {k: c for k, c in coords(z).items() if c}
        return cls(tuple(labels), br)

    def bracket_vectors(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket.get((i, j), {}).items():
                    new = out.get(k, 0) + a * b * c
                    if new:
                        out[k] = new
                    else:
                        out.pop(k, None)
        return out


def _coordinate_solver(basis, ambient):
    from .multilinear import solve_columns

    def coords(vec):
        particular, _ = solve_columns(basis, vec)
        return {k: c for k, c in enumerate(particular) if c}

    return coords


def monomial_label(labels, exp):
    parts = []
    for lab, a in zip(labels, exp):
        if a == 1:
            parts.append(str(lab))
        elif a > 1:
            parts.append(f"{lab}^{a}")
    return '·'.join(parts) if parts else '1'


def _exponents(m, degree):
    """Exponent tuples of total degree ``degree`` in m variables, lexicographic."""
    if m == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in _exponents(m - 1, degree - first):
            out.append((first,) + rest)
    return out


class SymmetricAlgebra:
    """Monomial basis of S(h)_{<=cap}, graded by degree."""

    def __init__(self, labels, cap, name='S'):
        self.labels = tuple(labels)
        self.cap = cap
        self.monomials = [e for d in range(cap + 1) for e in _exponents(len(self.labels), d)]
        self.index = {e: k for k, e in enumerate(self.monomials)}
        self.space = Space(
            name,
            tuple(monomial_label(self.labels, e) for e in self.monomials),
            tuple(sum(e) for e in self.monomials),
        )

    @property
    def m(self):
        return len(self.labels)

    @property
    def dim(self):
        return len(self.monomials)

    def unit(self):
        return (0,) * self.m

    def generator(self, i):
        return tuple(1 if k == i else 0 for k in range(self.m))

    def degree(self, k):
        return sum(self.monomials[k])

    def multiply(self, a, b):
        """Commutative product of monomials, or None above the cap."""
        e = tuple(x + y for x, y in zip(a, b))
        return e if sum(e) <= self.cap else None


def _factorial(exp):
    out = 1
    for a in exp:
        out *= math.factorial(a)
    return out


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def left_generator_maps(lie, sym):
    """Operators L_i: x^β ↦ x_i ⋆ x^β on S(h)_{<=cap}; degree cap+1 is dropped."""
    m = lie.dim

    @lru_cache(maxsize=None)
    def nested(i, gamma):
        # Σ over words with content gamma of ad_{x_j1} ... ad_{x_jn} x_i
        if not any(gamma):
            return ((i, Fraction(1)),)
        total = {}
        for j in range(m):
            if gamma[j] == 0:
                continue
            inner = dict(nested(i, tuple(g - (k == j) for k, g in enumerate(gamma))))
            for k, c in lie.bracket_vectors({j: Fraction(1)}, inner).items():
                total[k] = total.get(k, 0) + c
        return tuple((k, c) for k, c in total.items() if c)

    maps = []
    for i in range(m):
        cols = {}
        for beta in sym.monomials:
            if sum(beta) >= sym.cap + 1:
                continue
            out = {}
            for d in range(sum(beta) + 1):
                for gamma in _exponents(m, d):
                    if not _leq(gamma, beta):
                        continue
                    w = nested(i, gamma)
                    if not w:
                        continue
                    rest = _sub(beta, gamma)
                    scale = bernoulli(d) / math.factorial(d) * _factorial(beta) / _factorial(rest)
                    for k, c in w:
                        e = sym.multiply(rest, sym.generator(k))
                        if e is None:
                            continue
                        key = (sym.index[e],)
                        new = out.get(key, 0) + scale * c
                        if new:
                            out[key] = new
                        else:
                            out.pop(key, None)
            cols[(sym.index[beta],)] = out
        maps.append(LinMap((sym.space,), (sym.space,), columns=cols))
    return maps


def symmetrized_operators(generators, sym):
    """σ(x^α) acting by left star multiplication, for every monomial α.

    σ(x^α) = Σ_i α_i/|α| L_i σ(x^{α-e_i}).
    """
    ops = {sym.unit(): None}
    for alpha in sym.monomials[1:]:
        n = sum(alpha)
        total = None
        for i, a in enumerate(alpha):
            if a == 0:
                continue
            prev = ops[tuple(x - (k == i) for k, x in enumerate(alpha))]
            term = generators[i] if prev is None else compose(generators[i], prev)
            term = term.scale(Fraction(a, n))
            total = term if total is None else total + term
        ops[alpha] = total
    return ops


class StarAlgebra:
    """S(h)_{<=cap} with its BCH star product."""

    def __init__(self, lie, cap, name='S'):
        self.lie = lie
        self.sym = SymmetricAlgebra(lie.labels, cap, name)
        self.generators = left_generator_maps(lie, self.sym)
        self._ops = None

    @property
    def space(self):
        return self.sym.space

    @property
    def operators(self):
        if self._ops is None:
            self._ops = symmetrized_operators(self.generators, self.sym)
        return self._ops

    def left(self, alpha):
        """Operator of left star multiplication by x^α (None for the unit)."""
        return self.operators[alpha]

    def star(self, a, b):
        """x^a ⋆ x^b as {monomial index: coefficient}."""
        op = self.left(a)
        key = (self.sym.index[b],)
        if op is None:
            return {key[0]: Fraction(1)}
        return {o[0]: c for o, c in op.column(key).items()}

    def product_map(self, max_degree=None):
        """The star product as a LinMap S⊗S -> S on pairs with |a|+|b| <= max_degree."""
        top = self.sym.cap if max_degree is None else max_degree
        cols = {}
        for a in self.sym.monomials:
            for b in self.sym.monomials:
                if sum(a) + sum(b) > top:
                    continue
                cols[(self.sym.index[a], self.sym.index[b])] = {
                    (k,): c for k, c in self.star(a, b).items()
                }
        return LinMap((self.space, self.space), (self.space,), columns=cols)


def bch_star(b, D):
    """Star product on S(b)_{<=D} for a Lie bialgebra b."""
    from .liebialg import require_valid
    require_valid(b)
    algebra = StarAlgebra(LieStructure.from_lie_bialgebra(b), D, f"S({b.name})")
    logger.debug("star product on %s: %d monomials", algebra.space.name, algebra.sym.dim)
    return algebra.product_map()


# the full series, used as an independent check


def _free_mul(p, q, degree):
    out = {}
    for w1, a in p.items():
        for w2, b in q.items():
            if len(w1) + len(w2) > degree:
                continue
            w = w1 + w2
            out[w] = out.get(w, 0) + a * b
    return {w: c for w, c in out.items() if c}


def bch_series(degree):
    """log(e^X e^Y) in the free associative algebra on letters 0 (X), 1 (Y).

    Returns {n: {word: c}} with the Dynkin projection applied, i.e. the
    degree-n part written as Σ c_w [w1,[w2,...]] over right-nested brackets.
    """
    exp_x = {(0,) * p: Fraction(1, math.factorial(p)) for p in range(degree + 1)}
    exp_y = {(1,) * q: Fraction(1, math.factorial(q)) for q in range(degree + 1)}
    z = _free_mul(exp_x, exp_y, degree)
    z.pop((), None)
    log = {}
    power = {(): Fraction(1)}
    for k in range(1, degree + 1):
        power = _free_mul(power, z, degree)
        for w, c in power.items():
            log[w] = log.get(w, 0) + Fraction((-1) ** (k + 1), k) * c
    by_degree = {}
    for w, c in log.items():
        if c:
            by_degree.setdefault(len(w), {})[w] = c / len(w)
    return by_degree


def _poly_mul(p, q, max_degree):
    out = {}
    for e1, a in p.items():
        for e2, b in q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1])
            if e[0] + e[1] > max_degree:
                continue
            out[e] = out.get(e, 0) + a * b
    return {e: c for e, c in out.items() if c}


def exp_bch(lie, x, y, degree):
    """e^{BCH(sx, ty)} in S(h)[s, t], truncated at s,t-degree ``degree``.

    Returns {(monomial exponent, (a, b)): c}; then
    x^a ⋆ y^b for generators equals a! b! Σ_γ [s^a t^b x^γ] x^γ when x, y
    are basis vectors.
    """
    series = bch_series(degree)
    letters = {0: {k: {(1, 0): Fraction(v)} for k, v in x.items()},
               1: {k: {(0, 1): Fraction(v)} for k, v in y.items()}}

    def bracket(u, v):
        out = {}
        for i, p in u.items():
            for j, q in v.items():
                pq = _poly_mul(p, q, degree)
                if not pq:
                    continue
                for k, c in lie.bracket.get((i, j), {}).items():
                    target = out.setdefault(k, {})
                    for e, a in pq.items():
                        target[e] = target.get(e, 0) + a * c
        return {k: {e: a for e, a in p.items() if a} for k, p in out.items()}

    @lru_cache(maxsize=None)
    def nested(word):
        if len(word) == 1:
            return tuple((k, tuple(p.items())) for k, p in letters[word[0]].items())
        inner = {k: dict(p) for k, p in nested(word[1:])}
        out = bracket(letters[word[0]], inner)
        return tuple((k, tuple(p.items())) for k, p in out.items() if p)

    z = {}
    for n, words in series.items():
        for w, c in words.items():
            for k, p in nested(w):
                target = z.setdefault(k, {})
                for e, a in p:
                    target[e] = target.get(e, 0) + a * c
    m = lie.dim
    # exponential in the commutative ring S(h)[s, t]
    unit = ((0,) * m, (0, 0))
    result = {unit: Fraction(1)}
    term = {unit: Fraction(1)}
    z_terms = [
        (tuple(1 if j == k else 0 for j in range(m)), e, a)
        for k, p in z.items() for e, a in p.items() if a
    ]
    for k in range(1, degree + 1):
        nxt = {}
        for (mono, e), a in term.items():
            for gen, e2, b in z_terms:
                st = (e[0] + e2[0], e[1] + e2[1])
                if st[0] + st[1] > degree:
                    continue
                key = (tuple(u + v for u, v in zip(mono, gen)), st)
                nxt[key] = nxt.get(key, 0) + a * b / k
        term = {key: c for key, c in nxt.items() if c}
        for key, c in term.items():
            result[key] = result.get(key, 0) + c
    return {key: c for key, c in result.items() if c}


def star_powers_via_series(lie, i, a, j, b):
    """x_i^a ⋆ x_j^b computed from the full BCH series."""
    data = exp_bch(lie, {i: 1}, {j: 1}, a + b)
    scale = math.factorial(a) * math.factorial(b)
    return {mono: c * scale for (mono, st), c in data.items() if st == (a, b)}
