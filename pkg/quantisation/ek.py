"""
Etingof-Kazhdan quantisation truncated at order h^N (N <= 2).

The fibre functor sends a DY module V to Hom(N+, V); evaluation at 1+
identifies that space with V, and the inverse is

    v ↦ Σ_α e^α ⊗ σ(x^α)·v   in N+v ⊗ V

with x^α running over the PBW basis of S(p+). Twists, products and
braidings are computed on vectors through this inverse, one column at a
time, so every result is an operator on the underlying modules.

The associator enters through its h^2 germ 1 + c2 h^2 [Ω12, Ω23]. Each Ω
carries one power of h and moves the PBW degree of a leg by at most one;
twist columns are exact on legs of degree at most cap - 2N and product
columns on legs of degree at most cap - 3N.
"""
import itertools
import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .bch import SymmetricAlgebra, bch_star, symmetrized_operators
from .conf import associator_c2, get_setting
from .dy_lie import (
    INPUT, adjoint_module, double_action, dy_tensor, embed_operator, module_from_operators, r_omega_operators,
    trivial_module,
)
from .exceptions import NoSolution, NotSplit, SignatureMismatch, TruncationObstruction
from .hopf import (
    BraidedHopf, DYHopfModule, HopfAlgebra, SplitHopfPair, antipode_from_convolution, radford_biproduct, trivial_hopf,
    validate_braided_hopf, validate_dy_hopf, validate_hopf,
)
from .liebialg import drinfeld_double, parabolic_decomposition, require_valid, zero_pair
from .multilinear import (
    LinMap, Space, all_indices, apply_at, compose, flip, fused_space, identity, permute, solve_columns,
    solve_linear, tensor, total_degree,
)
from .que import QUE, check_admissible, compare_dy_lie, semiclassical_limit, validate_que
from .reports import Report
from .scalar import TruncSeries, hbar_valuation
from .verma import symmetric_coproduct, verma_family

logger = logging.getLogger(__name__)

MAX_ORDER = 2
GENERATORS = ('omega', 'r', 'r21')


def _hbar(order):
    return TruncSeries.hbar(order, 1)


def _add(target, key, value):
    new = target.get(key, 0) + value
    if new:
        target[key] = new
    else:
        target.pop(key, None)


def _binomial(alpha, beta):
    out = 1
    for a, b in zip(alpha, beta):
        out *= math.comb(a, b)
    return out


def _defaults(D, N):
    D = get_setting('DEGREE_CAP') if D is None else D
    N = get_setting('HBAR_ORDER') if N is None else N
    if N > MAX_ORDER:
        raise TruncationObstruction(f"the associator germ is only fixed up to order h^{MAX_ORDER}", order=N)
    return D, N


@lru_cache(maxsize=None)
def _family(pair, cap):
    return verma_family(pair, cap)


class _Ops:
    """The g_b operators of a module and of arbitrary vectors of the double."""

    def __init__(self, module):
        self.module = module
        self.legs = module.legs
        self.basis = module.operators()
        self.n = module.base.dim
        self._cache = {}

    def of(self, vec):
        key = tuple(sorted(vec.items()))
        if key not in self._cache:
            total = LinMap(self.legs, self.legs)
            for k, c in vec.items():
                total = total + self.basis[k].scale(c)
            self._cache[key] = total
        return self._cache[key]


class _Layout:
    """Modules side by side; elements are LinMaps from k onto their legs."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        self.offsets = []
        position = 0
        for f in self.factors:
            self.offsets.append(position)
            position += len(f.legs)
        self.legs = tuple(leg for f in self.factors for leg in f.legs)

    def element(self, vector):
        return LinMap.element(self.legs, vector)

    def omega(self, x, first, second):
        """Σ Ω_ab over a in ``first`` and b in ``second``, applied to x."""
        out = {}
        for a in first:
            for b in second:
                A, B = self.factors[a], self.factors[b]
                n = A.n
                for i in range(n):
                    for left, right in ((A.basis[i], B.basis[n + i]), (A.basis[n + i], B.basis[i])):
                        y = apply_at(left, apply_at(right, x, self.offsets[b]), self.offsets[a])
                        for idx, c in y.vector.items():
                            _add(out, idx, c)
        return self.element(out)

    def permuted(self, order, x):
        """Factor k of the result is factor order[k]."""
        legs = []
        for k in order:
            start = self.offsets[k]
            legs.extend(range(start, start + len(self.factors[k].legs)))
        return _Layout([self.factors[k] for k in order]), x.permute_output(legs)

    def evaluate(self, x, factors):
        """ev_{1+} on the listed single-leg factors; the other legs are kept in order."""
        drop = {self.offsets[f] for f in factors}
        keep = [k for k in range(len(self.legs)) if k not in drop]
        out = {}
        for idx, c in x.vector.items():
            if any(self.legs[k].degree(idx[k]) for k in drop):
                continue
            _add(out, tuple(idx[k] for k in keep), c)
        return out


def _exp_omega(layout, x, first, second, scale, order):
    """exp(scale·h·Ω) on an element."""
    h = _hbar(order)
    total, term = x, x
    for k in range(1, order + 1):
        term = layout.omega(term, first, second).scale(h * Fraction(scale) / k)
        total = total + term
    return total


def _r_operator(factors, a, b):
    """r_ab = Σ_i ρ_a(b_i) ρ_b(b^i) on all legs of the factors."""
    layout = _Layout(factors)
    legs = layout.legs
    A, B = factors[a], factors[b]
    total = LinMap(legs, legs)
    for i in range(A.n):
        total = total + compose(embed_operator(A.basis[i], legs, layout.offsets[a]),
                                embed_operator(B.basis[A.n + i], legs, layout.offsets[b]))
    return total


def _generator_operator(factors, kind, a, b):
    if kind == 'r':
        return _r_operator(factors, a, b)
    if kind == 'r21':
        return _r_operator(factors, b, a)
    return _r_operator(factors, a, b) + _r_operator(factors, b, a)


# associator and braiding


@dataclass(frozen=True)
class AssociatorTrunc:
    """Φ(A, B) = 1 + c2 [A, B] + ..., evaluated at A = hΩ12 and B = hΩ23."""

    order: int
    c2: Fraction = None

    def __post_init__(self):
        object.__setattr__(self, 'c2', associator_c2() if self.c2 is None else Fraction(self.c2))

    @property
    def trivial(self):
        return self.order < 2 or self.c2 == 0

    @property
    def coefficient(self):
        return TruncSeries.hbar(self.order, 2) * self.c2

    def apply(self, layout, x, groups, inverse=False):
        """Φ or Φ^{-1} on an element; ``groups`` lists the factors in each of the three slots."""
        if self.trivial:
            return x
        first, second, third = groups

        def commutator(y):
            return (layout.omega(layout.omega(y, second, third), first, second)
                    - layout.omega(layout.omega(y, first, second), second, third))

        step = -self.coefficient if inverse else self.coefficient
        total, term = x, x
        for _ in range(self.order // 2 if inverse else 1):
            term = commutator(term).scale(step)
            total = total + term
        return total


def _associator_operator(phi, factors, inverse=False, reversed_legs=False):
    legs = _Layout(factors).legs
    one = identity(legs).lift(phi.order)
    if phi.trivial:
        return one
    if reversed_legs:
        # S^{⊗3}(Φ^{321}): S reverses products and negates each Lie element
        a = _generator_operator(factors, 'omega', 1, 0)
        b = _generator_operator(factors, 'omega', 2, 1)
        commutator = compose(a, b) - compose(b, a)
    else:
        a = _generator_operator(factors, 'omega', 0, 1)
        b = _generator_operator(factors, 'omega', 1, 2)
        commutator = compose(a, b) - compose(b, a)
    step = -phi.coefficient if inverse else phi.coefficient
    total, term = one, one
    for _ in range(phi.order // 2 if inverse else 1):
        term = compose(commutator, term).scale(step)
        total = total + term
    return total


def assoc_on_modules(phi, V1, V2, V3, inverse=False):
    """Φ_{V1,V2,V3} = id + c2 h^2 [Ω12, Ω23] as an operator on V1⊗V2⊗V3."""
    if not (V1.base == V2.base == V3.base):
        raise SignatureMismatch("modules over different Lie bialgebras")
    return _associator_operator(phi, [_Ops(V) for V in (V1, V2, V3)], inverse=inverse)


def _exp_operator(op, order, scale):
    legs = op.domain
    h = _hbar(order)
    total = identity(legs).lift(order)
    term = identity(legs)
    for k in range(1, order + 1):
        term = compose(op, term).scale(h * Fraction(scale) / k)
        total = total + term
    return total


def braiding_const(V, W, order=None):
    """β_{V,W} = flip∘exp(hΩ/2)."""
    order = get_setting('HBAR_ORDER') if order is None else order
    omega = r_omega_operators(V, W)['omega']
    kv, kw = len(V.legs), len(W.legs)
    swap = permute(tuple(range(kv, kv + kw)) + tuple(range(kv)), V.legs + W.legs)
    return compose(swap, _exp_operator(omega, order, Fraction(1, 2)))


# the element T


@dataclass(frozen=True)
class TElement:
    """T = 1⊗1 + Σ_k h^k Σ_w c_kw·w with w a word in Ω, r and r^21.

    ``coefficients`` maps (k, word) to c_kw.
    """

    order: int
    coefficients: dict
    report: Report

    @property
    def trivial(self):
        return not any(self.coefficients.values())

    def operator(self, V, W):
        return _t_operator(self.order, self.coefficients, [_Ops(V), _Ops(W)], (0,), (1,), {})


def _word_operator(factors, word, first, second, cache):
    """A word with each letter placed on (first, second); a group stands for Δ of its slot."""
    legs = _Layout(factors).legs
    result = identity(legs)
    for kind in word:
        key = (kind, first, second)
        if key not in cache:
            op = LinMap(legs, legs)
            for a in first:
                for b in second:
                    op = op + _generator_operator(factors, kind, a, b)
            cache[key] = op
        result = compose(result, cache[key])
    return result


def _t_operator(order, coefficients, factors, first, second, cache):
    legs = _Layout(factors).legs
    total = identity(legs).lift(order)
    for (k, word), c in coefficients.items():
        if c:
            total = total + _word_operator(factors, word, first, second, cache).scale(TruncSeries.hbar(order, k) * c)
    return total


def solve_T(pair, D=None, N=None, samples=None, phi=None):
    """Solve for T order by order on sample modules.

    At each order the particular solution with every free coefficient set to
    zero is taken. ``samples`` defaults to the adjoint module of the double,
    on which the relations are exact.
    """
    D, N = _defaults(D, N)
    phi = phi or AssociatorTrunc(N)
    b = pair.amb
    if samples is None:
        samples = [adjoint_module(drinfeld_double(b))]
    parabolic = parabolic_decomposition(pair)

    setups = []
    for V in samples:
        ops = _Ops(V)
        invariants = []
        for vec in parabolic.i_a.basis:
            x = ops.of(vec)
            invariants.append(tensor(x, identity(V.legs)) + tensor(identity(V.legs), x))
        setups.append((V, [ops] * 3, [ops] * 2, invariants, {}, {}))

    def relations(setup, coefficients):
        V, triple, double, invariants, cache3, cache2 = setup

        def t(first, second):
            return _t_operator(N, coefficients, triple, first, second, cache3)

        lhs = compose(_associator_operator(phi, triple, reversed_legs=True), t((0,), (1,)), t((0, 1), (2,)))
        rhs = compose(t((1,), (2,)), t((0,), (1, 2)), _associator_operator(phi, triple))
        t2 = _t_operator(N, coefficients, double, (0,), (1,), cache2)
        return lhs - rhs, [compose(t2, d) - compose(d, t2) for d in invariants]

    def linear_part(word):
        out = []
        for V, triple, double, invariants, cache3, cache2 in setups:
            def w(first, second):
                return _word_operator(triple, word, first, second, cache3)

            out.append(w((0,), (1,)) + w((0, 1), (2,)) - w((1,), (2,)) - w((0,), (1, 2)))
            w2 = _word_operator(double, word, (0,), (1,), cache2)
            out.extend(compose(w2, d) - compose(d, w2) for d in invariants)
        return out

    coefficients = {}
    for k in range(1, N + 1):
        words = [w for n in range(1, k + 1) for w in itertools.product(GENERATORS, repeat=n)]
        targets = []
        for setup in setups:
            cocycle, commutators = relations(setup, coefficients)
            targets.append(-cocycle.hbar_part(k))
            targets.extend(-c.hbar_part(k) for c in commutators)
        try:
            particular, _ = solve_linear(words, linear_part, targets)
        except NoSolution:
            raise TruncationObstruction(f"no T solves the relations at order h^{k}", order=k) from None
        for word, c in zip(words, particular):
            if c:
                coefficients[(k, word)] = c

    report = Report(f'T:{pair.name}')
    for setup in setups:
        V = setup[0]
        cocycle, commutators = relations(setup, coefficients)
        report.check_zero(f'cocycle[{V.name}]', cocycle)
        for j, c in enumerate(commutators):
            report.check_zero(f'a_invariance[{V.name},{j}]', c)
    report.add('trivial_mod_h2', not any(c for (k, _), c in coefficients.items() if k < 2))
    logger.info("T for %s at order %d: %d nonzero word coefficients", pair.name, N, len(coefficients))
    return TElement(N, coefficients, report)


# the fibre functor


@dataclass(frozen=True)
class FiberElement:
    """α^{-1}(v): the p+-invariant element of N+v⊗V with (ev_{1+}⊗id)f = v."""

    module: object
    vector: dict
    element: LinMap
    report: Report = None


class _Fiber:
    """v ↦ Σ_α e^α ⊗ σ(x^α)·v over the PBW basis of S(p+) up to ``depth``."""

    def __init__(self, module, n_space, family, depth):
        sym = family.builders['N+'].sym
        ops = _Ops(module)
        generators = [ops.of(y) for y in family.parabolic.p_plus.basis]
        small = SymmetricAlgebra(sym.labels, min(depth, sym.cap))
        self.sigma = symmetrized_operators(generators, small)
        self.monomials = [(sym.index[a], a) for a in small.monomials]
        self.legs = (n_space,) + module.legs

    def element(self, vector):
        out = {}
        for k, alpha in self.monomials:
            op = self.sigma[alpha]
            image = vector if op is None else op.apply(vector)
            for idx, c in image.items():
                _add(out, (k,) + tuple(idx), c)
        return LinMap.element(self.legs, out)


def _invariant_dimension(n_ops, v_ops, p_plus, cap):
    """Dimension of the p+-invariants of N+v⊗V, imposing invariance below the cap of N+v."""
    (n_space,) = n_ops.legs
    n_gen = [n_ops.of(y) for y in p_plus]
    v_gen = [v_ops.of(y) for y in p_plus]
    columns = []
    for m in range(n_space.dim):
        for v in all_indices(v_ops.legs):
            col = {}
            for j, (a, b) in enumerate(zip(n_gen, v_gen)):
                for (m2,), c in a.column((m,)).items():
                    if n_space.degree(m2) < cap:
                        _add(col, (j, m2) + v, c)
                if n_space.degree(m) < cap:
                    for o, c in b.column(v).items():
                        _add(col, (j, m) + o, c)
            columns.append(col)
    _, kernel = solve_columns(columns)
    return len(kernel)


def alpha_inverse(V, v, family, N=None, verify=True):
    """The invariant element of N+v⊗V normalised to v.

    With ``verify`` the invariance equations are checked on the window and
    the invariant space is solved for; it must have dimension dim V.
    """
    N = get_setting('HBAR_ORDER') if N is None else N
    cap = family.degree_cap
    if cap < max(N, 1):
        raise TruncationObstruction(f"N+v truncated at degree {cap} is too small for order h^{N}", order=N)
    n_module = family.np_dual.left_module()
    (n_space,) = n_module.legs
    vector = {k if isinstance(k, tuple) else (k,): c for k, c in v.items()}
    f = _Fiber(V, n_space, family, cap).element(vector)
    if not verify:
        return FiberElement(V, vector, f)

    n_ops, v_ops = _Ops(n_module), _Ops(V)
    report = Report(f'fiber:{V.name}')
    layout = _Layout([n_ops, v_ops])
    report.check_equal('normalised', LinMap.element(V.legs, layout.evaluate(f, (0,))),
                       LinMap.element(V.legs, vector))

    def in_window(idx):
        if n_space.degree(idx[0]) >= cap:
            return False
        for leg, window, i in zip(V.legs, V.windows, idx[1:]):
            if window.kind == INPUT and leg.degree(i) >= window.cap:
                return False
        return True

    p_plus = family.parabolic.p_plus.basis
    for j, y in enumerate(p_plus):
        moved = apply_at(n_ops.of(y), f, 0) + apply_at(v_ops.of(y), f, 1)
        residual = {idx: c for idx, c in moved.vector.items() if in_window(idx)}
        report.check_zero(f'invariance[{j}]', LinMap.element(moved.codomain, residual))
    dim = _invariant_dimension(n_ops, v_ops, p_plus, cap)
    report.add('unique', dim == V.dim, witness=None if dim == V.dim else {'invariants': dim, 'dim': V.dim})
    if not report.passed:
        raise TruncationObstruction(f"the fibre of {V.name} is not determined on the window: "
                                    f"{report.failures()[0].name} fails", order=N)
    return FiberElement(V, vector, f, report)


def alpha(fiber, family):
    """Frobenius reciprocity f ↦ (ev_{1+}⊗id)f, inverse to ``alpha_inverse``."""
    n_module = family.np_dual.left_module()
    layout = _Layout([_Ops(n_module), _Ops(fiber.module)])
    return layout.evaluate(fiber.element, (0,))


# twists and products


class TwistEngine:
    """The relative twist, the braided products and their inverses for one split pair.

    Columns are computed on demand and cached per pair of modules.
    """

    def __init__(self, pair, order, family=None, phi=None):
        if order > MAX_ORDER:
            raise TruncationObstruction(f"the associator germ is only fixed up to order h^{MAX_ORDER}",
                                        order=order)
        self.pair = pair
        self.order = order
        self.phi = phi or AssociatorTrunc(order)
        self.depth = max(order, 1)
        self.family = family or _family(pair, self.depth)
        if self.family.degree_cap < self.depth:
            raise TruncationObstruction(f"N+v truncated at degree {self.family.degree_cap} is too small "
                                        f"for order h^{order}", order=order)
        self.n_ops = _Ops(self.family.np_dual.left_module())
        (self.n_space,) = self.n_ops.legs
        self._ops, self._fibers, self._sigma, self._columns = {}, {}, {}, {}

    @property
    def twist_margin(self):
        return 2 * self.order

    @property
    def product_margin(self):
        return 3 * self.order

    def ops(self, module):
        if id(module) not in self._ops:
            self._ops[id(module)] = (module, _Ops(module))
        return self._ops[id(module)][1]

    def fiber(self, module):
        if id(module) not in self._fibers:
            self._fibers[id(module)] = (module, _Fiber(module, self.n_space, self.family, self.depth))
        return self._fibers[id(module)][1]

    def sigma(self, module, sym):
        """σ(x^β) on a module for the PBW basis of S(m-) described by ``sym``."""
        key = (id(module), sym.cap)
        if key not in self._sigma:
            ops = self.ops(module)
            generators = [ops.of(y) for y in self.family.parabolic.m_minus.basis]
            self._sigma[key] = (module, symmetrized_operators(generators, sym))
        return self._sigma[key][1]

    @staticmethod
    def exact(module, margin):
        """Predicate on input multi-indices of ``module`` lying ``margin`` below every cap."""
        def ok(idx):
            for leg, window, i in zip(module.legs, module.windows, idx):
                if window.kind == INPUT and leg.degree(i) > window.cap - margin:
                    return False
            return True
        return ok

    def twist_column(self, V, W, v_idx, w_idx):
        """J(v⊗w) = E∘B^{-1}∘(id⊗β^{-1}_{N,V}⊗id)∘B(α^{-1}v ⊗ α^{-1}w)."""
        key = ('twist', id(V), id(W), v_idx, w_idx)
        if key in self._columns:
            return self._columns[key]
        order, phi, N = self.order, self.phi, self.n_ops
        layout = _Layout([N, self.ops(V), N, self.ops(W)])
        x = tensor(self.fiber(V).element({v_idx: 1}), self.fiber(W).element({w_idx: 1})).lift(order)
        x = phi.apply(layout, x, ((0,), (1,), (2, 3)))
        x = phi.apply(layout, x, ((1,), (2,), (3,)), inverse=True)
        layout, x = layout.permuted((0, 2, 1, 3), x)
        x = _exp_omega(layout, x, (1,), (2,), Fraction(-1, 2), order)
        x = phi.apply(layout, x, ((1,), (2,), (3,)))
        x = phi.apply(layout, x, ((0,), (1,), (2, 3)), inverse=True)
        column = layout.evaluate(x, (0, 1))
        self._columns[key] = column
        return column

    def twist(self, V, W, max_degree=None):
        """J_{V,W} on the inputs where its columns are exact."""
        legs = V.legs + W.legs
        ok_v, ok_w = self.exact(V, self.twist_margin), self.exact(W, self.twist_margin)
        cols = {}
        for v_idx in all_indices(V.legs):
            if not ok_v(v_idx):
                continue
            for w_idx in all_indices(W.legs):
                if not ok_w(w_idx):
                    continue
                if max_degree is not None and total_degree(legs, v_idx + w_idx) > max_degree:
                    continue
                cols[v_idx + w_idx] = self.twist_column(V, W, v_idx, w_idx)
        return LinMap(legs, legs, columns=cols)

    def correction(self, V, W, vector):
        """(J - id) on a vector of V⊗W."""
        k = len(V.legs)
        out = {}
        for idx, c in vector.items():
            if hbar_valuation(c) >= self.order:
                continue
            for o, d in self.twist_column(V, W, idx[:k], idx[k:]).items():
                _add(out, o, c * d)
            _add(out, idx, -c)
        return out

    def apply_twist(self, V, W, vector):
        out = dict(vector)
        for o, c in self.correction(V, W, vector).items():
            _add(out, o, c)
        return out

    def apply_inverse(self, V, W, vector):
        """J^{-1} by iterating y = z - (J - id)y."""
        y = dict(vector)
        for _ in range(self.order):
            step = dict(vector)
            for o, c in self.correction(V, W, y).items():
                _add(step, o, -c)
            y = step
        return y

    def product_column(self, L, sym, V, l_idx, v_idx):
        """μ_V(x⊗v) = (ev⊗ev⊗id)Φ^{-1}_{N,N,V}(id⊗ψ_V)(α^{-1}x ⊗ v) with ψ_V(m⊗v) = σ(m)·α^{-1}v.

        ``L`` is the induced module on S(m-) and ``sym`` its monomial basis.
        """
        key = ('product', id(L), id(V), l_idx, v_idx)
        if key in self._columns:
            return self._columns[key]
        fx = self.fiber(L).element({l_idx: 1})
        fv = self.fiber(V).element({v_idx: 1})
        sig_n, sig_v = self.sigma(self.n_ops.module, sym), self.sigma(V, sym)
        out = {}
        for (n1, m), c in fx.vector.items():
            alpha = sym.monomials[m]
            for beta in itertools.product(*(range(a + 1) for a in alpha)):
                rest = tuple(a - b for a, b in zip(alpha, beta))
                part = fv
                if sig_v[rest] is not None:
                    part = apply_at(sig_v[rest], part, 1)
                if sig_n[beta] is not None:
                    part = apply_at(sig_n[beta], part, 0)
                weight = c * _binomial(alpha, beta)
                for idx, d in part.vector.items():
                    _add(out, (n1,) + idx, weight * d)
        layout = _Layout([self.n_ops, self.n_ops, self.ops(V)])
        x = self.phi.apply(layout, layout.element(out).lift(self.order), ((0,), (1,), (2,)), inverse=True)
        column = layout.evaluate(x, (0, 1))
        self._columns[key] = column
        return column

    def product(self, L, sym, V, vector):
        """μ_V on a vector of L⊗V."""
        out = {}
        for idx, c in vector.items():
            for o, d in self.product_column(L, sym, V, idx[:1], idx[1:]).items():
                _add(out, o, c * d)
        return out


def relative_twist(pair, V, W, N=None, family=None, max_degree=None):
    """J_{V,W} transported to V⊗W, on the inputs where it is exact."""
    N = get_setting('HBAR_ORDER') if N is None else N
    return TwistEngine(pair, N, family).twist(V, W, max_degree)


def twist_one_jet(pair, V, W):
    """½(r_b + i⊗i(r_a^21)) on V⊗W."""
    parabolic = parabolic_decomposition(pair)
    legs = V.legs + W.legs
    ov, ow = _Ops(V), _Ops(W)
    extra = LinMap(legs, legs)
    for x, phi in zip(parabolic.i_a.basis, parabolic.p_star.basis):
        extra = extra + tensor(ov.of(phi), ow.of(x))
    return (r_omega_operators(V, W)['r'] + extra).scale(Fraction(1, 2))


def restricted_module(pair, V, name=None):
    """V over the sub-bialgebra: a acts through i and a* through p*."""
    parabolic = parabolic_decomposition(pair)
    a_ops = [double_action(V, x) for x in parabolic.i_a.basis + parabolic.p_star.basis]
    return module_from_operators(name or f"Res({V.name})", pair.sub, V.legs, a_ops, V.windows)


def default_samples(b):
    return [trivial_module(b), adjoint_module(drinfeld_double(b))]


def twist_checks(pair, N=None, samples=None, engine=None):
    """Classical limit, one-jet and tensor-structure coherence of J on sample modules."""
    N = get_setting('HBAR_ORDER') if N is None else N
    engine = engine or TwistEngine(pair, N)
    samples = samples or default_samples(pair.amb)
    report = Report(f'relative_twist:{pair.name}')
    for V in samples:
        for W in samples:
            J = engine.twist(V, W)
            inputs = {i for i, _ in J.columns()}
            one = identity(V.legs + W.legs).restrict(lambda i: i in inputs)
            report.check_equal(f'classical[{V.name},{W.name}]', J.mod_hbar(), one)
            if N >= 1:
                expected = twist_one_jet(pair, V, W).restrict(lambda i: i in inputs)
                report.check_equal(f'one_jet[{V.name},{W.name}]', J.hbar_part(1), expected)
    restricted = {id(V): restricted_module(pair, V) for V in samples}
    for U, V, W in itertools.product(samples, repeat=3):
        lhs = compose(assoc_on_modules(engine.phi, U, V, W), engine.twist(dy_tensor(U, V), W),
                      tensor(engine.twist(U, V), identity(W.legs)))
        rhs = compose(engine.twist(U, dy_tensor(V, W)), tensor(identity(U.legs), engine.twist(V, W)),
                      assoc_on_modules(engine.phi, *(restricted[id(M)] for M in (U, V, W))))
        report.check_equal(f'coherence[{U.name},{V.name},{W.name}]', lhs, rhs)
    return report


# the quantised enveloping algebra


@dataclass(frozen=True)
class _Quantisation:
    """M- at the internal cap D + 3N with the twist engine of the pair (0, b)."""

    b: object
    degree_cap: int
    order: int
    family: object
    engine: TwistEngine
    space: Space

    @property
    def m_minus(self):
        return self.family.m_minus

    @property
    def sym(self):
        return self.family.builders['M-'].sym


@lru_cache(maxsize=None)
def _quantisation(b, D, N):
    pair = zero_pair(b)
    family = _family(pair, D + 3 * N)
    (M,) = family.m_minus.legs
    dim = len(M.indices_up_to(D))
    space = Space(f"U_h({b.name})", M.labels[:dim], M.grades[:dim])
    return _Quantisation(b, D, N, family, TwistEngine(pair, N), space)


def _trivial_que(b, D):
    return QUE(trivial_hopf(f"U_h({b.name})"), b, D, ())


def ek_bialgebra(b, D=None, N=None):
    """U_h b on the PBW window of degree D over Q[h]/(h^(N+1)).

    Product μ_{M-}, coproduct J^{-1}∘Δ0, unit 1-, counit the degree-0
    coefficient; the antipode is summed from the convolution series.
    """
    D, N = _defaults(D, N)
    require_valid(b)
    if b.dim == 0:
        return _trivial_que(b, D)
    q = _quantisation(b, D, N)
    M, sym, engine, B = q.m_minus, q.sym, q.engine, q.space
    (Ms,) = M.legs
    dim = B.dim

    m_cols = {}
    for i in range(dim):
        for j in range(dim):
            if B.degree(i) + B.degree(j) > D:
                continue
            column = engine.product_column(M, sym, M, (i,), (j,))
            m_cols[(i, j)] = {o: c for o, c in column.items() if o[0] < dim}
    coproduct = symmetric_coproduct(sym, Ms)
    d_cols = {}
    for i in range(dim):
        image = engine.apply_inverse(M, M, coproduct.column((i,)))
        d_cols[(i,)] = {o: c for o, c in image.items() if o[0] < dim and o[1] < dim}

    m = LinMap((B, B), (B,), columns=m_cols).lift(N)
    Delta = LinMap((B,), (B, B), columns=d_cols).lift(N)
    unit = LinMap((), (B,), columns={(): {(0,): 1}}).lift(N)
    counit = LinMap((B,), (), columns={(0,): {(): 1}}).lift(N)
    partial = HopfAlgebra(B.name, B, m, unit, Delta, counit, compose(unit, counit))
    hopf = replace(partial, S=antipode_from_convolution(partial))
    generators = tuple(sym.index[sym.generator(i)] for i in range(b.dim))
    logger.info("quantised %s at D=%d, N=%d: dim %d", b.name, D, N, dim)
    return QUE(hopf, b, D, generators)


def ek_bialgebra_report(que):
    """QUE axioms on the exact window plus the classical limit on the whole window."""
    report = Report(f'ek:{que.name}')
    report.merge(validate_que(que), prefix='que')
    h = que.hopf
    report.check_equal('counit_of_unit', compose(h.counit, h.unit), identity(()))
    report.merge(classical_limit_check(que))
    return report


def classical_limit_check(que):
    """m and Δ mod h against the BCH star product and the symmetric coproduct."""
    b, h, B = que.classical, que.hopf, que.space
    report = Report(f'classical_limit:{que.name}')
    if b.dim == 0:
        report.not_testable('classical_product', detail='zero Lie bialgebra')
        return report
    star = bch_star(b, que.degree_cap)
    report.check_equal('classical_product', h.m.mod_hbar(), LinMap((B, B), (B,), columns=dict(star.columns())))
    sym = SymmetricAlgebra(b.space.labels, que.degree_cap)
    report.check_equal('classical_coproduct', h.Delta.mod_hbar(), symmetric_coproduct(sym, B))
    return report


def _generator_map(f, source, target):
    """A Lie bialgebra map carried to the degree-one generators of two QUEs."""
    cols = {}
    for (j,), col in f.columns():
        cols[(source.generators[j],)] = {(target.generators[k],): c for (k,), c in col.items()}
    return LinMap((source.space,), (target.space,), columns=cols)


def _first_order_asymmetry(que):
    """The h-coefficient of Δ - Δ^21 on generators, kept on generator⊗generator."""
    h, B = que.hopf, que.space
    gens = set(que.generators)
    asym = (h.Delta - compose(flip(B, B), h.Delta)).hbar_part(1)
    cols = {i: {o: c for o, c in col.items() if o[0] in gens and o[1] in gens}
            for i, col in asym.columns() if i[0] in gens}
    return LinMap(asym.domain, asym.codomain, columns=cols)


def naturality_check(pair, D=None, N=None):
    """i and p intertwine Δ - Δ^21 of the two quantisations on generators mod h^2."""
    D, N = _defaults(D, N)
    que_b, que_a = ek_bialgebra(pair.amb, D, N), ek_bialgebra(pair.sub, D, N)
    report = Report(f'naturality:{pair.name}')
    if N < 1:
        report.not_testable('i', detail='order h^0')
        return report
    gi = _generator_map(pair.i, que_a, que_b)
    gp = _generator_map(pair.p, que_b, que_a)
    asym_a, asym_b = _first_order_asymmetry(que_a), _first_order_asymmetry(que_b)
    report.check_equal('i', compose(asym_b, gi), compose(tensor(gi, gi), asym_a))
    report.check_equal('p', compose(asym_a, gp), compose(tensor(gp, gp), asym_b))
    return report


def _trivial_structure(h, legs, name):
    """A module on which h acts by the counit with trivial coaction."""
    unit = h.unit.column(())
    action = {}
    for (x,), col in h.counit.columns():
        for idx in all_indices(legs):
            action[(x,) + idx] = {idx: col[()]}
    coaction = {idx: {(u[0],) + idx: c for u, c in unit.items()} for idx in all_indices(legs)}
    return DYHopfModule(name, h, legs, LinMap((h.space,) + legs, legs, columns=action),
                        LinMap(legs, (h.space,) + legs, columns=coaction))


def _coaction_column(q, V, v_idx):
    """R^J(1-⊗v) = flip∘J^{-1}_{V,M}∘flip∘exp(hΩ/2)∘J_{M,V}(1-⊗v), cut to the window."""
    engine, M, order = q.engine, q.m_minus, q.order
    z = engine.twist_column(M, V, (0,), v_idx)
    layout = _Layout([engine.ops(M), engine.ops(V)])
    x = _exp_omega(layout, layout.element(z).lift(order), (0,), (1,), Fraction(1, 2), order)
    layout, x = layout.permuted((1, 0), x)
    y = engine.apply_inverse(V, M, x.vector)
    k, dim = len(V.legs), q.space.dim
    return {(idx[k],) + idx[:k]: c for idx, c in y.items() if idx[k] < dim}


def ek_dy_lift(que, V, name=None):
    """The quantum DY module E(V) over a QUE from ek_bialgebra.

    Columns are computed for vectors of V lying D + 4N below every cap of V.
    """
    b = que.classical
    if V.base != b:
        raise SignatureMismatch(f"{V.name} is not a module over {b.name}")
    name = name or f"E({V.name})"
    if b.dim == 0:
        return _trivial_structure(que.hopf, V.legs, name)
    q = _quantisation(b, que.degree_cap, que.order)
    engine, M, sym, N = q.engine, q.m_minus, q.sym, que.order
    B = que.space
    ok = engine.exact(V, que.degree_cap + 4 * N)
    inputs = [idx for idx in all_indices(V.legs) if ok(idx)]
    action, coaction = {}, {}
    for v in inputs:
        for x in range(B.dim):
            action[(x,) + v] = engine.product_column(M, sym, V, (x,), v)
        coaction[v] = _coaction_column(q, V, v)
    logger.debug("lifted %s to %s on %d vectors", V.name, que.name, len(inputs))
    return DYHopfModule(name, que.hopf, V.legs,
                        LinMap((B,) + V.legs, V.legs, columns=action).lift(N),
                        LinMap(V.legs, (B,) + V.legs, columns=coaction).lift(N))


def ek_dy_lift_report(que, V, lifted=None, max_degree=None):
    """DY axioms, admissibility and the semiclassical round trip of E(V)."""
    lifted = lifted or ek_dy_lift(que, V)
    window = que.exact_degree if max_degree is None else max_degree
    report = Report(f'ek_dy_lift:{lifted.name}')
    report.merge(validate_dy_hopf(lifted, window), prefix='module')
    flag = check_admissible(lifted, window)
    report.merge(flag.report, prefix='admissible')
    if flag:
        limit = semiclassical_limit(lifted, que)
        report.merge(compare_dy_lie(limit, V, window + 1), prefix='semiclassical')
    return report


# the relative product and the biproduct


def product_associativity_check(pair, V, D=None, N=None):
    """μ_V(id⊗μ_V)Φ_a = μ_V(μ_{L-}⊗id) on L-⊗L-⊗V for x⊗y of total degree at most D."""
    D, N = _defaults(D, N)
    family = _family(pair, D + 3 * N + 1)
    L, sym = family.l_minus, family.builders['L-'].sym
    (Ls,) = L.legs
    engine = TwistEngine(pair, N)
    res_l, res_v = restricted_module(pair, L), restricted_module(pair, V)
    layout = _Layout([_Ops(res_l), _Ops(res_l), _Ops(res_v)])
    legs = (Ls, Ls) + V.legs
    lhs, rhs = {}, {}
    for x in range(Ls.dim):
        for y in range(Ls.dim):
            if Ls.degree(x) + Ls.degree(y) > D:
                continue
            xy = engine.product(L, sym, L, {(x, y): 1})
            for v in all_indices(V.legs):
                key = (x, y) + v
                start = layout.element({key: 1}).lift(N)
                moved = engine.phi.apply(layout, start, ((0,), (1,), (2,)))
                inner = {}
                for idx, c in moved.vector.items():
                    for o, d in engine.product_column(L, sym, V, idx[1:2], idx[2:]).items():
                        _add(inner, (idx[0],) + o, c * d)
                lhs[key] = engine.product(L, sym, V, inner)
                rhs[key] = engine.product(L, sym, V, {(o[0],) + v: c for o, c in xy.items()})
    report = Report(f'product_associativity:{pair.name}')
    report.check_equal(f'associativity[{V.name}]', LinMap(legs, V.legs, columns=lhs),
                       LinMap(legs, V.legs, columns=rhs))
    return report


def quantised_l_minus(pair, D=None, N=None, que_a=None):
    """The quantised L- as a Hopf algebra in DY(U_h a), on its degree-D window.

    The product is μ_{L-}∘J^a, the coproduct (J^a)^{-1}∘J^{-1}∘i- with J the
    relative twist and J^a the twist of a; the U_h a structure is the lift of
    L- restricted to a.
    """
    D, N = _defaults(D, N)
    a = pair.sub
    que_a = que_a or ek_bialgebra(a, D, N)
    family = _family(pair, 2 * D + 4 * N + 1)
    L, sym = family.l_minus, family.builders['L-'].sym
    (Ls,) = L.legs
    engine = TwistEngine(pair, N)
    res = restricted_module(pair, L)
    inner = None if a.dim == 0 else _quantisation(a, D, N).engine
    dim = len(Ls.indices_up_to(D))
    W = Space(f"L_h({pair.name})", Ls.labels[:dim], Ls.grades[:dim])

    m_cols = {}
    for i in range(dim):
        for j in range(dim):
            if W.degree(i) + W.degree(j) > D:
                continue
            twisted = {(i, j): 1} if inner is None else inner.apply_twist(res, res, {(i, j): 1})
            column = engine.product(L, sym, L, twisted)
            m_cols[(i, j)] = {o: c for o, c in column.items() if o[0] < dim}
    coproduct = symmetric_coproduct(sym, Ls)
    d_cols = {}
    for i in range(dim):
        image = engine.apply_inverse(L, L, coproduct.column((i,)))
        if inner is not None:
            image = inner.apply_inverse(res, res, image)
        d_cols[(i,)] = {o: c for o, c in image.items() if o[0] < dim and o[1] < dim}

    if a.dim == 0:
        module = _trivial_structure(que_a.hopf, (W,), W.name)
    else:
        lifted = ek_dy_lift(que_a, res)
        A = que_a.space
        action = {(x, v): {(o[0],): c for o, c in col.items() if o[0] < dim}
                  for (x, v), col in lifted.action.columns() if v < dim}
        coaction = {(v,): {o: c for o, c in col.items() if o[1] < dim}
                    for (v,), col in lifted.coaction.columns() if v < dim}
        module = DYHopfModule(W.name, que_a.hopf, (W,), LinMap((A, W), (W,), columns=action),
                              LinMap((W,), (A, W), columns=coaction))

    m = LinMap((W, W), (W,), columns=m_cols).lift(N)
    Delta = LinMap((W,), (W, W), columns=d_cols).lift(N)
    unit = LinMap((), (W,), columns={(): {(0,): 1}}).lift(N)
    counit = LinMap((W,), (), columns={(0,): {(): 1}}).lift(N)
    partial = HopfAlgebra(W.name, W, m, unit, Delta, counit, compose(unit, counit))
    S = antipode_from_convolution(partial)
    logger.info("quantised L- of %s: dim %d over %s", pair.name, dim, que_a.name)
    return BraidedHopf(W.name, module, m, unit, Delta, counit, S)


def _pbw_map(que_b, vectors, source):
    """σ(y^α)·1- in U_h b for the PBW basis of the span of ``vectors``, on the window."""
    q = _quantisation(que_b.classical, que_b.degree_cap, que_b.order)
    builder = q.family.builders['M-']
    small = SymmetricAlgebra(tuple(str(k) for k in range(len(vectors))), que_b.degree_cap)
    sigma = symmetrized_operators([builder.operator(v) for v in vectors], small)
    dim = que_b.space.dim
    cols = {}
    for k, alpha in enumerate(small.monomials[:source.dim]):
        op = sigma[alpha]
        image = {(0,): 1} if op is None else op.column((0,))
        cols[(k,)] = {o: c for o, c in image.items() if o[0] < dim}
    return LinMap((source,), (que_b.space,), columns=cols)


def biproduct_reassembly_check(pair, D=None, N=None):
    """L_h⋆U_h a against U_h b through ℓ⊗a ↦ j(ℓ)·i(a), with j and i the PBW embeddings."""
    D, N = _defaults(D, N)
    que_b = ek_bialgebra(pair.amb, D, N)
    que_a = ek_bialgebra(pair.sub, D, N)
    window = que_b.exact_degree
    report = Report(f'biproduct_reassembly:{pair.name}', max_degree=window)
    L = quantised_l_minus(pair, D, N, que_a)
    braided = validate_braided_hopf(L, window)
    report.merge(braided, prefix='L')
    if not braided.passed:
        return report
    bp = radford_biproduct(L, collapse_trivial=False, max_degree=window)
    report.merge(validate_hopf(bp, window), prefix='biproduct')

    parabolic = parabolic_decomposition(pair)
    j = _pbw_map(que_b, parabolic.m_minus.basis, L.space)
    i = _pbw_map(que_b, parabolic.i_a.basis, que_a.space)
    _, _, split = fused_space((L.space, que_a.space), bp.space.name)
    B = que_b.hopf
    psi = compose(B.m, tensor(j, i), split)
    report.check_equal('product', compose(psi, bp.m), compose(B.m, tensor(psi, psi)))
    report.check_equal('unit', compose(psi, bp.unit), B.unit)
    report.check_equal('coproduct', compose(B.Delta, psi), compose(tensor(psi, psi), bp.Delta))
    report.check_equal('counit', compose(B.counit, psi), bp.counit)
    report.check_equal('antipode', compose(psi, bp.S), compose(B.S, psi))
    classical = psi.mod_hbar()
    columns = [dict(classical.column((k,))) for k in bp.space.indices_up_to(D)]
    try:
        _, kernel = solve_columns(columns)
        bijective = not kernel and len(columns) == que_b.space.dim
    except NoSolution:
        bijective = False
    report.add('bijective', bijective, witness=None if bijective else {'columns': len(columns),
                                                                        'dim': que_b.space.dim})
    return report


def que_split_pair(pair, D=None, N=None):
    """U_h a ⊂ U_h b as a split Hopf pair on the degree-D window.

    i is the PBW embedding of U_h a. p is ε⊗id on L_h⋆U_h a carried to U_h b
    through the inverse of ℓ⊗a ↦ j(ℓ)·i(a). Returns (pair, que_b, que_a).
    """
    D, N = _defaults(D, N)
    que_b = ek_bialgebra(pair.amb, D, N)
    que_a = ek_bialgebra(pair.sub, D, N)
    L = quantised_l_minus(pair, D, N, que_a)
    bp = radford_biproduct(L, collapse_trivial=False, max_degree=que_b.exact_degree)
    parabolic = parabolic_decomposition(pair)
    j = _pbw_map(que_b, parabolic.m_minus.basis, L.space)
    i = _pbw_map(que_b, parabolic.i_a.basis, que_a.space)
    _, _, split = fused_space((L.space, que_a.space), bp.space.name)
    B = que_b.hopf
    psi = compose(B.m, tensor(j, i), split)
    source = bp.space.indices_up_to(D)
    columns = [dict(psi.column((s,))) for s in source]
    inverse = {}
    for k in range(B.dim):
        coords, kernel = solve_columns(columns, {(k,): 1}, N)
        if kernel:
            raise NotSplit(f"L_h⋆U_h a does not match U_h b for {pair.name}",
                           witness={'kernel': len(kernel), 'dim': B.dim})
        inverse[(k,)] = {(s,): c for s, c in zip(source, coords) if c != 0}
    psi_inv = LinMap((B.space,), (bp.space,), columns=inverse)
    p = compose(tensor(L.counit, que_a.hopf.identity()), split, psi_inv)
    logger.info("split pair %s at D=%d, N=%d: dim U_h a = %d, dim U_h b = %d",
                pair.name, D, N, que_a.space.dim, B.dim)
    return SplitHopfPair(que_a.hopf, B, i, p), que_b, que_a
