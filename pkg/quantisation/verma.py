"""
Truncated Verma modules built as induced modules Ind_k^g k ≅ S(h) for a
splitting g = h ⊕ k of the double into subalgebras.

h acts by left star multiplication. The action of k is computed degree by
degree: y·1 = 0 and y·(x⋆m) = [y,x]_h⋆m + [y,x]_k·m + x⋆(y·m), so it never
raises the PBW degree and is exact on the whole truncation.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .bch import LieStructure, StarAlgebra
from .dy_lie import (
    INPUT, DYLieModule, LegWindow, dual_module, dy_tensor, module_from_operators,
)
from .exceptions import InternalInvariantViolation
from .liebialg import direct_sum_with_op, parabolic_decomposition
from .multilinear import LinMap, compose, identity, solve_columns, tensor
from .reports import Report

logger = logging.getLogger(__name__)


def _add(target, key, value):
    new = target.get(key, 0) + value
    if new:
        target[key] = new
    else:
        target.pop(key, None)


def basis_labels(double, basis, prefix):
    """Reuse labels of the double for coordinate vectors, else number them."""
    labels = []
    for k, vec in enumerate(basis):
        if len(vec) == 1 and next(iter(vec.values())) == 1:
            labels.append(double.space.labels[next(iter(vec))])
        else:
            labels.append(f"{prefix}{k}")
    return labels


class InducedModule:
    """Ind_k^g k on S(h)_{<=cap} for subalgebras with g = h ⊕ k."""

    def __init__(self, double, h_basis, k_basis, cap, name, prefix='x'):
        self.double = double
        self.h_basis = [dict(v) for v in h_basis]
        self.k_basis = [dict(v) for v in k_basis]
        self.cap = cap
        self.name = name
        labels = basis_labels(double, self.h_basis, prefix)
        self.lie = LieStructure.from_subalgebra(double, self.h_basis, labels)
        self.star = StarAlgebra(self.lie, cap, name)
        basis = self.h_basis + self.k_basis
        dim = double.space.dim
        if len(basis) != dim:
            raise InternalInvariantViolation(f"{name}: h ⊕ k does not have the dimension of the double")
        self._inverse = [solve_columns(basis, {k: Fraction(1)})[0] for k in range(dim)]
        self._k_action = None

    @property
    def space(self):
        return self.star.space

    @property
    def sym(self):
        return self.star.sym

    def split(self, vec):
        """Coordinates of a vector of g along the h basis and the k basis."""
        nh = len(self.h_basis)
        h, k = {}, {}
        for idx, c in vec.items():
            for j, a in enumerate(self._inverse[idx]):
                if a:
                    _add(h if j < nh else k, j if j < nh else j - nh, c * a)
        return h, k

    def _left(self, i, vec):
        out = self.star.generators[i].apply({(k,): c for k, c in vec.items()})
        return {o[0]: c for o, c in out.items()}

    def _build_k_action(self):
        sym = self.sym
        nk = len(self.k_basis)
        acts = [dict() for _ in range(nk)]
        unit = sym.unit()
        brackets = {}
        for alpha in sym.monomials:
            a_idx = sym.index[alpha]
            if alpha == unit:
                for j in range(nk):
                    acts[j][a_idx] = {}
                continue
            i = next(k for k, e in enumerate(alpha) if e)
            m = tuple(e - (k == i) for k, e in enumerate(alpha))
            m_idx = sym.index[m]
            prod = self._left(i, {m_idx: Fraction(1)})
            if prod.get(a_idx) != 1:
                raise InternalInvariantViolation(
                    f"{self.name}: leading term of x_{i}⋆x^{m} is not x^{alpha}")
            corr = {k: c for k, c in prod.items() if k != a_idx}
            for j in range(nk):
                key = (j, i)
                if key not in brackets:
                    brackets[key] = self.split(self.double.bracket_of(self.k_basis[j], self.h_basis[i]))
                hc, kc = brackets[key]
                out = {}
                for l, c in hc.items():
                    for o, v in self._left(l, {m_idx: Fraction(1)}).items():
                        _add(out, o, c * v)
                for l, c in kc.items():
                    for o, v in acts[l][m_idx].items():
                        _add(out, o, c * v)
                for o, v in self._left(i, acts[j][m_idx]).items():
                    _add(out, o, v)
                for beta, c in corr.items():
                    for o, v in acts[j][beta].items():
                        _add(out, o, -c * v)
                acts[j][a_idx] = out
        S = self.space
        self._k_action = [
            LinMap((S,), (S,), columns={(a,): {(o,): c for o, c in col.items()} for a, col in act.items()})
            for act in acts
        ]
        return self._k_action

    @property
    def k_operators(self):
        return self._k_action if self._k_action is not None else self._build_k_action()

    def operator(self, vec):
        """Action of a vector of the double on the module."""
        h, k = self.split(vec)
        S = self.space
        total = LinMap((S,), (S,))
        for i, c in h.items():
            total = total + self.star.generators[i].scale(c)
        for j, c in k.items():
            total = total + self.k_operators[j].scale(c)
        return total

    def g_operators(self):
        return [self.operator({x: Fraction(1)}) for x in range(self.double.space.dim)]

    def derivation(self, l):
        """The derivation of S(h) extending [x_l, -]."""
        sym = self.sym
        cols = {}
        for beta in sym.monomials:
            out = {}
            for j, e in enumerate(beta):
                if not e:
                    continue
                rest = tuple(b - (k == j) for k, b in enumerate(beta))
                for t, c in self.lie.bracket_vectors({l: Fraction(1)}, {j: Fraction(1)}).items():
                    mono = sym.multiply(rest, sym.generator(t))
                    if mono is not None:
                        _add(out, (sym.index[mono],), e * c)
            cols[(sym.index[beta],)] = out
        return LinMap((self.space,), (self.space,), columns=cols)

    def right_operator(self, vec):
        """Right star multiplication by a vector of h: m ↦ m⋆z = z⋆m − [z, m]."""
        h, k = self.split(vec)
        if k:
            raise InternalInvariantViolation(f"{self.name}: right factor is not in h")
        S = self.space
        total = LinMap((S,), (S,))
        for l, c in h.items():
            total = total + (self.star.generators[l] - self.derivation(l)).scale(c)
        return total

    def module(self, base, name=None):
        ops = self.g_operators()
        return module_from_operators(
            name or self.name, base, (self.space,), ops, (LegWindow(INPUT, self.cap),))


@dataclass(frozen=True)
class DYBimodule:
    """A DY module over left ⊕ right^op: left DY module with commuting right structure."""

    module: DYLieModule
    left: object
    right: object

    @property
    def name(self):
        return self.module.name

    @property
    def legs(self):
        return self.module.legs

    def _split_ops(self):
        ops = self.module.operators()
        n, a = self.left.dim, self.right.dim
        c = n + a
        return ops, n, a, c

    def left_module(self, name=None):
        """The underlying DY module over the left Lie bialgebra."""
        ops, n, a, c = self._split_ops()
        left_ops = ops[:n] + ops[c:c + n]
        return module_from_operators(name or self.module.name, self.left, self.legs, left_ops,
                                     self.module.windows)

    def right_operators(self):
        """Right action of the double of ``right``: [r(a_0), ..., r(a^0), ...]."""
        ops, n, a, c = self._split_ops()
        return [-op for op in ops[n:c]] + ops[c + n:]


def bimodule_from_induced(induced, parabolic, name):
    """N+ with the right action of g_a by right star multiplication."""
    pair = parabolic.pair
    ops = induced.g_operators()
    n = pair.amb.dim
    c = direct_sum_with_op(pair.amb, pair.sub)
    right_a = [-induced.right_operator(v) for v in parabolic.i_a.basis]
    right_dual = [induced.right_operator(v) for v in parabolic.p_star.basis]
    all_ops = ops[:n] + right_a + ops[n:] + right_dual
    module = module_from_operators(name, c, (induced.space,), all_ops, (LegWindow(INPUT, induced.cap),))
    return DYBimodule(module, pair.amb, pair.sub)


def dual_bimodule(bimodule, name=None):
    return DYBimodule(dual_module(bimodule.module, name), bimodule.left, bimodule.right)


@dataclass
class VermaFamily:
    """M-, M+ dual, L- and N+ dual for a split pair, truncated at PBW degree D."""

    parabolic: object
    degree_cap: int
    m_minus: DYLieModule
    mp_dual: DYLieModule
    l_minus: DYLieModule
    np_dual: DYBimodule
    n_plus: DYBimodule
    builders: dict

    @property
    def pair(self):
        return self.parabolic.pair

    @property
    def base(self):
        return self.pair.amb


def verma_family(pair, D):
    """Build the classical Verma modules of a split pair up to PBW degree D."""
    if D < 1:
        raise ValueError("degree cap must be at least 1")
    parabolic = parabolic_decomposition(pair)
    double = parabolic.double
    b = pair.amb
    n = b.dim
    b_part = [{i: Fraction(1)} for i in range(n)]
    dual_part = [{n + i: Fraction(1)} for i in range(n)]

    m_builder = InducedModule(double, b_part, dual_part, D, 'M-')
    p_builder = InducedModule(double, dual_part, b_part, D, 'M+')
    l_builder = InducedModule(double, parabolic.m_minus.basis, parabolic.p_plus.basis, D, 'L-', 'm')
    n_builder = InducedModule(double, parabolic.p_plus.basis, parabolic.m_minus.basis, D, 'N+', 'p')

    m_minus = m_builder.module(b)
    mp_dual = dual_module(p_builder.module(b), 'M+v')
    l_minus = l_builder.module(b)
    n_plus = bimodule_from_induced(n_builder, parabolic, "N+")
    np_dual = dual_bimodule(n_plus, 'N+v')
    logger.info("Verma family for %s at D=%d: dim M- = %d, dim L- = %d, dim N+v = %d",
                pair.name, D, m_minus.dim, l_minus.dim, np_dual.module.dim)
    return VermaFamily(parabolic, D, m_minus, mp_dual, l_minus, np_dual, n_plus, {
        'M-': m_builder, 'M+': p_builder, 'L-': l_builder, 'N+': n_builder,
    })


def symmetric_coproduct(sym, space):
    """x^α ↦ Σ_{β<=α} C(α, β) x^β ⊗ x^{α-β}."""
    cols = {}
    for alpha in sym.monomials:
        out = {}
        for beta in sym.monomials:
            if sum(beta) > sum(alpha) or not all(x <= y for x, y in zip(beta, alpha)):
                continue
            rest = tuple(y - x for x, y in zip(beta, alpha))
            coeff = 1
            for x, y in zip(beta, alpha):
                coeff *= math.comb(y, x)
            out[(sym.index[beta], sym.index[rest])] = Fraction(coeff)
        cols[(sym.index[alpha],)] = out
    return LinMap((space,), (space, space), columns=cols)


def transposed_product(sym, space):
    """e^β ⊗ e^γ ↦ C(β+γ, β) e^{β+γ} on the graded dual, dropped above the cap."""
    cols = {}
    for beta in sym.monomials:
        for gamma in sym.monomials:
            total = sym.multiply(beta, gamma)
            if total is None:
                continue
            coeff = 1
            for x, y in zip(beta, total):
                coeff *= math.comb(y, x)
            cols[(sym.index[beta], sym.index[gamma])] = {(sym.index[total],): Fraction(coeff)}
    return LinMap((space, space), (space,), columns=cols)


def classical_coalgebra_maps(family):
    """i- on L- and the transposed product i+v on N+v at h = 0, with their checks."""
    l_builder = family.builders['L-']
    n_builder = family.builders['N+']
    L = family.l_minus.legs[0]
    N = family.np_dual.legs[0]
    i_minus = symmetric_coproduct(l_builder.sym, L)
    i_plus_dual = transposed_product(n_builder.sym, N)
    report = Report(f'coalgebra_maps:{family.pair.name}')
    idL, idN = identity(L), identity(N)
    report.check_equal('i_minus_coassociative',
                       compose(tensor(i_minus, idL), i_minus), compose(tensor(idL, i_minus), i_minus))
    report.check_equal('i_plus_dual_associative',
                       compose(i_plus_dual, tensor(i_plus_dual, idN)),
                       compose(i_plus_dual, tensor(idN, i_plus_dual)))
    l_sq = dy_tensor(family.l_minus, family.l_minus)
    B = family.base.space
    act = compose(i_minus, family.l_minus.action) - compose(l_sq.action, tensor(identity(B), i_minus))
    report.check_zero('i_minus_action', family.l_minus.windowed(act, 2, b_in=1))
    coact = compose(tensor(identity(B), i_minus), family.l_minus.coaction) - compose(l_sq.coaction, i_minus)
    report.check_zero('i_minus_coaction', family.l_minus.windowed(coact, 2))
    return {'i_minus': i_minus, 'i_plus_dual': i_plus_dual, 'report': report}
