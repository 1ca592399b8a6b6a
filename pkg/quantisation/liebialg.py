"""
Lie bialgebras by structure constants, their Drinfeld doubles, split pairs
and the parabolic decomposition of the double attached to a split pair.

Basis vectors of the double g = b ⊕ b* are ordered as b_0..b_{n-1} followed
by the dual basis b^0..b^{n-1}.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import InvalidStructure, NotSplit
from .multilinear import (
    LinMap, Space, compose, dualize, flip, identity, nullspace,
    permute, rank, row_echelon, solve_columns, tensor,
)
from .reports import Report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LieBialgebra:
    name: str
    space: Space
    bracket: LinMap
    cobracket: LinMap

    @property
    def dim(self):
        return self.space.dim

    @classmethod
    def from_constants(cls, name, labels, bracket=None, cobracket=None):
        """Build from label dicts.

        ``bracket`` maps (x, y) -> {z: c}; ``cobracket`` maps x -> {(y, z): c}.
        Only the listed brackets are stored; antisymmetric partners must be
        listed too.
        """
        space = Space(name, tuple(labels))
        idx = space.index
        br = {}
        for (x, y), out in (bracket or {}).items():
            for z, c in out.items():
                br[((idx(x), idx(y)), (idx(z),))] = Fraction(c)
        co = {}
        for x, out in (cobracket or {}).items():
            for (y, z), c in out.items():
                co[((idx(x),), (idx(y), idx(z)))] = Fraction(c)
        return cls(name, space, LinMap((space, space), (space,), br), LinMap((space,), (space, space), co))

    def constants(self):
        """Structure constants keyed by labels, for comparison and export."""
        labels = self.space.labels
        br = {
            (labels[i[0]], labels[i[1]], labels[o[0]]): c
            for (i, o), c in self.bracket.entries.items()
        }
        co = {
            (labels[i[0]], labels[o[0]], labels[o[1]]): c
            for (i, o), c in self.cobracket.entries.items()
        }
        return {'bracket': br, 'cobracket': co}

    def bracket_of(self, x, y):
        """[x, y] for vectors given as dicts index -> coefficient."""
        out = self.bracket.apply({(i, j): a * b for i, a in x.items() for j, b in y.items()})
        return {o[0]: c for o, c in out.items()}


def zero_lie_bialgebra(name='zero'):
    return LieBialgebra.from_constants(name, ())


def _cyclic_sum(space):
    spaces = (space, space, space)
    cyc = permute((1, 2, 0), spaces)
    return identity(spaces) + cyc + compose(cyc, cyc)


def adjoint_on_square(bracket, space):
    """x⊗a⊗b ↦ [x,a]⊗b + a⊗[x,b]."""
    return (
        tensor(bracket, identity(space))
        + compose(tensor(identity(space), bracket), permute((1, 0, 2), (space, space, space)))
    )


def cocycle_residual(space, bracket, cobracket):
    """δ[x,y] − x·δ(y) + y·δ(x)."""
    ad2 = adjoint_on_square(bracket, space)
    x_dy = compose(ad2, tensor(identity(space), cobracket))
    return compose(cobracket, bracket) - x_dy + compose(x_dy, flip(space, space))


def validate_lie_algebra(space, bracket, report, prefix=''):
    report.check_zero(f'{prefix}bracket_antisymmetry', bracket + compose(bracket, flip(space, space)))
    jacobi = compose(bracket, tensor(identity(space), bracket), _cyclic_sum(space))
    report.check_zero(f'{prefix}jacobi', jacobi)
    return report


def validate_lie_bialgebra(b):
    """Check antisymmetry, (co-)Jacobi and the cocycle condition exactly."""
    V = b.space
    report = Report(f'lie_bialgebra:{b.name}')
    validate_lie_algebra(V, b.bracket, report)
    report.check_zero('cobracket_antisymmetry', b.cobracket + compose(flip(V, V), b.cobracket))
    co_jacobi = compose(_cyclic_sum(V), tensor(b.cobracket, identity(V)), b.cobracket)
    report.check_zero('co_jacobi', co_jacobi)
    report.check_zero('cocycle', cocycle_residual(V, b.bracket, b.cobracket))
    return report


def require_valid(b):
    report = validate_lie_bialgebra(b)
    if not report.passed:
        raise InvalidStructure(f"{b.name} is not a Lie bialgebra", report=report)
    return report


@dataclass(frozen=True)
class DoubleData:
    """The Manin triple g = b ⊕ b* with pairing, r-matrix and Ω."""

    base: LieBialgebra
    space: Space
    bracket: LinMap
    cobracket: LinMap
    pairing: LinMap
    r_elem: LinMap
    omega: LinMap

    @property
    def n(self):
        return self.base.dim

    def b_index(self, i):
        return i

    def dual_index(self, i):
        return self.n + i

    def bracket_of(self, x, y):
        out = self.bracket.apply({(i, j): a * b for i, a in x.items() for j, b in y.items()})
        return {o[0]: c for o, c in out.items()}

    def dual_basis(self, basis):
        """Vectors X^k with ⟨X^k, X_l⟩ = δ_kl for a basis X_l of g."""
        n = self.n
        dim = 2 * n
        swapped = [{(k + n) % dim: c for k, c in x.items()} for x in basis]
        columns = [{l: s[j] for l, s in enumerate(swapped) if s.get(j)} for j in range(dim)]
        duals = []
        for k in range(len(basis)):
            particular, _ = solve_columns(columns, {k: Fraction(1)})
            duals.append({j: c for j, c in enumerate(particular) if c})
        return duals


def coboundary_cobracket(g, bracket, r_elem):
    """δ(x) = [x⊗1 + 1⊗x, r] on a quasitriangular Lie bialgebra g."""
    return compose(adjoint_on_square(bracket, g), tensor(identity(g), r_elem))


def drinfeld_double(b):
    """The double g_b with the coadjoint mixed bracket.

    [b_i, b_j] = c_ij^k b_k, [b^i, b^j] = δ_k^{ij} b^k and
    [b_i, b^j] = -c_ik^j b^k + δ_i^{jk} b_k.
    """
    require_valid(b)
    n = b.dim
    labels = tuple(b.space.labels) + tuple(f"{l}*" for l in b.space.labels)
    g = Space(f"g_{b.name}", labels)
    br = {}

    def put(x, y, z, c):
        key = ((x, y), (z,))
        br[key] = br.get(key, 0) + c

    for ((i, j), (k,)), c in b.bracket.entries.items():
        put(i, j, k, c)
        # ad*(b_i) b^k = -c_ij^k b^j
        put(i, n + k, n + j, -c)
        put(n + k, i, n + j, c)
    for ((k,), (i, j)), c in b.cobracket.entries.items():
        put(n + i, n + j, n + k, c)
        # -ad*(b^i) b_k = δ_k^{ij} b_j
        put(k, n + i, j, c)
        put(n + i, k, j, -c)
    bracket = LinMap((g, g), (g,), br)
    pairing = LinMap((g, g), (), {((i, n + i), ()): 1 for i in range(n)} | {((n + i, i), ()): 1 for i in range(n)})
    r_elem = LinMap.element((g, g), {(i, n + i): Fraction(1) for i in range(n)})
    omega = r_elem + compose(flip(g, g), r_elem)
    cobracket = coboundary_cobracket(g, bracket, r_elem)
    logger.debug("double of %s: dimension %d", b.name, 2 * n)
    return DoubleData(b, g, bracket, cobracket, pairing, r_elem, omega)


def pairing_matrix(double):
    """The pairing as a map g -> g*."""
    g = double.space
    cols = {}
    for (i, _), c in double.pairing.entries.items():
        cols.setdefault((i[0],), {})[(i[1],)] = c
    return LinMap((g,), (g.dual(),), columns=cols)


def validate_double(double):
    """Manin triple axioms: symmetric invariant nondegenerate pairing, isotropy, Jacobi."""
    g = double.space
    n = double.n
    report = Report(f'double:{double.base.name}')
    validate_lie_algebra(g, double.bracket, report, prefix='double_')
    report.check_zero('pairing_symmetric', double.pairing - compose(double.pairing, flip(g, g)))
    report.add('pairing_nondegenerate', rank(pairing_matrix(double)) == 2 * n)
    invariance = compose(double.pairing, tensor(double.bracket, identity(g))) - compose(
        double.pairing, tensor(identity(g), double.bracket))
    report.check_zero('pairing_invariant', invariance)
    iso_b = double.pairing.restrict(lambda i: i[0] < n and i[1] < n)
    iso_d = double.pairing.restrict(lambda i: i[0] >= n and i[1] >= n)
    report.check_zero('b_isotropic', iso_b)
    report.check_zero('dual_isotropic', iso_d)
    report.check_equal('omega_is_symmetrized_r', double.omega,
                       double.r_elem + compose(flip(g, g), double.r_elem))
    restricted = double.cobracket.restrict(lambda i: i[0] < n)
    embedded = LinMap((g,), (g, g), {
        (i, o): c for (i, o), c in double.base.cobracket.entries.items()
    })
    report.check_equal('cobracket_restricts_to_b', restricted, embedded)
    report.check_zero('cobracket_cocycle', cocycle_residual(g, double.bracket, double.cobracket))
    return report


def direct_sum_with_op(c, d):
    """c ⊕ d^op: brackets side by side, cobracket of d negated."""
    clash = set(c.space.labels) & set(d.space.labels)
    d_labels = [f"{d.name}.{l}" if clash else l for l in d.space.labels]
    name = c.name if d.dim == 0 else (d.name + '_op' if c.dim == 0 else f"{c.name}+{d.name}_op")
    labels = tuple(c.space.labels) + tuple(d_labels)
    V = Space(name, labels)
    shift = c.dim
    br, co = {}, {}
    for (i, o), v in c.bracket.entries.items():
        br[(i, o)] = v
    for (i, o), v in d.bracket.entries.items():
        br[(tuple(k + shift for k in i), (o[0] + shift,))] = v
    for (i, o), v in c.cobracket.entries.items():
        co[(i, o)] = v
    for (i, o), v in d.cobracket.entries.items():
        co[((i[0] + shift,), tuple(k + shift for k in o))] = -v
    return LieBialgebra(name, V, LinMap((V, V), (V,), br), LinMap((V,), (V, V), co))


def mutate(b, rng, amount=None):
    """Change one bracket or cobracket structure constant by a non-zero amount."""
    n = b.dim
    amount = Fraction(amount if amount is not None else rng.choice([1, -1, 2, Fraction(1, 2)]))
    V = b.space
    which = rng.choice(['bracket', 'cobracket'])
    i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
    if which == 'bracket':
        delta = LinMap((V, V), (V,), {((i, j), (k,)): amount})
        mutated = LieBialgebra(b.name, V, b.bracket + delta, b.cobracket)
    else:
        delta = LinMap((V,), (V, V), {((i,), (j, k)): amount})
        mutated = LieBialgebra(b.name, V, b.bracket, b.cobracket + delta)
    return mutated, {'map': which, 'entry': [V.labels[i], V.labels[j], V.labels[k]]}


@dataclass(frozen=True)
class SplitPair:
    sub: LieBialgebra
    amb: LieBialgebra
    i: LinMap
    p: LinMap
    manin: LinMap = None

    @property
    def name(self):
        return f"{self.sub.name}<{self.amb.name}"


def _morphism_residuals(src, dst, f):
    return {
        'bracket': compose(f, src.bracket) - compose(dst.bracket, tensor(f, f)),
        'cobracket': compose(tensor(f, f), src.cobracket) - compose(dst.cobracket, f),
    }


def manin_inclusion(sub, amb, i, p, double_sub=None, double_amb=None):
    """i ⊕ p*: g_a -> g_b."""
    ga = double_sub or drinfeld_double(sub)
    gb = double_amb or drinfeld_double(amb)
    m, n = sub.dim, amb.dim
    cols = {}
    for ((j,), (k,)), c in i.entries.items():
        cols.setdefault((j,), {})[(k,)] = c
    for ((k,), (j,)), c in p.entries.items():
        cols.setdefault((m + j,), {})[(n + k,)] = c
    return LinMap((ga.space,), (gb.space,), columns=cols)


def validate_split_pair(sub, amb, i, p):
    """Verify a split pair of Lie bialgebras; returns SplitPair or raises NotSplit."""
    require_valid(sub)
    require_valid(amb)
    report = Report(f'split_pair:{sub.name}<{amb.name}')
    for name, f, src, dst in (('i', i, sub, amb), ('p', p, amb, sub)):
        for kind, residual in _morphism_residuals(src, dst, f).items():
            report.check_zero(f'{name}_{kind}_morphism', residual)
    report.check_equal('p_after_i', compose(p, i), identity(sub.space))
    ga, gb = drinfeld_double(sub), drinfeld_double(amb)
    manin = manin_inclusion(sub, amb, i, p, ga, gb)
    report.check_equal('manin_isometric', compose(gb.pairing, tensor(manin, manin)), ga.pairing)
    report.check_equal('manin_bracket', compose(manin, ga.bracket),
                       compose(gb.bracket, tensor(manin, manin)))
    if not report.passed:
        failure = report.failures()[0]
        raise NotSplit(f"{sub.name} -> {amb.name} is not split: {failure.name}",
                       witness={'check': failure.name, 'entry': failure.witness})
    return SplitPair(sub, amb, i, p, manin)


def split_pair_from_manin(sub, amb, manin):
    """Recover (i, p) from a split Manin inclusion."""
    m, n = sub.dim, amb.dim
    i, p = {}, {}
    for ((j,), (k,)), c in manin.entries.items():
        if j < m:
            i[((j,), (k,))] = c
        else:
            p[((k - n,), (j - m,))] = c
    return SplitPair(
        sub, amb,
        LinMap((sub.space,), (amb.space,), i),
        LinMap((amb.space,), (sub.space,), p),
        manin,
    )


def identity_pair(b):
    return validate_split_pair(b, b, identity(b.space), identity(b.space))


def zero_pair(b):
    z = zero_lie_bialgebra()
    return validate_split_pair(z, b, LinMap((z.space,), (b.space,)), LinMap((b.space,), (z.space,)))


class Subspace:
    """Span of vectors (dicts index -> Fraction) in a space of dimension ``ambient``."""

    def __init__(self, ambient, basis, name='U'):
        self.ambient = ambient
        self.basis = [dict(v) for v in basis]
        self.name = name
        rows, pivots, _ = row_echelon(self.basis, ambient)
        self._rows, self._pivots = rows, pivots
        if len(pivots) != len(self.basis):
            raise InvalidStructure(f"basis of {name} is linearly dependent")

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, vec):
        """Remainder of vec modulo the span."""
        out = dict(vec)
        for row, col in zip(self._rows, self._pivots):
            factor = out.get(col)
            if factor:
                for c, v in row.items():
                    new = out.get(c, 0) - factor * v
                    if new:
                        out[c] = new
                    else:
                        out.pop(c, None)
        return out

    def contains(self, vec):
        return not self.reduce(vec)

    def inclusion(self, ambient_space):
        sub = Space(self.name, tuple(f"{self.name}{k}" for k in range(self.dim)))
        return LinMap((sub,), (ambient_space,), columns={
            (k,): {(j,): c for j, c in v.items()} for k, v in enumerate(self.basis)
        })


@dataclass
class ParabolicData:
    pair: SplitPair
    double: DoubleData
    m_minus: Subspace
    m_plus: Subspace
    i_a: Subspace
    p_star: Subspace
    p_minus: Subspace
    p_plus: Subspace
    report: Report = field(default=None)
    _inverse: list = field(default=None, repr=False)

    def split(self, vec):
        """Decompose a vector of g along g = m_minus ⊕ p_plus."""
        basis = self.m_minus.basis + self.p_plus.basis
        if self._inverse is None:
            self._inverse = [
                solve_columns(basis, {k: Fraction(1)})[0] for k in range(self.double.space.dim)
            ]
        coords = [Fraction(0)] * len(basis)
        for k, c in vec.items():
            for j, a in enumerate(self._inverse[k]):
                if a:
                    coords[j] += c * a
        h, rest = {}, {}
        nm = self.m_minus.dim
        for j, a in enumerate(coords):
            if not a:
                continue
            target = h if j < nm else rest
            for k, v in basis[j].items():
                new = target.get(k, 0) + a * v
                if new:
                    target[k] = new
                else:
                    target.pop(k, None)
        return h, rest


def _bracket_into(double, left, right, target):
    """Whether [left, right] ⊂ target."""
    for x in left.basis:
        for y in right.basis:
            if not target.contains(double.bracket_of(x, y)):
                return False
    return True


def parabolic_decomposition(pair):
    """m± and p± inside the double of the ambient Lie bialgebra."""
    double = drinfeld_double(pair.amb)
    n = pair.amb.dim
    dim_g = 2 * n
    m_minus = [{k[0]: c for k, c in v.items()} for v in nullspace(pair.p)]
    i_a = []
    for j in range(pair.sub.dim):
        i_a.append({o[0]: c for o, c in pair.i.column((j,)).items()})
    m_plus = [{n + k[0]: c for k, c in v.items()} for v in nullspace(dualize(pair.i))]
    p_star = []
    pt = dualize(pair.p)
    for j in range(pair.sub.dim):
        p_star.append({n + o[0]: c for o, c in pt.column((j,)).items()})
    data = ParabolicData(
        pair, double,
        Subspace(dim_g, m_minus, 'm_minus'),
        Subspace(dim_g, m_plus, 'm_plus'),
        Subspace(dim_g, i_a, 'i_a'),
        Subspace(dim_g, p_star, 'p_star'),
        Subspace(dim_g, m_minus + i_a + p_star, 'p_minus'),
        Subspace(dim_g, m_plus + i_a + p_star, 'p_plus'),
    )
    report = Report(f'parabolic:{pair.name}')
    report.add('dimension_count', data.m_minus.dim + pair.sub.dim == n)
    report.add('decomposition', rank_of(m_minus + data.p_plus.basis, dim_g) == dim_g)
    report.add('p_plus_subalgebra', _bracket_into(double, data.p_plus, data.p_plus, data.p_plus))
    report.add('p_minus_subalgebra', _bracket_into(double, data.p_minus, data.p_minus, data.p_minus))
    report.add('m_plus_ideal', _bracket_into(double, data.p_plus, data.m_plus, data.m_plus))
    report.add('m_minus_ideal', _bracket_into(double, data.p_minus, data.m_minus, data.m_minus))
    b = pair.amb.space
    coideal = compose(tensor(pair.p, pair.p), pair.amb.cobracket, nullspace_inclusion(m_minus, b))
    report.check_zero('m_minus_coideal', coideal)
    data.report = report
    logger.debug("parabolic data for %s: dim m- = %d, dim p+ = %d", pair.name, data.m_minus.dim, data.p_plus.dim)
    return data


def rank_of(vectors, ambient):
    rows, pivots, _ = row_echelon(vectors, ambient)
    return len(pivots)


def nullspace_inclusion(vectors, space):
    sub = Space('m', tuple(f"m{k}" for k in range(len(vectors))))
    return LinMap((sub,), (space,), columns={
        (k,): {(j,): c for j, c in v.items()} for k, v in enumerate(vectors)
    })
