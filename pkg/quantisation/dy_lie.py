"""
Drinfeld-Yetter modules over Lie bialgebras.

A module is a tuple of legs V1⊗...⊗Vk with an action b⊗V -> V and a
coaction V -> b⊗V. Equivalently the double g_b acts on V: b_i by the action
and b^i by φ·v = ⟨φ, v_{-1}⟩ v_0; ``operators`` returns this g_b action in
the coordinates of the double.

Truncated (PBW-graded) legs carry a window kind: 'input' legs are exact on
inputs of degree <= cap - 1, 'output' legs (graded duals) are exact on every
stored component but lose components above the cap, so identities built
from c composed maps are compared on degrees <= cap - c.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import NoSolution, SignatureMismatch
from .liebialg import LieBialgebra
from .multilinear import (
    LinMap, Space, all_indices, combine, compose, identity, permute, solve_columns, solve_linear,
    tensor, unit_maps,
)
from .reports import Report

logger = logging.getLogger(__name__)

INPUT = 'input'
OUTPUT = 'output'


@dataclass(frozen=True)
class LegWindow:
    kind: str = None
    cap: int = None


@dataclass(frozen=True)
class DYLieModule:
    name: str
    base: LieBialgebra
    legs: tuple
    action: LinMap
    coaction: LinMap
    windows: tuple = None

    def __post_init__(self):
        object.__setattr__(self, 'legs', tuple(self.legs))
        if self.windows is None:
            object.__setattr__(self, 'windows', tuple(LegWindow() for _ in self.legs))
        b = self.base.space
        if self.action.domain != (b,) + self.legs or self.action.codomain != self.legs:
            raise SignatureMismatch(f"action of {self.name} has the wrong signature")
        if self.coaction.domain != self.legs or self.coaction.codomain != (b,) + self.legs:
            raise SignatureMismatch(f"coaction of {self.name} has the wrong signature")

    @property
    def dim(self):
        out = 1
        for leg in self.legs:
            out *= leg.dim
        return out

    @property
    def truncated(self):
        return any(w.kind for w in self.windows)

    @property
    def degree_cap(self):
        caps = [w.cap for w in self.windows if w.cap is not None]
        return min(caps) if caps else None

    def identity(self):
        return identity(self.legs)

    def operators(self):
        """The g_b action: [ρ(b_0), ..., ρ(b_{n-1}), ρ(b^0), ..., ρ(b^{n-1})]."""
        return _operators(self)

    def windowed(self, residual, composed, b_in=0, b_out=0):
        """Restrict a residual to the degrees where c = ``composed`` maps are exact."""
        return window_residual(residual, self.windows, composed, b_in, b_out)


def _operators(module):
    n = module.base.dim
    acts = [dict() for _ in range(n)]
    for i, col in module.action.columns():
        target = acts[i[0]].setdefault(i[1:], {})
        for o, c in col.items():
            target[o] = c
    coacts = [dict() for _ in range(n)]
    for i, col in module.coaction.columns():
        for o, c in col.items():
            target = coacts[o[0]].setdefault(i, {})
            target[o[1:]] = target.get(o[1:], 0) + c
    legs = module.legs
    return [LinMap(legs, legs, columns=cols) for cols in acts + coacts]


def double_action(module, vec):
    """ρ(X) for X in the double given in coordinates b_0, ..., b_{n-1}, b^0, ..., b^{n-1}."""
    ops = module.operators()
    total = LinMap(module.legs, module.legs)
    for k, c in vec.items():
        total = total + ops[k].scale(c)
    return total


def window_residual(residual, windows, composed, b_in=0, b_out=0):
    """Keep inputs and outputs where ``composed`` truncated maps are exact.

    The first ``b_in`` domain legs and ``b_out`` codomain legs are base legs;
    the remaining legs follow ``windows``.
    """
    def in_ok(idx):
        for w, i, leg in zip(windows, idx[b_in:], residual.domain[b_in:]):
            if w.kind == INPUT and leg.degree(i) > w.cap - composed:
                return False
        return True

    restricted = residual.restrict(in_ok)
    if not any(w.kind == OUTPUT for w in windows):
        return restricted
    cols = {}
    for i, col in restricted.columns():
        kept = {}
        for o, c in col.items():
            ok = all(
                not (w.kind == OUTPUT and leg.degree(j) > w.cap - composed)
                for w, j, leg in zip(windows, o[b_out:], residual.codomain[b_out:])
            )
            if ok:
                kept[o] = c
        cols[i] = kept
    return LinMap(residual.domain, residual.codomain, columns=cols)


def module_from_operators(name, base, legs, ops, windows=None):
    """Assemble action and coaction from g_b operators given in double coordinates."""
    n = base.dim
    b = base.space
    legs = tuple(legs)
    action, coaction = {}, {}
    for i in range(n):
        for v, col in ops[i].columns():
            action[(i,) + v] = col
        for v, col in ops[n + i].columns():
            target = coaction.setdefault(v, {})
            for w, c in col.items():
                target[(i,) + w] = c
    return DYLieModule(
        name, base, legs,
        LinMap((b,) + legs, legs, columns=action),
        LinMap(legs, (b,) + legs, columns=coaction),
        windows,
    )


def trivial_module(base, name='k'):
    k = Space(name, ('1',))
    return DYLieModule(name, base, (k,), LinMap((base.space, k), (k,)), LinMap((k,), (base.space, k)))


def adjoint_module(double, name=None):
    """The double acting on itself by the bracket, as a DY module over b."""
    g = double.space
    ops = []
    for x in range(g.dim):
        cols = {}
        for y in range(g.dim):
            out = double.bracket_of({x: Fraction(1)}, {y: Fraction(1)})
            cols[(y,)] = {(k,): c for k, c in out.items()}
        ops.append(LinMap((g,), (g,), columns=cols))
    return module_from_operators(name or f"ad_{double.base.name}", double.base, (g,), ops)


def dual_module(module, name=None):
    """Contragredient module: every g_b operator becomes minus its transpose."""
    legs = tuple(leg.dual() for leg in reversed(module.legs))
    ops = [_minus_transpose(op, legs) for op in module.operators()]
    windows = tuple(
        LegWindow({INPUT: OUTPUT, OUTPUT: INPUT}.get(w.kind), w.cap) for w in reversed(module.windows)
    )
    return module_from_operators(name or f"{module.name}_dual", module.base, legs, ops, windows)


def _minus_transpose(op, legs):
    cols = {}
    for i, col in op.columns():
        for o, c in col.items():
            cols.setdefault(o[::-1], {})[i[::-1]] = -c
    return LinMap(legs, legs, columns=cols)


def validate_dy_lie(m):
    """Module, comodule and compatibility identities on the valid window."""
    b = m.base
    B = b.space
    legs = m.legs
    idV = identity(legs)
    idB = identity(B)
    swap12 = permute((1, 0) + tuple(range(2, 2 + len(legs))), (B, B) + legs)
    report = Report(f'dy_lie:{m.name}')
    pi, pi_star = m.action, m.coaction
    pi2 = compose(pi, tensor(idB, pi))
    module_residual = compose(pi, tensor(b.bracket, idV)) - pi2 + compose(pi2, swap12)
    report.check_zero('module', m.windowed(module_residual, 2, b_in=2))
    co2 = compose(tensor(idB, pi_star), pi_star)
    comodule_residual = compose(tensor(b.cobracket, idV), pi_star) - compose(swap12, co2) + co2
    report.check_zero('comodule', m.windowed(comodule_residual, 2, b_out=2))
    lhs = compose(pi_star, pi) - compose(tensor(idB, pi), swap12, tensor(idB, pi_star))
    rhs = compose(tensor(b.bracket, idV), tensor(idB, pi_star)) - compose(
        tensor(idB, pi), tensor(b.cobracket, idV))
    report.check_zero('compatibility', m.windowed(lhs - rhs, 2, b_in=1, b_out=1))
    return report


def dy_tensor(v, w, name=None):
    """Primitive action and two-term coaction on V⊗W."""
    if v.base != w.base:
        raise SignatureMismatch("modules over different Lie bialgebras")
    B = v.base.space
    kv, kw = len(v.legs), len(w.legs)
    legs = v.legs + w.legs
    idV, idW = identity(v.legs), identity(w.legs)
    move_b = permute(tuple(range(1, 1 + kv)) + (0,) + tuple(range(1 + kv, 1 + kv + kw)), (B,) + legs)
    # move_b: b⊗V⊗W -> V⊗b⊗W
    action = tensor(v.action, idW) + compose(tensor(idV, w.action), move_b)
    bring_b = permute((kv,) + tuple(range(kv)) + tuple(range(kv + 1, kv + 1 + kw)), v.legs + (B,) + w.legs)
    # bring_b: V⊗b⊗W -> b⊗V⊗W
    coaction = tensor(v.coaction, idW) + compose(bring_b, tensor(idV, w.coaction))
    return DYLieModule(name or f"{v.name}⊗{w.name}", v.base, legs, action, coaction, v.windows + w.windows)


def _pair_operator(ops_v, ops_w, left, right):
    """Σ_i ops_v[left(i)] ⊗ ops_w[right(i)]."""
    n = len(ops_v) // 2
    total = None
    for i in range(n):
        term = tensor(ops_v[left(i)], ops_w[right(i)])
        total = term if total is None else total + term
    return total


def r_omega_operators(v, w):
    """r = Σ ρ_V(b_i)⊗ρ_W(b^i) and Ω = r + r^21 on V⊗W."""
    if v.base != w.base:
        raise SignatureMismatch("modules over different Lie bialgebras")
    n = v.base.dim
    ops_v, ops_w = v.operators(), w.operators()
    legs = v.legs + w.legs
    if n == 0:
        zero = LinMap(legs, legs)
        return {'r': zero, 'omega': zero}
    r = _pair_operator(ops_v, ops_w, lambda i: i, lambda i: n + i)
    r21 = _pair_operator(ops_v, ops_w, lambda i: n + i, lambda i: i)
    return {'r': r, 'omega': r + r21}


def embed_operator(op, legs, position):
    """op acting on legs[position:position+len(op.domain)], identity elsewhere."""
    k = len(op.domain)
    before, after = legs[:position], legs[position + k:]
    parts = []
    if before:
        parts.append(identity(before))
    parts.append(op)
    if after:
        parts.append(identity(after))
    return tensor(*parts)


def r_on_legs(u, v, w, first, second):
    """r acting on two of the three tensor factors of U⊗V⊗W (first < second)."""
    mods = (u, v, w)
    n = u.base.dim
    ops = [m.operators() for m in mods]
    legs = u.legs + v.legs + w.legs
    total = None
    for i in range(n):
        factors = []
        for pos, m in enumerate(mods):
            if pos == first:
                factors.append(ops[pos][i])
            elif pos == second:
                factors.append(ops[pos][n + i])
            else:
                factors.append(identity(m.legs))
        term = tensor(*factors)
        total = term if total is None else total + term
    return total if total is not None else LinMap(legs, legs)


def cybe_residual(u, v, w):
    """[r12,r13] + [r12,r23] + [r13,r23] on U⊗V⊗W."""
    r12 = r_on_legs(u, v, w, 0, 1)
    r13 = r_on_legs(u, v, w, 0, 2)
    r23 = r_on_legs(u, v, w, 1, 2)

    def comm(a, b):
        return compose(a, b) - compose(b, a)

    return comm(r12, r13) + comm(r12, r23) + comm(r13, r23)


def check_cybe(u, v, w, report=None):
    report = report or Report('cybe')
    windows = u.windows + v.windows + w.windows
    report.check_zero(f'cybe[{u.name},{v.name},{w.name}]',
                      window_residual(cybe_residual(u, v, w), windows, 2))
    return report


def check_omega_morphism(v, w, report=None):
    """Ω commutes with the action and coaction of V⊗W."""
    report = report or Report('omega')
    vw = dy_tensor(v, w)
    omega = r_omega_operators(v, w)['omega']
    idB = identity(v.base.space)
    act = compose(omega, vw.action) - compose(vw.action, tensor(idB, omega))
    coact = compose(tensor(idB, omega), vw.coaction) - compose(vw.coaction, omega)
    report.check_zero(f'omega_action[{v.name},{w.name}]', vw.windowed(act, 2, b_in=1))
    report.check_zero(f'omega_coaction[{v.name},{w.name}]', vw.windowed(coact, 2, b_out=1))
    return report


def _hom_candidates(v, w, source_degree, target_degree):
    def allowed(windows, legs, idx, kind_limits):
        for win, leg, i in zip(windows, legs, idx):
            limit = kind_limits(win)
            if limit is not None and leg.degree(i) > limit:
                return False
        return True

    def source_limit(win):
        if win.kind == INPUT:
            return win.cap - 1 if source_degree is None else source_degree
        return None

    def target_limit(win):
        if win.kind == OUTPUT:
            return win.cap if target_degree is None else target_degree
        if win.kind == INPUT:
            return win.cap - 1
        return None

    ins = [i for i in all_indices(v.legs) if allowed(v.windows, v.legs, i, source_limit)]
    outs = [o for o in all_indices(w.legs) if allowed(w.windows, w.legs, o, target_limit)]
    return ins, outs, target_limit


def dy_hom_space(v, w, source_degree=None, target_degree=None):
    """Basis of the DY maps V -> W commuting with action and coaction.

    On truncated legs the unknowns are restricted to inputs of degree <=
    ``source_degree`` and, on dual legs, outputs of degree <=
    ``target_degree``; equations are kept only where every term they involve
    is exact.
    """
    if v.base != w.base:
        raise SignatureMismatch("modules over different Lie bialgebras")
    B = v.base.space
    ins, outs, target_limit = _hom_candidates(v, w, source_degree, target_degree)
    in_set = set(ins)
    candidates = unit_maps(v.legs, w.legs, ins, outs)
    if not candidates:
        return []
    idB = identity(B)

    act_rows = set()
    for i, col in v.action.columns():
        if i[1:] in in_set and all(o in in_set for o in col):
            act_rows.add(i)
    for x in range(v.base.dim):
        for m in ins:
            if not v.action.column((x,) + m):
                act_rows.add((x,) + m)
    co_rows = set()
    for m in ins:
        col = v.coaction.column(m)
        if all(o[1:] in in_set for o in col):
            co_rows.add(m)

    def out_ok(legs_codomain, offset):
        def ok(o):
            for win, leg, j in zip(w.windows, legs_codomain[offset:], o[offset:]):
                if win.kind == OUTPUT:
                    limit = target_limit(win)
                    if leg.degree(j) > limit - 1:
                        return False
            return True
        return ok

    def trim(residual, rows, offset):
        keep = out_ok(residual.codomain, offset)
        cols = {}
        for i, col in residual.columns():
            if i in rows:
                cols[i] = {o: c for o, c in col.items() if keep(o)}
        return LinMap(residual.domain, residual.codomain, columns=cols)

    def residual(f):
        act = compose(f, v.action) - compose(w.action, tensor(idB, f))
        coact = compose(tensor(idB, f), v.coaction) - compose(w.coaction, f)
        return [trim(act, act_rows, 0), trim(coact, co_rows, 1)]

    _, kernel = solve_linear(candidates, residual)
    basis = [combine(candidates, vec) for vec in kernel]
    logger.debug("Hom(%s, %s): %d unknowns, dimension %d", v.name, w.name, len(candidates), len(basis))
    return basis


def span_contains(maps, f):
    """Whether f lies in the span of ``maps``."""
    if not maps:
        return f.is_zero()
    columns = [{k: c for k, c in g.entries.items()} for g in maps]
    try:
        solve_columns(columns, f.entries)
    except NoSolution:
        return False
    return True
