"""
Named verification suites over fixture objects.

A suite takes a parsed fixture and ``SuiteParams`` and returns one Report.
Mathematical checks are deterministic; the seed only drives the mutation
gate of the ``validate`` suite.
"""
import itertools
import logging
import random
import time
from dataclasses import dataclass

from .bch import LieStructure, StarAlgebra, star_powers_via_series
from .conf import get_setting
from .dy_lie import (
    adjoint_module, check_cybe, check_omega_morphism, dy_tensor, trivial_module, validate_dy_lie,
)
from .ek import (
    biproduct_reassembly_check, ek_bialgebra, ek_bialgebra_report, ek_dy_lift_report,
    naturality_check, product_associativity_check, que_split_pair, solve_T, twist_checks,
)
from .exceptions import FixtureError, UnknownObject
from .fixtures import kind_of, load_fixture
from .hopf import (
    biproduct_dy_transport, check_braiding, check_double_braiding, check_quasitriangular,
    dy_double_equivalence, enumerate_dy_modules, mutate_hopf, quantum_double, radford_biproduct,
    radford_reassembly_check, radford_split, regular_dy_module, trivial_hopf_module,
    unit_split, validate_dy_hopf, validate_hopf, validate_split_hopf_pair,
)
from .liebialg import (
    LieBialgebra, drinfeld_double, identity_pair, mutate, split_pair_from_manin, validate_double,
    validate_lie_bialgebra, zero_lie_bialgebra, zero_pair,
)
from .multilinear import compose, identity, tensor
from .que import (
    bprime_factorisation_check, check_admissible, compute_Bprime, coverma_closure, quantum_restriction_triviality,
    relative_quantum_vermas, universal_property_checks, validate_que,
)
from .reports import Report
from .verma import verma_family

logger = logging.getLogger(__name__)

# braiding checks are cubic in the number of modules
BRAIDING_SAMPLE = 3


@dataclass(frozen=True)
class SuiteParams:
    """Degree cap D, order N, seed and mutation count; ``None`` means the configured default."""

    degree_cap: int = None
    hbar_order: int = None
    seed: int = None
    mutations: int = None

    @property
    def D(self):
        return get_setting('DEGREE_CAP') if self.degree_cap is None else self.degree_cap

    @property
    def N(self):
        return get_setting('HBAR_ORDER') if self.hbar_order is None else self.hbar_order

    @property
    def rng(self):
        return random.Random(get_setting('SEED') if self.seed is None else self.seed)

    @property
    def mutation_count(self):
        return get_setting('MUTATIONS') if self.mutations is None else self.mutations


def _step(report, prefix, build, *args):
    """Run one sub-check, merge it under ``prefix`` and return its result."""
    start = time.perf_counter()
    result = build(*args)
    sub = result if isinstance(result, Report) else result.report
    report.merge(sub, prefix=prefix, elapsed=time.perf_counter() - start)
    return result


def _each(check, argument_lists, suite):
    """One report collecting ``check(*args, report)`` for every argument tuple."""
    report = Report(suite)
    for args in argument_lists:
        check(*args, report)
    return report


def _mutation_gate(report, name, obj, mutator, validator, params):
    """Every seeded single-entry mutation must fail validation."""
    rng = params.rng
    count = params.mutation_count
    start = time.perf_counter()
    undetected = None
    for n in range(count):
        mutated, info = mutator(obj, rng)
        if validator(mutated).passed:
            undetected = {'mutation': n, **info}
            break
    report.add(f'mutations[{name}]', undetected is None, witness=undetected,
               detail=f'{count} seeded mutations', elapsed=time.perf_counter() - start)


# validate


def _validate_lie(report, b, params, prefix):
    _step(report, prefix, validate_lie_bialgebra, b)
    if b.dim:
        _mutation_gate(report, b.name, b, mutate, validate_lie_bialgebra, params)


def _validate_hopf(report, h, params, prefix):
    _step(report, prefix, validate_hopf, h)
    _mutation_gate(report, h.name, h, mutate_hopf, validate_hopf, params)


def validate_suite(obj, params):
    """Each fixture against its own validator, with the mutation gate."""
    kind = kind_of(obj)
    report = Report(f'validate:{getattr(obj, "name", kind)}')
    if kind == 'lie_bialgebra':
        _validate_lie(report, obj, params, 'lie_bialgebra')
    elif kind == 'split_pair':
        _validate_lie(report, obj.sub, params, 'sub')
        _validate_lie(report, obj.amb, params, 'amb')
        again = split_pair_from_manin(obj.sub, obj.amb, obj.manin)
        report.check_equal('manin_round_trip_i', again.i, obj.i)
        report.check_equal('manin_round_trip_p', again.p, obj.p)
    elif kind == 'hopf_algebra':
        _validate_hopf(report, obj, params, 'hopf')
    elif kind == 'split_hopf_pair':
        _validate_hopf(report, obj.A, params, 'A')
        _validate_hopf(report, obj.B, params, 'B')
        _step(report, 'split', validate_split_hopf_pair, obj)
    else:
        _step(report, 'que', validate_que, obj)
        report.not_testable('mutations', detail='structure constants are truncated series')
    return report


# Lie bialgebra suites


def _lie_parts(obj):
    if kind_of(obj) == 'lie_bialgebra':
        return [(None, obj)]
    return [('sub', obj.sub), ('amb', obj.amb)]


def _prefixed(prefix, name):
    return f'{prefix}.{name}' if prefix else name


def double_suite(obj, params):
    """Manin triple axioms of the double and the CYBE and Ω invariance on sample modules."""
    report = Report(f'double:{obj.name}')
    for prefix, b in _lie_parts(obj):
        double = _step(report, _prefixed(prefix, 'double'), _double_with_report, b).value
        k, ad = trivial_module(b), adjoint_module(double)
        m_minus = verma_family(identity_pair(b), params.D).m_minus
        triples = list(itertools.product((k, ad), repeat=3)) + [(ad, ad, m_minus)]
        _step(report, _prefixed(prefix, 'r'), _each, check_cybe, triples, 'cybe')
        pairs = list(itertools.product((k, ad, m_minus), repeat=2))
        _step(report, _prefixed(prefix, 'omega'), _each, check_omega_morphism, pairs, 'omega')
    return report


@dataclass(frozen=True)
class _Built:
    value: object
    report: Report


def _double_with_report(b):
    double = drinfeld_double(b)
    return _Built(double, validate_double(double))


def _equivalence(qd, v):
    return dy_double_equivalence(qd, v)['report']


def dy_suite(obj, params):
    """DY axioms for the trivial, adjoint and Verma modules and for their tensor products."""
    report = Report(f'dy:{obj.name}')
    pairs = [(prefix, identity_pair(b)) for prefix, b in _lie_parts(obj)]
    if kind_of(obj) == 'split_pair':
        pairs.append(('pair', obj))
    for prefix, pair in pairs:
        b = pair.amb
        family = verma_family(pair, params.D)
        modules = [trivial_module(b), adjoint_module(drinfeld_double(b)),
                   family.m_minus, family.mp_dual, family.l_minus]
        for m in modules:
            _step(report, _prefixed(prefix, m.name), validate_dy_lie, m)
        ad = modules[1]
        for v, w in ((ad, ad), (ad, family.m_minus)):
            vw = dy_tensor(v, w)
            _step(report, _prefixed(prefix, vw.name), validate_dy_lie, vw)
    return report


def bch_suite(obj, params):
    """Commutator and associativity of the BCH star product on S(b) up to degree D + 1."""
    report = Report(f'bch:{obj.name}')
    top = params.D + 1
    for prefix, b in _lie_parts(obj):
        lie = LieStructure.from_lie_bialgebra(b)
        algebra = StarAlgebra(lie, top, f'S({b.name})')
        sym = algebra.sym
        sub = Report(f'bch:{b.name}', max_degree=top)
        start = time.perf_counter()
        for i in range(b.dim):
            for j in range(b.dim):
                xi, xj = sym.generator(i), sym.generator(j)
                star = algebra.star(xi, xj)
                rats = algebra.star(xj, xi)
                commutator = {k: star.get(k, 0) - rats.get(k, 0) for k in set(star) | set(rats)}
                commutator = {k: c for k, c in commutator.items() if c}
                expected = {sym.index[sym.generator(k)]: c for k, c in b.bracket_of({i: 1}, {j: 1}).items() if c}
                sub.add(f'commutator[{b.space.labels[i]},{b.space.labels[j]}]', commutator == expected,
                        witness=None if commutator == expected else {'star': _stringify(commutator)})
        m = algebra.product_map()
        idS = identity(algebra.space)
        sub.check_equal('associativity', compose(m, tensor(m, idS)), compose(m, tensor(idS, m)))
        for i, j in itertools.product(range(b.dim), repeat=2):
            for a in range(1, top):
                for c in range(1, top - a + 1):
                    series = {sym.index[mono]: v for mono, v in star_powers_via_series(lie, i, a, j, c).items()}
                    xa = tuple(a * e for e in sym.generator(i))
                    xc = tuple(c * e for e in sym.generator(j))
                    direct = algebra.star(xa, xc)
                    direct = {k: v for k, v in direct.items() if v}
                    name = f'series[{b.space.labels[i]}^{a},{b.space.labels[j]}^{c}]'
                    sub.add(name, series == direct, witness=None if series == direct else {
                        'series': _stringify(series), 'star': _stringify(direct)})
        report.merge(sub, prefix=prefix, elapsed=time.perf_counter() - start)
    return report


def _stringify(vec):
    return {str(k): str(c) for k, c in sorted(vec.items())}


# Hopf suites


def _hopf_parts(obj):
    if kind_of(obj) == 'hopf_algebra':
        return [(None, obj)]
    return [('A', obj.A), ('B', obj.B)]


def hopf_suite(obj, params):
    """Hopf axioms, enumerated DY modules, the regular DY module and the braiding."""
    report = Report(f'hopf:{obj.name}')
    for prefix, h in _hopf_parts(obj):
        h = h.with_inverse()
        _step(report, _prefixed(prefix, 'hopf'), validate_hopf, h)
        modules = enumerate_dy_modules(h)
        report.add(_prefixed(prefix, 'dy_enumeration'), bool(modules), detail=f'{len(modules)} modules')
        regular = regular_dy_module(h)
        for v in modules + [regular]:
            _step(report, _prefixed(prefix, v.name), validate_dy_hopf, v)
        sample = modules[:BRAIDING_SAMPLE - 1] + [regular]
        triples = list(itertools.product(sample, repeat=3))
        _step(report, _prefixed(prefix, 'braiding'), _each, check_braiding, triples, 'braiding')
    return report


def quantum_double_suite(obj, params):
    """D(B) is quasitriangular and Ξ, Θ are inverse equivalences carrying braidings to R."""
    report = Report(f'quantum-double:{obj.name}')
    for prefix, h in _hopf_parts(obj):
        qd = quantum_double(h)
        report.add(_prefixed(prefix, 'dimension'), qd.dim == h.dim ** 2, detail=f'dim {qd.dim}')
        _step(report, _prefixed(prefix, 'double'), validate_hopf, qd.hopf)
        _step(report, _prefixed(prefix, 'R'), check_quasitriangular, qd.hopf, qd.R)
        modules = enumerate_dy_modules(qd.base) + [regular_dy_module(qd.base)]
        for v in modules:
            _step(report, _prefixed(prefix, f'equivalence[{v.name}]'), _equivalence, qd, v)
        sample = modules[:BRAIDING_SAMPLE - 1] + modules[-1:]
        pairs = [(qd, v, w) for v, w in itertools.product(sample, repeat=2)]
        _step(report, _prefixed(prefix, 'braiding'), _each, check_double_braiding, pairs, 'double_braiding')
    return report


def radford_suite(obj, params):
    """L = Π(B), its braided Hopf structure, L⋆A ≅ B and DY transport along the biproduct."""
    report = Report(f'radford:{obj.name}')
    data = _step(report, 'split', radford_split, obj)
    report.add('L_dimension', data.dim * obj.A.dim == obj.B.dim,
               detail=f'dim L = {data.dim}: {", ".join(map(str, data.space.labels))}')
    _step(report, 'reassembly', radford_reassembly_check, data)
    bp = radford_biproduct(data.braided, collapse_trivial=False)
    for module in (trivial_hopf_module(bp), regular_dy_module(bp)):
        _step(report, f'transport[{module.name}]', biproduct_dy_transport, module, data.braided, bp)
    return report


# quantised enveloping algebras


def _que_checks(report, que, prefix=None):
    _step(report, _prefixed(prefix, 'que'), validate_que, que)
    bprime = _step(report, _prefixed(prefix, 'bprime'), compute_Bprime, que)
    _step(report, _prefixed(prefix, 'coverma'), coverma_closure, que, bprime)
    k = trivial_hopf_module(que.hopf)
    _step(report, _prefixed(prefix, 'k_admissible'), check_admissible, k, que.exact_degree)
    _step(report, _prefixed(prefix, 'universal'), universal_property_checks, que.hopf, None, que.exact_degree)
    unit = ek_bialgebra(zero_lie_bialgebra(), que.degree_cap, que.order)
    data = radford_split(unit_split(que.hopf), max_degree=que.exact_degree)
    _step(report, _prefixed(prefix, 'bprime_factorisation'), bprime_factorisation_check, data, que, unit)


def que_suite(obj, params):
    """Universal properties, B', admissibility and the relative Verma modules."""
    kind = kind_of(obj)
    report = Report(f'que:{obj.name}')
    if kind == 'que':
        _que_checks(report, obj)
    elif kind == 'lie_bialgebra':
        _que_checks(report, ek_bialgebra(obj, params.D, params.N))
    elif kind == 'split_pair':
        _que_checks(report, ek_bialgebra(obj.amb, params.D, params.N), 'amb')
        qpair, que_b, que_a = que_split_pair(obj, params.D, params.N)
        l_minus = verma_family(obj, params.D).l_minus
        rel = _step(report, 'relative', relative_quantum_vermas, qpair, que_b, que_a, l_minus)
        _step(report, 'restriction', quantum_restriction_triviality, rel)
    elif kind == 'hopf_algebra':
        _step(report, 'universal', universal_property_checks, obj)
    else:
        _step(report, 'universal', universal_property_checks, obj.B)
        rel = _step(report, 'relative', relative_quantum_vermas, obj)
        _step(report, 'restriction', quantum_restriction_triviality, rel)
    return report


# EK quantisation


def _ek_pairs(obj):
    if kind_of(obj) == 'split_pair':
        return [(None, obj)]
    return [('identity', identity_pair(obj)), ('zero', zero_pair(obj))]


def ek_twist_suite(obj, params):
    """The relative twist: classical limit, one-jet, coherence, T and naturality."""
    report = Report(f'ek-twist:{obj.name}')
    D, N = params.D, params.N
    for prefix, pair in _ek_pairs(obj):
        _step(report, _prefixed(prefix, 'twist'), twist_checks, pair, N)
        T = _step(report, _prefixed(prefix, 'T'), solve_T, pair, D, N)
        report.add(_prefixed(prefix, 'T_trivial'), T.trivial)
        _step(report, _prefixed(prefix, 'naturality'), naturality_check, pair, D, N)
    return report


def ek_quantise_suite(obj, params):
    """U_h b, the lifts of k and M- and, for a pair, the relative product and biproduct."""
    report = Report(f'ek-quantise:{obj.name}')
    D, N = params.D, params.N
    b = obj if kind_of(obj) == 'lie_bialgebra' else obj.amb
    que = ek_bialgebra(b, D, N)
    _step(report, 'bialgebra', ek_bialgebra_report, que)
    m_minus = verma_family(zero_pair(b), D + 4 * N + 2).m_minus
    for V in (trivial_module(b), m_minus):
        _step(report, f'lift[{V.name}]', ek_dy_lift_report, que, V)
    if kind_of(obj) == 'split_pair':
        _step(report, 'product', product_associativity_check, obj, trivial_module(b), D, N)
        _step(report, 'reassembly', biproduct_reassembly_check, obj, D, N)
    return report


SUITES = {
    'validate': (validate_suite, ('lie_bialgebra', 'split_pair', 'hopf_algebra', 'split_hopf_pair', 'que')),
    'double': (double_suite, ('lie_bialgebra', 'split_pair')),
    'dy': (dy_suite, ('lie_bialgebra', 'split_pair')),
    'bch': (bch_suite, ('lie_bialgebra', 'split_pair')),
    'hopf': (hopf_suite, ('hopf_algebra', 'split_hopf_pair')),
    'quantum-double': (quantum_double_suite, ('hopf_algebra', 'split_hopf_pair')),
    'radford': (radford_suite, ('split_hopf_pair',)),
    'que': (que_suite, ('lie_bialgebra', 'split_pair', 'hopf_algebra', 'split_hopf_pair', 'que')),
    'ek-twist': (ek_twist_suite, ('lie_bialgebra', 'split_pair')),
    'ek-quantise': (ek_quantise_suite, ('lie_bialgebra', 'split_pair')),
}


def applicable_suites(obj):
    kind = kind_of(obj)
    return [name for name, (_, kinds) in SUITES.items() if kind in kinds]


def run_suite(name, obj, params=None):
    """Run one named suite, or every applicable one for ``all``."""
    params = params or SuiteParams()
    kind = kind_of(obj)
    if name == 'all':
        report = Report(f'all:{obj.name}')
        for suite in applicable_suites(obj):
            report.merge(run_suite(suite, obj, params), prefix=suite)
        return report
    if name not in SUITES:
        raise FixtureError(f"Unknown suite: {name}")
    suite, kinds = SUITES[name]
    if kind not in kinds:
        raise FixtureError(f"Suite {name} does not apply to {kind} fixtures")
    logger.info("running suite %s on %s (D=%d, N=%d)", name, obj.name, params.D, params.N)
    report = suite(obj, params)
    for check in report.checks:
        logger.info("%s: %s %s (%.3fs)", report.suite, check.name, check.status, check.elapsed)
    return report


# objects built by suites, for export


def _double_bialgebra(obj, params):
    b = obj if kind_of(obj) == 'lie_bialgebra' else obj.amb
    double = drinfeld_double(b)
    return LieBialgebra(double.space.name, double.space, double.bracket, double.cobracket)


def _quantum_double_hopf(obj, params):
    h = obj if kind_of(obj) == 'hopf_algebra' else obj.B
    return quantum_double(h).hopf


def _quantised(obj, params):
    b = obj if kind_of(obj) == 'lie_bialgebra' else obj.amb
    return ek_bialgebra(b, params.D, params.N)


def _biproduct(obj, params):
    data = radford_split(obj)
    return radford_biproduct(data.braided, collapse_trivial=False)


CONSTRUCTIONS = {
    'double': (_double_bialgebra, ('lie_bialgebra', 'split_pair')),
    'quantum-double': (_quantum_double_hopf, ('hopf_algebra', 'split_hopf_pair')),
    'que': (_quantised, ('lie_bialgebra', 'split_pair')),
    'biproduct': (_biproduct, ('split_hopf_pair',)),
}


def build_object(reference, params=None):
    """``<construction>:<fixture>`` or a plain fixture name."""
    params = params or SuiteParams()
    construction, _, fixture = reference.rpartition(':')
    obj = load_fixture(fixture)
    if not construction:
        return obj
    if construction not in CONSTRUCTIONS:
        raise UnknownObject(f"Unknown construction: {construction}")
    build, kinds = CONSTRUCTIONS[construction]
    if kind_of(obj) not in kinds:
        raise UnknownObject(f"Cannot build {construction} from a {kind_of(obj)} fixture")
    return build(obj, params)
