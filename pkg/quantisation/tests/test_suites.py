"""
Tests for the suite registry, reports and object construction.
"""
from django.test import SimpleTestCase

from quantisation.ek import ek_bialgebra
from quantisation.exceptions import FixtureError, UnknownObject
from quantisation.fixtures import kind_of, load_fixture
from quantisation.liebialg import LieBialgebra
from quantisation.multilinear import LinMap, Space
from quantisation.reports import Report
from quantisation.suites import SuiteParams, applicable_suites, build_object, run_suite


def heisenberg():
    return LieBialgebra.from_constants(
        'heisenberg', ['x', 'y', 'z'],
        bracket={('x', 'y'): {'z': 1}, ('y', 'x'): {'z': -1}},
        cobracket={'x': {('x', 'y'): 1, ('y', 'x'): -1}},
    )


class ReportTest(SimpleTestCase):
    """Test cases for Report bookkeeping."""

    def test_statuses(self):
        """Test pass, fail and not-testable records."""
        report = Report('r')
        report.add('a', True)
        report.not_testable('b', detail='order')
        self.assertTrue(report.passed)
        report.add('c', False, witness={'x': 1})
        self.assertFalse(report.passed)
        self.assertEqual([c.name for c in report.failures()], ['c'])
        self.assertEqual(report.status('b'), 'not-testable-at-order')

    def test_check_zero_windows_inputs(self):
        """Test that residuals are cut to the degree cap."""
        V = Space('V', ('a', 'b'), (0, 2))
        residual = LinMap((V,), (V,), {((1,), (1,)): 1})
        report = Report('r', max_degree=1)
        report.check_zero('windowed', residual)
        self.assertEqual(report.status('windowed'), 'pass')
        report = Report('r')
        check = report.check_zero('full', residual)
        self.assertEqual(check.witness, {'in': ['b'], 'out': ['b'], 'coeff': '1'})

    def test_merge_and_dict(self):
        """Test prefixes, timing stamps and sorted output."""
        inner = Report('inner')
        inner.add('z', True)
        inner.add('a', True)
        outer = Report('outer').merge(inner, prefix='p', elapsed=0.5)
        data = outer.as_dict(timings=True)
        self.assertEqual([c['name'] for c in data['checks']], ['p.a', 'p.z'])
        self.assertEqual(data['checks'][0]['elapsed'], 0.5)
        self.assertNotIn('elapsed', outer.as_dict()['checks'][0])


class SuiteRegistryTest(SimpleTestCase):
    """Test cases for suite dispatch."""

    def test_applicable_suites(self):
        """Test which suites apply to each kind of fixture."""
        self.assertEqual(applicable_suites(load_fixture('z2')), ['validate', 'hopf', 'quantum-double', 'que'])
        self.assertIn('radford', applicable_suites(load_fixture('sweedler_split')))
        self.assertIn('ek-twist', applicable_suites(load_fixture('borel_pair')))

    def test_inapplicable_suite(self):
        """Test that running a suite on the wrong kind is a fixture error."""
        with self.assertRaises(FixtureError):
            run_suite('radford', load_fixture('z2'))
        with self.assertRaises(FixtureError):
            run_suite('nope', load_fixture('z2'))

    def test_params_defaults(self):
        """Test that unset parameters come from the settings."""
        params = SuiteParams()
        self.assertEqual((params.D, params.N, params.mutation_count), (2, 1, 100))
        self.assertEqual(SuiteParams(seed=3).rng.random(), SuiteParams(seed=3).rng.random())


class SuiteRunTest(SimpleTestCase):
    """Test cases for running suites on fixtures."""

    def test_validate_lie(self):
        """Test the validate suite on the Borel fixture."""
        report = run_suite('validate', load_fixture('sl2_borel'), SuiteParams(mutations=20))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.status('mutations[sl2_borel]'), 'pass')

    def test_validate_split_hopf_pair(self):
        """Test the validate suite on k[Z/2] ⊂ H4."""
        report = run_suite('validate', load_fixture('sweedler_split'), SuiteParams(mutations=20))
        self.assertTrue(report.passed, report.failures())
        self.assertIn('split.p_after_i', report)

    def test_validate_reports_failures(self):
        """Test that a broken cocycle makes the suite fail."""
        report = run_suite('validate', heisenberg(), SuiteParams(mutations=0))
        self.assertFalse(report.passed)
        self.assertEqual(report.status('lie_bialgebra.cocycle'), 'fail')

    def test_validate_que(self):
        """Test that a QUE skips the mutation gate."""
        que = ek_bialgebra(load_fixture('sl2_borel'), 2, 1)
        report = run_suite('validate', que)
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.status('mutations'), 'not-testable-at-order')

    def test_bch_suite(self):
        """Test the BCH suite on the Borel fixture."""
        report = run_suite('bch', load_fixture('sl2_borel'))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.status('commutator[H,E]'), 'pass')

    def test_hopf_suites(self):
        """Test the Hopf and quantum double suites on k[Z/2]."""
        for suite in ('hopf', 'quantum-double', 'que'):
            report = run_suite(suite, load_fixture('z2'))
            self.assertTrue(report.passed, (suite, report.failures()))

    def test_que_suite_on_pair(self):
        """Test the relative quantum Vermas and the restriction criterion on the shipped pair."""
        report = run_suite('que', load_fixture('borel_pair'), SuiteParams(degree_cap=2, hbar_order=1))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.status('relative.N_bprime_closure'), 'pass')
        self.assertEqual(report.status('restriction.trivial[k,k]'), 'pass')
        self.assertEqual(report.status('amb.universal.M_B[k]'), 'pass')

    def test_all(self):
        """Test that ``all`` prefixes every applicable suite."""
        report = run_suite('all', load_fixture('z2'), SuiteParams(mutations=10))
        self.assertTrue(report.passed, report.failures())
        self.assertTrue(any(c.name.startswith('quantum-double.') for c in report.checks))


class BuildObjectTest(SimpleTestCase):
    """Test cases for constructions exported by name."""

    def test_plain_fixture(self):
        """Test that a plain name loads the fixture."""
        self.assertEqual(build_object('z2'), load_fixture('z2'))

    def test_constructions(self):
        """Test the double, the quantum double and the biproduct."""
        self.assertEqual(build_object('double:abelian3').dim, 6)
        self.assertEqual(build_object('quantum-double:z2').dim, 4)
        self.assertEqual(build_object('biproduct:sweedler_split').dim, 4)
        que = build_object('que:sl2_borel', SuiteParams(degree_cap=2, hbar_order=1))
        self.assertEqual(kind_of(que), 'que')

    def test_unknown_construction(self):
        """Test that unknown or inapplicable constructions raise UnknownObject."""
        with self.assertRaises(UnknownObject):
            build_object('frobnicate:z2')
        with self.assertRaises(UnknownObject):
            build_object('biproduct:z2')
