"""
Tests for finite-dimensional Hopf algebras, quantum doubles and Radford biproducts.
"""
import random

from django.test import SimpleTestCase

from quantisation.exceptions import NotConnected, NotSplit
from quantisation.fixtures import load_fixture
from quantisation.hopf import (
    DYHopfModule, MatchedPair, SplitHopfPair, antipode_from_convolution, biproduct_dy_transport, check_braiding,
    check_double_braiding, check_quasitriangular, double_cross_product, dual_hopf, dy_direct_sum,
    dy_double_equivalence, dy_hom_hopf, dy_isomorphic, dy_tensor_hopf, enumerate_dy_modules, group_algebra,
    is_dy_module, mutate_hopf, one_dimensional_dy_modules, quantum_double, radford_biproduct,
    radford_reassembly_check, radford_split, regular_dy_module, tensor_hopf, trivial_hopf, trivial_hopf_module,
    unit_split, validate_dy_hopf, validate_hopf, validate_split_hopf_pair,
)
from quantisation.multilinear import LinMap, Space, identity, tensor


class HopfAlgebraTest(SimpleTestCase):
    """Test cases for the Hopf axioms."""

    def test_shipped_algebras_are_valid(self):
        """Test that k[Z/2] and Sweedler's algebra pass every axiom."""
        for name in ('z2', 'sweedler_h4'):
            h = load_fixture(name).with_inverse()
            report = validate_hopf(h)
            self.assertTrue(report.passed, report.failures())
            self.assertIn('antipode_inverse', report)

    def test_group_algebra(self):
        """Test k[Z/3] and its dual."""
        h = group_algebra(3)
        self.assertEqual(h.dim, 3)
        self.assertTrue(validate_hopf(h).passed)
        self.assertTrue(validate_hopf(dual_hopf(h)).passed)

    def test_tensor_product(self):
        """Test that k[Z/2]⊗H4 is an eight-dimensional Hopf algebra."""
        h = tensor_hopf(load_fixture('z2'), load_fixture('sweedler_h4'))
        self.assertEqual(h.dim, 8)
        self.assertTrue(validate_hopf(h).passed)

    def test_mutations_are_detected(self):
        """Test that 100 seeded mutations of Sweedler's algebra all fail validation."""
        rng = random.Random(0)
        h = load_fixture('sweedler_h4')
        for _ in range(100):
            mutated, info = mutate_hopf(h, rng)
            self.assertFalse(validate_hopf(mutated).passed, info)

    def test_antipode_from_convolution(self):
        """Test the convolution series on k and its failure on a group algebra."""
        k = trivial_hopf()
        self.assertEqual(antipode_from_convolution(k), k.S)
        with self.assertRaises(NotConnected):
            antipode_from_convolution(load_fixture('z2'), max_terms=5)


class DYHopfModuleTest(SimpleTestCase):
    """Test cases for DY modules over Hopf algebras."""

    def setUp(self):
        """Set up Sweedler's algebra with its inverse antipode."""
        self.h = load_fixture('sweedler_h4').with_inverse()

    def test_trivial_and_regular_are_valid(self):
        """Test the DY axioms on k and on the regular module."""
        for v in (trivial_hopf_module(self.h), regular_dy_module(self.h)):
            report = validate_dy_hopf(v)
            self.assertTrue(report.passed, (v.name, report.failures()))

    def test_tensor_product_is_valid(self):
        """Test the DY axioms on M⊗M."""
        regular = regular_dy_module(self.h)
        mm = dy_tensor_hopf(regular, regular)
        self.assertEqual(mm.dim, 16)
        self.assertTrue(validate_dy_hopf(mm).passed)

    def test_braiding(self):
        """Test inverse, naturality, hexagons and Yang-Baxter on k and M."""
        k, regular = trivial_hopf_module(self.h), regular_dy_module(self.h)
        report = check_braiding(regular, k, regular)
        self.assertTrue(report.passed, report.failures())

    def test_one_dimensional_modules_of_z2(self):
        """Test that all four sign and group-like combinations over k[Z/2] appear."""
        h = load_fixture('z2').with_inverse()
        modules = one_dimensional_dy_modules(h)
        kinds = {(v.action.entry((1, 0), (0,)), v.coaction.entry((0,), (1, 0))) for v in modules}
        self.assertEqual(kinds, {(1, 0), (-1, 0), (1, 1), (-1, 1)})

    def test_enumeration_is_complete_over_z2(self):
        """Test that every DY module of dimension at most 3 over k[Z/2] is found once up to isomorphism."""
        h = load_fixture('z2').with_inverse()
        modules = enumerate_dy_modules(h, max_dim=3)
        self.assertEqual([sum(1 for v in modules if v.dim == n) for n in (1, 2, 3)], [4, 10, 20])
        for v in modules:
            self.assertTrue(validate_dy_hopf(v).passed, v.name)
        V = Space('s', ('v',))
        sign = DYHopfModule('s', h, (V,), LinMap((h.space, V), (V,), {((0, 0), (0,)): 1, ((1, 0), (0,)): -1}),
                            LinMap((V,), (h.space, V), {((0,), (1, 0)): 1}))
        self.assertTrue(validate_dy_hopf(sign).passed)
        self.assertEqual(sum(dy_isomorphic(sign, v) for v in modules), 1)

    def test_enumeration_over_sweedler(self):
        """Test that the enumeration over H4 starts from its two one-dimensional modules."""
        modules = enumerate_dy_modules(self.h, max_dim=2, rounds=1)
        self.assertEqual(len(one_dimensional_dy_modules(self.h)), 2)
        self.assertGreaterEqual(len(modules), 5)
        for v in modules:
            self.assertTrue(validate_dy_hopf(v).passed, v.name)

    def test_direct_sum(self):
        """Test that k⊕M is a DY module of the summed dimension."""
        total = dy_direct_sum([trivial_hopf_module(self.h), regular_dy_module(self.h)])
        self.assertEqual(total.dim, 5)
        self.assertTrue(validate_dy_hopf(total).passed)
        self.assertFalse(dy_isomorphic(total, dy_direct_sum([regular_dy_module(self.h), regular_dy_module(self.h)])))

    def test_screening_is_quiet(self):
        """Test that rejected candidates are not logged as warnings."""
        k = trivial_hopf_module(self.h)
        broken = DYHopfModule('broken', self.h, k.legs, k.action.scale(2), k.coaction)
        with self.assertLogs('quantisation.hopf', level='DEBUG') as logs:
            self.assertFalse(is_dy_module(broken))
        self.assertTrue(all(record.levelname == 'DEBUG' for record in logs.records))

    def test_trivial_endomorphisms(self):
        """Test that End(k) is one-dimensional."""
        k = trivial_hopf_module(self.h)
        self.assertEqual(len(dy_hom_hopf(k, k)), 1)


class QuantumDoubleTest(SimpleTestCase):
    """Test cases for D(B) and the equivalence with DY modules."""

    def test_trivial_matched_pair(self):
        """Test that trivial actions give the tensor product Hopf algebra."""
        A, H = load_fixture('z2'), load_fixture('sweedler_h4')
        left = tensor(H.counit, identity(A.space))
        right = tensor(identity(H.space), A.counit)
        product = double_cross_product(MatchedPair(A, H, left, right), collapse_trivial=False)
        self.assertEqual(product.dim, 8)
        self.assertTrue(validate_hopf(product).passed)

    def test_double_of_z2(self):
        """Test that D(k[Z/2]) is a quasitriangular Hopf algebra of dimension 4."""
        qd = quantum_double(load_fixture('z2'))
        self.assertEqual(qd.dim, 4)
        self.assertTrue(validate_hopf(qd.hopf).passed)
        report = check_quasitriangular(qd.hopf, qd.R)
        self.assertTrue(report.passed, report.failures())

    def test_double_of_sweedler(self):
        """Test that D(H4) is a quasitriangular Hopf algebra of dimension 16."""
        qd = quantum_double(load_fixture('sweedler_h4'))
        self.assertEqual(qd.dim, 16)
        self.assertTrue(check_quasitriangular(qd.hopf, qd.R).passed)

    def test_equivalence_round_trips(self):
        """Test Θ∘Ξ = id on k and on the regular DY module."""
        qd = quantum_double(load_fixture('sweedler_h4'))
        for v in (trivial_hopf_module(qd.base), regular_dy_module(qd.base)):
            report = dy_double_equivalence(qd, v)['report']
            self.assertTrue(report.passed, (v.name, report.failures()))

    def test_braiding_is_carried_to_R(self):
        """Test that Ξ carries the DY braiding to the R-matrix braiding."""
        qd = quantum_double(load_fixture('z2'))
        regular = regular_dy_module(qd.base)
        self.assertTrue(check_double_braiding(qd, regular, regular).passed)


class RadfordTest(SimpleTestCase):
    """Test cases for split Hopf pairs and the Radford biproduct."""

    def setUp(self):
        """Set up k[Z/2] ⊂ H4."""
        self.pair = load_fixture('sweedler_split')

    def test_shipped_pair_is_split(self):
        """Test the morphism checks and p∘i = id."""
        self.assertTrue(validate_split_hopf_pair(self.pair).passed)
        self.assertTrue(validate_split_hopf_pair(unit_split(self.pair.B)).passed)

    def test_projection_image(self):
        """Test that L = Π(H4) is two-dimensional and B ≅ L⋆A."""
        data = radford_split(self.pair)
        self.assertEqual(data.dim, 2)
        self.assertTrue(data.report.passed, data.report.failures())
        report = radford_reassembly_check(data)
        self.assertTrue(report.passed, report.failures())

    def test_biproduct_transport(self):
        """Test restriction and transport of DY modules along L⋆A."""
        data = radford_split(self.pair)
        bp = radford_biproduct(data.braided, collapse_trivial=False)
        self.assertEqual(bp.dim, 4)
        for module in (trivial_hopf_module(bp), regular_dy_module(bp)):
            report = biproduct_dy_transport(module, data.braided, bp)['report']
            self.assertTrue(report.passed, (module.name, report.failures()))

    def test_not_split(self):
        """Test that a pair with p∘i ≠ id is rejected."""
        A, B = self.pair.A, self.pair.B
        broken = SplitHopfPair(A, B, self.pair.i, self.pair.p.scale(2))
        with self.assertRaises(NotSplit):
            radford_split(broken)
