"""
Tests for Drinfeld-Yetter modules over Lie bialgebras.
"""
from django.test import SimpleTestCase

from quantisation.dy_lie import (
    DYLieModule, adjoint_module, check_cybe, check_omega_morphism, double_action, dual_module, dy_hom_space,
    dy_tensor, r_omega_operators, span_contains, trivial_module, validate_dy_lie,
)
from quantisation.exceptions import SignatureMismatch
from quantisation.fixtures import load_fixture
from quantisation.liebialg import drinfeld_double
from quantisation.multilinear import compose, identity


class DYLieModuleTest(SimpleTestCase):
    """Test cases for DY modules and their validator."""

    def setUp(self):
        """Set up the Borel fixture and its double."""
        self.b = load_fixture('sl2_borel')
        self.double = drinfeld_double(self.b)
        self.ad = adjoint_module(self.double)

    def test_trivial_and_adjoint_are_valid(self):
        """Test that k and the adjoint module satisfy the DY axioms."""
        for m in (trivial_module(self.b), self.ad, dual_module(self.ad)):
            report = validate_dy_lie(m)
            self.assertTrue(report.passed, (m.name, report.failures()))
        self.assertEqual(self.ad.dim, 4)

    def test_operators_represent_the_double(self):
        """Test ρ([X, Y]) = [ρ(X), ρ(Y)] on the adjoint module."""
        ops = self.ad.operators()
        for x in range(4):
            for y in range(4):
                bracket = double_action(self.ad, self.double.bracket_of({x: 1}, {y: 1}))
                self.assertEqual(bracket, compose(ops[x], ops[y]) - compose(ops[y], ops[x]))

    def test_scaled_action_fails(self):
        """Test that doubling the action breaks the module identity."""
        broken = DYLieModule('broken', self.b, self.ad.legs, self.ad.action.scale(2), self.ad.coaction)
        report = validate_dy_lie(broken)
        self.assertEqual(report.status('module'), 'fail')

    def test_wrong_signature(self):
        """Test that an action with the wrong legs is rejected."""
        k = trivial_module(self.b)
        with self.assertRaises(SignatureMismatch):
            DYLieModule('bad', self.b, self.ad.legs, k.action, k.coaction)

    def test_tensor_product_is_valid(self):
        """Test the DY axioms on ad⊗ad and k⊗ad."""
        for v, w in ((self.ad, self.ad), (trivial_module(self.b), self.ad)):
            vw = dy_tensor(v, w)
            self.assertEqual(vw.dim, v.dim * w.dim)
            self.assertTrue(validate_dy_lie(vw).passed, vw.name)

    def test_tensor_requires_same_base(self):
        """Test that modules over different Lie bialgebras do not tensor."""
        other = trivial_module(load_fixture('abelian3'))
        with self.assertRaises(SignatureMismatch):
            dy_tensor(self.ad, other)


class InfinitesimalBraidingTest(SimpleTestCase):
    """Test cases for r, Ω and the classical Yang-Baxter equation."""

    def setUp(self):
        """Set up the Borel fixture and its modules."""
        self.b = load_fixture('sl2_borel')
        self.k = trivial_module(self.b)
        self.ad = adjoint_module(drinfeld_double(self.b))

    def test_cybe(self):
        """Test the CYBE on triples of trivial and adjoint modules."""
        for triple in ((self.k, self.k, self.k), (self.ad, self.k, self.ad), (self.ad, self.ad, self.ad)):
            self.assertTrue(check_cybe(*triple).passed, [m.name for m in triple])

    def test_omega_is_a_morphism(self):
        """Test that Ω commutes with the DY structure of V⊗W."""
        for v, w in ((self.k, self.ad), (self.ad, self.ad)):
            report = check_omega_morphism(v, w)
            self.assertTrue(report.passed, report.failures())

    def test_r_vanishes_on_trivial(self):
        """Test that r and Ω act by zero on k⊗k."""
        ops = r_omega_operators(self.k, self.k)
        self.assertTrue(ops['r'].is_zero())
        self.assertTrue(ops['omega'].is_zero())


class DYHomTest(SimpleTestCase):
    """Test cases for DY morphism spaces."""

    def test_trivial_endomorphisms(self):
        """Test that End(k) is one-dimensional."""
        k = trivial_module(load_fixture('sl2_borel'))
        self.assertEqual(len(dy_hom_space(k, k)), 1)

    def test_identity_is_a_morphism(self):
        """Test that the identity of the adjoint module lies in its DY endomorphisms."""
        ad = adjoint_module(drinfeld_double(load_fixture('sl2_borel')))
        self.assertTrue(span_contains(dy_hom_space(ad, ad), identity(ad.legs)))
