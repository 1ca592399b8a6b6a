"""
Tests for the BCH star product.
"""
from fractions import Fraction

from django.test import SimpleTestCase

from quantisation.bch import (
    LieStructure, StarAlgebra, SymmetricAlgebra, bch_series, bch_star, bernoulli, star_powers_via_series,
)
from quantisation.fixtures import load_fixture
from quantisation.multilinear import compose, identity, tensor
from quantisation.reports import Report


def borel():
    return LieStructure(('H', 'E'), {(0, 1): {1: Fraction(2)}, (1, 0): {1: Fraction(-2)}})


class BernoulliTest(SimpleTestCase):
    """Test cases for Bernoulli numbers."""

    def test_first_values(self):
        """Test B_0..B_4 with the B_1 = -1/2 convention."""
        self.assertEqual([bernoulli(n) for n in range(5)],
                         [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)])


class SymmetricAlgebraTest(SimpleTestCase):
    """Test cases for the truncated monomial basis."""

    def test_dimensions(self):
        """Test that S(k^2)_{<=2} has 1 + 2 + 3 monomials."""
        sym = SymmetricAlgebra(('H', 'E'), 2)
        self.assertEqual(sym.dim, 6)
        self.assertEqual(sym.space.labels[0], '1')
        self.assertIn('H·E', sym.space.labels)
        self.assertIsNone(sym.multiply(sym.generator(0), (1, 1)))


class StarProductTest(SimpleTestCase):
    """Test cases for the star product on S(b)."""

    def test_low_degree_products(self):
        """Test H⋆E = HE + E and E⋆H = HE - E on the Borel algebra."""
        algebra = StarAlgebra(borel(), 2)
        sym = algebra.sym
        he, e = sym.index[(1, 1)], sym.index[(0, 1)]
        self.assertEqual(algebra.star((1, 0), (0, 1)), {he: 1, e: 1})
        self.assertEqual(algebra.star((0, 1), (1, 0)), {he: 1, e: -1})
        self.assertEqual(algebra.star((1, 0), (1, 0)), {sym.index[(2, 0)]: 1})

    def test_unit(self):
        """Test that 1 is a two-sided unit."""
        algebra = StarAlgebra(borel(), 2)
        for mono in algebra.sym.monomials:
            k = algebra.sym.index[mono]
            self.assertEqual(algebra.star((0, 0), mono), {k: 1})

    def test_abelian_star_is_commutative(self):
        """Test that the star product of an abelian algebra is the commutative product."""
        lie = LieStructure.from_lie_bialgebra(load_fixture('abelian3'))
        algebra = StarAlgebra(lie, 2)
        sym = algebra.sym
        self.assertEqual(algebra.star(sym.generator(0), sym.generator(1)), {sym.index[(1, 1, 0)]: 1})

    def test_associativity(self):
        """Test associativity up to total degree 3."""
        algebra = StarAlgebra(borel(), 3)
        m = algebra.product_map()
        idS = identity(algebra.space)
        report = Report('bch', max_degree=3)
        report.check_equal('associativity', compose(m, tensor(m, idS)), compose(m, tensor(idS, m)))
        self.assertEqual(report.status('associativity'), 'pass')

    def test_bch_star_of_fixture(self):
        """Test that bch_star gives a map S⊗S -> S for a shipped fixture."""
        m = bch_star(load_fixture('sl2_borel'), 2)
        self.assertEqual(len(m.domain), 2)
        self.assertEqual(m.codomain[0].dim, 6)


class BCHSeriesTest(SimpleTestCase):
    """Test cases for the full BCH series."""

    def test_degree_two(self):
        """Test that the degree-2 part is [X, Y]/2 after the Dynkin projection."""
        series = bch_series(2)
        self.assertEqual(series[1], {(0,): 1, (1,): 1})
        self.assertEqual(series[2], {(0, 1): Fraction(1, 4), (1, 0): Fraction(-1, 4)})

    def test_series_matches_star(self):
        """Test x_i^a ⋆ x_j^b from the series against the symmetrized operators."""
        lie = borel()
        algebra = StarAlgebra(lie, 3)
        sym = algebra.sym
        for i, a, j, b in ((0, 1, 1, 1), (1, 1, 0, 2), (0, 2, 1, 1), (1, 2, 0, 1)):
            xa = tuple(a * e for e in sym.generator(i))
            xb = tuple(b * e for e in sym.generator(j))
            via_series = {sym.index[mono]: c for mono, c in star_powers_via_series(lie, i, a, j, b).items()}
            self.assertEqual(via_series, algebra.star(xa, xb))
