"""
Tests for the fixture schema, loading and export.
"""
import json
import tempfile
from fractions import Fraction
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from quantisation.ek import ek_bialgebra
from quantisation.exceptions import FixtureError, UnknownObject
from quantisation.fixtures import export_fixture, kind_of, list_fixtures, load_fixture, parse_fixture, write_fixture
from quantisation.serializers import CoefficientField, SuiteRunSerializer
from quantisation.scalar import TruncSeries


def lie_document(**overrides):
    data = {
        'kind': 'lie_bialgebra',
        'name': 'b',
        'labels': ['H', 'E'],
        'bracket': [
            {'inputs': ['H', 'E'], 'outputs': ['E'], 'c': '2'},
            {'inputs': ['E', 'H'], 'outputs': ['E'], 'c': '-2'},
        ],
        'cobracket': [
            {'inputs': ['E'], 'outputs': ['E', 'H'], 'c': '1'},
            {'inputs': ['E'], 'outputs': ['H', 'E'], 'c': '-1'},
        ],
    }
    data.update(overrides)
    return data


class FixtureLoadingTest(SimpleTestCase):
    """Test cases for the shipped fixtures."""

    def test_list_fixtures(self):
        """Test that every shipped fixture is listed with its kind and dimension."""
        rows = {row['name']: row for row in list_fixtures()}
        self.assertEqual(sorted(rows), ['abelian3', 'borel_pair', 'sl2_borel', 'sweedler_h4', 'sweedler_split', 'z2'])
        self.assertEqual(rows['borel_pair'], {'name': 'borel_pair', 'kind': 'split_pair', 'dim': 2})
        self.assertEqual(rows['sweedler_h4']['dim'], 4)

    def test_references_resolve(self):
        """Test that split pairs resolve fixtures named by reference."""
        pair = load_fixture('sweedler_split')
        self.assertEqual(kind_of(pair), 'split_hopf_pair')
        self.assertEqual(pair.B, load_fixture('sweedler_h4'))

    def test_unknown_fixture(self):
        """Test that a missing fixture raises UnknownObject."""
        with self.assertRaises(UnknownObject):
            load_fixture('no_such_fixture')

    def test_fixture_dirs_setting(self):
        """Test that fixtures are looked up in the configured directories."""
        with tempfile.TemporaryDirectory() as tmp:
            Path(tmp, 'extra.json').write_text(json.dumps(lie_document(name='extra')), encoding='utf-8')
            with override_settings(EK_QUANTISATION={'FIXTURE_DIRS': [tmp]}):
                self.assertEqual(load_fixture('extra').dim, 2)
                self.assertEqual([row['name'] for row in list_fixtures()], ['extra'])


class FixtureParsingTest(SimpleTestCase):
    """Test cases for fixture validation errors."""

    def test_valid_document(self):
        """Test that the document builds the shipped Borel algebra."""
        b = parse_fixture(lie_document(name='sl2_borel'))
        self.assertEqual(b.constants(), load_fixture('sl2_borel').constants())

    def test_unknown_kind(self):
        """Test that an unknown kind is rejected."""
        with self.assertRaises(FixtureError):
            parse_fixture({'kind': 'group', 'name': 'g'})
        with self.assertRaises(FixtureError):
            parse_fixture(['not', 'a', 'document'])

    def test_unknown_label(self):
        """Test that an entry naming an unknown basis vector is rejected."""
        doc = lie_document(bracket=[{'inputs': ['H', 'X'], 'outputs': ['E'], 'c': '1'}])
        with self.assertRaises(FixtureError):
            parse_fixture(doc)

    def test_wrong_arity(self):
        """Test that an entry with the wrong number of legs is rejected."""
        doc = lie_document(bracket=[{'inputs': ['H'], 'outputs': ['E'], 'c': '1'}])
        with self.assertRaises(FixtureError):
            parse_fixture(doc)

    def test_bad_coefficient(self):
        """Test that an unparsable coefficient is rejected."""
        doc = lie_document(bracket=[{'inputs': ['H', 'E'], 'outputs': ['E'], 'c': '1/0'}])
        with self.assertRaises(FixtureError):
            parse_fixture(doc)

    def test_duplicate_labels(self):
        """Test that repeated basis labels are rejected."""
        with self.assertRaises(FixtureError):
            parse_fixture(lie_document(labels=['H', 'H'], bracket=[], cobracket=[]))

    def test_pair_that_does_not_split(self):
        """Test that p∘i ≠ id is reported as a fixture error."""
        doc = json.loads(json.dumps({
            'kind': 'split_pair', 'name': 'bad', 'sub': {'kind': 'lie_bialgebra', 'name': 'kH', 'labels': ['H']},
            'amb': 'sl2_borel',
            'i': [{'inputs': ['H'], 'outputs': ['H'], 'c': '1'}],
            'p': [{'inputs': ['H'], 'outputs': ['H'], 'c': '2'}],
        }))
        with self.assertRaises(FixtureError):
            parse_fixture(doc)

    def test_coefficient_field(self):
        """Test rational and series coefficients."""
        field = CoefficientField()
        self.assertEqual(field.to_internal_value(['1', '-1/2']), TruncSeries(1, (1, Fraction(-1, 2))))
        self.assertEqual(field.to_representation(TruncSeries(1, (0, 3))), ['0', '3'])


class FixtureExportTest(SimpleTestCase):
    """Test cases for export and re-import."""

    def test_round_trip(self):
        """Test parse(export(x)) = x for every shipped fixture."""
        for name in ('abelian3', 'sl2_borel', 'borel_pair', 'z2', 'sweedler_h4', 'sweedler_split'):
            obj = load_fixture(name)
            again = parse_fixture(json.loads(json.dumps(export_fixture(obj))))
            self.assertEqual(export_fixture(again), export_fixture(obj), name)

    def test_export_name(self):
        """Test that an explicit name replaces the stored one."""
        self.assertEqual(export_fixture(load_fixture('z2'), 'cyclic')['name'], 'cyclic')

    def test_que_round_trip(self):
        """Test that a quantised algebra exports series coefficients and parses back."""
        que = ek_bialgebra(load_fixture('sl2_borel'), 2, 1)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, 'que.json')
            data = write_fixture(que, path)
            self.assertEqual(data['kind'], 'que')
            again = parse_fixture(json.loads(path.read_text(encoding='utf-8')))
        self.assertEqual(again.hopf.m, que.hopf.m)
        self.assertEqual(again.generators, que.generators)
        self.assertEqual(again.degree_cap, 2)


class SuiteRunSerializerTest(SimpleTestCase):
    """Test cases for the suite request body."""

    def test_defaults_and_bounds(self):
        """Test that timings defaults to false and N is bounded by 2."""
        serializer = SuiteRunSerializer(data={'suite': 'validate', 'fixture': 'z2'})
        self.assertTrue(serializer.is_valid())
        self.assertFalse(serializer.validated_data['timings'])
        serializer = SuiteRunSerializer(data={'suite': 'validate', 'fixture': 'z2', 'hbar_order': 3})
        self.assertFalse(serializer.is_valid())
        self.assertIn('hbar_order', serializer.errors)

    def test_unknown_suite(self):
        """Test that unknown suite names are rejected."""
        serializer = SuiteRunSerializer(data={'suite': 'nope', 'fixture': 'z2'})
        self.assertFalse(serializer.is_valid())
