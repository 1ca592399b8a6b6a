"""
Tests for the run_suite and export_fixture management commands.
"""
import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from quantisation.fixtures import parse_fixture

HEISENBERG = {
    'kind': 'lie_bialgebra',
    'name': 'heisenberg',
    'labels': ['x', 'y', 'z'],
    'bracket': [
        {'inputs': ['x', 'y'], 'outputs': ['z'], 'c': '1'},
        {'inputs': ['y', 'x'], 'outputs': ['z'], 'c': '-1'},
    ],
    'cobracket': [
        {'inputs': ['x'], 'outputs': ['x', 'y'], 'c': '1'},
        {'inputs': ['x'], 'outputs': ['y', 'x'], 'c': '-1'},
    ],
}


class RunSuiteCommandTest(SimpleTestCase):
    """Test cases for the run_suite command."""

    def test_json_report(self):
        """Test that --json prints one report per fixture."""
        out = StringIO()
        call_command('run_suite', '--suite', 'hopf', '--fixtures', 'z2', 'sweedler_h4', '--json', stdout=out)
        document = json.loads(out.getvalue())
        self.assertTrue(document['passed'])
        self.assertEqual(sorted(document['fixtures']), ['sweedler_h4', 'z2'])
        self.assertEqual(document['params'], {'degree_cap': 2, 'hbar_order': 1})

    def test_summary_and_out(self):
        """Test the text summary and the report file."""
        out = StringIO()
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, 'report.json')
            call_command('run_suite', '--suite', 'validate', '--fixtures', 'z2', '--mutations', '5',
                         '--timings', '--out', str(path), stdout=out)
            document = json.loads(path.read_text(encoding='utf-8'))
        self.assertIn('All checks passed', out.getvalue())
        self.assertIn('elapsed', document['fixtures']['z2']['checks'][0])

    def test_unknown_fixture_exits_2(self):
        """Test that a missing fixture is a usage error."""
        with self.assertRaises(CommandError) as ctx:
            call_command('run_suite', '--suite', 'validate', '--fixtures', 'missing', stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_inapplicable_suite_exits_2(self):
        """Test that a suite of the wrong kind is a usage error."""
        with self.assertRaises(CommandError) as ctx:
            call_command('run_suite', '--suite', 'radford', '--fixtures', 'z2', stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_failure_exits_1(self):
        """Test that a failing check exits 1 and is written to the report."""
        with tempfile.TemporaryDirectory() as tmp:
            fixture = Path(tmp, 'heisenberg.json')
            fixture.write_text(json.dumps(HEISENBERG), encoding='utf-8')
            report = Path(tmp, 'report.json')
            with self.assertRaises(CommandError) as ctx:
                call_command('run_suite', '--suite', 'validate', '--fixtures', str(fixture), '--mutations', '0',
                             '--out', str(report), stdout=StringIO())
            document = json.loads(report.read_text(encoding='utf-8'))
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertFalse(document['passed'])


class ExportFixtureCommandTest(SimpleTestCase):
    """Test cases for the export_fixture command."""

    def test_export_double(self):
        """Test that the Drinfeld double is printed as a parsable fixture."""
        out = StringIO()
        call_command('export_fixture', 'double:abelian3', '--name', 'd3', stdout=out)
        data = json.loads(out.getvalue())
        self.assertEqual(data['kind'], 'lie_bialgebra')
        self.assertEqual(data['name'], 'd3')
        self.assertEqual(parse_fixture(data).dim, 6)

    def test_export_que_to_file(self):
        """Test that --out writes a QUE with the requested window."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp, 'que.json')
            out = StringIO()
            call_command('export_fixture', 'que:sl2_borel', '--hbar-order', '1', '--degree-cap', '2',
                         '--out', str(path), stdout=out)
            data = json.loads(path.read_text(encoding='utf-8'))
        self.assertEqual(data['kind'], 'que')
        self.assertIn('Exported que', out.getvalue())

    def test_unknown_construction_exits_2(self):
        """Test that an unknown construction is a usage error."""
        with self.assertRaises(CommandError) as ctx:
            call_command('export_fixture', 'frobnicate:z2', stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
