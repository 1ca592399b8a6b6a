"""
Management command to run verification suites over fixture files.
"""
import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from quantisation.exceptions import FixtureError, QuantisationError, UnknownObject
from quantisation.fixtures import load_fixture
from quantisation.serializers import SUITES
from quantisation.suites import SuiteParams, run_suite


class Command(BaseCommand):
    help = 'Run a verification suite over one or more fixtures'

    def add_arguments(self, parser):
        parser.add_argument('--suite', required=True, choices=SUITES)
        parser.add_argument('--fixtures', required=True, nargs='+',
                            help='Fixture names or paths to fixture JSON files')
        parser.add_argument('--hbar-order', type=int, dest='hbar_order', help='Truncation order N')
        parser.add_argument('--degree-cap', type=int, dest='degree_cap', help='PBW degree cap D')
        parser.add_argument('--seed', type=int, help='Seed of the mutation tests')
        parser.add_argument('--mutations', type=int, help='Mutations per fixture')
        parser.add_argument('--out', help='Write the JSON report to this path')
        parser.add_argument('--json', action='store_true', help='Print the JSON report only')
        parser.add_argument('--timings', action='store_true', help='Include timings in the JSON report')

    def handle(self, *args, **options):
        """Load every fixture, run the suite and exit 1 if any check failed."""
        params = SuiteParams(
            degree_cap=options['degree_cap'],
            hbar_order=options['hbar_order'],
            seed=options['seed'],
            mutations=options['mutations'],
        )
        try:
            fixtures = [(name, load_fixture(name)) for name in options['fixtures']]
        except (FixtureError, UnknownObject) as e:
            raise CommandError(str(e), returncode=2)

        reports = []
        for name, obj in fixtures:
            if not options['json']:
                self.stdout.write(f'Running {options["suite"]} on {name}...')
            try:
                report = run_suite(options['suite'], obj, params)
            except (FixtureError, UnknownObject) as e:
                raise CommandError(str(e), returncode=2)
            except QuantisationError as e:
                raise CommandError(f'{name}: {e}', returncode=1)
            reports.append((name, report))
            if not options['json']:
                self._summary(report)

        document = {
            'suite': options['suite'],
            'params': {'degree_cap': params.D, 'hbar_order': params.N},
            'passed': all(report.passed for _, report in reports),
            'fixtures': {name: report.as_dict(options['timings']) for name, report in reports},
        }
        text = json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False)
        if options['out']:
            Path(options['out']).write_text(text + '\n', encoding='utf-8')
            if not options['json']:
                self.stdout.write(f'Report written to {options["out"]}')
        if options['json']:
            self.stdout.write(text)

        if not document['passed']:
            raise CommandError('Some checks failed', returncode=1)
        if not options['json']:
            self.stdout.write(self.style.SUCCESS('All checks passed'))

    def _summary(self, report):
        counts = {}
        for check in report.checks:
            counts[check.status] = counts.get(check.status, 0) + 1
        self.stdout.write('  ' + ', '.join(f'{n} {status}' for status, n in sorted(counts.items())))
        for check in report.failures():
            self.stdout.write(self.style.ERROR(f'  FAIL {check.name}: {check.witness or check.detail}'))
