"""
Management command to export a constructed object in the fixture schema.
"""
import json

from django.core.management.base import BaseCommand, CommandError

from quantisation.exceptions import FixtureError, QuantisationError, UnknownObject
from quantisation.fixtures import export_fixture, parse_fixture, write_fixture
from quantisation.suites import CONSTRUCTIONS, SuiteParams, build_object


class Command(BaseCommand):
    help = (
        'Export an object as a fixture. OBJECT is a fixture name or '
        f'<construction>:<fixture> with construction one of {", ".join(CONSTRUCTIONS)}'
    )

    def add_arguments(self, parser):
        parser.add_argument('object')
        parser.add_argument('--name', help='Name stored in the exported fixture')
        parser.add_argument('--hbar-order', type=int, dest='hbar_order')
        parser.add_argument('--degree-cap', type=int, dest='degree_cap')
        parser.add_argument('--out', help='Write the fixture to this path instead of stdout')

    def handle(self, *args, **options):
        params = SuiteParams(degree_cap=options['degree_cap'], hbar_order=options['hbar_order'])
        try:
            obj = build_object(options['object'], params)
            if options['out']:
                data = write_fixture(obj, options['out'], options['name'])
            else:
                data = export_fixture(obj, options['name'])
            # the exported document must parse back
            parse_fixture(json.loads(json.dumps(data)))
        except (FixtureError, UnknownObject) as e:
            raise CommandError(str(e), returncode=2)
        except QuantisationError as e:
            raise CommandError(str(e), returncode=1)

        if options['out']:
            self.stdout.write(self.style.SUCCESS(f'Exported {data["kind"]} {data["name"]} to {options["out"]}'))
        else:
            self.stdout.write(json.dumps(data, indent=2, ensure_ascii=False))
