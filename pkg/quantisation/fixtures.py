"""
Loading, listing and exporting fixture files.
"""
import json
import logging
from pathlib import Path

from rest_framework import serializers

from .conf import get_setting
from .exceptions import FixtureError, QuantisationError, UnknownObject
from .serializers import FIXTURE_TYPES, SERIALIZERS

logger = logging.getLogger(__name__)


def fixture_dirs():
    return [Path(d) for d in get_setting('FIXTURE_DIRS')]


def find_fixture(name):
    """Path of a fixture given by file path or by name in the fixture directories."""
    path = Path(name)
    if path.suffix == '.json' and path.exists():
        return path
    for directory in fixture_dirs():
        candidate = directory / f"{name}.json"
        if candidate.exists():
            return candidate
    raise UnknownObject(f"No fixture named {name!r}")


def read_fixture(name):
    path = find_fixture(name)
    try:
        with open(path, encoding='utf-8') as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureError(f"Cannot read {path}: {e}") from e


def parse_fixture(data, resolver=None):
    """Build the engine object described by a fixture document."""
    if not isinstance(data, dict) or data.get('kind') not in SERIALIZERS:
        raise FixtureError(f"Unknown fixture kind: {data.get('kind') if isinstance(data, dict) else data!r}")
    serializer = SERIALIZERS[data['kind']](data=data, resolver=resolver or load_fixture)
    try:
        serializer.is_valid(raise_exception=True)
        return serializer.save()
    except serializers.ValidationError as e:
        raise FixtureError(f"Invalid {data['kind']} fixture {data.get('name')!r}: {e.detail}") from e
    except (UnknownObject, FixtureError):
        raise
    except QuantisationError as e:
        raise FixtureError(f"Fixture {data.get('name')!r} does not describe a valid {data['kind']}: {e}") from e


def load_fixture(name):
    obj = parse_fixture(read_fixture(name))
    logger.debug("loaded fixture %s", name)
    return obj


def kind_of(obj):
    for kind, cls in FIXTURE_TYPES.items():
        if isinstance(obj, cls):
            return kind
    raise UnknownObject(f"{type(obj).__name__} has no fixture form")


def export_fixture(obj, name=None):
    """The fixture document of an engine object; parse_fixture inverts it."""
    data = dict(SERIALIZERS[kind_of(obj)](obj).data)
    if name is not None:
        data['name'] = name
    return data


def write_fixture(obj, path, name=None):
    data = export_fixture(obj, name)
    Path(path).write_text(json.dumps(data, indent=2, ensure_ascii=False) + '\n', encoding='utf-8')
    logger.info("wrote %s fixture %s to %s", data['kind'], data['name'], path)
    return data


def dimension(obj):
    kind = kind_of(obj)
    if kind == 'split_pair':
        return obj.amb.dim
    if kind == 'split_hopf_pair':
        return obj.B.dim
    return obj.dim if kind != 'que' else obj.space.dim


def list_fixtures():
    """Name, kind and dimension of every fixture in the fixture directories."""
    rows = []
    for directory in fixture_dirs():
        for path in sorted(directory.glob('*.json')):
            try:
                obj = load_fixture(str(path))
            except QuantisationError as e:
                logger.warning("skipping fixture %s: %s", path.name, e)
                continue
            rows.append({'name': path.stem, 'kind': kind_of(obj), 'dim': dimension(obj)})
    return rows
