"""
Serializers for the fixture schema and the suite API.

Fixtures are JSON documents with a ``kind`` and a ``name``. Every map is a
list of entries ``{"inputs": [...labels], "outputs": [...labels], "c": ...}``
where ``c`` is a rational string or, for coefficients in Q[h]/(h^(N+1)), a
list of rational strings.
"""
from rest_framework import serializers

from .hopf import HopfAlgebra, SplitHopfPair
from .liebialg import LieBialgebra, SplitPair, validate_split_pair
from .multilinear import LinMap, Space
from .que import QUE
from .scalar import format_coefficient, parse_coefficient

KINDS = ('lie_bialgebra', 'split_pair', 'hopf_algebra', 'split_hopf_pair', 'que')
SUITES = (
    'validate', 'double', 'dy', 'bch', 'hopf', 'quantum-double', 'radford', 'que',
    'ek-twist', 'ek-quantise', 'all',
)


class CoefficientField(serializers.Field):
    """A rational string, or a list of them for a truncated series."""

    def to_internal_value(self, data):
        if isinstance(data, bool):
            raise serializers.ValidationError("Invalid coefficient")
        try:
            return parse_coefficient(data)
        except (TypeError, ValueError) as e:
            raise serializers.ValidationError(str(e))

    def to_representation(self, value):
        return format_coefficient(value)


class EntrySerializer(serializers.Serializer):
    """One nonzero entry of a map."""
    inputs = serializers.ListField(child=serializers.CharField(), allow_empty=True)
    outputs = serializers.ListField(child=serializers.CharField(), allow_empty=True)
    c = CoefficientField()


def entries_to_map(entries, domain, codomain):
    """Build a LinMap from validated entries, resolving labels on each leg."""
    values = {}
    for entry in entries:
        try:
            i = tuple(space.index(label) for space, label in zip(domain, entry['inputs']))
            o = tuple(space.index(label) for space, label in zip(codomain, entry['outputs']))
        except KeyError as e:
            raise serializers.ValidationError(str(e.args[0]))
        if len(i) != len(domain) or len(o) != len(codomain):
            raise serializers.ValidationError(
                f"entry {entry['inputs']} -> {entry['outputs']} does not match "
                f"{len(domain)} -> {len(codomain)} legs")
        values[(i, o)] = values.get((i, o), 0) + entry['c']
    return LinMap(domain, codomain, entries=values)


def map_to_entries(f):
    return [
        {
            'inputs': [str(space.labels[k]) for space, k in zip(f.domain, i)],
            'outputs': [str(space.labels[k]) for space, k in zip(f.codomain, o)],
            'c': format_coefficient(c),
        }
        for (i, o), c in sorted(f.entries.items())
    ]


class FixtureSerializer(serializers.Serializer):
    """Common fields; subclasses build the engine object in ``create``."""
    kind = serializers.ChoiceField(choices=KINDS)
    name = serializers.CharField()

    def __init__(self, *args, resolver=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.resolver = resolver

    def resolve(self, value, kind):
        """A nested fixture document or the name of another fixture."""
        if isinstance(value, str):
            if self.resolver is None:
                raise serializers.ValidationError(f"cannot resolve reference {value!r}")
            obj = self.resolver(value)
            if not isinstance(obj, FIXTURE_TYPES[kind]):
                raise serializers.ValidationError(f"{value!r} is not a {kind} fixture")
            return obj
        nested = SERIALIZERS[kind](data=value, resolver=self.resolver)
        nested.is_valid(raise_exception=True)
        return nested.save()

    def update(self, instance, validated_data):
        raise NotImplementedError("fixtures are immutable")


class LieBialgebraSerializer(FixtureSerializer):
    """A Lie bialgebra by bracket and cobracket entries."""
    labels = serializers.ListField(child=serializers.CharField(), allow_empty=True)
    bracket = EntrySerializer(many=True, required=False, default=list)
    cobracket = EntrySerializer(many=True, required=False, default=list)

    def validate_labels(self, value):
        if len(set(value)) != len(value):
            raise serializers.ValidationError("Basis labels must be distinct")
        return value

    def validate(self, data):
        if data['kind'] != 'lie_bialgebra':
            raise serializers.ValidationError("kind must be lie_bialgebra")
        space = Space(data['name'], tuple(data['labels']))
        data['space'] = space
        data['bracket_map'] = entries_to_map(data['bracket'], (space, space), (space,))
        data['cobracket_map'] = entries_to_map(data['cobracket'], (space,), (space, space))
        return data

    def create(self, validated_data):
        return LieBialgebra(validated_data['name'], validated_data['space'],
                            validated_data['bracket_map'], validated_data['cobracket_map'])

    def to_representation(self, instance):
        return {
            'kind': 'lie_bialgebra',
            'name': instance.name,
            'labels': [str(label) for label in instance.space.labels],
            'bracket': map_to_entries(instance.bracket),
            'cobracket': map_to_entries(instance.cobracket),
        }


class SplitPairSerializer(FixtureSerializer):
    """Maps i: a -> b and p: b -> a between two Lie bialgebras."""
    sub = serializers.JSONField()
    amb = serializers.JSONField()
    i = EntrySerializer(many=True, required=False, default=list)
    p = EntrySerializer(many=True, required=False, default=list)

    def validate(self, data):
        if data['kind'] != 'split_pair':
            raise serializers.ValidationError("kind must be split_pair")
        sub = self.resolve(data['sub'], 'lie_bialgebra')
        amb = self.resolve(data['amb'], 'lie_bialgebra')
        data['sub'], data['amb'] = sub, amb
        data['i_map'] = entries_to_map(data['i'], (sub.space,), (amb.space,))
        data['p_map'] = entries_to_map(data['p'], (amb.space,), (sub.space,))
        return data

    def create(self, validated_data):
        return validate_split_pair(validated_data['sub'], validated_data['amb'],
                                   validated_data['i_map'], validated_data['p_map'])

    def to_representation(self, instance):
        return {
            'kind': 'split_pair',
            'name': instance.name,
            'sub': LieBialgebraSerializer(instance.sub).data,
            'amb': LieBialgebraSerializer(instance.amb).data,
            'i': map_to_entries(instance.i),
            'p': map_to_entries(instance.p),
        }


class HopfAlgebraSerializer(FixtureSerializer):
    """A Hopf algebra by structure constants; ``grades`` is optional."""
    labels = serializers.ListField(child=serializers.CharField())
    grades = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False, allow_null=True)
    product = EntrySerializer(many=True)
    unit = EntrySerializer(many=True)
    coproduct = EntrySerializer(many=True)
    counit = EntrySerializer(many=True)
    antipode = EntrySerializer(many=True)
    expected_kind = 'hopf_algebra'

    def validate(self, data):
        if data['kind'] != self.expected_kind:
            raise serializers.ValidationError(f"kind must be {self.expected_kind}")
        grades = data.get('grades')
        if grades is not None and len(grades) != len(data['labels']):
            raise serializers.ValidationError("grades do not match labels")
        if len(set(data['labels'])) != len(data['labels']):
            raise serializers.ValidationError("Basis labels must be distinct")
        B = Space(data['name'], tuple(data['labels']), tuple(grades) if grades is not None else None)
        data['hopf'] = HopfAlgebra(
            data['name'], B,
            entries_to_map(data['product'], (B, B), (B,)),
            entries_to_map(data['unit'], (), (B,)),
            entries_to_map(data['coproduct'], (B,), (B, B)),
            entries_to_map(data['counit'], (B,), ()),
            entries_to_map(data['antipode'], (B,), (B,)),
        )
        return data

    def create(self, validated_data):
        return validated_data['hopf']

    @staticmethod
    def hopf_fields(h):
        data = {
            'name': h.name,
            'labels': [str(label) for label in h.space.labels],
            'product': map_to_entries(h.m),
            'unit': map_to_entries(h.unit),
            'coproduct': map_to_entries(h.Delta),
            'counit': map_to_entries(h.counit),
            'antipode': map_to_entries(h.S),
        }
        if h.space.grades is not None:
            data['grades'] = list(h.space.grades)
        return data

    def to_representation(self, instance):
        return {'kind': 'hopf_algebra', **self.hopf_fields(instance)}


class SplitHopfPairSerializer(FixtureSerializer):
    """Hopf maps i: A -> B and p: B -> A."""
    A = serializers.JSONField()
    B = serializers.JSONField()
    i = EntrySerializer(many=True)
    p = EntrySerializer(many=True)

    def validate(self, data):
        if data['kind'] != 'split_hopf_pair':
            raise serializers.ValidationError("kind must be split_hopf_pair")
        A = self.resolve(data['A'], 'hopf_algebra')
        B = self.resolve(data['B'], 'hopf_algebra')
        data['A'], data['B'] = A, B
        data['i_map'] = entries_to_map(data['i'], (A.space,), (B.space,))
        data['p_map'] = entries_to_map(data['p'], (B.space,), (A.space,))
        return data

    def create(self, validated_data):
        return SplitHopfPair(validated_data['A'], validated_data['B'],
                             validated_data['i_map'], validated_data['p_map'])

    def to_representation(self, instance):
        return {
            'kind': 'split_hopf_pair',
            'name': instance.name,
            'A': HopfAlgebraSerializer(instance.A).data,
            'B': HopfAlgebraSerializer(instance.B).data,
            'i': map_to_entries(instance.i),
            'p': map_to_entries(instance.p),
        }


class QUESerializer(HopfAlgebraSerializer):
    """A truncated QUE: a graded Hopf algebra over Q[h]/(h^(N+1)) with its classical limit."""
    classical = serializers.JSONField()
    degree_cap = serializers.IntegerField(min_value=0)
    generators = serializers.ListField(child=serializers.CharField(), allow_empty=True)
    expected_kind = 'que'

    def validate(self, data):
        data = super().validate(data)
        classical = self.resolve(data['classical'], 'lie_bialgebra')
        if len(data['generators']) != classical.dim:
            raise serializers.ValidationError("one generator is needed per basis vector of the classical limit")
        try:
            data['generator_indices'] = tuple(data['hopf'].space.index(g) for g in data['generators'])
        except KeyError as e:
            raise serializers.ValidationError(str(e.args[0]))
        data['classical'] = classical
        return data

    def create(self, validated_data):
        return QUE(validated_data['hopf'], validated_data['classical'], validated_data['degree_cap'],
                   validated_data['generator_indices'])

    def to_representation(self, instance):
        h = instance.hopf
        return {
            'kind': 'que',
            **self.hopf_fields(h),
            'classical': LieBialgebraSerializer(instance.classical).data,
            'degree_cap': instance.degree_cap,
            'generators': [str(h.space.labels[g]) for g in instance.generators],
        }


SERIALIZERS = {
    'lie_bialgebra': LieBialgebraSerializer,
    'split_pair': SplitPairSerializer,
    'hopf_algebra': HopfAlgebraSerializer,
    'split_hopf_pair': SplitHopfPairSerializer,
    'que': QUESerializer,
}


FIXTURE_TYPES = {
    'lie_bialgebra': LieBialgebra,
    'split_pair': SplitPair,
    'hopf_algebra': HopfAlgebra,
    'split_hopf_pair': SplitHopfPair,
    'que': QUE,
}


class SuiteRunSerializer(serializers.Serializer):
    """Body of POST /api/v1/suites/run/."""
    suite = serializers.ChoiceField(choices=SUITES)
    fixture = serializers.CharField()
    hbar_order = serializers.IntegerField(min_value=0, max_value=2, required=False)
    degree_cap = serializers.IntegerField(min_value=1, max_value=6, required=False)
    seed = serializers.IntegerField(required=False)
    timings = serializers.BooleanField(default=False)


class FixtureSummarySerializer(serializers.Serializer):
    """Row of GET /api/v1/fixtures/."""
    name = serializers.CharField()
    kind = serializers.CharField()
    dim = serializers.IntegerField()
