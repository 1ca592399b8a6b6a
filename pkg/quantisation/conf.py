"""
Access to the engine defaults stored in ``settings.EK_QUANTISATION``.
"""
from fractions import Fraction

from django.conf import settings

DEFAULTS = {
    'HBAR_ORDER': 1,
    'DEGREE_CAP': 2,
    'ASSOCIATOR_C2': '1/24',
    'SEED': 0,
    'MUTATIONS': 100,
    'FIXTURE_DIRS': [],
    'ANTIPODE_MAX_TERMS': 12,
    'DY_ENUMERATION_MAX_DIM': 3,
    'DY_ENUMERATION_ROUNDS': 2,
}


def get_setting(name):
    """Return the effective value of an engine setting."""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown engine setting: {name}")
    configured = getattr(settings, 'EK_QUANTISATION', {})
    return configured.get(name, DEFAULTS[name])


def associator_c2():
    """Coefficient of the hbar^2 commutator term of the associator."""
    return Fraction(str(get_setting('ASSOCIATOR_C2')))
