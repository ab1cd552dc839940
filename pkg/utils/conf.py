from django.conf import settings

DEFAULTS = {
    'CFL': 0.4,
    'OUTPUT_DIR': 'out',
    'THREADS': 1,
    'CENSUS_LIMIT': 10 ** 6,
    'REALITY_TOLERANCE': 1e-9,
    'STABILITY_TOLERANCE': 1e-8,
    'CONDITION_LIMIT': 1e8,
}


def hyp_setting(name: str):
    """Reads a value from settings.HYPERBOLIZATION, falling back to DEFAULTS."""
    configured = getattr(settings, 'HYPERBOLIZATION', {})
    if name in configured:
        return configured[name]
    return DEFAULTS[name]
