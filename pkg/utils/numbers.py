"""
Deterministic number formatting for CSV and JSON artifacts.
"""
import math
from typing import Union

Number = Union[int, float, complex]


def format_float(value: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    value = float(value)
    if value == 0.0:
        # -0.0 and 0.0 must print identically
        return '0.0'
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return repr(value)


def json_number(value: float):
    """Integer-valued floats become ints so integer matrices stay integer in JSON."""
    value = float(value)
    if value.is_integer():
        return int(value)
    return value
