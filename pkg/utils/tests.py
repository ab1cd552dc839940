import numpy as np
from django.test import SimpleTestCase


class NumericTestCase(SimpleTestCase):
    """Base test case with array assertions for numerical services."""

    def assertAllClose(self, actual, expected, rtol=1e-12, atol=1e-12, msg=None):
        actual = np.asarray(actual)
        expected = np.asarray(expected)
        self.assertEqual(actual.shape, expected.shape, msg)
        if not np.allclose(actual, expected, rtol=rtol, atol=atol):
            worst = np.max(np.abs(actual - expected))
            self.fail(msg or f"arrays differ: max |difference| = {worst!r}")

    def assertBetween(self, value, low, high, msg=None):
        if not low <= value <= high:
            self.fail(msg or f"{value!r} not in [{low!r}, {high!r}]")

    def assertStrictlyDecreasing(self, values, msg=None):
        values = list(values)
        for previous, current in zip(values, values[1:]):
            if not current < previous:
                self.fail(msg or f"sequence not strictly decreasing: {values!r}")

    def assertSameSpectrum(self, actual, expected, atol=1e-10, rtol=0.0, msg=None):
        """Multiset equality of complex values, matched greedily by nearest neighbour."""
        remaining = list(np.asarray(actual, dtype=complex))
        expected = list(np.asarray(expected, dtype=complex))
        self.assertEqual(len(remaining), len(expected), msg)
        for value in expected:
            distances = [abs(candidate - value) for candidate in remaining]
            nearest = int(np.argmin(distances))
            if distances[nearest] > atol + rtol * abs(value):
                self.fail(msg or f"{value!r} not found in spectrum {remaining!r}")
            remaining.pop(nearest)
