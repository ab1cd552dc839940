from unittest import mock

from apps.construction.services.census import CandidateVerdict
from apps.construction.services.permutations import SignedPermutation
from apps.construction.services.systems import stable_permutation
from apps.harness.serializers.reports import CensusReportSerializer
from apps.harness.services.census import census, resolve_sigma0
from utils.tests import NumericTestCase


class CensusTests(NumericTestCase):
    """Tests for the census report."""

    def test_small_orders(self):
        """Test totals and a unique stable candidate matching the closed form for m = 2..5."""
        reports = census([2, 3, 4, 5])
        self.assertEqual([report.total_candidates for report in reports], [2, 8, 48, 384])
        for report in reports:
            self.assertEqual(report.full_pass, 1)
            self.assertTrue(report.matches_formula)
            self.assertGreaterEqual(report.low_k_pass, report.full_pass)
            self.assertGreaterEqual(report.high_k_pass, report.full_pass)

    def test_sign_rule(self):
        """Test the sign used for each order."""
        self.assertEqual(resolve_sigma0(2, 'required'), -1)
        self.assertEqual(resolve_sigma0(4, 'required'), 1)
        self.assertEqual(resolve_sigma0(3, 'required'), 1)
        self.assertEqual(resolve_sigma0(3, -1), -1)

    def test_document(self):
        """Test the census document for m = 3."""
        data = CensusReportSerializer(census([3])[0]).data
        self.assertEqual(data['total_candidates'], 8)
        self.assertEqual(data['full_pass'], 1)
        self.assertEqual(data['unique_stable']['dense'], stable_permutation(3, 1).dense().tolist())
        self.assertTrue(data['matches_formula'])

    def test_full_pass_needs_every_verdict(self):
        """Test that a candidate passing only the sampled check is not counted as stable."""
        verdicts = [
            CandidateVerdict(stable_permutation(3, 1), low_k=True, high_k=True, full=True),
            CandidateVerdict(SignedPermutation((0, 1), (1, 1)), low_k=False, high_k=True, full=True),
        ]
        with mock.patch('apps.harness.services.census.enumerate_candidates', return_value=verdicts):
            report = census([3])[0]
        self.assertEqual(report.total_candidates, 2)
        self.assertEqual(report.low_k_pass, 1)
        self.assertEqual(report.high_k_pass, 2)
        self.assertEqual(report.full_pass, 1)
        self.assertLessEqual(report.full_pass, min(report.low_k_pass, report.high_k_pass))
        self.assertTrue(report.matches_formula)
