"""Acceptance runner tests."""

# run these tests like:
#
#    python -m unittest test_acceptance.py

from unittest import TestCase

from acceptance import CRITERIA, run_acceptance


class AcceptanceTestCase(TestCase):
    """Tests for run_acceptance in quick mode."""

    def test_quick_run(self):
        """Every criterion passes on the small instances."""

        results = run_acceptance(seed=0, quick=True)
        self.assertEqual([r.number for r in results], list(range(1, 11)))
        for result in results:
            self.assertTrue(result.passed, msg=result.to_json())

    def test_only(self):
        results = run_acceptance(quick=True, only={1, 10})
        self.assertEqual([r.number for r in results], [1, 10])
        self.assertEqual(results[0].to_json()["details"], [])

    def test_numbering(self):
        self.assertEqual(len(CRITERIA), 10)
