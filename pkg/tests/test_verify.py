"""Test the identity verifier."""
from random import Random

from src.coeffring import DomainMismatch, Scalar
from src.identities import Family, registry
from src.verify import (
    SUITES,
    UnknownCase,
    cross_check,
    get_case,
    load_manifest,
    missing_manifest_cases,
    plucker_check,
    run_suite,
    verify_gamma_identity,
    verify_syzygy,
)
from tests.utils import WlpTestCase


class ManifestTests(WlpTestCase):
    """Identity manifest Unit Test ."""

    def test_every_display_is_registered(self):
        self.assertEqual(missing_manifest_cases(), [])

    def test_every_case_is_displayed(self):
        displayed = set(load_manifest().values())
        self.assertEqual(displayed, set(registry()))

    def test_missing_case_is_reported(self):
        path = self.temp_path("manifest.json")
        with open(path, "w") as f:
            f.write('{"version": 1, "displays": {"lost display": "NOT_A_CASE"}}')
        self.assertEqual(missing_manifest_cases(path), ["lost display"])


class VerifyTests(WlpTestCase):
    """verify Unit Test ."""

    def test_all_identities_hold(self):
        report = run_suite("all")
        self.assertTrue(report.passed, [r.case_id for r in report.results if not r.passed])
        self.assertEqual(report.to_dict()["failed"], 0)
        self.assertEqual(report.to_dict()["total"], len(registry()))

    def test_suites_partition_families(self):
        for suite, families in SUITES.items():
            report = run_suite(suite)
            self.assertTrue(all(Family(r.family) in families for r in report.results), suite)

    def test_single_case(self):
        report = run_suite(case_id="CUBE_X3Y")
        self.assertEqual([r.case_id for r in report.results], ["CUBE_X3Y"])
        self.assertEqual(report.to_dict()["cases"][0]["status"], "pass")

    def test_corrected_sign_is_flagged(self):
        result = verify_gamma_identity("SQUARE_X4")
        self.assertTrue(result.passed)
        self.assertFalse(result.printed_matches)
        self.assertEqual(result.printed, "a*c-b^2")
        self.assertFalse(result.to_dict()["printedMatches"])

    def test_syzygies(self):
        for case_id in ("CUBE_COMBINATION", "MINORS_21", "TERNARY_MINORS_A", "PLUCKER_2X4"):
            self.assertTrue(verify_syzygy(case_id).passed, case_id)

    def test_plucker_reports_unsigned_sum(self):
        result = verify_syzygy("PLUCKER_BORDER_234")
        self.assertTrue(result.passed)
        self.assertIn("unsignedSum", result.to_dict())

    def test_random_cross_check(self):
        rng = Random(3)
        for case_id in ("CUBE_X3Y", "TERNARY_XYZ", "PENCIL_Y4", "MINORS_23"):
            self.assertEqual(cross_check(get_case(case_id), rng, points=10), 0, case_id)
        result = verify_gamma_identity("CALC_XYZW", rng, points=5)
        self.assertEqual(result.random_failures, 0)

    def test_unknown_ids(self):
        with self.assertRaises(UnknownCase):
            get_case("NOT_A_CASE")
        with self.assertRaises(UnknownCase):
            verify_gamma_identity("MINORS_21")
        with self.assertRaises(UnknownCase):
            verify_syzygy("CUBE_X3Y")
        with self.assertRaises(KeyError):
            run_suite(case_id="NOT_A_CASE")
        with self.assertRaises(ValueError):
            run_suite("everything")


class PluckerTests(WlpTestCase):
    """plucker_check Unit Test ."""

    def matrix(self, domain, rows):
        return [[Scalar.of(domain, v) for v in row] for row in rows]

    def test_three_term_relation(self):
        Y = self.matrix(self.QQ, ([1, 2, 3, 4], [5, 6, 7, 9]))
        self.assertTrue(plucker_check(Y, (1,), (2, 3, 4)).is_zero())
        Y = self.matrix(self.GF7, ([3, 1, 4, 1, 5], [9, 2, 6, 5, 3], [5, 8, 9, 7, 9]))
        self.assertTrue(plucker_check(Y, (1, 2), (2, 3, 4, 5)).is_zero())

    def test_random_matrices(self):
        for _ in range(20):
            Y = self.matrix(self.QQ, [[self.rng.randint(-5, 5) for _ in range(6)] for _ in range(3)])
            self.assertTrue(plucker_check(Y, (1, 4), (2, 3, 5, 6)).is_zero())

    def test_validation(self):
        with self.assertRaises(ValueError):
            plucker_check([], (1,), (2, 3, 4))
        Y = self.matrix(self.QQ, ([1, 2, 3, 4], [5, 6, 7, 9]))
        with self.assertRaises(ValueError):
            plucker_check(Y, (1, 2), (2, 3, 4))
        with self.assertRaises(ValueError):
            plucker_check(Y, (1,), (2, 3, 5))
        mixed = [Y[0], [Scalar.of(self.GF7, v) for v in (5, 6, 7, 9)]]
        with self.assertRaises(DomainMismatch):
            plucker_check(mixed, (1,), (2, 3, 4))
