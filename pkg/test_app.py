"""Command line tests."""

# run these tests like:
#
#    python -m unittest test_app.py

import json
import os
import shutil
import tempfile
from unittest import TestCase
from unittest.mock import patch

from click.testing import CliRunner

from app import cli
from exc import NotDivisibleError


class CliTestCase(TestCase):
    """Tests for the commands of app.py."""

    def setUp(self):
        """Write a few parameter files into a scratch directory."""

        self.tmp = tempfile.mkdtemp()
        self.runner = CliRunner(mix_stderr=False)
        self.n1_d2 = self.write("n1_d2.json", {"n": 1, "eps": [[1, 2]]})
        self.n1_d3 = self.write("n1_d3.json", {"n": 1, "eps": [[1, 3]]})
        self.n1_d3_dual = self.write("n1_d3_dual.json", {"n": 1, "eps": [[2, 3]]})

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def write(self, name, data):
        path = os.path.join(self.tmp, name)
        with open(path, "w") as out:
            if isinstance(data, str):
                out.write(data)
            else:
                json.dump(data, out)
        return path

    def run_cli(self, *args):
        return self.runner.invoke(cli, list(args))

    def test_validate(self):
        result = self.run_cli("validate", "--params", self.n1_d2)
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertEqual(report["D"], 2)
        self.assertTrue(report["free_over_center"])

    def test_validate_rejects_trivial_root(self):
        """d_j = 1 is an input error."""

        path = self.write("bad.json", {"n": 1, "eps": [[0, 1]]})
        result = self.run_cli("validate", "--params", path)
        self.assertEqual(result.exit_code, 2)
        self.assertIn("eps[0]", result.stderr)

    def test_malformed_json(self):
        path = self.write("broken.json", '{"n": 1,')
        result = self.run_cli("validate", "--params", path)
        self.assertEqual(result.exit_code, 2)

    def test_is_central(self):
        result = self.run_cli("is-central", "--params", self.n1_d2, "y1^2")
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertTrue(report["central"])
        self.assertEqual(report["center_poly"], "Y1")

        result = self.run_cli("is-central", "--params", self.n1_d2, "y1*x1")
        self.assertFalse(json.loads(result.output)["central"])

    def test_text_format(self):
        result = self.run_cli("--format", "text", "is-central", "--params", self.n1_d2, "x1^2")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("central: true", result.output)

    def test_bad_expression(self):
        result = self.run_cli("is-central", "--params", self.n1_d2, "w7")
        self.assertEqual(result.exit_code, 2)

    def test_center_basis(self):
        result = self.run_cli("center-basis", "--params", self.n1_d2, "--bound", "4", "--scan")
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertEqual(len(report["basis"]), 6)
        self.assertTrue(report["scan"]["agrees"])

    def test_discriminant(self):
        result = self.run_cli("discriminant", "--params", self.n1_d2)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.output)["lambda"], 4)

        result = self.run_cli("discriminant", "--params", self.n1_d2, "--L", "3")
        self.assertEqual(result.exit_code, 2)

    def test_verify_closed_form(self):
        """eps = -1: associate, Lambda = 4."""

        result = self.run_cli("verify", "--params", self.n1_d2, "--which", "theorem-b")
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertTrue(report["associate"])
        self.assertTrue(report["certified"])
        self.assertEqual(report["lambda"], 4)

    def test_verify_recursive_formula(self):
        result = self.run_cli("verify", "--params", self.n1_d2, "--which", "theorem-71")
        self.assertEqual(result.exit_code, 0)

    def test_verify_specz(self):
        result = self.run_cli("verify", "--params", self.n1_d3, "--which", "specz")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.output)["results"], {"z1": True})

    def test_poisson(self):
        result = self.run_cli("poisson", "--params", self.n1_d2)
        self.assertEqual(result.exit_code, 0)
        self.assertIn("{X1,Y1}", json.loads(result.output)["brackets"])

        result = self.run_cli("poisson", "--params", self.n1_d2, "x1^2", "y1^2")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.output)["bracket"], "-4*X1*Y1 + 1")

        result = self.run_cli("poisson", "--params", self.n1_d2, "x1", "y1^2")
        self.assertEqual(result.exit_code, 2)

    def test_aut_check(self):
        """omega -> omega^2 needs the swap."""

        result = self.run_cli("aut-check", "--params", self.n1_d3, "--params2", self.n1_d3_dual)
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertTrue(report["isomorphism"])
        self.assertEqual(report["map"]["tau"], [-1])

        result = self.run_cli("aut-check", "--params", self.n1_d3, "--params2", self.n1_d3_dual,
                              "--tau", "1")
        self.assertEqual(result.exit_code, 1)

    def test_aut_check_spec(self):
        spec = self.write("swap.json", {"tau": [-1], "mu": ["u1"], "nu": ["-e^-1*u1^-1"],
                                        "units": ["u1"]})
        result = self.run_cli("aut-check", "--params", self.n1_d3, "--params2", self.n1_d3_dual,
                              "--spec", spec)
        self.assertEqual(result.exit_code, 0)

        wrong = self.write("wrong.json", {"tau": [-1], "mu": ["1"], "nu": ["1"]})
        result = self.run_cli("aut-check", "--params", self.n1_d3, "--params2", self.n1_d3_dual,
                              "--spec", wrong)
        self.assertEqual(result.exit_code, 1)
        self.assertEqual(json.loads(result.output)["location"], [1, 1])

    def test_isomorphic(self):
        result = self.run_cli("isomorphic", "--params", self.n1_d3, "--params2", self.n1_d3_dual)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.output)["tau"], [-1])

    def test_acceptance(self):
        result = self.run_cli("acceptance", "--quick", "--only", "1,4")
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertEqual([c["number"] for c in report["criteria"]], [1, 4])

    def test_computation_error(self):
        """A failed exact division is reported, not raised."""

        failure = NotDivisibleError("polynomial does not vanish at q = e")
        with patch("app.poisson_bracket", side_effect=failure):
            result = self.run_cli("poisson", "--params", self.n1_d2, "x1^2", "y1^2")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("does not vanish", result.stderr)

    def test_missing_file(self):
        result = self.run_cli("validate", "--params", os.path.join(self.tmp, "nope.json"))
        self.assertEqual(result.exit_code, 2)
