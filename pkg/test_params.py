"""Parameter validation tests."""

# run these tests like:
#
#    python -m unittest test_params.py

import json
import os
import tempfile
from unittest import TestCase

from exc import AssumptionViolated, ParamsError
from params import (ExpVec, check_L, d_prime, default_L, in_CEB, is_free_over_center, load,
                    make_params, min_central_power, tensor_params, validate)


class ValidateTestCase(TestCase):
    """Tests for validate() and load()."""

    def setUp(self):
        """A valid two parameter file."""

        self.raw = {
            "n": 2,
            "eps": [[1, 2], [1, 4]],
            "beta": [[1, 2, 1, 2]],
            "mode": {"c_formal": False, "q_deformed": False, "formal_units": []},
        }

    def test_valid(self):
        """Does a well formed file give the expected parameters?"""

        P = validate(self.raw)
        self.assertEqual(P.n, 2)
        self.assertEqual(P.D, 4)
        self.assertEqual(P.d(2), 4)
        self.assertEqual(P.beta[0][1], (1, 2))
        # beta is skew-symmetric
        self.assertEqual(P.beta[1][0], (-1, 2))
        self.assertEqual(validate(P.to_json()), P)

    def test_epsilon_one(self):
        """d_j = 1 violates the standing assumption."""

        self.raw["eps"][0] = [0, 1]
        with self.assertRaises(AssumptionViolated) as cm:
            validate(self.raw)
        self.assertEqual(cm.exception.location, "eps[0]")

    def test_non_integer(self):
        """Strings are not integers; the location names the field."""

        self.raw["eps"][1] = [1, "4"]
        with self.assertRaises(ParamsError) as cm:
            validate(self.raw)
        self.assertEqual(cm.exception.location, "eps[1].d")

    def test_lowest_terms(self):
        self.raw["eps"][1] = [2, 4]
        with self.assertRaises(ParamsError):
            validate(self.raw)

    def test_wrong_length(self):
        self.raw["eps"].pop()
        with self.assertRaises(ParamsError) as cm:
            validate(self.raw)
        self.assertEqual(cm.exception.location, "eps")

    def test_skew_symmetry(self):
        """Entries given both ways must describe beta_21 = beta_12^-1."""

        # -1 = 1 mod 2, so [2, 1, 1, 2] is the same root as [2, 1, -1, 2]
        self.raw["beta"].append([2, 1, 1, 2])
        self.assertEqual(validate(self.raw).beta[0][1], (1, 2))
        self.raw["beta"][-1] = [2, 1, -1, 2]
        self.assertEqual(validate(self.raw).beta[0][1], (1, 2))

        self.raw["beta"] = [[1, 2, 1, 4], [2, 1, 3, 4]]
        self.assertEqual(validate(self.raw).beta[0][1], (1, 4))
        self.raw["beta"][-1] = [2, 1, 1, 4]
        with self.assertRaises(ParamsError):
            validate(self.raw)

    def test_beta_index_range(self):
        self.raw["beta"] = [[1, 3, 1, 2]]
        with self.assertRaises(ParamsError):
            validate(self.raw)

    def test_units(self):
        """Unit names must be fresh identifiers."""

        self.raw["mode"]["formal_units"] = ["u1", "u2"]
        self.assertEqual(validate(self.raw).mode.formal_units, ("u1", "u2"))
        for bad in (["c"], ["x1"], ["u1", "u1"], ["Bad"]):
            self.raw["mode"]["formal_units"] = bad
            with self.assertRaises(ParamsError):
                validate(self.raw)

    def test_load(self):
        """load() reports JSON syntax errors with a position."""

        with tempfile.TemporaryDirectory() as tmp:
            good = os.path.join(tmp, "good.json")
            with open(good, "w") as out:
                json.dump(self.raw, out)
            self.assertEqual(load(good).n, 2)

            bad = os.path.join(tmp, "bad.json")
            with open(bad, "w") as out:
                out.write('{"n": 1,\n "eps": [[1, 2]')
            with self.assertRaises(ParamsError) as cm:
                load(bad)
            self.assertIn("bad.json:2", cm.exception.location)


class ParamsArithmeticTestCase(TestCase):
    """Tests for freeness, central powers and C(E, B)."""

    def setUp(self):
        self.n1 = make_params([(1, 2)])
        self.free = make_params([(1, 2), (1, 4)], [(1, 2, 1, 2)])
        self.nonfree = make_params([(1, 2), (1, 2)], [(1, 2, 1, 4)])

    def test_freeness(self):
        self.assertTrue(is_free_over_center(self.n1))
        self.assertTrue(is_free_over_center(self.free))
        self.assertFalse(is_free_over_center(self.nonfree))
        self.assertFalse(is_free_over_center(make_params([(1, 2), (1, 3)])))

    def test_central_powers(self):
        """x_j^L and y_j^L are central exactly for the multiples computed here."""

        # eps_1 beta_12 = -1 * -1 = 1
        self.assertEqual(d_prime(self.free, 1, 2), 1)
        self.assertEqual(min_central_power(self.free, 1, "x"), 2)
        self.assertEqual(min_central_power(self.nonfree, 1, "y"), 4)
        self.assertEqual(default_L(self.free), (2, 4))
        self.assertEqual(check_L(self.n1, [4]), (4,))
        with self.assertRaises(ParamsError):
            check_L(self.n1, (3,))
        with self.assertRaises(ParamsError):
            check_L(self.n1, (2, 2))

    def test_in_CEB(self):
        """y^2 and y^2 x^2 are central for eps = -1, y x is not."""

        self.assertTrue(in_CEB(self.n1, ExpVec((2,), (0,))))
        self.assertTrue(in_CEB(self.n1, ExpVec((2,), (2,))))
        self.assertFalse(in_CEB(self.n1, ExpVec((1,), (1,))))
        self.assertFalse(in_CEB(self.n1, ExpVec((1,), (0,))))

    def test_tensor(self):
        """Tensor products put the factors in blocks."""

        P = tensor_params(self.n1, make_params([(1, 3)]))
        self.assertEqual(P.n, 2)
        self.assertEqual(P.D, 6)
        self.assertEqual(P.beta[0][1], (0, 1))

    def test_drop_first(self):
        P = self.free.drop_first()
        self.assertEqual(P.n, 1)
        self.assertEqual(P.eps, ((1, 4),))
