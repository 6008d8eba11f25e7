"""Trace and discriminant tests."""

# run these tests like:
#
#    python -m unittest test_discriminant.py

from unittest import TestCase
from unittest.mock import patch

from center import center_variable
from discriminant import (c_basis, discriminant, eta_alternate, eta_value, internal_trace,
                          leading_form, leading_form_check, regular_representation,
                          theorem_71_rhs, theorem_b_rhs, trace_matrix, verify_discriminant)
from exc import DescentError, FreenessError, ModeMismatchError, ParamsError
from generator.helpers import get_rng, random_homogeneous
from params import make_params
from polyring import is_associate
from weyl_core import algebra_for, grading_degree


class TraceTestCase(TestCase):
    """Tests for the regular representation and the internal trace, eps = -1."""

    def setUp(self):
        """Basis 1, x, y, y x over C = Z[x^2, y^2]."""

        self.P = make_params([(1, 2)])
        self.A = algebra_for(self.P)
        self.basis = c_basis(self.P)
        self.X = center_variable(self.P, "X1").poly
        self.Y = center_variable(self.P, "Y1").poly

    def test_basis(self):
        self.assertEqual(self.basis.size, 4)
        self.assertEqual(c_basis(self.P, (4,)).size, 16)
        with self.assertRaises(ParamsError):
            c_basis(self.P, (3,))

    def test_traces(self):
        """tr(1) = 4, tr(y x) = 2, tr(x^2) = 4 X, tr(x) = 0."""

        A, basis = self.A, self.basis
        self.assertEqual(internal_trace(A.one(), basis).poly, 4)
        self.assertEqual(internal_trace(A.y(1) * A.x(1), basis).poly, 2)
        self.assertEqual(internal_trace(A.x(1) ** 2, basis).poly, self.X.scale(4))
        self.assertTrue(internal_trace(A.x(1), basis).poly.is_zero())

    def test_trace_is_matrix_trace(self):
        """The memoized trace agrees with the trace of the regular representation."""

        A, basis = self.A, self.basis
        u = A.y(1) * A.x(1) * A.y(1) * A.x(1) + 3 * A.x(1) ** 2
        self.assertEqual(regular_representation(u, basis).trace(), internal_trace(u, basis).poly)

    def test_off_lattice_traces_vanish(self):
        """Homogeneous u of degree not in L Z^n has a zero diagonal; so has tr(u v)."""

        P = make_params([(1, 3)])
        A = algebra_for(P)
        basis = c_basis(P)
        L = basis.L
        rng = get_rng(11)

        def off_lattice(degree):
            return any(g % Lj for g, Lj in zip(degree, L))

        checked = 0
        for _ in range(200):
            u = random_homogeneous(A, rng)
            v = random_homogeneous(A, rng)
            if u.is_zero() or v.is_zero():
                continue
            du, dv = grading_degree(u), grading_degree(v)
            if off_lattice(du):
                checked += 1
                rep = regular_representation(u, basis)
                for i in range(rep.size):
                    self.assertTrue(rep[i, i].is_zero())
            if off_lattice(tuple(a + b for a, b in zip(du, dv))):
                self.assertTrue(internal_trace(u * v, basis).poly.is_zero())
        self.assertGreater(checked, 0)

    def test_discriminant(self):
        """d(A/C) = -16 (1 - 4 Y X)^2."""

        expected = (1 - (self.Y * self.X).scale(4)) ** 2
        self.assertEqual(discriminant(self.P).poly, expected.scale(-16))
        matrix = trace_matrix(self.P, self.basis)
        self.assertEqual(matrix[0, 3], 2)

    def test_conventions(self):
        """The x-first basis gives an associate discriminant."""

        for P in (self.P, make_params([(1, 3)])):
            first = discriminant(P).poly
            second = discriminant(P, convention="x-first").poly
            self.assertIsNotNone(is_associate(first, second))


class ClosedFormTestCase(TestCase):
    """Tests for the closed forms and their verification."""

    def test_eta(self):
        """The two expressions for eta agree."""

        for eps in ([(1, 2)], [(1, 3)], [(2, 5)], [(1, 6)], [(1, 2), (1, 4)]):
            P = make_params(eps)
            self.assertEqual(eta_value(P), eta_alternate(P))
        self.assertEqual(eta_value(make_params([(1, 2)])), 16)

    def test_closed_form_n1(self):
        for eps in ((1, 2), (1, 3)):
            report = verify_discriminant(make_params([eps]))
            self.assertTrue(report.passed, msg=report.to_json())
            self.assertTrue(report.certified)
            self.assertEqual(report.lam, eps[1] ** 2)

    def test_closed_form_n2(self):
        """n = 2 with eps = (-1, -1) and beta_12 = -1."""

        P = make_params([(1, 2), (1, 2)], [(1, 2, 1, 2)])
        report = verify_discriminant(P)
        self.assertTrue(report.passed, msg=report.to_json())
        self.assertEqual(report.lam, 16)

    def test_closed_form_needs_L_equal_d(self):
        with self.assertRaises(ParamsError):
            verify_discriminant(make_params([(1, 2)]), (4,))

    def test_closed_form_needs_freeness(self):
        with self.assertRaises(FreenessError):
            theorem_b_rhs(make_params([(1, 2), (1, 3)]))

    def test_recursive_formula_n1(self):
        """16 (c^2 - 4 Y X)^2 for eps = -1, L = 2."""

        P = make_params([(1, 2)], c_formal=True)
        c = center_variable(P, "c").poly
        X, Y = center_variable(P, "X1").poly, center_variable(P, "Y1").poly
        expected = (c ** 2 - (Y * X).scale(4)) ** 2
        self.assertEqual(theorem_71_rhs(P).poly, expected.scale(16))
        report = verify_discriminant(P, (2,), which="theorem-71")
        self.assertTrue(report.passed, msg=report.to_json())

    def test_recursive_formula_L4(self):
        """L = 4 for eps = -1 is still a polynomial in c^4."""

        P = make_params([(1, 2)], c_formal=True)
        report = verify_discriminant(P, (4,), which="theorem-71")
        self.assertTrue(report.passed, msg=report.to_json())
        self.assertEqual(report.lam, 16)

    def test_recursive_formula_needs_c(self):
        with self.assertRaises(ModeMismatchError):
            theorem_71_rhs(make_params([(1, 2)]))

    def test_leading_form(self):
        """The top degree part is Lambda^Lambda (X Y)^(Lambda (L - 1) / L) up to a unit."""

        P = make_params([(1, 3)])
        self.assertIsNotNone(leading_form_check(discriminant(P), P))

    def test_leading_form_n2(self):
        """With two pairs the top part is a single monomial."""

        for beta in ([], [(1, 2, 1, 2)]):
            P = make_params([(1, 2), (1, 2)], beta)
            d = discriminant(P)
            self.assertEqual(len(leading_form(d).terms), 1)
            self.assertIsNotNone(leading_form_check(d, P))

    def test_closed_form_errors_are_reported(self):
        """A closed form that fails to descend ends up in the report."""

        P = make_params([(1, 2)], c_formal=True)
        failure = DescentError("not in the base cyclotomic ring")
        with patch("discriminant.theorem_71_rhs", side_effect=failure):
            report = verify_discriminant(P, (2,), which="theorem-71")
        self.assertFalse(report.passed)
        self.assertIn("base cyclotomic ring", report.error)
        self.assertEqual(report.to_json()["rhs"], "")
