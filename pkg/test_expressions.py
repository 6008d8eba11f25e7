"""Element expression parser tests."""

# run these tests like:
#
#    python -m unittest test_expressions.py

from unittest import TestCase

from cyclotomic import CycElem
from exc import ExpressionError
from expressions import parse_element
from params import make_params
from weyl_core import algebra_for


class ParseElementTestCase(TestCase):
    """Tests for parse_element."""

    def setUp(self):
        self.A = algebra_for(make_params([(1, 3)]))
        self.x = self.A.x(1)
        self.y = self.A.y(1)

    def test_order_is_kept(self):
        """Generators do not commute: x1*y1 is not y1*x1."""

        self.assertEqual(parse_element("x1*y1", self.A), self.x * self.y)
        self.assertNotEqual(parse_element("x1*y1", self.A), parse_element("y1*x1", self.A))

    def test_scalars(self):
        """e is the primitive root of the coefficient ring."""

        e = CycElem.root(3, 1)
        u = parse_element("y1^2 - e*y1*x1 + 1/2*z1", self.A)
        expected = self.y ** 2 - (self.y * self.x).scale(e) + self.A.z(1).scale(CycElem(3, [1]) / 2)
        self.assertEqual(u, expected)
        self.assertEqual(parse_element("e^-1", self.A), self.A.scalar(CycElem.root(3, 2)))

    def test_powers(self):
        self.assertEqual(parse_element("(x1 + y1)^2", self.A), (self.x + self.y) ** 2)
        self.assertEqual(parse_element("2^-1*x1", self.A), self.x.scale(CycElem(3, [1]) / 2))

    def test_c_and_units(self):
        """c and formal units are commuting coefficients."""

        A = algebra_for(make_params([(1, 2)], c_formal=True, formal_units=("u1",)))
        u = parse_element("u1^-1*c*x1", A)
        coeff = A.variable("c") * A.variable("u1") ** -1
        self.assertEqual(u, A.x(1).scale(coeff))

    def test_errors(self):
        """Unknown names, bad powers and syntax errors are ExpressionError."""

        for text in ("x2", "q*x1", "x1^-1", "x1 +", "x1^(1/2)", "import os"):
            with self.assertRaises(ExpressionError, msg=text):
                parse_element(text, self.A)
