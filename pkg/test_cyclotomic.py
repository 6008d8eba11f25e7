"""Cyclotomic arithmetic tests."""

# run these tests like:
#
#    python -m unittest test_cyclotomic.py

from unittest import TestCase

from cyclotomic import CycElem, RootOfUnity, q_factorial, q_integer, ring_order
from exc import DescentError, OrderMismatchError


class CycElemTestCase(TestCase):
    """Tests for CycElem."""

    def setUp(self):
        """Primitive roots of small orders."""

        self.i = CycElem.root(4, 1)
        self.omega = CycElem.root(3, 1)

    def test_root_relations(self):
        """Do the roots satisfy their minimal polynomials?"""
        # i^2 = -1 and 1 + w + w^2 = 0
        self.assertEqual(self.i ** 2, -1)
        self.assertEqual(CycElem.root(4, 2), -1)
        self.assertEqual(self.omega + self.omega ** 2, -1)
        self.assertEqual(CycElem.root(5, 5), 1)

    def test_negative_root_powers(self):
        """Are negative powers taken modulo the order?"""

        self.assertEqual(CycElem.root(6, -1), CycElem.root(6, 5))
        self.assertEqual(self.i ** -1, CycElem.root(4, 3))

    def test_product_of_one_minus_roots(self):
        """Is prod_{i<d} (1 - e^i) = d?"""

        for d in range(2, 10):
            value = CycElem.one(d)
            for i in range(1, d):
                value = value * (1 - CycElem.root(d, i))
            self.assertEqual(value, d)

    def test_inverse(self):
        """Does inverse() give a two sided inverse?"""

        x = 1 - CycElem.root(5, 1)
        self.assertEqual(x * x.inverse(), 1)
        self.assertIsNone(CycElem.zero(5).inverse())
        # We are dividing by a nonzero rational
        self.assertEqual(CycElem.constant(3, 4) / 2, 2)

    def test_as_root_of_unity(self):
        """Are +-e^k recognized, and others rejected?"""

        self.assertEqual((-CycElem.root(6, 2)).as_root_of_unity(), RootOfUnity(1, 5))
        self.assertEqual((-CycElem.one(5)).as_root_of_unity(), RootOfUnity(-1, 0))
        self.assertIsNone(CycElem.constant(4, 2).as_root_of_unity())

    def test_embed_and_descend(self):
        """Do embedding and descent agree with e_D = e_T^(T/D)?"""

        self.assertEqual(CycElem.root(2, 1).embed(4), CycElem.root(4, 2))
        self.assertEqual(CycElem.root(12, 4).descend(3), self.omega)
        # i is not in Q(e_2) = Q
        with self.assertRaises(DescentError):
            self.i.descend(2)

    def test_order_mismatch(self):
        """Mixing orders without embedding should fail."""

        with self.assertRaises(OrderMismatchError):
            self.i + self.omega

    def test_integrality(self):
        self.assertTrue((self.omega * 3 + 1).is_integral())
        self.assertFalse((self.omega / 2).is_integral())

    def test_json(self):
        """Does to_json/from_json keep the value?"""

        x = 2 * self.omega - CycElem.constant(3, 1) / 3
        self.assertEqual(CycElem.from_json(x.to_json()), x)


class QNumbersTestCase(TestCase):
    """Tests for [k]_x and [k]_x!."""

    def test_q_integer(self):
        omega = CycElem.root(3, 1)
        # [3]_w = 1 + w + w^2 = 0
        self.assertTrue(q_integer(3, omega).is_zero())
        self.assertEqual(q_integer(2, omega), 1 + omega)

    def test_q_factorial(self):
        """[d-1]_e! is a unit times d / (1-e)^(d-1)."""

        omega = CycElem.root(3, 1)
        self.assertEqual(q_factorial(2, omega), -(omega ** 2))
        self.assertEqual(q_factorial(0, omega), 1)

    def test_ring_order(self):
        self.assertEqual(ring_order(2, 3, 4), 12)
        self.assertEqual(ring_order(), 1)
