"""Automorphism and isomorphism tests."""

# run these tests like:
#
#    python -m unittest test_autos.py

from itertools import product
from unittest import TestCase

from autos import (aut_group_shape, build_automorphism, classify_images, compose,
                   formal_automorphism, identity_spec, images, invert, isomorphic,
                   scalar_violations, transport_params, verify_homomorphism, z_image_check)
from cyclotomic import CycElem
from exc import IdentityViolation
from params import make_params


class IsomorphismTestCase(TestCase):
    """Tests for eps = e_3 and eps' = e_3^2."""

    def setUp(self):
        self.P = make_params([(1, 3)])
        self.Q = make_params([(2, 3)])

    def test_scalar_conditions(self):
        self.assertEqual(scalar_violations(self.P, self.Q, (-1,)), [])
        self.assertEqual(len(scalar_violations(self.P, self.Q, (1,))), 1)

    def test_isomorphic(self):
        """The search finds the swap; different orders are never isomorphic."""

        self.assertEqual(isomorphic(self.P, self.Q), (-1,))
        self.assertEqual(isomorphic(self.P, self.P), (1,))
        self.assertIsNone(isomorphic(self.P, make_params([(1, 4)])))
        self.assertIsNone(isomorphic(self.P, make_params([(1, 3), (1, 3)])))

    def test_explicit_swap(self):
        """x -> y', y -> -e^-1 x' satisfies x y - e y x = 1."""

        e = CycElem.root(3, 1)
        spec = build_automorphism(self.P, self.Q, (-1,), (1,), (-(e ** -1),))
        self.assertTrue(verify_homomorphism(spec))
        self.assertTrue(z_image_check(spec, 1))

    def test_bad_scalars(self):
        """mu nu must equal tau prod eps^-1."""

        with self.assertRaises(IdentityViolation) as cm:
            build_automorphism(self.P, self.Q, (-1,), (1,), (1,))
        self.assertEqual(cm.exception.location, (1, 1))
        with self.assertRaises(IdentityViolation):
            build_automorphism(self.P, self.Q, (1,), (1,), (1,))

    def test_formal(self):
        """mu = u_1 as a formal unit."""

        spec = formal_automorphism(self.P, self.Q, (-1,))
        self.assertTrue(verify_homomorphism(spec))
        self.assertEqual(spec.target.mode.formal_units, ("u1",))

    def test_inverse_and_compose(self):
        """phi^-1 o phi is the identity on generators."""

        e = CycElem.root(3, 1)
        spec = build_automorphism(self.P, self.Q, (-1,), (e,), (-(e ** -2),))
        back = invert(spec)
        self.assertTrue(verify_homomorphism(back))
        loop = compose(spec, back)
        self.assertEqual(loop.tau, (1,))
        tau, mu, nu = classify_images(images(loop), 1)
        self.assertEqual(tau, identity_spec(self.P).tau)
        self.assertTrue(all(m == 1 for m in loop.mu))
        self.assertTrue(all(v == 1 for v in loop.nu))


class TransportTestCase(TestCase):
    """Tests for transported parameters and the group shape."""

    def test_every_sign_pattern(self):
        """Every tau gives an isomorphism onto the transported parameters."""

        for P in (make_params([(1, 2), (1, 4)], [(1, 2, 1, 2)]),
                  make_params([(1, 3), (1, 3)], [(1, 2, 1, 3)])):
            for tau in product((1, -1), repeat=2):
                target = transport_params(P, tau)
                self.assertEqual(scalar_violations(P, target, tau), [])
                spec = formal_automorphism(P, target, tau)
                self.assertTrue(verify_homomorphism(spec), msg=f"{P!r} {tau}")
                for j in range(3):
                    self.assertTrue(z_image_check(spec, j))

    def test_shape(self):
        """A swap exists for eps_k = -1 with matching beta."""

        self.assertEqual(aut_group_shape(make_params([(1, 2)])).kind, "SemidirectZ2")
        self.assertEqual(aut_group_shape(make_params([(1, 3)])).kind, "Torus")
        shape = aut_group_shape(make_params([(1, 2), (1, 2)], [(1, 2, 1, 4)]))
        self.assertEqual(shape.kind, "SemidirectZ2")
        self.assertEqual(shape.k, 2)
        self.assertIn("k=2", shape.describe())
