"""Isomorphisms x_j -> mu_j x'_j or mu_j y'_j between quantized Weyl algebras.

A sign pattern tau with unit scalars mu, nu defines

    tau_j = +1:  x_j -> mu_j x'_j,  y_j -> nu_j y'_j
    tau_j = -1:  x_j -> mu_j y'_j,  y_j -> nu_j x'_j

and it extends to an isomorphism exactly when

    eps'_j = eps_j^tau_j,
    beta'_jk = beta_jk^tau_j if tau_k = 1, else (eps_j beta_jk)^(-tau_j)   (j < k),
    mu_j nu_j = tau_j prod_{k <= j, tau_k = -1} eps_k^(-1).

Roots of unity are compared as fractions modulo 1.
"""

import logging
from itertools import product
from typing import NamedTuple, Optional

from sympy import Rational

from cyclotomic import CycElem, ring_order
from exc import IdentityViolation
from params import is_free_over_center, validate
from weyl_core import apply_generator_images, algebra_for, filtration_degree

logger = logging.getLogger(__name__)


class AutSpec(NamedTuple):
    source: object
    target: object
    tau: tuple
    mu: tuple
    nu: tuple

    @property
    def order(self):
        return ring_order(self.source.D, self.target.D)

    def to_json(self):
        return {"tau": list(self.tau),
                "mu": [str(m) for m in self.mu],
                "nu": [str(v) for v in self.nu]}


def _same_root(first, second):
    return (first - second).is_integer


def scalar_violations(source, target, tau):
    """(j, k, message) for every failed root-of-unity condition; (j, j) for eps."""

    failures = []
    if source.n != target.n:
        return [(0, 0, f"n = {source.n} but n' = {target.n}")]
    for j in range(1, source.n + 1):
        if not _same_root(target.eps_fraction(j), tau[j - 1] * source.eps_fraction(j)):
            failures.append((j, j, f"eps'_{j} != eps_{j}^{tau[j - 1]}"))
    for j in range(1, source.n + 1):
        for k in range(j + 1, source.n + 1):
            beta = source.beta_fraction(j, k)
            if tau[k - 1] == 1:
                expected = tau[j - 1] * beta
            else:
                expected = -tau[j - 1] * (source.eps_fraction(j) + beta)
            if not _same_root(target.beta_fraction(j, k), expected):
                failures.append((j, k, f"beta'_{j}{k} does not match"))
    return failures


def _root(P, j, order):
    m, d = P.eps[j - 1]
    return CycElem.root(order, order * m // d)


def product_target(source, tau, j, order):
    """tau_j prod_{k <= j, tau_k = -1} eps_k^(-1)."""

    value = CycElem.constant(order, tau[j - 1])
    for k in range(1, j + 1):
        if tau[k - 1] == -1:
            value = value * _root(source, k, order).inverse()
    return value


def _algebras(spec):
    R = spec.order
    return algebra_for(spec.source, R), algebra_for(spec.target, R)


def build_automorphism(source, target, tau, mu, nu):
    """Validate the identities and return the AutSpec; IdentityViolation otherwise."""

    tau = tuple(tau)
    if len(tau) != source.n or any(t not in (1, -1) for t in tau):
        raise IdentityViolation(f"tau must be {source.n} signs")
    failures = scalar_violations(source, target, tau)
    if failures:
        j, k, message = failures[0]
        raise IdentityViolation(message, (j, k))
    R = ring_order(source.D, target.D)
    algebra = algebra_for(target, R)
    mu = tuple(algebra.coefficient(m) for m in mu)
    nu = tuple(algebra.coefficient(v) for v in nu)
    for j in range(1, source.n + 1):
        expected = algebra.coefficient(product_target(source, tau, j, R))
        if mu[j - 1] * nu[j - 1] != expected:
            raise IdentityViolation(f"mu_{j} nu_{j} != {expected}", (j, j))
    spec = AutSpec(source, target, tau, mu, nu)
    logger.debug("accepted tau=%s", tau)
    return spec


def identity_spec(P):
    return build_automorphism(P, P, (1,) * P.n, (1,) * P.n, (1,) * P.n)


def formal_automorphism(source, target, tau, names=None):
    """mu_j = u_j formal units and nu_j fixed by the product identity."""

    names = tuple(names or (f"u{j}" for j in range(1, source.n + 1)))
    units = tuple(target.mode.formal_units) + tuple(
        name for name in names if name not in target.mode.formal_units)
    target = target.with_mode(formal_units=units)
    R = ring_order(source.D, target.D)
    algebra = algebra_for(target, R)
    mu, nu = [], []
    for j, name in enumerate(names, start=1):
        unit = algebra.variable(name)
        mu.append(unit)
        nu.append(unit.inverse_monomial().scale(product_target(source, tuple(tau), j, R)))
    return build_automorphism(source, target, tau, mu, nu)


def images(spec):
    _, target = _algebras(spec)
    result = {}
    for j, t in enumerate(spec.tau, start=1):
        x_image, y_image = ("x", "y") if t == 1 else ("y", "x")
        result[("x", j)] = target.generator(x_image, j).scale(spec.mu[j - 1])
        result[("y", j)] = target.generator(y_image, j).scale(spec.nu[j - 1])
    return result


def apply_map(spec, u):
    """phi(u) for an element of the source algebra."""

    _, target = _algebras(spec)
    return apply_generator_images(u, images(spec), target)


def relation_residues(spec):
    """(name, phi(lhs - rhs)) for every defining relation of the source."""

    source_alg, target = _algebras(spec)
    P = spec.source
    phi = images(spec)

    def x(j):
        return phi[("x", j)]

    def y(j):
        return phi[("y", j)]

    def scalar(j, k=None):
        value = source_alg.eps(j) if k is None else source_alg.beta(j, k)
        return target.coefficient(value.constant_value())

    residues = []
    z = target.c() if P.mode.c_formal else target.one()
    for j in range(1, P.n + 1):
        residues.append((f"x{j}y{j}", x(j) * y(j) - y(j) * x(j) * scalar(j) - z))
        z = z + y(j) * x(j) * (scalar(j) - target.coefficient(1))
        for k in range(j + 1, P.n + 1):
            residues.append((f"y{j}y{k}", y(j) * y(k) - y(k) * y(j) * scalar(j, k)))
            residues.append((f"x{j}x{k}", x(j) * x(k) - x(k) * x(j) * (scalar(j) * scalar(j, k))))
            residues.append((f"x{j}y{k}", x(j) * y(k) - y(k) * x(j) * scalar(k, j)))
            residues.append((f"x{k}y{j}", x(k) * y(j) - y(j) * x(k) * (scalar(j) * scalar(j, k))))
    return residues


def verify_homomorphism(spec):
    """Every defining relation maps to zero."""

    for name, residue in relation_residues(spec):
        if not residue.is_zero():
            logger.info("relation %s fails: %s", name, residue)
            return False
    return True


def invert(spec):
    """The inverse isomorphism target -> source."""

    mu, nu = [], []
    for j, t in enumerate(spec.tau):
        if t == 1:
            mu.append(spec.mu[j].inverse_monomial())
            nu.append(spec.nu[j].inverse_monomial())
        else:
            mu.append(spec.nu[j].inverse_monomial())
            nu.append(spec.mu[j].inverse_monomial())
    source = spec.source.with_mode(formal_units=spec.target.mode.formal_units)
    return build_automorphism(spec.target, source, spec.tau, mu, nu)


def compose(first, second):
    """second o first."""

    if first.target.n != second.source.n:
        raise IdentityViolation("the maps cannot be composed")
    algebra = algebra_for(second.target, ring_order(first.source.D, second.target.D))
    tau, mu, nu = [], [], []
    for j in range(first.source.n):
        t1, t2 = first.tau[j], second.tau[j]
        m1, v1 = algebra.coefficient(first.mu[j]), algebra.coefficient(first.nu[j])
        m2, v2 = algebra.coefficient(second.mu[j]), algebra.coefficient(second.nu[j])
        tau.append(t1 * t2)
        if t1 == 1:
            mu.append(m1 * m2)
            nu.append(v1 * v2)
        else:
            mu.append(m1 * v2)
            nu.append(v1 * m2)
    return build_automorphism(first.source, second.target, tau, mu, nu)


def _unit_scalar(coeff):
    if not coeff.is_monomial():
        return False
    exps, value = next(iter(coeff.terms.items()))
    return not value.is_zero() and all(
        not e or name in coeff.ring.invertible for name, e in zip(coeff.ring.names, exps))


def classify_images(phi, n):
    """(tau, mu, nu) when every image is a unit times x'_j or y'_j, else None."""

    tau, mu, nu = [], [], []
    for j in range(1, n + 1):
        found = []
        for which in ("x", "y"):
            image = phi[(which, j)]
            if len(image.terms) != 1:
                return None
            e, coeff = next(iter(image.terms.items()))
            unit = tuple(1 if i == j - 1 else 0 for i in range(n))
            zero = (0,) * n
            if (e.b, e.a) == (zero, unit):
                found.append("x")
            elif (e.b, e.a) == (unit, zero):
                found.append("y")
            else:
                return None
            if not _unit_scalar(coeff):
                return None
            (mu if which == "x" else nu).append(coeff)
        if found == ["x", "y"]:
            tau.append(1)
        elif found == ["y", "x"]:
            tau.append(-1)
        else:
            return None
    return tuple(tau), tuple(mu), tuple(nu)


def z_image_check(spec, j):
    """phi(z_j) = tau_j mu_j nu_j z'_j, of filtration degree 2 for j >= 1."""

    source_alg, target = _algebras(spec)
    image = apply_map(spec, source_alg.z(j))
    if j == 0:
        return image == target.z(0)
    scalar = spec.mu[j - 1] * spec.nu[j - 1]
    expected = target.z(j).scale(scalar.scale(spec.tau[j - 1]))
    return image == expected and filtration_degree(image, (1,) * spec.source.n) == 2


def isomorphic(P1, P2) -> Optional[tuple]:
    """First sign pattern (identity first) meeting the root-of-unity conditions."""

    if P1.n != P2.n:
        return None
    if not (is_free_over_center(P1) and is_free_over_center(P2)):
        logger.warning("isomorphism search on parameters that are not free over the center")
    for tau in product((1, -1), repeat=P1.n):
        if not scalar_violations(P1, P2, tau):
            logger.info("isomorphic with tau=%s", tau)
            return tau
    return None


class AutGroupShape(NamedTuple):
    kind: str
    k: Optional[int] = None
    candidates: tuple = ()
    forces_minus_one: Optional[bool] = None

    def describe(self):
        if self.kind == "Torus":
            return "(T^x)^n"
        return f"(T^x)^n x| Z_2 (swap at k={self.k})"

    def to_json(self):
        return {"kind": self.kind, "k": self.k, "candidates": list(self.candidates),
                "forces_minus_one": self.forces_minus_one, "shape": self.describe()}


def _swap_index(P, k):
    if not _same_root(P.eps_fraction(k), Rational(1, 2)):
        return False
    for j in range(1, P.n + 1):
        if j == k:
            continue
        twice = 2 * P.beta_fraction(j, k)
        expected = P.eps_fraction(j) if j < k else Rational(0)
        if not _same_root(twice, expected):
            return False
    return True


def aut_group_shape(P):
    """Semidirect product with Z_2 when some k admits the swap x_k <-> y_k."""

    candidates = tuple(k for k in range(1, P.n + 1) if _swap_index(P, k))
    if not candidates:
        return AutGroupShape("Torus")
    k = candidates[0]
    forces = all(_same_root(P.eps_fraction(j), Rational(1, 2)) for j in range(1, k))
    return AutGroupShape("SemidirectZ2", k, candidates, forces)


def _pair(fraction):
    fraction = Rational(fraction) % 1
    return int(fraction.p), int(fraction.q)


def transport_params(P, tau):
    """The parameters (E', B') forced by tau, so that P and the result are isomorphic."""

    tau = tuple(tau)
    eps = []
    for j in range(1, P.n + 1):
        m, d = P.eps[j - 1]
        eps.append(((tau[j - 1] * m) % d, d))
    beta = []
    for j in range(1, P.n + 1):
        for k in range(j + 1, P.n + 1):
            fraction = P.beta_fraction(j, k)
            if tau[k - 1] == 1:
                fraction = tau[j - 1] * fraction
            else:
                fraction = -tau[j - 1] * (P.eps_fraction(j) + fraction)
            m, d = _pair(fraction)
            if m:
                beta.append([j, k, m, d])
    return validate({"n": P.n, "eps": [list(e) for e in eps], "beta": beta,
                     "mode": P.to_json()["mode"]})
