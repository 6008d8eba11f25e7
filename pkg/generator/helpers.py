"""Support functions for random parameters and elements."""

import os
from random import Random

from sympy import Rational, igcd

from center import CenterPoly, center_ring
from cyclotomic import CycElem
from params import ExpVec, default_L, make_params
from polyring import MPoly

SEED = int(os.environ.get('WEYL_SEED', 0))


def get_rng(seed=None):
    """Random source; WEYL_SEED when no seed is given."""

    return Random(SEED if seed is None else seed)


def _unit_fraction(rng, d):
    """Random m in 1..d-1 prime to d (0 when d is 1)."""

    if d == 1:
        return 0
    return rng.choice([m for m in range(1, d) if igcd(m, d) == 1])


def random_params(rng, n=None, max_d=4, free=False, **mode):
    """Random parameters with 2 <= d_j <= max_d.

    With free=True the orders form a divisibility chain and every d_jk
    divides d_min(j,k).
    """

    n = n or rng.randint(1, 3)
    if free:
        top = rng.choice([d for d in (2, 3, 4) if d <= max_d])
        choices = (2, 4) if top == 4 else (top,)
        orders = sorted(rng.choice(choices) for _ in range(n))
        orders[-1] = top
    else:
        orders = [rng.randint(2, max_d) for _ in range(n)]
    eps = [(_unit_fraction(rng, d), d) for d in orders]
    beta = []
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            if free:
                limit = orders[j - 1]
                d = rng.choice([c for c in range(1, limit + 1) if limit % c == 0])
            else:
                d = rng.randint(1, max_d)
            m = _unit_fraction(rng, d)
            if m:
                beta.append((j, k, m, d))
    return make_params(eps, beta, **mode)


def random_exponents(rng, n, max_degree):
    """Exponent vector with total degree at most max_degree."""

    b, a = [0] * n, [0] * n
    for _ in range(rng.randint(0, max_degree)):
        (b if rng.random() < 0.5 else a)[rng.randrange(n)] += 1
    return ExpVec(tuple(b), tuple(a))


def random_scalar(algebra, rng):
    """Small integer times a power of the root."""

    value = CycElem.root(algebra.order, rng.randrange(algebra.order)) * rng.choice([1, -1, 2, -3])
    return algebra.coefficient(value)


def random_element(algebra, rng, terms=3, max_degree=3):
    """Sparse element with a few random normal monomials."""

    element = algebra.zero()
    for _ in range(terms):
        e = random_exponents(rng, algebra.n, max_degree)
        coeff = random_scalar(algebra, rng)
        if algebra.q_mode:
            coeff = coeff * algebra.variable("q") ** rng.randint(-2, 2)
        element = element + algebra.monomial(e, coeff)
    return element


def random_homogeneous(algebra, rng, terms=3, max_degree=4):
    """Random element whose terms share one Z^n-degree."""

    first = random_exponents(rng, algebra.n, max_degree)
    element = algebra.monomial(first, random_scalar(algebra, rng))
    for _ in range(terms - 1):
        shift = [rng.randint(0, 1) for _ in range(algebra.n)]
        e = ExpVec(tuple(b + s for b, s in zip(first.b, shift)),
                   tuple(a + s for a, s in zip(first.a, shift)))
        element = element + algebra.monomial(e, random_scalar(algebra, rng))
    return element


def random_center_poly(P, rng, terms=2, max_degree=1):
    """Random polynomial in X_j, Y_j with small integer coefficients."""

    ring = center_ring(P)
    k = len(ring) - 2 * P.n
    poly = MPoly.zero(ring, P.D)
    for _ in range(terms):
        exps = [0] * len(ring)
        for _ in range(rng.randint(0, max_degree)):
            exps[k + rng.randrange(2 * P.n)] += 1
        coeff = Rational(rng.choice([1, -1, 2, 3]))
        poly = poly + MPoly.monomial(ring, P.D, exps, coeff)
    return CenterPoly(poly, default_L(P))
