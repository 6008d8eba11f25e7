"""Central elements: recognition, the spanning set, Z_j and brute-force scans."""

import logging
from functools import lru_cache
from typing import NamedTuple, Optional

from cyclotomic import CycElem
from exc import FreenessError
from params import ExpVec, default_L, in_CEB, is_free_over_center
from polyring import MPoly, VarTable
from weyl_core import WeylAlgebra, WeylElem, algebra_for, commutator

logger = logging.getLogger(__name__)


class CenterPoly(NamedTuple):
    """A polynomial in [c] X_1..X_n Y_1..Y_n, where X_j = x_j^L_j and Y_j = y_j^L_j."""

    poly: MPoly
    L: tuple

    def __str__(self):
        return str(self.poly)

    def to_json(self):
        return {"L": list(self.L), "poly": str(self.poly), "terms": self.poly.to_json()}


def _algebra(source):
    return source if isinstance(source, WeylAlgebra) else algebra_for(source)


@lru_cache(maxsize=None)
def _center_ring(coefficients, n):
    names = coefficients.names + tuple(f"X{j}" for j in range(1, n + 1)) \
        + tuple(f"Y{j}" for j in range(1, n + 1))
    return VarTable(names, coefficients.invertible)


def center_ring(source):
    """Coefficient variables of the algebra followed by X_1..X_n, Y_1..Y_n."""

    algebra = _algebra(source)
    return _center_ring(algebra.ring, algebra.n)


def lift_coefficient(algebra, coeff, B=None, A=None):
    """coeff * Y^B X^A in the center ring."""

    ring = center_ring(algebra)
    poly = coeff.coerce(ring)
    if B is None and A is None:
        return poly
    k = len(algebra.ring)
    exps = [0] * len(ring)
    for j in range(algebra.n):
        exps[k + j] = A[j]
        exps[k + algebra.n + j] = B[j]
    return poly.shift(tuple(exps))


def box_decompose(e, L):
    """Split y^b x^a as Y^B X^A * y^r x^s with 0 <= r_j, s_j < L_j."""

    B = tuple(bj // Lj for bj, Lj in zip(e.b, L))
    A = tuple(aj // Lj for aj, Lj in zip(e.a, L))
    r = ExpVec(tuple(bj % Lj for bj, Lj in zip(e.b, L)),
               tuple(aj % Lj for aj, Lj in zip(e.a, L)))
    return B, A, r


def to_center_poly(u, L=None) -> Optional[CenterPoly]:
    """Recognize u as a polynomial in X_j, Y_j; None if some exponent is not a multiple of L_j."""

    algebra = u.algebra
    L = tuple(L or default_L(algebra.params))
    result = MPoly.zero(center_ring(algebra), algebra.order)
    for e, coeff in u.terms.items():
        B, A, rest = box_decompose(e, L)
        if any(rest.b) or any(rest.a):
            return None
        result = result + lift_coefficient(algebra, coeff, B, A)
    return CenterPoly(result, L)


def center_to_weyl(cp, source):
    """The element of the algebra a CenterPoly stands for."""

    algebra = _algebra(source)
    ring = center_ring(algebra)
    poly = cp.poly.coerce(ring) if cp.poly.ring != ring else cp.poly
    k, n = len(algebra.ring), algebra.n
    terms = {}
    for exps, value in poly.terms.items():
        coeff = MPoly.monomial(algebra.ring, algebra.order, exps[:k], value)
        A = exps[k:k + n]
        B = exps[k + n:]
        e = ExpVec(tuple(bj * Lj for bj, Lj in zip(B, cp.L)),
                   tuple(aj * Lj for aj, Lj in zip(A, cp.L)))
        terms[e] = terms[e] + coeff if e in terms else coeff
    return WeylElem(algebra, terms)


def center_variable(source, name, L=None):
    """X_j, Y_j or c as a CenterPoly."""

    algebra = _algebra(source)
    L = tuple(L or default_L(algebra.params))
    return CenterPoly(MPoly.variable(center_ring(algebra), algebra.order, name), L)


def is_central(u):
    """True iff u commutes with every x_j and y_j."""

    algebra = u.algebra
    for j in range(1, algebra.n + 1):
        for which in ("x", "y"):
            if not commutator(u, algebra.generator(which, j)).is_zero():
                return False
    return True


def exponent_vectors(n, bound):
    """All ExpVec of length n with total degree <= bound, by degree then lex."""

    found = []

    def walk(prefix, left):
        if len(prefix) == 2 * n:
            found.append(ExpVec(tuple(prefix[:n]), tuple(prefix[n:])))
            return
        for k in range(left + 1):
            walk(prefix + [k], left - k)

    walk([], bound)
    found.sort(key=lambda e: (e.total_degree(), e.b + e.a))
    return found


def spanning_element(source, e):
    """y^max(b-a,0) z^min(b,a) x^max(a-b,0) for an exponent e of C(E,B)."""

    algebra = _algebra(source)
    n = algebra.n
    up = tuple(max(bj - aj, 0) for bj, aj in zip(e.b, e.a))
    down = tuple(max(aj - bj, 0) for bj, aj in zip(e.b, e.a))
    element = algebra.monomial((up, (0,) * n))
    for j, (bj, aj) in enumerate(zip(e.b, e.a), start=1):
        power = min(bj, aj)
        if power:
            element = element * algebra.z(j) ** power
    return element * algebra.monomial(((0,) * n, down))


def center_spanning_monomials(P, degree_bound):
    """Pairs (e, central element) for e in C(E,B) up to the degree bound."""

    algebra = _algebra(P)
    return [(e, spanning_element(algebra, e))
            for e in exponent_vectors(P.n, degree_bound) if in_CEB(P, e)]


def _z_scalar(P, j):
    D = P.D
    m, d = P.eps[j - 1]
    return CycElem.root(D, D * m // d)


def Z_center_poly(P, j):
    """Z_0 = 1 (or c), Z_j = -(1 - eps_j)^d_j Y_j X_j + Z_(j-1)^(d_j / d_(j-1))."""

    if not is_free_over_center(P):
        raise FreenessError("Z_j is defined when the algebra is free over its center")
    algebra = _algebra(P)
    ring = center_ring(algebra)
    D = algebra.order
    L = default_L(P)
    if P.mode.c_formal:
        result = MPoly.variable(ring, D, "c")
    else:
        result = MPoly.one(ring, D)
    previous = 1
    for i in range(1, j + 1):
        d = P.d(i)
        one_minus = CycElem.one(D) - _z_scalar(P, i)
        X = MPoly.variable(ring, D, f"X{i}")
        Y = MPoly.variable(ring, D, f"Y{i}")
        result = (Y * X).scale(-(one_minus ** d)) + result ** (d // previous)
        previous = d
    return CenterPoly(result, L)


def verify_specz(P, j):
    """z_j^d_j recognizes to Z_j and equals -(1-eps_j)^d_j y_j^d_j x_j^d_j + z_(j-1)^d_j."""

    if j == 0:
        return True
    if not is_free_over_center(P):
        raise FreenessError("z_j^d_j is central only when the algebra is free over its center")
    algebra = _algebra(P)
    d = P.d(j)
    power = algebra.z(j) ** d
    recognized = to_center_poly(power, default_L(P))
    if recognized is None:
        logger.info("z_%d^%d is not a polynomial in X, Y", j, d)
        return False
    if recognized.poly != Z_center_poly(P, j).poly:
        logger.info("z_%d^%d = %s does not match Z_%d", j, d, recognized, j)
        return False
    one_minus = algebra.one() - algebra.scalar(algebra.eps(j))
    expected = (-(one_minus ** d)) * algebra.y(j) ** d * algebra.x(j) ** d \
        + algebra.z(j - 1) ** d
    if power != expected:
        logger.info("z_%d^%d fails the y^d x^d identity", j, d)
        return False
    return True


# -- brute-force scan ----------------------------------------------------------


def _weight(e, weights):
    return sum(w * (bj + aj) for w, bj, aj in zip(weights, e.b, e.a))


def _nullspace(rows, ncols, order):
    """Basis of {v : rows . v = 0}; rows are {column: CycElem}."""

    def eliminate(target, col, pivot_row):
        value = target.get(col)
        if value is None:
            return
        for c, v in pivot_row.items():
            updated = target.get(c, CycElem.zero(order)) - value * v
            if updated.is_zero():
                target.pop(c, None)
            else:
                target[c] = updated

    # pivot rows stay fully reduced against each other
    pivots = {}
    for row in rows:
        row = {c: v for c, v in row.items() if not v.is_zero()}
        for col, pivot_row in pivots.items():
            eliminate(row, col, pivot_row)
        if not row:
            continue
        col = min(row)
        inverse = row[col].inverse()
        row = {c: v * inverse for c, v in row.items()}
        for pivot_row in pivots.values():
            eliminate(pivot_row, col, row)
        pivots[col] = row
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vector = {free: CycElem.one(order)}
        for col, row in pivots.items():
            value = row.get(free)
            if value is not None and not value.is_zero():
                vector[col] = -value
        basis.append(vector)
    return basis


def _leading_columns(vectors, order):
    """Distinct highest nonzero columns across the span of the vectors."""

    echelon = {}
    for vector in vectors:
        vector = dict(vector)
        while vector:
            lead = max(vector)
            if lead not in echelon:
                inverse = vector[lead].inverse()
                echelon[lead] = {c: v * inverse for c, v in vector.items()}
                break
            factor = vector[lead]
            for c, v in echelon[lead].items():
                updated = vector.get(c, CycElem.zero(order)) - factor * v
                if updated.is_zero():
                    vector.pop(c, None)
                else:
                    vector[c] = updated
    return set(echelon)


def central_leading_exponents(P, bound, weights=None):
    """Leading exponents of all central elements supported in degree <= bound.

    Candidates are grouped by Z^n-degree; each class is a linear system over
    Q(e_D) whose solution space is put in echelon form with columns ordered
    by chi-weighted degree then lex.
    """

    P = P.with_mode(c_formal=False, q_deformed=False, formal_units=())
    algebra = algebra_for(P)
    weights = weights or tuple(range(1, P.n + 1))
    classes = {}
    for e in exponent_vectors(P.n, bound):
        classes.setdefault(e.grading(), []).append(e)
    generators = [algebra.generator(which, j)
                  for j in range(1, P.n + 1) for which in ("x", "y")]
    found = set()
    for grading, monomials in sorted(classes.items()):
        monomials.sort(key=lambda e: (_weight(e, weights), e.b + e.a))
        equations = {}
        for col, e in enumerate(monomials):
            element = algebra.monomial(e)
            for g, gen in enumerate(generators):
                for target, coeff in commutator(element, gen).terms.items():
                    equations.setdefault((g, target), {})[col] = coeff.constant_value()
        basis = _nullspace(list(equations.values()), len(monomials), algebra.order)
        for col in _leading_columns(basis, algebra.order):
            found.add(monomials[col])
        logger.debug("grading %s: %d candidates, %d central", grading, len(monomials), len(basis))
    return found


class ScanReport(NamedTuple):
    bound: int
    found: frozenset
    predicted: frozenset
    free: bool
    power_monomials: Optional[frozenset]

    @property
    def agrees(self):
        if self.found != self.predicted:
            return False
        return self.power_monomials is None or self.power_monomials == self.predicted

    def to_json(self):
        def dump(exps):
            return [[list(e.b), list(e.a)] for e in sorted(exps, key=lambda e: e.b + e.a)]

        return {"bound": self.bound, "agrees": self.agrees, "free": self.free,
                "found": dump(self.found), "predicted": dump(self.predicted),
                "missing": dump(self.predicted - self.found),
                "unexpected": dump(self.found - self.predicted)}


def check_center_scan(P, bound=8, weights=None):
    """Compare the brute-force scan with C(E,B) and, under freeness, with x^d, y^d monomials."""

    found = frozenset(central_leading_exponents(P, bound, weights))
    candidates = exponent_vectors(P.n, bound)
    predicted = frozenset(e for e in candidates if in_CEB(P, e))
    free = is_free_over_center(P)
    powers = None
    if free:
        powers = frozenset(
            e for e in candidates
            if all(bj % P.d(j) == 0 and aj % P.d(j) == 0
                   for j, (bj, aj) in enumerate(zip(e.b, e.a), start=1)))
    report = ScanReport(bound, found, predicted, free, powers)
    logger.info("center scan to degree %d: %d exponents, agrees=%s",
                bound, len(found), report.agrees)
    return report
