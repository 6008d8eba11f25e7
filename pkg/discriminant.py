"""Regular representation, internal trace and discriminant over C = T[c, x^L, y^L].

Closed forms for comparison:

* eta * prod_j Z_j^(N^2 (d_j - 1) / d_j), N = d_1 ... d_n, for L_j = d_j;
* the recursive formula in c over the subalgebra on x_2, y_2, ..., x_n, y_n,
  evaluated in a larger cyclotomic ring and descended back to order D.
"""

import logging
import time
from itertools import product
from math import gcd
from typing import NamedTuple, Optional

from cyclotomic import CycElem, q_factorial, ring_order
from center import (CenterPoly, Z_center_poly, box_decompose, center_ring,
                    lift_coefficient)
from exc import (FreenessError, IdentityViolation, ModeMismatchError, ParamsError,
                 RecognitionError, WeylError)
from params import ExpVec, check_L, default_L, is_free_over_center
from polyring import (MPoly, PolyMatrix, VarTable, is_associate, is_polynomial_in_power,
                      substitute_power)
from weyl_core import algebra_for

logger = logging.getLogger(__name__)

CONVENTIONS = ("y-first", "x-first")


class CBasis(NamedTuple):
    """Bounded monomials 0 <= b_j, a_j < L_j in one of the two orders."""

    L: tuple
    elements: tuple
    convention: str = "y-first"

    @property
    def size(self):
        return len(self.elements)


def c_basis(P, L=None, convention="y-first"):
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown basis convention {convention!r}")
    L = check_L(P, L or default_L(P))
    boxes = [range(Lj) for Lj in L]
    elements = tuple(ExpVec(b, a) for b in product(*boxes) for a in product(*boxes))
    return CBasis(L, elements, convention)


def _weight(e):
    return sum(j * (bj + aj) for j, (bj, aj) in enumerate(zip(e.b, e.a), start=1))


def box_coordinates(u, L):
    """Coordinates of u over C with respect to the y-first box monomials."""

    algebra = u.algebra
    coords = {}
    for e, coeff in u.terms.items():
        B, A, rest = box_decompose(e, L)
        value = lift_coefficient(algebra, coeff, B, A)
        coords[rest] = coords[rest] + value if rest in coords else value
    return {e: v for e, v in coords.items() if not v.is_zero()}


class _Conversion:
    """y-first to x-first coordinates by back-substitution in decreasing weight.

    Each x-first element is a nonzero root times its y-first box monomial plus
    terms of strictly smaller chi-weight.
    """

    def __init__(self, algebra, basis):
        self.columns = {}
        self.diagonal = {}
        for e in basis.elements:
            column = box_coordinates(algebra.basis_element(e, "x-first"), basis.L)
            lead = column.get(e)
            if lead is None or not lead.is_constant():
                raise RecognitionError(f"x-first element {e} is not triangular")
            self.columns[e] = column
            self.diagonal[e] = lead.constant_value().inverse()
        self.order = sorted(basis.elements, key=lambda e: (_weight(e), e.b + e.a),
                            reverse=True)

    def convert(self, coords):
        coords = dict(coords)
        result = {}
        for e in self.order:
            value = coords.get(e)
            if value is None or value.is_zero():
                continue
            factor = value.scale(self.diagonal[e])
            result[e] = factor
            for target, entry in self.columns[e].items():
                updated = coords.get(target)
                delta = factor * entry
                coords[target] = -delta if updated is None else updated - delta
        return result


_conversions = {}


def _conversion(algebra, basis):
    key = (algebra, basis.L)
    if key not in _conversions:
        _conversions[key] = _Conversion(algebra, basis)
    return _conversions[key]


def _basis_vector(algebra, basis, e):
    return algebra.basis_element(e, basis.convention)


def _coordinates(u, basis):
    coords = box_coordinates(u, basis.L)
    if basis.convention == "x-first":
        coords = _conversion(u.algebra, basis).convert(coords)
    return coords


def regular_representation(u, basis):
    """Matrix M over C with u * b_k = sum_j M[j][k] b_j."""

    algebra = u.algebra
    ring = center_ring(algebra)
    zero = MPoly.zero(ring, algebra.order)
    index = {e: i for i, e in enumerate(basis.elements)}
    rows = [[zero] * basis.size for _ in range(basis.size)]
    for k, e in enumerate(basis.elements):
        image = u * _basis_vector(algebra, basis, e)
        for target, value in _coordinates(image, basis).items():
            rows[index[target]][k] = value
    logger.debug("regular representation of size %d", basis.size)
    return PolyMatrix(rows, ring, algebra.order)


class _TraceTable:
    """Memoized internal trace of normal monomials."""

    def __init__(self, algebra, basis):
        self.algebra = algebra
        self.basis = basis
        self.memo = {}
        self.vectors = {e: _basis_vector(algebra, basis, e) for e in basis.elements}

    def monomial(self, e):
        cached = self.memo.get(e)
        if cached is not None:
            return cached
        algebra = self.algebra
        ring = center_ring(algebra)
        total = MPoly.zero(ring, algebra.order)
        if all(g % Lj == 0 for g, Lj in zip(e.grading(), self.basis.L)):
            element = algebra.monomial(e)
            for b in self.basis.elements:
                coords = _coordinates(element * self.vectors[b], self.basis)
                value = coords.get(b)
                if value is not None:
                    total = total + value
        self.memo[e] = total
        return total

    def trace(self, u):
        ring = center_ring(self.algebra)
        total = MPoly.zero(ring, self.algebra.order)
        for e, coeff in u.terms.items():
            value = self.monomial(e)
            if not value.is_zero():
                total = total + lift_coefficient(self.algebra, coeff) * value
        return total


_tables = {}


def _trace_table(algebra, basis):
    key = (algebra, basis)
    if key not in _tables:
        _tables[key] = _TraceTable(algebra, basis)
    return _tables[key]


def internal_trace(u, basis):
    """Trace of the regular representation of u, as a CenterPoly."""

    return CenterPoly(_trace_table(u.algebra, basis).trace(u), basis.L)


def trace_matrix(P, basis):
    algebra = algebra_for(P)
    table = _trace_table(algebra, basis)
    vectors = table.vectors
    rows = []
    for bi in basis.elements:
        rows.append([table.trace(vectors[bi] * vectors[bj]) for bj in basis.elements])
    logger.debug("trace matrix %dx%d, %d monomial traces", basis.size, basis.size,
                 len(table.memo))
    return PolyMatrix(rows, center_ring(algebra), algebra.order)


def discriminant(P, L=None, convention="y-first"):
    """det [tr(b_i b_j)] over a C-basis; defined up to a unit."""

    basis = c_basis(P, L, convention)
    matrix = trace_matrix(P, basis)
    return CenterPoly(matrix.determinant(), basis.L)


# -- closed forms -----------------------------------------------------------


def _eps(P, j, order):
    m, d = P.eps[j - 1]
    return CycElem.root(order, order * m // d)


def _require_free(P):
    if not is_free_over_center(P):
        raise FreenessError("the closed form needs the algebra to be free over its center")


def eta_value(P):
    """(N prod_j [d_j - 1]_{eps_j}!)^(N^2)."""

    D = P.D
    N = 1
    for j in range(1, P.n + 1):
        N *= P.d(j)
    base = CycElem.constant(D, N)
    for j in range(1, P.n + 1):
        base = base * q_factorial(P.d(j) - 1, _eps(P, j, D))
    return base ** (N * N)


def eta_alternate(P):
    """(N^2 prod_j (1 - eps_j)^(1 - d_j))^(N^2)."""

    D = P.D
    N = 1
    for j in range(1, P.n + 1):
        N *= P.d(j)
    base = CycElem.constant(D, N * N)
    for j in range(1, P.n + 1):
        base = base * (CycElem.one(D) - _eps(P, j, D)) ** (1 - P.d(j))
    return base ** (N * N)


def theorem_b_rhs(P):
    """eta * prod_j Z_j^(N^2 (d_j - 1) / d_j) with L_j = d_j."""

    _require_free(P)
    eta = eta_value(P)
    if eta != eta_alternate(P):
        raise IdentityViolation("the two expressions for eta disagree")
    N = 1
    for j in range(1, P.n + 1):
        N *= P.d(j)
    result = None
    for j in range(1, P.n + 1):
        Z = Z_center_poly(P, j).poly
        factor = Z ** (N * N * (P.d(j) - 1) // P.d(j))
        result = factor if result is None else result * factor
    return CenterPoly(result.scale(eta), default_L(P))


def theorem_71_rhs(P, L=None):
    """Recursive discriminant formula over T[c, x^L, y^L] (formal c only)."""

    if not P.mode.c_formal or P.mode.q_deformed:
        raise ModeMismatchError("the recursive formula is stated for the c-deformed algebra")
    L = check_L(P, L or default_L(P))
    target_ring = center_ring(P)
    ring = VarTable(target_ring.names + ("w",), target_ring.invertible)
    R = ring_order(P.D, *(Lj // P.d(j) for j, Lj in enumerate(L, start=1)))

    def level(j):
        if j > P.n:
            return MPoly.one(ring, R)
        Lj, dj = L[j - 1], P.d(j)
        lam = 1
        for Lk in L[j - 1:]:
            lam *= Lk * Lk
        eps = _eps(P, j, R)
        one_minus = CycElem.one(R) - eps
        theta = CycElem.constant(R, Lj) ** lam \
            * (one_minus ** (1 - dj) * Lj) ** lam
        c = MPoly.variable(ring, R, "c")
        X = MPoly.variable(ring, R, f"X{j}")
        Y = MPoly.variable(ring, R, f"Y{j}")
        w = MPoly.variable(ring, R, "w")
        prefactor = (X * Y) ** ((Lj - dj) * lam // Lj) \
            * (c ** Lj - (Y * X).scale(one_minus ** Lj)) ** ((dj - 1) * lam // Lj)
        inner = level(j + 1)
        roots = Lj // dj
        zeta = CycElem.root(R, R // roots)
        collapsed = MPoly.one(ring, R)
        for i in range(roots):
            image = c ** dj - w.scale(zeta ** i * one_minus ** dj)
            collapsed = collapsed * substitute_power(inner, "c", dj, image)
        collapsed = substitute_power(collapsed, "w", roots, X * Y)
        return (prefactor * collapsed ** (dj * Lj)).scale(theta)

    result = level(1).descend(P.D).coerce(target_ring)
    g = 0
    for Lj in L:
        g = gcd(g, Lj)
    if not is_polynomial_in_power(result, "c", g):
        raise IdentityViolation(f"the recursive formula is not a polynomial in c^{g}")
    return CenterPoly(result, L)


def leading_form(cp):
    """Top part of the xy-filtration in which pair j outweighs all pairs below it.

    Terms are compared on deg X_n + deg Y_n first, then on pair n - 1, and so
    on, which is the weighted filtration with chi_j L_j growing fast enough.
    """

    poly = cp.poly
    ring = poly.ring
    pairs = [(ring.index(f"X{j}"), ring.index(f"Y{j}")) for j in range(len(cp.L), 0, -1)]

    def key(exps):
        return tuple(exps[x] + exps[y] for x, y in pairs)

    if not poly.terms:
        return poly
    top = max(key(e) for e in poly.terms)
    terms = {e: c for e, c in poly.terms.items() if key(e) == top}
    return MPoly(ring, poly.order, terms)


def predicted_leading_form(P, L):
    """Lambda^Lambda prod_j (X_j Y_j)^(Lambda (L_j - 1) / L_j)."""

    ring = center_ring(P)
    D = P.D
    lam = 1
    for Lj in L:
        lam *= Lj * Lj
    result = MPoly.constant(ring, D, lam ** lam)
    for j, Lj in enumerate(L, start=1):
        XY = MPoly.variable(ring, D, f"X{j}") * MPoly.variable(ring, D, f"Y{j}")
        result = result * XY ** (lam * (Lj - 1) // Lj)
    return result


def leading_form_check(cp, P):
    """Associate witness for the top-degree part, or None."""

    return is_associate(leading_form(cp), predicted_leading_form(P, cp.L))


class DiscriminantReport(NamedTuple):
    which: str
    L: tuple
    lam: int
    elapsed_ms: int
    associate: bool
    certified: bool
    unit: Optional[str]
    lhs: str
    rhs: str
    leading_form: bool
    error: Optional[str] = None

    @property
    def passed(self):
        return self.associate and self.leading_form and self.error is None

    def to_json(self):
        return {"which": self.which, "L": list(self.L), "lambda": self.lam,
                "elapsed_ms": self.elapsed_ms, "associate": self.associate,
                "certified": self.certified, "unit": self.unit,
                "leading_form": self.leading_form, "lhs": self.lhs, "rhs": self.rhs,
                "error": self.error}


def verify_discriminant(P, L=None, which="theorem-b", convention="y-first"):
    """Compute a discriminant and compare it with the closed form, up to a unit."""

    if which == "theorem-b":
        P = P.with_mode(c_formal=False, q_deformed=False)
        L = tuple(L or default_L(P))
        if L != default_L(P):
            raise ParamsError("the closed form needs L_j = d_j", "L")
    elif which == "theorem-71":
        P = P.with_mode(c_formal=True, q_deformed=False)
        L = tuple(L or default_L(P))
    else:
        raise ParamsError(f"unknown closed form {which!r}", "which")

    started = time.perf_counter()
    lhs = discriminant(P, L, convention)
    error = None
    try:
        if which == "theorem-b":
            rhs = theorem_b_rhs(P)
        else:
            rhs = theorem_71_rhs(P, L)
            g = 0
            for Lj in L:
                g = gcd(g, Lj)
            if not is_polynomial_in_power(lhs.poly, "c", g):
                error = f"discriminant is not a polynomial in c^{g}"
    except (ParamsError, FreenessError):
        raise
    except WeylError as err:
        rhs, error = None, str(err)
    elapsed = int((time.perf_counter() - started) * 1000)

    witness = is_associate(lhs.poly, rhs.poly) if rhs is not None else None
    leading = leading_form_check(lhs, P) is not None
    lam = 1
    for Lj in L:
        lam *= Lj * Lj
    report = DiscriminantReport(
        which, tuple(L), lam, elapsed, witness is not None,
        bool(witness and witness.certified),
        witness.describe() if witness else None,
        str(lhs), str(rhs) if rhs is not None else "", leading, error)
    logger.info("%s at L=%s: associate=%s in %d ms", which, L, report.associate, elapsed)
    return report
