"""Normal forms and multiplication in quantized Weyl algebras.

Elements are stored in the normal form y_1^b_1 ... y_n^b_n x_1^a_1 ... x_n^a_n
with coefficients in a commutative ring of MPoly (constants, c, q^(+-1),
formal units). All structure constants are integer powers of one root:
e_R (R a multiple of D) in the ordinary and c-deformed algebras, q in the
q-deformed algebra. Relations, for j < k:

    y_j y_k = beta_jk y_k y_j          x_j x_k = eps_j beta_jk x_k x_j
    x_j y_k = beta_kj y_k x_j          x_k y_j = eps_j beta_jk y_j x_k
    x_j y_j - eps_j y_j x_j = z_(j-1)

with z_0 = 1 (or c) and z_j = z_(j-1) + (eps_j - 1) y_j x_j.
"""

import logging
from functools import lru_cache

from cyclotomic import CycElem
from exc import FreenessError, ModeMismatchError, RingMismatchError
from params import ExpVec, is_free_over_center
from polyring import MPoly, VarTable

logger = logging.getLogger(__name__)


def coefficient_ring(params):
    """Variables of the coefficient ring: [c] [q] formal units."""

    names = []
    if params.mode.c_formal:
        names.append("c")
    if params.mode.q_deformed:
        names.append("q")
    names.extend(params.mode.formal_units)
    invertible = set(params.mode.formal_units)
    if params.mode.q_deformed:
        invertible.add("q")
    return VarTable(names, invertible)


def _bump(vec, i, step=1):
    return vec[:i] + (vec[i] + step,) + vec[i + 1:]


class WeylAlgebra:
    """One algebra A^{E,B}_n, its c-deformation or its q-deformation."""

    def __init__(self, params, ring_order=None):
        self.params = params
        self.n = params.n
        self.q_mode = params.mode.q_deformed
        D = params.D
        if self.q_mode:
            if not is_free_over_center(params):
                raise FreenessError("the q-deformation needs d_j | d_n and d_jk | d_n")
            if ring_order not in (None, D):
                raise ValueError("the q-deformed algebra keeps its coefficients in order D")
            self.order = D
            scale = D
        else:
            self.order = D if ring_order is None else ring_order
            if self.order % D:
                raise ValueError(f"ring order {self.order} is not a multiple of D = {D}")
            scale = self.order

        def exponent(m, d):
            value = scale * m // d
            return value if self.q_mode else value % scale

        self.E = [exponent(m, d) for m, d in params.eps]
        self.B = [[exponent(m, d) for m, d in row] for row in params.beta]
        self.ring = coefficient_ring(params)
        self._zero = MPoly.zero(self.ring, self.order)
        self._one = MPoly.one(self.ring, self.order)
        if params.mode.c_formal:
            self._z0 = MPoly.variable(self.ring, self.order, "c")
        else:
            self._z0 = self._one
        self._roots = {}
        self._x_memo = {}
        self._xy_memo = {}
        self._product_memo = {}

    @property
    def key(self):
        return (self.params, self.order)

    def __eq__(self, other):
        return isinstance(other, WeylAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<WeylAlgebra {self.params!r} order={self.order} q={self.q_mode}>"

    # -- scalars ------------------------------------------------------------

    def root_power(self, k):
        """The structure scalar root^k as a coefficient."""

        if not self.q_mode:
            k %= self.order
        cached = self._roots.get(k)
        if cached is None:
            if self.q_mode:
                exps = tuple(k if name == "q" else 0 for name in self.ring.names)
                cached = MPoly.monomial(self.ring, self.order, exps)
            else:
                cached = MPoly.constant(self.ring, self.order, CycElem.root(self.order, k))
            self._roots[k] = cached
        return cached

    def eps(self, j):
        """eps_j (1-based) as a coefficient."""

        return self.root_power(self.E[j - 1])

    def beta(self, j, k):
        return self.root_power(self.B[j - 1][k - 1])

    def coefficient(self, value):
        """Coerce an int, CycElem or MPoly into the coefficient ring."""

        if isinstance(value, MPoly):
            if value.ring != self.ring:
                value = value.coerce(self.ring)
            if value.order != self.order:
                value = value.embed(self.order)
            return value
        if isinstance(value, CycElem) and value.order != self.order:
            value = value.embed(self.order)
        return MPoly.constant(self.ring, self.order, value)

    def variable(self, name):
        return MPoly.variable(self.ring, self.order, name)

    @lru_cache(maxsize=None)
    def _q_integer(self, j, m):
        total = self._zero
        for t in range(m):
            total = total + self.root_power(t * self.E[j])
        return total

    # -- element constructors -----------------------------------------------

    def zero(self):
        return WeylElem(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, value):
        return self.monomial(ExpVec.zero(self.n), value)

    def monomial(self, e, coeff=1):
        e = ExpVec(tuple(e[0]), tuple(e[1]))
        if len(e.b) != self.n or len(e.a) != self.n:
            raise ValueError(f"exponent vector {e} does not have length {self.n}")
        return WeylElem(self, {e: self.coefficient(coeff)})

    def generator(self, which, j):
        if not 1 <= j <= self.n:
            raise IndexError(f"generator index {j} outside 1..{self.n}")
        unit = tuple(1 if i == j - 1 else 0 for i in range(self.n))
        zero = (0,) * self.n
        if which == "x":
            return self.monomial((zero, unit))
        if which == "y":
            return self.monomial((unit, zero))
        raise ValueError(f"which must be 'x' or 'y', got {which!r}")

    def x(self, j):
        return self.generator("x", j)

    def y(self, j):
        return self.generator("y", j)

    def z(self, j):
        """z_j = z_0 + sum_{i <= j} (eps_i - 1) y_i x_i."""

        if not 0 <= j <= self.n:
            raise IndexError(f"z index {j} outside 0..{self.n}")
        terms = {ExpVec.zero(self.n): self._z0}
        for i in range(j):
            unit = tuple(1 if t == i else 0 for t in range(self.n))
            coeff = self.eps(i + 1) - self._one
            if not coeff.is_zero():
                terms[ExpVec(unit, unit)] = coeff
        return WeylElem(self, terms)

    def c(self):
        return self.scalar(self.variable("c"))

    def basis_element(self, e, convention="y-first"):
        """y^b x^a, or x_1^a_1 y_1^b_1 ... x_n^a_n y_n^b_n for 'x-first'."""

        if convention == "y-first":
            return self.monomial(e)
        if convention != "x-first":
            raise ValueError(f"unknown basis convention {convention!r}")
        result = self.one()
        for j in range(1, self.n + 1):
            result = result * self.x(j) ** e.a[j - 1] * self.y(j) ** e.b[j - 1]
        return result

    # -- the rewriting engine -----------------------------------------------

    def _x_times(self, j, b, a):
        """x_j * y^b x^a (0-based j) as {ExpVec: coefficient}."""

        key = (j, b, a)
        cached = self._x_memo.get(key)
        if cached is not None:
            return cached
        E, B, n = self.E, self.B, self.n
        s1 = sum(b[k] * (E[k] + B[k][j]) for k in range(j))
        s = (s1 + b[j] * E[j]
             + sum(b[k] * B[k][j] for k in range(j + 1, n))
             - sum(a[k] * (E[k] + B[k][j]) for k in range(j)))
        out = {ExpVec(b, _bump(a, j)): self.root_power(s)}
        if b[j]:
            # x_j y_j^m = eps_j^m y_j^m x_j + [m]_{eps_j} y_j^(m-1) z_(j-1),
            # and z_(j-1) commutes with y_k for k >= j.
            bp = _bump(b, j, -1)
            coeff = self.root_power(s1) * self._q_integer(j, b[j])
            _accumulate(out, ExpVec(bp, a), coeff * self._z0)
            for i in range(j):
                t = (sum(bp[k] * B[k][i] for k in range(i + 1, n))
                     - sum(a[k] * (E[k] + B[k][i]) for k in range(i)))
                scalar = coeff * (self.root_power(E[i]) - self._one) * self.root_power(t)
                _accumulate(out, ExpVec(_bump(bp, i), _bump(a, i)), scalar)
        self._x_memo[key] = out
        return out

    def _xy_product(self, a, b):
        """x^a * y^b in normal form."""

        key = (a, b)
        cached = self._xy_memo.get(key)
        if cached is not None:
            return cached
        first = next((j for j, aj in enumerate(a) if aj), None)
        if first is None:
            out = {ExpVec(b, (0,) * self.n): self._one}
        else:
            inner = self._xy_product(_bump(a, first, -1), b)
            out = {}
            for e, coeff in inner.items():
                for e2, coeff2 in self._x_times(first, e.b, e.a).items():
                    _accumulate(out, e2, coeff * coeff2)
        self._xy_memo[key] = out
        return out

    def monomial_product(self, e1, e2):
        """(y^b1 x^a1)(y^b2 x^a2) in normal form."""

        key = (e1, e2)
        cached = self._product_memo.get(key)
        if cached is not None:
            return cached
        E, B, n = self.E, self.B, self.n
        out = {}
        for e, coeff in self._xy_product(e1.a, e2.b).items():
            s = (sum(e1.b[j] * e.b[k] * B[j][k] for j in range(n) for k in range(j))
                 - sum(e.a[k] * e2.a[j] * (E[j] + B[j][k])
                       for j in range(n) for k in range(j + 1, n)))
            target = ExpVec(tuple(p + r for p, r in zip(e1.b, e.b)),
                            tuple(p + r for p, r in zip(e.a, e2.a)))
            _accumulate(out, target, coeff * self.root_power(s))
        self._product_memo[key] = out
        return out

    def multiply(self, u, v):
        self._check(u)
        self._check(v)
        out = {}
        for e1, c1 in u.terms.items():
            for e2, c2 in v.terms.items():
                c = c1 * c2
                for e, s in self.monomial_product(e1, e2).items():
                    _accumulate(out, e, c * s)
        return WeylElem(self, out)

    def _check(self, u):
        if u.algebra is not self and u.algebra != self:
            raise ModeMismatchError(f"element of {u.algebra!r} used in {self!r}")

    def memo_size(self):
        return len(self._x_memo) + len(self._xy_memo) + len(self._product_memo)


def _accumulate(terms, key, value):
    total = terms.get(key)
    total = value if total is None else total + value
    if total.is_zero():
        terms.pop(key, None)
    else:
        terms[key] = total


class WeylElem:
    """A finite sum of normal monomials with MPoly coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    @property
    def params(self):
        return self.algebra.params

    def _other(self, other):
        if isinstance(other, WeylElem):
            self.algebra._check(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._other(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            _accumulate(terms, e, c)
        return WeylElem(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElem(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, WeylElem):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value):
        value = self.algebra.coefficient(value)
        return WeylElem(self.algebra, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        result = self.algebra.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def is_zero(self):
        return not self.terms

    def coefficient(self, e):
        return self.terms.get(e, self.algebra._zero)

    def map_coefficients(self, algebra, fn):
        """Move to `algebra`, transforming every coefficient with fn."""

        terms = {}
        for e, c in self.terms.items():
            _accumulate(terms, e, fn(c))
        return WeylElem(algebra, terms)

    def __eq__(self, other):
        if isinstance(other, WeylElem):
            return self.algebra == other.algebra and self.terms == other.terms
        try:
            return self == self.algebra.scalar(other)
        except (TypeError, ValueError, RingMismatchError):
            return NotImplemented

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda item: (item[0].total_degree(), item[0].b + item[0].a),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            letters = []
            for name, exps in (("y", e.b), ("x", e.a)):
                for j, power in enumerate(exps, start=1):
                    if power == 1:
                        letters.append(f"{name}{j}")
                    elif power:
                        letters.append(f"{name}{j}^{power}")
            coeff = str(c)
            if not letters:
                parts.append(coeff if coeff == "1" else f"({coeff})")
            elif coeff == "1":
                parts.append("·".join(letters))
            else:
                parts.append(f"({coeff})·" + "·".join(letters))
        return " + ".join(parts)

    def __repr__(self):
        return f"WeylElem({self})"

    def to_json(self):
        return [{"b": list(e.b), "a": list(e.a), "coeff": str(c), "terms": c.to_json()}
                for e, c in self.sorted_terms()]


@lru_cache(maxsize=None)
def algebra_for(params, ring_order=None):
    """Shared algebra per (params, order) so the product memo is reused."""

    return WeylAlgebra(params, ring_order)


def _algebra(source):
    return source if isinstance(source, WeylAlgebra) else algebra_for(source)


def generator(source, which, j):
    return _algebra(source).generator(which, j)


def multiply(u, v):
    return u * v


def commutator(u, v):
    return u * v - v * u


def z_element(source, j):
    return _algebra(source).z(j)


def grading_degree(u):
    """The common Z^n-degree sum (b_j - a_j) e_j, or None if not homogeneous."""

    degrees = {e.grading() for e in u.terms}
    if len(degrees) != 1:
        return None
    return degrees.pop()


def filtration_degree(u, weights=None):
    """max over terms of sum chi_j (a_j + b_j); -inf for 0."""

    if u.is_zero():
        return float("-inf")
    weights = weights or tuple(range(1, u.algebra.n + 1))
    return max(sum(w * (bj + aj) for w, bj, aj in zip(weights, e.b, e.a))
               for e in u.terms)


def apply_generator_images(u, images, target):
    """Evaluate the algebra map determined by generator images on u.

    `images` maps ("x", j) and ("y", j) to elements of `target`.
    """

    for which in ("x", "y"):
        for j in range(1, u.algebra.n + 1):
            image = images.get((which, j))
            if image is None:
                raise KeyError(f"no image for {which}{j}")
            target._check(image)
    powers = {}

    def power(which, j, k):
        key = (which, j, k)
        if key not in powers:
            powers[key] = images[(which, j)] ** k
        return powers[key]

    result = target.zero()
    for e, c in u.terms.items():
        term = target.scalar(target.coefficient(c))
        for j, k in enumerate(e.b, start=1):
            if k:
                term = term * power("y", j, k)
        for j, k in enumerate(e.a, start=1):
            if k:
                term = term * power("x", j, k)
        result = result + term
    return result


def check_structure_identities(source):
    """Names of the normality and commutation identities that fail (empty when all hold)."""

    algebra = _algebra(source)
    n = algebra.n
    failed = []
    for j in range(1, n + 1):
        x, y = algebra.x(j), algebra.y(j)
        z, z_prev = algebra.z(j), algebra.z(j - 1)
        eps = algebra.eps(j)
        if x * y != y * x * eps + z_prev:
            failed.append(f"x{j}y{j}")
        if not commutator(z_prev, x).is_zero() or not commutator(z_prev, y).is_zero():
            failed.append(f"z{j - 1} commutes with x{j}, y{j}")
        if z - z_prev != y * x * (eps - algebra.coefficient(1)):
            failed.append(f"z{j} - z{j - 1}")
        if not algebra.q_mode:
            d = algebra.params.d(j)
            if x ** d * y != y * x ** d or y ** d * x != x * y ** d:
                failed.append(f"x{j}^{d}, y{j}^{d}")
        for k in range(1, n + 1):
            power = algebra.E[k - 1] if k <= j else 0
            if z * algebra.x(k) != algebra.x(k) * z * algebra.root_power(-power):
                failed.append(f"z{j}x{k}")
            if z * algebra.y(k) != algebra.y(k) * z * algebra.root_power(power):
                failed.append(f"z{j}y{k}")
            if not commutator(z, algebra.z(k)).is_zero():
                failed.append(f"z{j}z{k}")
    return failed
