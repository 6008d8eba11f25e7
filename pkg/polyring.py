"""Sparse commutative polynomials over cyclotomic fields.

Variables listed as invertible may carry negative exponents (Laurent
variables such as q and formal units). Polynomials know the cyclotomic
order of their coefficients; mixing orders needs an explicit `embed`.
"""

import logging
from typing import NamedTuple, Optional

from cyclotomic import FULL_UNIT_ORDERS, CycElem, RootOfUnity
from exc import NotDivisibleError, OrderMismatchError, RingMismatchError

logger = logging.getLogger(__name__)


class VarTable:
    """Ordered variable names plus the subset allowed negative exponents."""

    __slots__ = ("names", "invertible", "_index")

    def __init__(self, names, invertible=()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        invertible = frozenset(invertible)
        if not invertible <= set(names):
            raise ValueError(f"invertible names {sorted(invertible)} not in {names}")
        self.names = names
        self.invertible = invertible
        self._index = {name: i for i, name in enumerate(names)}

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise RingMismatchError(f"no variable {name!r} in {self.names}") from None

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, VarTable) and self.names == other.names
                and self.invertible == other.invertible)

    def __hash__(self):
        return hash((self.names, self.invertible))

    def __repr__(self):
        return f"VarTable({list(self.names)}, invertible={sorted(self.invertible)})"


def _grlex(exps):
    return (sum(exps), exps)


def _add(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


class MPoly:
    """A polynomial: map from exponent tuples to nonzero CycElem."""

    __slots__ = ("ring", "order", "terms")

    def __init__(self, ring, order, terms=None):
        self.ring = ring
        self.order = order
        self.terms = {}
        for exps, coeff in (terms or {}).items():
            if coeff.is_zero():
                continue
            if coeff.order != order:
                raise OrderMismatchError(
                    f"coefficient of order {coeff.order} in a polynomial of order {order}")
            for name, e in zip(ring.names, exps):
                if e < 0 and name not in ring.invertible:
                    raise RingMismatchError(f"negative exponent on {name!r}")
            self.terms[tuple(exps)] = coeff

    @classmethod
    def _raw(cls, ring, order, terms):
        poly = cls.__new__(cls)
        poly.ring = ring
        poly.order = order
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, ring, order):
        return cls._raw(ring, order, {})

    @classmethod
    def constant(cls, ring, order, value):
        if not isinstance(value, CycElem):
            value = CycElem.constant(order, value)
        elif value.order != order:
            raise OrderMismatchError(f"constant of order {value.order} in order {order}")
        if value.is_zero():
            return cls.zero(ring, order)
        return cls._raw(ring, order, {(0,) * len(ring): value})

    @classmethod
    def one(cls, ring, order):
        return cls.constant(ring, order, 1)

    @classmethod
    def variable(cls, ring, order, name, power=1):
        exps = [0] * len(ring)
        exps[ring.index(name)] = power
        return cls(ring, order, {tuple(exps): CycElem.one(order)})

    @classmethod
    def monomial(cls, ring, order, exps, coeff=1):
        if not isinstance(coeff, CycElem):
            coeff = CycElem.constant(order, coeff)
        return cls(ring, order, {tuple(exps): coeff})

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        """The degree-zero coefficient (zero if absent)."""

        return self.terms.get((0,) * len(self.ring), CycElem.zero(self.order))

    def is_monomial(self):
        return len(self.terms) == 1

    def degree(self, name):
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=None)

    def min_degree(self, name):
        i = self.ring.index(name)
        return min((e[i] for e in self.terms), default=None)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=None)

    def leading_term(self):
        """Graded-lex leading (exponents, coefficient)."""

        exps = max(self.terms, key=_grlex)
        return exps, self.terms[exps]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            if other.order != self.order:
                raise OrderMismatchError(f"orders {self.order} and {other.order}")
            return other
        return MPoly.constant(self.ring, self.order, other)

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            total = terms.get(exps)
            total = coeff if total is None else total + coeff
            if total.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = total
        return MPoly._raw(self.ring, self.order, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.ring, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        other = self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = _add(e1, e2)
                total = terms.get(exps)
                product = c1 * c2
                total = product if total is None else total + product
                if total.is_zero():
                    terms.pop(exps, None)
                else:
                    terms[exps] = total
        return MPoly._raw(self.ring, self.order, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value):
        if not isinstance(value, CycElem):
            value = CycElem.constant(self.order, value)
        if value.is_zero():
            return MPoly.zero(self.ring, self.order)
        return MPoly._raw(self.ring, self.order,
                          {e: c * value for e, c in self.terms.items()})

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse_monomial() ** (-exponent)
        result = MPoly.one(self.ring, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def inverse_monomial(self):
        """Inverse of a unit monomial (invertible variables only)."""

        if not self.is_monomial():
            raise NotDivisibleError(f"{self} is not a monomial")
        exps, coeff = next(iter(self.terms.items()))
        for name, e in zip(self.ring.names, exps):
            if e and name not in self.ring.invertible:
                raise NotDivisibleError(f"{name!r} is not invertible")
        inverse = coeff.inverse()
        return MPoly._raw(self.ring, self.order, {tuple(-e for e in exps): inverse})

    def shift(self, exps):
        """Multiply by the monomial with exponent vector `exps`."""

        return MPoly(self.ring, self.order,
                     {_add(e, exps): c for e, c in self.terms.items()})

    # -- ring changes -------------------------------------------------------

    def map_coefficients(self, fn, order=None):
        order = self.order if order is None else order
        return MPoly(self.ring, order, {e: fn(c) for e, c in self.terms.items()})

    def embed(self, order):
        if order == self.order:
            return self
        return self.map_coefficients(lambda c: c.embed(order), order)

    def descend(self, order):
        if order == self.order:
            return self
        return self.map_coefficients(lambda c: c.descend(order), order)

    def coerce(self, ring):
        """Re-express in `ring` by variable name; absent variables must not occur."""

        if ring == self.ring:
            return self
        positions = []
        for i, name in enumerate(self.ring.names):
            positions.append(ring.index(name) if name in ring else None)
        terms = {}
        for exps, coeff in self.terms.items():
            target = [0] * len(ring)
            for i, e in enumerate(exps):
                if not e:
                    continue
                if positions[i] is None:
                    raise RingMismatchError(
                        f"variable {self.ring.names[i]!r} does not exist in {ring.names}")
                target[positions[i]] = e
            terms[tuple(target)] = coeff
        return MPoly(ring, self.order, terms)

    def substitute(self, assignments, ring=None, order=None):
        return substitute(self, assignments, ring=ring, order=order)

    # -- comparisons and output ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return (self.ring == other.ring and self.order == other.order
                    and self.terms == other.terms)
        try:
            return self == MPoly.constant(self.ring, self.order, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.order, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms in graded-lex descending order."""

        return sorted(self.terms.items(), key=lambda item: _grlex(item[0]), reverse=True)

    def to_json(self):
        return [[list(exps), coeff.to_json()["coeffs"]] for exps, coeff in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            monomial = "*".join(factors)
            text = str(coeff)
            if not coeff.is_rational():
                text = f"({text})"
            if not monomial:
                parts.append(text)
            elif text == "1":
                parts.append(monomial)
            elif text == "-1":
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{text}*{monomial}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MPoly({self})"


def exact_divide(p, d) -> Optional[MPoly]:
    """Return p / d when it is a polynomial, else None."""

    d = p._check(d)
    if d.is_zero():
        raise NotDivisibleError("division by the zero polynomial")
    if p.is_zero():
        return MPoly.zero(p.ring, p.order)
    if d.is_monomial():
        exps, coeff = next(iter(d.terms.items()))
        inverse = coeff.inverse()
        terms = {tuple(a - b for a, b in zip(e, exps)): c * inverse
                 for e, c in p.terms.items()}
        if any(e < 0 and name not in p.ring.invertible
               for exps_ in terms for name, e in zip(p.ring.names, exps_)):
            return None
        return MPoly._raw(p.ring, p.order, terms)

    # Clear Laurent variables down to exponent 0 so division runs in the
    # polynomial subring.
    p_shift = _laurent_shift(p)
    d_shift = _laurent_shift(d)
    dividend = p.shift(tuple(-s for s in p_shift))
    divisor = d.shift(tuple(-s for s in d_shift))

    lead_exps, lead_coeff = divisor.leading_term()
    lead_inverse = lead_coeff.inverse()
    remainder = dict(dividend.terms)
    quotient = {}
    while remainder:
        exps = max(remainder, key=_grlex)
        diff = tuple(a - b for a, b in zip(exps, lead_exps))
        if any(e < 0 for e in diff):
            return None
        factor = remainder[exps] * lead_inverse
        quotient[diff] = factor
        for d_exps, d_coeff in divisor.terms.items():
            key = _add(diff, d_exps)
            value = remainder.get(key)
            value = -(factor * d_coeff) if value is None else value - factor * d_coeff
            if value.is_zero():
                remainder.pop(key, None)
            else:
                remainder[key] = value

    result = MPoly._raw(p.ring, p.order, quotient).shift(
        tuple(a - b for a, b in zip(p_shift, d_shift)))
    if result * d != p:
        return None
    return result


def _laurent_shift(p):
    shift = []
    for i, name in enumerate(p.ring.names):
        if name in p.ring.invertible:
            shift.append(min(e[i] for e in p.terms))
        else:
            shift.append(0)
    return tuple(shift)


def divide_by_q_minus_epsilon(p, epsilon, var="q"):
    """p / (var - epsilon) by synthetic division in `var`.

    Raises NotDivisibleError if p does not vanish at var = epsilon.
    """

    i = p.ring.index(var)
    groups = {}
    for exps, coeff in p.terms.items():
        rest = exps[:i] + (0,) + exps[i + 1:]
        groups.setdefault(rest, {})[exps[i]] = coeff
    terms = {}
    zero = CycElem.zero(p.order)
    for rest, coeffs in groups.items():
        low, high = min(coeffs), max(coeffs)
        acc = zero
        for k in range(high, low - 1, -1):
            acc = acc * epsilon + coeffs.get(k, zero)
            if k > low and not acc.is_zero():
                exps = list(rest)
                exps[i] = k - 1
                terms[tuple(exps)] = acc
        if not acc.is_zero():
            raise NotDivisibleError(f"polynomial does not vanish at {var} = {epsilon}")
    return MPoly(p.ring, p.order, terms)


def substitute(p, assignments, ring=None, order=None):
    """Ring homomorphism sending each named variable to its assigned value.

    Unassigned variables map to the variable of the same name in the target
    ring. Values that are not MPoly become constants of the target ring.
    """

    if ring is None:
        images = [v for v in assignments.values() if isinstance(v, MPoly)]
        ring = images[0].ring if images else p.ring
    if order is None:
        images = [v for v in assignments.values() if isinstance(v, MPoly)]
        order = images[0].order if images else p.order
    if not assignments and ring == p.ring and order == p.order:
        return p
    source = p.embed(order) if p.order != order else p

    values = []
    for name in p.ring.names:
        if name in assignments:
            value = assignments[name]
            if not isinstance(value, MPoly):
                value = MPoly.constant(ring, order, value)
            elif value.ring != ring or value.order != order:
                raise RingMismatchError(f"image of {name!r} lives in another ring")
        else:
            value = MPoly.variable(ring, order, name)
        values.append(value)

    cache = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            if e < 0 and p.ring.names[i] not in p.ring.invertible:
                raise RingMismatchError(f"negative power of {p.ring.names[i]!r}")
            cache[key] = values[i] ** e
        return cache[key]

    result = MPoly.zero(ring, order)
    for exps, coeff in source.terms.items():
        term = MPoly.constant(ring, order, coeff)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def substitute_power(p, name, k, image):
    """Replace name^(k*t) by image^t; every exponent of `name` must be a multiple of k."""

    i = p.ring.index(name)
    ring, order = image.ring, image.order
    source = p.embed(order) if p.order != order else p
    others = {}
    for j, other in enumerate(p.ring.names):
        if j != i:
            others[j] = MPoly.variable(ring, order, other)
    result = MPoly.zero(ring, order)
    powers = {}
    for exps, coeff in source.terms.items():
        if exps[i] % k:
            raise NotDivisibleError(f"exponent {exps[i]} of {name!r} is not a multiple of {k}")
        t = exps[i] // k
        if t not in powers:
            powers[t] = image ** t
        term = MPoly.constant(ring, order, coeff) * powers[t]
        for j, e in enumerate(exps):
            if j != i and e:
                term = term * others[j] ** e
        result = result + term
    return result


def is_polynomial_in_power(p, name, g):
    """True iff every exponent of `name` in p is divisible by g."""

    i = p.ring.index(name)
    return all(exps[i] % g == 0 for exps in p.terms)


class PolyMatrix:
    """A square matrix of MPoly over one ring."""

    def __init__(self, rows, ring, order):
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError("matrix is not square")
        self.rows = [list(row) for row in rows]
        self.ring = ring
        self.order = order

    @classmethod
    def identity(cls, size, ring, order):
        zero, one = MPoly.zero(ring, order), MPoly.one(ring, order)
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)],
                   ring, order)

    @property
    def size(self):
        return len(self.rows)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __matmul__(self, other):
        zero = MPoly.zero(self.ring, self.order)
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                total = zero
                for k in range(n):
                    a = self.rows[i][k]
                    if a.terms:
                        b = other.rows[k][j]
                        if b.terms:
                            total = total + a * b
                row.append(total)
            rows.append(row)
        return PolyMatrix(rows, self.ring, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def trace(self):
        total = MPoly.zero(self.ring, self.order)
        for i in range(self.size):
            total = total + self.rows[i][i]
        return total

    def submatrix(self, rows, cols):
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows],
                          self.ring, self.order)

    def determinant(self):
        return block_determinant(self)


def bareiss_determinant(matrix):
    """Fraction-free single-step Bareiss elimination."""

    n = matrix.size
    one = MPoly.one(matrix.ring, matrix.order)
    if n == 0:
        return one
    zero = MPoly.zero(matrix.ring, matrix.order)
    a = [list(row) for row in matrix.rows]
    negate = False
    previous = one
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    negate = not negate
                    break
            else:
                return zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = a[i][j] * pivot - a[i][k] * a[k][j]
                quotient = exact_divide(numerator, previous)
                if quotient is None:
                    raise NotDivisibleError(f"inexact Bareiss step at ({i}, {j})")
                a[i][j] = quotient
            a[i][k] = zero
        previous = pivot
    det = a[n - 1][n - 1]
    return -det if negate else det


def cofactor_determinant(matrix):
    """Laplace expansion along the first row; reference for small sizes."""

    n = matrix.size
    if n == 0:
        return MPoly.one(matrix.ring, matrix.order)
    if n == 1:
        return matrix.rows[0][0]
    total = MPoly.zero(matrix.ring, matrix.order)
    for j in range(n):
        entry = matrix.rows[0][j]
        if entry.is_zero():
            continue
        minor = matrix.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = entry * cofactor_determinant(minor)
        total = total - term if j % 2 else total + term
    return total


def _permutation_sign(order):
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def block_determinant(matrix):
    """Determinant via the connected blocks of the nonzero pattern."""

    n = matrix.size
    parent = list(range(2 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(n):
            if not matrix.rows[i][j].is_zero():
                parent[find(i)] = find(n + j)

    blocks = {}
    for node in range(2 * n):
        rows, cols = blocks.setdefault(find(node), ([], []))
        if node < n:
            rows.append(node)
        else:
            cols.append(node - n)

    result = MPoly.one(matrix.ring, matrix.order)
    row_order, col_order = [], []
    for rows, cols in sorted(blocks.values(), key=lambda b: (b[0] or b[1])[0]):
        if len(rows) != len(cols):
            return MPoly.zero(matrix.ring, matrix.order)
        row_order.extend(rows)
        col_order.extend(cols)
        result = result * bareiss_determinant(matrix.submatrix(rows, cols))
    logger.debug("determinant of size %d split into %d blocks", n, len(blocks))
    if _permutation_sign(row_order) * _permutation_sign(col_order) < 0:
        result = -result
    return result


class Associate(NamedTuple):
    """Witness of p = unit * q.

    `certified` is True when the constant is +-e^k and the order is one where
    those are all the units of Z[e] (1, 2, 3, 4, 6); otherwise the constant
    is only reported.
    """

    certified: bool
    constant: CycElem
    root: Optional[RootOfUnity]
    monomial: tuple

    def describe(self):
        if self.root is not None:
            sign = "+" if self.root.sign > 0 else "-"
            text = f"{sign}e^{self.root.power}" if self.root.power else f"{sign}1"
        else:
            text = f"constant {self.constant} (not verified unit)"
        if any(e for _, e in self.monomial):
            text += "*" + "*".join(f"{name}^{e}" for name, e in self.monomial if e)
        return text

    def to_json(self):
        return {
            "certified": self.certified,
            "unit": self.describe(),
            "constant": self.constant.to_json(),
            "monomial": {name: e for name, e in self.monomial if e},
        }


def is_associate(p, q, unit_names=None) -> Optional[Associate]:
    """Find a unit u with p = u*q; see Associate for the certification rule."""

    q = p._check(q)
    # q is never a unit
    names = (p.ring.invertible if unit_names is None else frozenset(unit_names)) - {"q"}
    if q.is_zero() or p.is_zero():
        if q.is_zero() and p.is_zero():
            one = CycElem.one(p.order)
            return Associate(True, one, RootOfUnity(1, 0), ())
        return None
    quotient = exact_divide(p, q)
    if quotient is None or not quotient.is_monomial():
        return None
    exps, coeff = next(iter(quotient.terms.items()))
    monomial = tuple(zip(p.ring.names, exps))
    if any(e and name not in names for name, e in monomial):
        return None
    root = coeff.as_root_of_unity()
    certified = root is not None and p.order in FULL_UNIT_ORDERS
    if root is None:
        logger.warning("associate up to the constant %s, which is not +-e^k", coeff)
    elif not certified:
        logger.warning("order %d has units beyond +-e^k; constant %s reported only",
                       p.order, coeff)
    return Associate(certified, coeff, root, monomial)
