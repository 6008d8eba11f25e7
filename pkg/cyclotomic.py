"""Exact arithmetic in the cyclotomic fields Q(e_D).

An element is stored as its residue modulo the D-th cyclotomic polynomial,
written in the power basis 1, e, ..., e^(phi(D)-1) (lowest power first).
The power basis is an integral basis of Z[e_D], so integrality is a
property of the stored rationals.
"""

import logging
from functools import lru_cache
from typing import NamedTuple, Optional

from sympy import Matrix, Rational, cyclotomic_poly, ilcm, totient
from sympy.polys.densearith import dup_mul, dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.polyerrors import CoercionFailed, NotInvertible

from exc import DescentError, NotDivisibleError, OrderMismatchError

logger = logging.getLogger(__name__)

# Orders whose unit group of Z[e] is exactly {+-e^k}.
FULL_UNIT_ORDERS = frozenset({1, 2, 3, 4, 6})


@lru_cache(maxsize=None)
def cyclotomic_polynomial(D):
    """Integer coefficients of Phi_D, highest degree first."""

    if D < 1:
        raise ValueError(f"cyclotomic order must be positive, got {D}")
    return [int(c) for c in cyclotomic_poly(D, polys=True).all_coeffs()]


@lru_cache(maxsize=None)
def _modulus(D):
    return [QQ(c) for c in cyclotomic_polynomial(D)]


@lru_cache(maxsize=None)
def _phi(D):
    return int(totient(D))


def _to_qq(value):
    if isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    return QQ.convert(value)


def _dense(coeffs):
    return dup_strip(list(reversed(coeffs)))


def _reduce(D, dense):
    """Reduce a dense (highest first) QQ polynomial modulo Phi_D."""

    phi = _phi(D)
    if len(dense) > phi:
        dense = dup_rem(dense, _modulus(D), QQ)
    low = list(reversed(dense))
    return tuple(low + [QQ(0)] * (phi - len(low)))


def ring_order(*orders):
    """Smallest order containing all the given cyclotomic rings."""

    result = 1
    for order in orders:
        result = ilcm(result, order)
    return int(result)


class RootOfUnity(NamedTuple):
    """An element recognized as sign * e^power."""

    sign: int
    power: int


class CycElem:
    """An element of Q(e_D), e_D = exp(2 pi i / D)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=()):
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        self.order = order
        values = [_to_qq(c) for c in coeffs]
        phi = _phi(order)
        if len(values) <= phi:
            self.coeffs = tuple(values + [QQ(0)] * (phi - len(values)))
        else:
            self.coeffs = _reduce(order, _dense(values))

    @classmethod
    def _raw(cls, order, coeffs):
        elem = cls.__new__(cls)
        elem.order = order
        elem.coeffs = coeffs
        return elem

    @classmethod
    def constant(cls, order, value):
        return cls(order, [value])

    @classmethod
    def zero(cls, order):
        return cls(order)

    @classmethod
    def one(cls, order):
        return cls(order, [1])

    @classmethod
    def root(cls, order, power=1):
        """e_D^power; negative powers are taken modulo D."""

        return _root_power(order, power % order)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integral(self):
        return all(QQ.denom(c) == 1 for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if isinstance(other, CycElem):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"cannot combine orders {self.order} and {other.order}")
            return other
        return CycElem.constant(self.order, other)

    def __add__(self, other):
        other = self._check(other)
        return CycElem._raw(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycElem._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        return CycElem._raw(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycElem):
            scalar = _to_qq(other)
            return CycElem._raw(self.order, tuple(a * scalar for a in self.coeffs))
        other = self._check(other)
        if len(self.coeffs) == 1:
            return CycElem._raw(self.order, (self.coeffs[0] * other.coeffs[0],))
        product = dup_mul(_dense(self.coeffs), _dense(other.coeffs), QQ)
        return CycElem._raw(self.order, _reduce(self.order, product))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CycElem):
            scalar = _to_qq(other)
            if not scalar:
                raise ZeroDivisionError("division of a cyclotomic element by 0")
            return CycElem._raw(self.order, tuple(a / scalar for a in self.coeffs))
        inverse = self._check(other).inverse()
        if inverse is None:
            raise ZeroDivisionError("division of a cyclotomic element by 0")
        return self * inverse

    def __pow__(self, exponent):
        if exponent < 0:
            inverse = self.inverse()
            if inverse is None:
                raise NotDivisibleError("negative power of 0")
            return inverse ** (-exponent)
        result = CycElem.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def inverse(self) -> Optional["CycElem"]:
        """Multiplicative inverse, or None for 0."""

        if self.is_zero():
            return None
        if len(self.coeffs) == 1:
            return CycElem._raw(self.order, (QQ(1) / self.coeffs[0],))
        try:
            inverse = dup_invert(_dense(self.coeffs), _modulus(self.order), QQ)
        except NotInvertible:
            # Phi_D is irreducible, so this only happens for 0.
            return None
        return CycElem._raw(self.order, _reduce(self.order, inverse))

    # -- structure ----------------------------------------------------------

    def as_root_of_unity(self) -> Optional[RootOfUnity]:
        """Return (sign, k) with self = sign * e^k, preferring sign +1."""

        for sign in (1, -1):
            target = self if sign == 1 else -self
            for k in range(self.order):
                if _root_power(self.order, k) == target:
                    return RootOfUnity(sign, k)
        return None

    def embed(self, target_order):
        """Image under e_D -> e_T^(T/D)."""

        if target_order % self.order:
            raise OrderMismatchError(
                f"order {self.order} does not divide {target_order}")
        if target_order == self.order:
            return self
        step = target_order // self.order
        dense = [QQ(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            dense[i * step] = c
        return CycElem._raw(target_order, _reduce(target_order, _dense(dense)))

    def descend(self, target_order):
        """Write self as the image of an element of order `target_order`.

        Raises DescentError when self is not in that subfield.
        """

        if self.order % target_order:
            raise OrderMismatchError(
                f"order {target_order} does not divide {self.order}")
        if target_order == self.order:
            return self
        if self.is_rational():
            return CycElem.constant(target_order, self.coeffs[0])
        basis = [CycElem.root(target_order, i).embed(self.order)
                 for i in range(_phi(target_order))]
        system = Matrix([[_to_rational(b.coeffs[r]) for b in basis]
                         for r in range(len(self.coeffs))])
        rhs = Matrix([_to_rational(c) for c in self.coeffs])
        try:
            solution, free = system.gauss_jordan_solve(rhs)
        except ValueError:
            raise DescentError(
                f"{self} does not lie in Q(e_{target_order})") from None
        if free.shape[0]:
            raise DescentError("degenerate descent system")
        return CycElem(target_order, [Rational(v) for v in solution])

    # -- comparisons and output ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycElem):
            if other.order != self.order:
                return NotImplemented
            return self.coeffs == other.coeffs
        try:
            return self == CycElem.constant(self.order, other)
        except (CoercionFailed, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def to_json(self):
        return {"order": self.order,
                "coeffs": [[int(QQ.numer(c)), int(QQ.denom(c))]
                           for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(data["order"], [QQ(num, den) for num, den in data["coeffs"]])

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            power = "" if k == 0 else ("e" if k == 1 else f"e^{k}")
            if not power:
                parts.append(_rational_str(c))
            elif c == 1:
                parts.append(power)
            elif c == -1:
                parts.append(f"-{power}")
            else:
                parts.append(f"{_rational_str(c)}*{power}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CycElem({self.order}, {self})"


def _to_rational(c):
    return Rational(int(QQ.numer(c)), int(QQ.denom(c)))


def _rational_str(c):
    num, den = int(QQ.numer(c)), int(QQ.denom(c))
    return str(num) if den == 1 else f"{num}/{den}"


@lru_cache(maxsize=None)
def _root_power(order, power):
    dense = [QQ(0)] * (power + 1)
    dense[0] = QQ(1)
    return CycElem._raw(order, _reduce(order, dense))


def q_integer(k, x):
    """[k]_x = 1 + x + ... + x^(k-1)."""

    result = CycElem.zero(x.order)
    term = CycElem.one(x.order)
    for _ in range(k):
        result = result + term
        term = term * x
    return result


def q_factorial(k, x):
    """[k]_x! = [1]_x [2]_x ... [k]_x."""

    result = CycElem.one(x.order)
    for i in range(1, k + 1):
        result = result * q_integer(i, x)
    return result
