"""Parameters (E, B) of a quantized Weyl algebra and their arithmetic.

epsilon_j = exp(2 pi i m_j/d_j) and beta_jk = exp(2 pi i m_jk/d_jk). The
representatives m are kept exactly as given: the q-deformation and the
Poisson bracket depend on them, not only on the roots of unity.
Indices in the public functions are 1-based, as in the formulas.
"""

import json
import logging
from collections.abc import Mapping, Sequence
from typing import NamedTuple

from sympy import Rational, igcd, ilcm

from exc import AssumptionViolated, ParamsError
from forms import BetaForm, EpsForm, ModeForm, ParamsForm, UnitForm, form_errors

logger = logging.getLogger(__name__)

RESERVED_NAMES = {"c", "q", "w", "e"}


class WeylMode(NamedTuple):
    c_formal: bool = False
    q_deformed: bool = False
    formal_units: tuple = ()


class ExpVec(NamedTuple):
    """Exponents of the normal monomial y^b x^a."""

    b: tuple
    a: tuple

    @classmethod
    def zero(cls, n):
        return cls((0,) * n, (0,) * n)

    def total_degree(self):
        return sum(self.b) + sum(self.a)

    def grading(self):
        return tuple(bj - aj for bj, aj in zip(self.b, self.a))


class WeylParams:
    """Validated (E, B) data plus mode flags; immutable."""

    __slots__ = ("n", "eps", "beta", "D", "mode")

    def __init__(self, n, eps, beta, mode=WeylMode()):
        self.n = n
        self.eps = tuple(tuple(e) for e in eps)
        self.beta = tuple(tuple(tuple(b) for b in row) for row in beta)
        self.mode = mode
        D = 1
        for _, d in self.eps:
            D = ilcm(D, d)
        for row in self.beta:
            for _, d in row:
                D = ilcm(D, d)
        self.D = int(D)

    def eps_fraction(self, j):
        m, d = self.eps[j - 1]
        return Rational(m, d)

    def beta_fraction(self, j, k):
        m, d = self.beta[j - 1][k - 1]
        return Rational(m, d)

    def d(self, j):
        return self.eps[j - 1][1]

    def with_mode(self, **changes):
        return WeylParams(self.n, self.eps, self.beta, self.mode._replace(**changes))

    def drop_first(self):
        """Parameters of the subalgebra on x_2, y_2, ..., x_n, y_n."""

        return WeylParams(self.n - 1, self.eps[1:],
                          [row[1:] for row in self.beta[1:]], self.mode)

    def to_json(self):
        beta = [[j + 1, k + 1, m, d]
                for j, row in enumerate(self.beta)
                for k, (m, d) in enumerate(row) if j < k and m]
        return {
            "n": self.n,
            "eps": [list(e) for e in self.eps],
            "beta": beta,
            "mode": {"c_formal": self.mode.c_formal,
                     "q_deformed": self.mode.q_deformed,
                     "formal_units": list(self.mode.formal_units)},
        }

    def __eq__(self, other):
        return (isinstance(other, WeylParams) and self.eps == other.eps
                and self.beta == other.beta and self.mode == other.mode)

    def __hash__(self):
        return hash((self.eps, self.beta, self.mode))

    def __repr__(self):
        eps = ", ".join(f"{m}/{d}" for m, d in self.eps)
        return f"<WeylParams n={self.n} eps=({eps}) D={self.D}>"


def _fail(errors):
    location, message = errors[0]
    raise ParamsError(message, location)


def validate(raw):
    """Validate raw parameter data (a decoded JSON object)."""

    if not isinstance(raw, Mapping):
        raise ParamsError("parameter data must be an object")
    form = ParamsForm(data=dict(raw))
    if not form.validate():
        _fail(list(form_errors(form, "params")))
    n = form.n.data

    eps_raw = raw.get("eps")
    if not isinstance(eps_raw, Sequence) or isinstance(eps_raw, str) or len(eps_raw) != n:
        raise ParamsError(f"expected a list of {n} [m, d] pairs", "eps")
    eps = []
    for j, entry in enumerate(eps_raw):
        location = f"eps[{j}]"
        if not isinstance(entry, Sequence) or isinstance(entry, str) or len(entry) != 2:
            raise ParamsError("expected [m, d]", location)
        form = EpsForm(data={"m": entry[0], "d": entry[1]})
        if not form.validate():
            _fail(list(form_errors(form, location)))
        m, d = form.m.data, form.d.data
        if d == 1:
            raise AssumptionViolated("epsilon_j must not be 1", location)
        if igcd(m, d) != 1:
            raise ParamsError(f"{m}/{d} is not in lowest terms", location)
        eps.append((m, d))

    beta = [[(0, 1)] * n for _ in range(n)]
    given = {}
    for i, entry in enumerate(raw.get("beta") or ()):
        location = f"beta[{i}]"
        if not isinstance(entry, Sequence) or isinstance(entry, str) or len(entry) != 4:
            raise ParamsError("expected [j, k, m, d]", location)
        form = BetaForm(data=dict(zip(("j", "k", "m", "d"), entry)))
        if not form.validate():
            _fail(list(form_errors(form, location)))
        j, k, m, d = form.j.data, form.k.data, form.m.data, form.d.data
        if j > n or k > n:
            raise ParamsError(f"index out of range 1..{n}", location)
        if j == k:
            if m % d:
                raise ParamsError("beta_jj must be 1", location)
            continue
        if igcd(m, d) != 1:
            raise ParamsError(f"{m}/{d} is not in lowest terms", location)
        if j > k:
            j, k, m = k, j, -m
        if (j, k) in given:
            # same root of unity: equal d, m equal mod d
            m0, d0 = given[(j, k)]
            if d0 != d or (m - m0) % d:
                raise ParamsError(f"beta is not skew-symmetric at ({j}, {k})", location)
            continue
        given[(j, k)] = (m, d)
        beta[j - 1][k - 1] = (m, d)
        beta[k - 1][j - 1] = (-m, d)

    mode_raw = raw.get("mode") or {}
    if not isinstance(mode_raw, Mapping):
        raise ParamsError("expected an object", "mode")
    form = ModeForm(data={key: mode_raw.get(key) for key in ("c_formal", "q_deformed")})
    if not form.validate():
        _fail(list(form_errors(form, "mode")))
    units = []
    for i, name in enumerate(mode_raw.get("formal_units") or ()):
        location = f"mode.formal_units[{i}]"
        unit = UnitForm(data={"name": name})
        if not unit.validate():
            _fail(list(form_errors(unit, location)))
        if name in RESERVED_NAMES or name in units or _is_generator_name(name):
            raise ParamsError(f"unit name {name!r} is reserved or repeated", location)
        units.append(name)
    mode = WeylMode(bool(form.c_formal.data), bool(form.q_deformed.data), tuple(units))

    params = WeylParams(n, eps, beta, mode)
    logger.debug("validated %r", params)
    return params


def _is_generator_name(name):
    return name[:1] in "xyz" and name[1:].isdigit()


def load(path):
    """Read and validate a JSON parameter file."""

    try:
        with open(path) as handle:
            raw = json.load(handle)
    except json.JSONDecodeError as err:
        raise ParamsError(err.msg, f"{path}:{err.lineno}:{err.colno}") from None
    except OSError as err:
        raise ParamsError(str(err), path) from None
    return validate(raw)


def make_params(eps, beta=(), **mode):
    """Shorthand used by scripts and tests: make_params([(1, 2)], [(1, 2, 1, 4)])."""

    return validate({"n": len(eps), "eps": [list(e) for e in eps],
                     "beta": [list(b) for b in beta], "mode": mode})


def is_free_over_center(P):
    """d_j | d_l and d_jk | d_l for all j <= l and all k."""

    for l in range(1, P.n + 1):
        d_l = P.d(l)
        for j in range(1, l + 1):
            if d_l % P.d(j):
                return False
            for k in range(1, P.n + 1):
                if d_l % P.beta[j - 1][k - 1][1]:
                    return False
    return True


def d_prime(P, j, k):
    """Denominator of m_j/d_j + m_jk/d_jk (smaller index first)."""

    if j == k:
        raise ParamsError("d' is defined only for j != k", f"({j}, {k})")
    if j > k:
        j, k = k, j
    return int((P.eps_fraction(j) + P.beta_fraction(j, k)).q)


def min_central_power(P, j, which):
    """Smallest L with x_j^L (which='x') or y_j^L (which='y') central."""

    result = P.d(j)
    for k in range(1, P.n + 1):
        if k == j:
            continue
        if which == "x":
            result = ilcm(result, d_prime(P, j, k))
        elif which == "y":
            result = ilcm(result, P.beta[j - 1][k - 1][1])
        else:
            raise ValueError(f"which must be 'x' or 'y', got {which!r}")
    return int(result)


def default_L(P):
    return tuple(P.d(j) for j in range(1, P.n + 1))


def check_L(P, L):
    """Raise ParamsError unless every x_j^L_j and y_j^L_j is central."""

    L = tuple(L)
    if len(L) != P.n:
        raise ParamsError(f"expected {P.n} exponents, got {len(L)}", "L")
    for j, power in enumerate(L, start=1):
        needed = ilcm(min_central_power(P, j, "x"), min_central_power(P, j, "y"))
        if power < 1 or power % needed:
            raise ParamsError(f"L_{j} must be a multiple of {needed}", "L")
    return L


def in_CEB(P, e):
    """Membership of the exponent vector e in C(E, B)."""

    n = P.n
    diff = e.grading()
    for j in range(n):
        if diff[j] % P.eps[j][1]:
            return False
    for k in range(1, n + 1):
        total = sum((diff[j - 1] * P.beta_fraction(j, k) for j in range(1, n + 1)),
                    Rational(0))
        total += sum(e.a[k - 1:]) * P.eps_fraction(k)
        if not total.is_integer:
            return False
    return True


def tensor_params(first, second):
    """Block-diagonal parameters for the tensor product (cross beta = 1)."""

    n = first.n + second.n
    beta = [[(0, 1)] * n for _ in range(n)]
    for j in range(first.n):
        for k in range(first.n):
            beta[j][k] = first.beta[j][k]
    for j in range(second.n):
        for k in range(second.n):
            beta[first.n + j][first.n + k] = second.beta[j][k]
    return WeylParams(n, first.eps + second.eps, beta, first.mode)
