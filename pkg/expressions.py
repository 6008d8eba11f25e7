"""Element expressions such as ``y1^2 - e*y1*x1 + 1/2*z1`` parsed into WeylElem.

Names: x1..xn, y1..yn, z0..zn (noncommuting), c, q and formal units
(commuting), and e for the primitive root e_D. Operators + - * ^ and
parentheses; powers of generators must be non-negative integers.
"""

import logging
from tokenize import TokenError

from sympy import Add, Integer, Mul, Pow, Rational, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from cyclotomic import CycElem
from exc import ExpressionError, NotDivisibleError

logger = logging.getLogger(__name__)

TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _symbols(algebra):
    names = {}
    for j in range(1, algebra.n + 1):
        for letter in "xy":
            names[f"{letter}{j}"] = Symbol(f"{letter}{j}", commutative=False)
    for j in range(algebra.n + 1):
        names[f"z{j}"] = Symbol(f"z{j}", commutative=False)
    names["e"] = Symbol("e")
    for name in algebra.ring.names:
        names[name] = Symbol(name)
    return names


def parse_element(text, algebra):
    """Parse `text` into an element of `algebra`; ExpressionError on bad input."""

    symbols = _symbols(algebra)
    try:
        expr = parse_expr(text, local_dict=dict(symbols), global_dict={
            "Integer": Integer, "Rational": Rational, "Symbol": Symbol},
            transformations=TRANSFORMATIONS)
    except (SyntaxError, TokenError, TypeError, NameError, ValueError) as err:
        raise ExpressionError(f"cannot parse: {err}", text) from None
    unknown = {str(s) for s in expr.free_symbols} - set(symbols)
    if unknown:
        raise ExpressionError(f"unknown names {sorted(unknown)}", text)
    try:
        element = _convert(expr, algebra, text)
    except (NotDivisibleError, IndexError) as err:
        raise ExpressionError(str(err), text) from None
    logger.debug("parsed %r as %s", text, element)
    return element


def _convert(expr, algebra, text):
    if isinstance(expr, Add):
        result = algebra.zero()
        for arg in expr.args:
            result = result + _convert(arg, algebra, text)
        return result
    if isinstance(expr, Mul):
        commuting, ordered = expr.args_cnc()
        result = algebra.one()
        for arg in commuting + ordered:
            result = result * _convert(arg, algebra, text)
        return result
    if isinstance(expr, Pow):
        base, exponent = expr.args
        if not exponent.is_Integer:
            raise ExpressionError(f"exponent {exponent} is not an integer", text)
        if base == Symbol("e"):
            return algebra.scalar(CycElem.root(algebra.order, int(exponent)))
        if isinstance(base, Symbol) and base.name in algebra.ring:
            return algebra.scalar(algebra.variable(base.name) ** int(exponent))
        if exponent < 0:
            if base.is_Rational:
                return algebra.scalar(Rational(base) ** int(exponent))
            raise ExpressionError(f"negative power of {base}", text)
        return _convert(base, algebra, text) ** int(exponent)
    if expr.is_Rational:
        return algebra.scalar(Rational(expr))
    if isinstance(expr, Symbol):
        name = expr.name
        if name == "e":
            return algebra.scalar(CycElem.root(algebra.order, 1))
        if name in algebra.ring:
            return algebra.scalar(algebra.variable(name))
        if name[0] == "z":
            return algebra.z(int(name[1:]))
        return algebra.generator(name[0], int(name[1:]))
    raise ExpressionError(f"unsupported expression {expr}", text)
