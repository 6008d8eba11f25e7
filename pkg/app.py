import json
import logging
import os
import sys
import time
from functools import wraps

import click

from acceptance import run_acceptance
from autos import (aut_group_shape, build_automorphism, formal_automorphism, invert,
                   isomorphic, scalar_violations, verify_homomorphism, z_image_check)
from center import (check_center_scan, center_spanning_monomials, is_central, to_center_poly,
                    verify_specz)
from cyclotomic import ring_order
from discriminant import CONVENTIONS, discriminant, verify_discriminant
from exc import IdentityViolation, ParamsError, RecognitionError, WeylError
from expressions import parse_element
from params import ExpVec, check_L, default_L, is_free_over_center, load
from poisson import poisson_bracket, verify_prop33
from weyl_core import algebra_for

logger = logging.getLogger(__name__)

# Defaults come from the environment (useful for batch runs) and can be
# overridden on the command line.
DEFAULT_SEED = int(os.environ.get('WEYL_SEED', 0))
DEFAULT_BOUND = int(os.environ.get('WEYL_BOUND', 8))
DEFAULT_LOG_LEVEL = os.environ.get('WEYL_LOG_LEVEL', 'WARNING')

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


##############################################################################
# Option parsing and output


def parse_exponents(ctx, param, value):
    """'2,4' -> (2, 4)."""

    if value is None:
        return None
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma separated integers, got {value!r}")


def parse_only(ctx, param, value):
    if value is None:
        return None
    return frozenset(parse_exponents(ctx, param, value))


def with_mode(P, mode):
    """Apply --mode c|unit on top of the parameter file."""

    if mode is None:
        return P
    return P.with_mode(c_formal=(mode == "c"))


def _as_text(payload, indent=""):
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_as_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.extend(_as_text(item, indent + "  "))
                lines.append("")
        else:
            rendered = json.dumps(value, ensure_ascii=False) \
                if isinstance(value, (list, bool)) or value is None else value
            lines.append(f"{indent}{key}: {rendered}")
    return lines


def emit(ctx, payload, ok=True):
    """Write the report to stdout and leave with 0 or 1."""

    if ctx.obj["format"] == "text":
        click.echo("\n".join(_as_text(payload)))
    else:
        click.echo(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    ctx.exit(EXIT_OK if ok else EXIT_FAILED)


def input_errors(command):
    """Report malformed input and failed computations on stderr with exit code 2."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except WeylError as err:
            click.echo(f"error: {err}", err=True)
            click.get_current_context().exit(EXIT_INPUT)
        except json.JSONDecodeError as err:
            click.echo(f"error: {err.msg} at line {err.lineno} column {err.colno}", err=True)
            click.get_current_context().exit(EXIT_INPUT)

    return wrapper


params_option = click.option(
    '--params', 'params_path', required=True,
    type=click.Path(exists=True, dir_okay=False), help="Parameter file (JSON).")
L_option = click.option(
    '--L', 'L', callback=parse_exponents, help="Central exponents, e.g. '2,4'.")
mode_option = click.option(
    '--mode', type=click.Choice(["c", "unit"]), help="z_0 = c (formal) or z_0 = 1.")
convention_option = click.option(
    '--convention', type=click.Choice(CONVENTIONS), default="y-first", show_default=True,
    help="Basis order of the T-basis.")


@click.group()
@click.option('--format', 'output_format', type=click.Choice(["json", "text"]),
              default="json", show_default=True)
@click.option('--log-level', default=DEFAULT_LOG_LEVEL, show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.pass_context
def cli(ctx, output_format, log_level):
    """Exact computations in quantized Weyl algebras at roots of unity."""

    logging.basicConfig(level=log_level.upper(), stream=sys.stderr, force=True,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = {"format": output_format}


##############################################################################
# Parameters and centers


@cli.command()
@params_option
@click.pass_context
@input_errors
def validate(ctx, params_path):
    """Check a parameter file and show what it determines."""

    P = load(params_path)
    payload = {
        "params": P.to_json(),
        "D": P.D,
        "free_over_center": is_free_over_center(P),
        "default_L": list(default_L(P)),
    }
    emit(ctx, payload)


@cli.command('center-basis')
@params_option
@click.option('--bound', default=DEFAULT_BOUND, show_default=True, type=click.IntRange(0),
              help="Total degree bound.")
@click.option('--scan', is_flag=True, help="Also run the brute-force center scan.")
@click.pass_context
@input_errors
def center_basis(ctx, params_path, bound, scan):
    """List the spanning central monomials up to the degree bound."""

    P = load(params_path)
    basis = [{"b": list(e.b), "a": list(e.a), "element": str(u)}
             for e, u in center_spanning_monomials(P, bound)]
    payload = {"bound": bound, "basis": basis}
    ok = True
    if scan:
        report = check_center_scan(P, bound)
        payload["scan"] = report.to_json()
        ok = report.agrees
    emit(ctx, payload, ok)


@cli.command('is-central')
@params_option
@click.argument('expression')
@mode_option
@click.pass_context
@input_errors
def is_central_command(ctx, params_path, expression, mode):
    """Decide whether EXPRESSION is central, and write it in X, Y if so."""

    P = with_mode(load(params_path), mode)
    u = parse_element(expression, algebra_for(P))
    central = is_central(u)
    payload = {"element": str(u), "central": central}
    if central:
        recognized = to_center_poly(u)
        payload["center_poly"] = str(recognized) if recognized is not None else None
    emit(ctx, payload)


##############################################################################
# Discriminants and closed forms


@cli.command('discriminant')
@params_option
@L_option
@mode_option
@convention_option
@click.pass_context
@input_errors
def discriminant_command(ctx, params_path, L, mode, convention):
    """Discriminant of the trace form over T[c, x^L, y^L]."""

    P = with_mode(load(params_path), mode)
    L = check_L(P, L or default_L(P))
    started = time.perf_counter()
    try:
        result = discriminant(P, L, convention)
    except RecognitionError as err:
        emit(ctx, {"L": list(L), "error": str(err)}, ok=False)
    lam = 1
    for Lj in L:
        lam *= Lj * Lj
    emit(ctx, {"L": list(L), "lambda": lam, "convention": convention,
               "elapsed_ms": int((time.perf_counter() - started) * 1000),
               "discriminant": result.to_json()})


@cli.command()
@params_option
@click.option('--which', required=True,
              type=click.Choice(["theorem-b", "theorem-71", "prop33", "specz"]))
@L_option
@convention_option
@click.pass_context
@input_errors
def verify(ctx, params_path, which, L, convention):
    """Compare a computation with its closed form."""

    P = load(params_path)
    if which in ("theorem-b", "theorem-71"):
        report = verify_discriminant(P, L, which, convention)
        emit(ctx, report.to_json(), report.passed)
    if which == "prop33":
        report = verify_prop33(P)
        emit(ctx, report.to_json(), report.passed)
    results = {f"z{j}": verify_specz(P, j) for j in range(1, P.n + 1)}
    emit(ctx, {"which": which, "results": results}, all(results.values()))


##############################################################################
# Poisson brackets


@cli.command()
@params_option
@click.argument('first', required=False)
@click.argument('second', required=False)
@click.pass_context
@input_errors
def poisson(ctx, params_path, first, second):
    """Bracket table of X_j, Y_j, or the bracket of two central FIRST and SECOND."""

    P = load(params_path)
    if first is None:
        report = verify_prop33(P)
        emit(ctx, report.to_json(), report.passed)
    if second is None:
        raise click.UsageError("give two central elements or none")
    algebra = algebra_for(P.with_mode(c_formal=False, q_deformed=False))
    polys = []
    for text in (first, second):
        recognized = to_center_poly(parse_element(text, algebra))
        if recognized is None:
            raise ParamsError(f"{text!r} is not a polynomial in x^d, y^d", "expression")
        polys.append(recognized)
    value = poisson_bracket(P, *polys)
    emit(ctx, {"first": str(polys[0]), "second": str(polys[1]), "bracket": str(value)})


##############################################################################
# Automorphisms and isomorphisms


def _scalars(texts, algebra, name):
    values = []
    for text in texts:
        u = parse_element(str(text), algebra)
        zero = ExpVec.zero(algebra.n)
        if set(u.terms) - {zero}:
            raise ParamsError(f"{text!r} is not a scalar", name)
        values.append(u.coefficient(zero))
    return values


def _load_aut(path, source, target):
    with open(path) as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict) or not {"tau", "mu", "nu"} <= set(raw):
        raise ParamsError("an automorphism needs tau, mu and nu", path)
    units = tuple(raw.get("units", ()))
    target = target.with_mode(formal_units=tuple(target.mode.formal_units) + units)
    algebra = algebra_for(target, ring_order(source.D, target.D))
    mu = _scalars(raw["mu"], algebra, "mu")
    nu = _scalars(raw["nu"], algebra, "nu")
    return build_automorphism(source, target, raw["tau"], mu, nu)


@cli.command('aut-check')
@params_option
@click.option('--params2', 'params2_path', type=click.Path(exists=True, dir_okay=False),
              help="Target parameter file; the source is used when omitted.")
@click.option('--tau', callback=parse_exponents, help="Sign pattern, e.g. '1,-1'.")
@click.option('--spec', 'spec_path', type=click.Path(exists=True, dir_okay=False),
              help="JSON with tau, mu, nu (element expressions) and optional units.")
@click.pass_context
@input_errors
def aut_check(ctx, params_path, params2_path, tau, spec_path):
    """Check that a sign pattern and scalars define an isomorphism."""

    source = load(params_path)
    target = load(params2_path) if params2_path else source
    try:
        if spec_path:
            spec = _load_aut(spec_path, source, target)
        else:
            tau = tau or isomorphic(source, target)
            if tau is None:
                emit(ctx, {"isomorphism": False,
                           "violations": [list(v) for v in scalar_violations(
                               source, target, (1,) * source.n)]}, ok=False)
            spec = formal_automorphism(source, target, tau)
    except IdentityViolation as err:
        emit(ctx, {"isomorphism": False, "error": err.message,
                   "location": list(err.location or ())}, ok=False)

    relations = verify_homomorphism(spec)
    z_images = all(z_image_check(spec, j) for j in range(source.n + 1))
    payload = {"isomorphism": relations and z_images, "relations": relations,
               "z_images": z_images, "map": spec.to_json(),
               "inverse": invert(spec).to_json(), "shape": aut_group_shape(source).to_json()}
    emit(ctx, payload, relations and z_images)


@cli.command('isomorphic')
@params_option
@click.option('--params2', 'params2_path', required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@input_errors
def isomorphic_command(ctx, params_path, params2_path):
    """Search the sign patterns for an isomorphism between two algebras."""

    first, second = load(params_path), load(params2_path)
    tau = isomorphic(first, second)
    emit(ctx, {"isomorphic": tau is not None, "tau": list(tau) if tau else None})


##############################################################################
# Acceptance suite


@cli.command()
@click.option('--seed', default=DEFAULT_SEED, show_default=True, type=int)
@click.option('--quick', is_flag=True, help="Smaller random counts and instances.")
@click.option('--only', callback=parse_only, help="Criterion numbers, e.g. '1,3'.")
@click.pass_context
def acceptance(ctx, seed, quick, only):
    """Run the numbered acceptance criteria."""

    results = run_acceptance(seed, quick, only)
    emit(ctx, {"seed": seed, "quick": quick,
               "criteria": [result.to_json() for result in results]},
         all(result.passed for result in results))


if __name__ == '__main__':
    cli()
