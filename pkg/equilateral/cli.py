# equilateral/cli.py
import functools
import logging
import math
from typing import Optional

import click

from config import Config
from equilateral.const import (
    EXIT_INVALID_INPUT,
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    FAMILIES,
    HINTS,
    STATUS_EXTENSION_FOUND,
)
from equilateral.constructions import construct_family, table_records, table_rows
from equilateral.errors import EquilateralError, NotEquilateralError
from equilateral.hadamard import METHODS, construct_hadamard, to_simplex
from equilateral.space import check_equilateral, spec_to_dict
from equilateral.utils import dumps, format_csv, load_points, load_space, read_json
from equilateral.verification import check_maximal, extend_linf

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ("p", "regime", "k1", "k2", "C", "d0", "cond12", "cond13", "cond14")


def handle_errors(f):
    """Map library and I/O failures onto the documented exit codes."""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return f(*args, **kwargs)
        except NotEquilateralError as e:
            click.echo(f"Verification failed: {e}", err=True)
            ctx.exit(EXIT_VERIFICATION_FAILED)
        except EquilateralError as e:
            click.echo(f"Invalid input: {e}", err=True)
            ctx.exit(EXIT_INVALID_INPUT)
        except OSError as e:
            click.echo(f"I/O error: {e}", err=True)
            ctx.exit(EXIT_IO_ERROR)
    return wrapper


def emit(text: str, output: Optional[str]):
    """Artifacts go to the output file when given, otherwise to standard output."""
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Wrote {output}")
    else:
        click.echo(text, nl=False)


@click.group()
@click.option('--seed', type=int, default=None, help='Seed for every randomised search (default from config).')
@click.option('--tolerance', type=float, default=None, help='Distance tolerance of certificates.')
@click.option('--starts', type=int, default=None, help='Random starts of the numeric searches.')
@click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
              default=None, help='Log level for messages on standard error.')
@click.pass_context
def cli(ctx, seed, tolerance, starts, log_level):
    """Construct and certify maximal equilateral sets in lp spaces and their sums."""
    from equilateral import configure_logging

    configure_logging(log_level or Config.LOG_LEVEL, Config.LOG_FILE)
    ctx.ensure_object(dict)
    ctx.obj['seed'] = Config.SEED if seed is None else seed
    ctx.obj['tolerance'] = Config.TOLERANCE if tolerance is None else tolerance
    ctx.obj['starts'] = Config.SEARCH_STARTS if starts is None else starts
    ctx.obj['budget'] = Config.FIXED_POINT_BUDGET
    if not ctx.obj['tolerance'] > 0:
        raise click.BadParameter("tolerance must be positive", param_hint='--tolerance')


@cli.command()
@click.option('--family', required=True, type=click.Choice(FAMILIES))
@click.option('--p', 'p', type=str, default=None, help='Exponent (a number or "inf").')
@click.option('--d', 'd', type=int, default=None, help='Dimension.')
@click.option('--k1', type=int, default=None)
@click.option('--k2', type=int, default=None)
@click.option('--sign', type=click.Choice(['plus', 'minus']), default='plus')
@click.option('--eps', type=float, default=None, help='Perturbation size of the fixed-lp family.')
@click.option('--oracle', type=str, default=None, help='Built-in oracle lp:P for the fixed-point families.')
@click.option('-o', '--output', type=click.Path(dir_okay=False), default=None)
@click.pass_context
@handle_errors
def construct(ctx, family, p, d, k1, k2, sign, eps, oracle, output):
    """Build a family and print {"space", "points", "common_distance"} as JSON."""
    exponent = None
    if p is not None:
        exponent = math.inf if p.lower() in ("inf", "infinity") else _float_option(p, '--p')
    options = {}
    if family.startswith('fixed'):
        options = {'seed': ctx.obj['seed'], 'budget': ctx.obj['budget']}
    construction = construct_family(family, p=exponent, d=d, k1=k1, k2=k2, sign=sign, eps=eps,
                                    oracle=oracle, tolerance=ctx.obj['tolerance'], **options)
    emit(dumps({
        "family": construction.family,
        "space": spec_to_dict(construction.space),
        "points": construction.points,
        "common_distance": construction.common_distance,
        "metadata": construction.metadata,
    }), output)


def _float_option(value: str, name: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise click.BadParameter(f"{value!r} is not a number", param_hint=name)


@cli.command()
@click.option('--space', 'space_path', required=True, type=click.Path(dir_okay=False))
@click.option('--points', 'points_path', required=True, type=click.Path(dir_okay=False))
@click.option('--maximal', is_flag=True, help='Also decide whether the set extends.')
@click.option('--hint', type=click.Choice(HINTS), default=None, help='Family reduction for the maximality check.')
@click.option('-o', '--output', type=click.Path(dir_okay=False), default=None)
@click.pass_context
@handle_errors
def verify(ctx, space_path, points_path, maximal, hint, output):
    """Certify that the points are equilateral (and maximal with --maximal)."""
    space = load_space(read_json(space_path))
    points = load_points(read_json(points_path))
    certificate = check_equilateral(space, points, tolerance=ctx.obj['tolerance'])
    document = {
        "space": spec_to_dict(space),
        "certificate": {key: value for key, value in certificate.to_dict().items() if key != "points"},
    }
    exit_code = EXIT_OK
    if maximal:
        verdict = check_maximal(space, certificate, family_hint=hint, starts=ctx.obj['starts'],
                                seed=ctx.obj['seed'])
        document["verdict"] = verdict.to_dict()
        if verdict.status == STATUS_EXTENSION_FOUND:
            click.echo(f"Not maximal: extension at {verdict.witness.tolist()}", err=True)
            exit_code = EXIT_VERIFICATION_FAILED
    emit(dumps(document), output)
    ctx.exit(exit_code)


@cli.command()
@click.option('--points', 'points_path', required=True, type=click.Path(dir_okay=False))
@click.option('--lambda', 'lam', required=True, type=float)
@click.option('-o', '--output', type=click.Path(dir_okay=False), default=None)
@click.pass_context
@handle_errors
def extend(ctx, points_path, lam, output):
    """Extend k <= d lambda-equilateral points of l_inf^d by one point."""
    points = load_points(read_json(points_path))
    point = extend_linf(points, lam, tolerance=ctx.obj['tolerance'])
    emit(dumps({"point": point, "lambda": lam}), output)


@cli.command()
@click.option('--order', required=True, type=int)
@click.option('--method', type=click.Choice(METHODS), default='auto')
@click.option('--simplex', is_flag=True, help='Print the simplex vertices instead of the matrix.')
@click.option('-o', '--output', type=click.Path(dir_okay=False), default=None)
@handle_errors
def hadamard(order, method, simplex, output):
    """Print a Hadamard matrix, one row of +-1 entries per line."""
    matrix = construct_hadamard(order, method)
    rows = to_simplex(matrix).vertices if simplex else matrix.entries
    emit("".join(" ".join(str(int(value)) for value in row) + "\n" for row in rows), output)


@cli.command()
@click.option('--p-min', type=float, default=None)
@click.option('--p-max', type=float, default=None)
@click.option('--steps', type=int, default=None)
@click.option('--p', 'p_values', type=float, multiple=True, help='Explicit exponents (repeatable).')
@click.option('-o', '--output', type=click.Path(dir_okay=False), default=None)
@handle_errors
def table(p_min, p_max, steps, p_values, output):
    """CSV of the regime, (k1, k2), C and d0 for each exponent."""
    if p_values:
        records = table_records(p_values)
    elif None not in (p_min, p_max, steps):
        records = table_rows(p_min, p_max, steps)
    else:
        raise click.UsageError("Pass --p-min, --p-max and --steps, or at least one --p")
    emit(format_csv(records, TABLE_COLUMNS), output)
