import logging
import sys
from contextlib import contextmanager
from typing import Optional

import click

from weylpoly.domain.brion import brion_oracle, polytope_sum as compute_polytope_sum
from weylpoly.domain.config import (
    UNCAPPED, CharMethod, Config, OutputFormat, RunConfig, SumMethod, Sweep, default_rank_cap,
    enumeration_cap
)
from weylpoly.domain.demazure import character_demazure, parse_operator_expression
from weylpoly.domain.exceptions import (
    ConfigurationError, OperatorSyntaxError, RankLimitError, ValidationError, WeylPolyError
)
from weylpoly.domain.expansion import character_weyl_division, polytope_expansion
from weylpoly.domain.formal_sum import monomial
from weylpoly.domain.root_system import AlgebraId, RootSystem, Weight, build_root_system, is_dominant
from weylpoly.services.config import ConfigManager
from weylpoly.services.report import ReportService
from weylpoly.services.verification import VerificationService

def parse_algebra(ctx, param, value) -> Optional[AlgebraId]:
    if value is None:
        return None
    try:
        return AlgebraId.from_str(value)
    except ValidationError as e:
        raise click.BadParameter(str(e))

def parse_weight(ctx, param, value) -> Optional[Weight]:
    if value is None:
        return None
    try:
        return tuple(int(x) for x in value.split(","))
    except ValueError:
        raise click.BadParameter(f"{value!r} is not a comma-separated list of integers")

def resolve_weight(rs: RootSystem, weight: Weight, dominant: bool = True) -> Weight:
    """Check the --weight labels against the algebra."""
    if len(weight) != rs.rank:
        raise click.BadParameter(
            f"{rs.algebra} needs {rs.rank} labels, got {len(weight)}", param_hint="'--weight'"
        )
    if dominant and not is_dominant(weight):
        raise click.BadParameter("weight must be dominant", param_hint="'--weight'")
    return weight

@contextmanager
def reported_errors():
    """Present library errors: bad input exits 2, internal failures exit 1."""
    try:
        yield
    except (ValidationError, ConfigurationError, RankLimitError) as e:
        raise click.UsageError(str(e))
    except WeylPolyError as e:
        click.echo(click.style(f"Error: {e}", fg='red'), err=True)
        sys.exit(1)

def output_format(ctx, value: Optional[str]) -> OutputFormat:
    if value is None:
        return ctx.obj['config'].format
    return OutputFormat.from_str(value)

algebra_option = click.option('-a', '--algebra', required=True, callback=parse_algebra,
                              help='Algebra: A<n>, C2 or G2')
weight_option = click.option('-w', '--weight', required=True, callback=parse_weight,
                             help='Comma-separated Dynkin labels, e.g. 1,0,1')
format_option = click.option('--format', 'fmt', default=None,
                             type=click.Choice([m.value for m in OutputFormat]),
                             help='Output format (defaults to the configured one)')

@click.group()
@click.option('-f', '--force',
              default=False,
              is_flag=True,
              help='Overwrite existing config; allow ranks above the enumeration cap')
@click.option('-v', '--verbose',
              count=True,
              help='Log to stderr (-v info, -vv debug)')
@click.pass_context
def cli(ctx, force, verbose):
    """Exact Weyl polytope sums, Demazure operators and Lie characters."""
    level = logging.WARNING if verbose == 0 else (logging.INFO if verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = Config.resolve()
    except ConfigurationError as e:
        if ctx.invoked_subcommand != 'setup':
            raise click.UsageError(str(e))
        config = Config()
    ctx.obj = {
        'force': force,
        'config': config,
    }
    ctx.with_resource(enumeration_cap(UNCAPPED if force else config.max_rank))

@cli.command()
@click.option('--max-rank', default=None, type=int,
              help='Rank cap for full Weyl group enumeration (default 7 or WEYLPOLY_MAX_RANK)')
@click.option('--max-level', default=4, type=int, help='Default level bound of sweeps')
@click.option('--theorem-rank', default=4, type=int, help='Default top rank of A_n sweeps')
@click.option('--seed', default=0, type=int, help='Seed of the randomized suites')
@click.option('--format', default=OutputFormat.TEXT.value,
              type=click.Choice([m.value for m in OutputFormat]),
              help='Default output format')
@click.pass_context
def setup(ctx, **kwargs):
    """Write the defaults to ~/.weylpoly/config.yaml."""
    with reported_errors():
        if kwargs['max_rank'] is None:
            kwargs['max_rank'] = default_rank_cap()
        config = Config(**kwargs)
        written = ConfigManager(config, ctx.obj['force']).apply_config()
    if written:
        click.echo(f"Configuration written to {config.config_path}")
    else:
        click.echo(f"Configuration {config.config_path} already up to date")

@cli.command()
@algebra_option
@weight_option
@click.option('-m', '--method', default=CharMethod.DEMAZURE.value,
              type=click.Choice([m.value for m in CharMethod]),
              help='Demazure operator product or exact Weyl division')
@format_option
@click.pass_context
def char(ctx, algebra: AlgebraId, weight: Weight, method: str, fmt: Optional[str]):
    """Print the character ch_lam of the irreducible module L(lam)."""
    rs = build_root_system(algebra)
    lam = resolve_weight(rs, weight)
    with reported_errors():
        if CharMethod.from_str(method) == CharMethod.WEYL:
            ch = character_weyl_division(rs, lam)
        else:
            ch = character_demazure(rs, lam)
    click.echo(ReportService(output_format(ctx, fmt)).character(algebra, lam, method, ch))

@cli.command(name='polytope-sum')
@algebra_option
@weight_option
@click.option('-m', '--method', default=SumMethod.DOMINANCE.value,
              type=click.Choice([m.value for m in SumMethod]),
              help='Dominance oracle, signed cone counts or Demazure operators')
@format_option
@click.pass_context
def polytope_sum(ctx, algebra: AlgebraId, weight: Weight, method: str, fmt: Optional[str]):
    """Print the Weyl polytope sum B_lam."""
    rs = build_root_system(algebra)
    lam = resolve_weight(rs, weight)
    agrees = None
    with reported_errors():
        report = compute_polytope_sum(rs, lam, SumMethod.from_str(method))
        if report.method != SumMethod.DOMINANCE:
            agrees = report.sum == brion_oracle(rs, lam)
    click.echo(ReportService(output_format(ctx, fmt)).polytope_sum(algebra, report, agrees))
    if agrees is False:
        sys.exit(1)

@cli.command()
@algebra_option
@weight_option
@format_option
@click.pass_context
def expand(ctx, algebra: AlgebraId, weight: Weight, fmt: Optional[str]):
    """Print the polytope expansion coefficients A(lam,mu)."""
    rs = build_root_system(algebra)
    lam = resolve_weight(rs, weight)
    with reported_errors():
        expansion = polytope_expansion(rs, lam)
    click.echo(ReportService(output_format(ctx, fmt)).expansion(algebra, expansion))

@cli.command(name='apply')
@algebra_option
@click.option('-e', '--expr', required=True, help='Operator word such as "D1 D2 D1" or "r2 d1"')
@weight_option
@format_option
@click.pass_context
def apply_cmd(ctx, algebra: AlgebraId, expr: str, weight: Weight, fmt: Optional[str]):
    """Apply an operator word (rightmost atom first) to e^lam."""
    rs = build_root_system(algebra)
    lam = resolve_weight(rs, weight, dominant=False)
    try:
        word = parse_operator_expression(rs, expr)
    except OperatorSyntaxError as e:
        raise click.BadParameter(str(e), param_hint="'--expr'")
    result = word.apply(rs, monomial(lam))
    click.echo(ReportService(output_format(ctx, fmt)).operator(algebra, str(word), lam, result))

@cli.group()
def verify():
    """Run a verification sweep; exits 1 if any case fails."""
    pass

def sweep_options(func):
    func = click.option('-a', '--algebra', default=None, callback=parse_algebra,
                        help='Algebra; for A<n> the sweep covers A1..A<n>')(func)
    func = click.option('--max-level', default=None, type=int,
                        help='Largest level (label sum) of the swept dominant weights')(func)
    func = click.option('--max-rank', default=None, type=int,
                        help='Top A_n rank when --algebra is not given')(func)
    func = click.option('--seed', default=None, type=int, help='Seed of the randomized suites')(func)
    func = format_option(func)
    return click.pass_context(func)

def run_sweep(ctx, sweep: Sweep, algebra: Optional[AlgebraId], max_level: Optional[int],
              max_rank: Optional[int], seed: Optional[int], fmt: Optional[str], printed: bool = False):
    config = ctx.obj['config']
    with reported_errors():
        run_config = RunConfig(
            algebra=algebra,
            max_level=config.max_level if max_level is None else max_level,
            max_rank=config.theorem_rank if max_rank is None else max_rank,
            format=output_format(ctx, fmt).value,
            seed=config.seed if seed is None else seed,
            rank_cap=config.max_rank,
            allow_large=ctx.obj['force'],
            sweep=sweep,
        )
        report = VerificationService(run_config, printed=printed).run(sweep)
    click.echo(ReportService(run_config.format).sweep(report))
    if not report.passed:
        sys.exit(1)

@verify.command()
@sweep_options
def theorem(ctx, **kwargs):
    """B_lam = D_{1,1} D_{1,2} ... D_{1,n} e^lam on A_n."""
    run_sweep(ctx, Sweep.THEOREM, **kwargs)

@verify.command()
@sweep_options
def lemma(ctx, **kwargs):
    """w_{1,1} w_{1,2} ... w_{1,n} = sum of W on A_n."""
    run_sweep(ctx, Sweep.LEMMA, **kwargs)

@verify.command()
@sweep_options
@click.option('--printed', is_flag=True, help='Evaluate the G2 operator without its correction term')
def rank2(ctx, printed: bool, **kwargs):
    """The C2 and G2 Brion operators against the dominance oracle."""
    run_sweep(ctx, Sweep.RANK2, printed=printed, **kwargs)

@verify.command()
@sweep_options
def braid(ctx, **kwargs):
    """Idempotence, braid relations and reduced-word independence (default algebra A3)."""
    run_sweep(ctx, Sweep.BRAID, **kwargs)

@verify.command()
@sweep_options
def character(ctx, **kwargs):
    """Demazure characters against exact Weyl division."""
    run_sweep(ctx, Sweep.CHARACTER, **kwargs)

@verify.command()
@sweep_options
def cones(ctx, **kwargs):
    """Signed cone counts against the dominance oracle, one root step beyond the polytope."""
    run_sweep(ctx, Sweep.CONES, **kwargs)

@verify.command()
@sweep_options
def expansion(ctx, **kwargs):
    """Reconstruction and coefficients of the polytope expansion."""
    run_sweep(ctx, Sweep.EXPANSION, **kwargs)
