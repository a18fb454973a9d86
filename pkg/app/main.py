import sys
import time
import logging
from typing import Callable, List, Optional, Tuple

import click

from app import config
from app.api import commands
from app.api.models import Caps, Report
from app.database import record_run, recent_runs, run_stats
from app.errors import EXIT_LAW, EXIT_OK, exit_code_for
from app.services.laws import SUITES

# Configure logging; stdout carries only reports
logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def cap_options(fn):
    """Flags shared by every computing subcommand"""
    fn = click.option("--dim-cap", type=click.IntRange(min=0), default=None, help="Largest simplex dimension built")(fn)
    fn = click.option("--levels", "level_cap", type=click.IntRange(min=0), default=None, help="Mapping-space level cap m")(fn)
    fn = click.option("--sigma-max", type=click.IntRange(min=0), default=None, help="Largest suspension degree i_max")(fn)
    fn = click.option("--budget", "node_budget", type=click.IntRange(min=1), default=None, help="Search node budget")(fn)
    fn = click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
                      help="Write the report here instead of stdout")(fn)
    fn = click.option("--timing", is_flag=True, help="Include timing_ms in the report")(fn)
    return fn


def _caps(dim_cap, level_cap, sigma_max, node_budget) -> Caps:
    caps = Caps(
        dim_cap=config.DIM_CAP if dim_cap is None else dim_cap,
        level_cap=config.LEVEL_CAP if level_cap is None else level_cap,
        sigma_max=config.SIGMA_MAX if sigma_max is None else sigma_max,
        node_budget=config.NODE_BUDGET if node_budget is None else node_budget,
    )
    # constructors read the module-level caps at call time
    config.DIM_CAP = caps.dim_cap
    config.LEVEL_CAP = caps.level_cap
    config.SIGMA_MAX = caps.sigma_max
    config.NODE_BUDGET = caps.node_budget
    return caps


def _execute(command: str, caps: Caps, work: Callable[[], Tuple[Report, List[Exception]]],
             report_path: Optional[str], timing: bool) -> None:
    """Run one subcommand, emit its report and exit with its code"""
    start_time = time.time()
    try:
        report, errors = work()
    except Exception as e:
        error_type = type(e).__name__
        report = Report(command=command, caps=caps, data={"error": f"{error_type}: {str(e)}"})
        errors = [e]
        logger.error(f"Command {command}: error={error_type}, message={str(e)}")
    elapsed = time.time() - start_time
    if errors:
        code = exit_code_for(errors[0])
    elif report.failed:
        code = EXIT_LAW
    else:
        code = EXIT_OK
    if timing:
        report.timing_ms = round(elapsed * 1000, 1)
    text = report.model_dump_json(indent=2)
    if report_path:
        with open(report_path, "w") as handle:
            handle.write(text + "\n")
    else:
        click.echo(text)
    if config.record_runs():
        record_run(command, caps.model_dump(), report.verdict_counts(), code, elapsed)
    logger.info(f"Command {command}: exit_code={code}, checks={len(report.checks)}, elapsed={round(elapsed, 3)}s")
    sys.exit(code)


def _single(report_fn: Callable[[], Report]) -> Callable[[], Tuple[Report, List[Exception]]]:
    return lambda: (report_fn(), [])


@click.group()
def cli():
    """Finite pointed simplicial sets, mapping algebras and Stover towers"""


@cli.command()
@click.argument("expr", nargs=-1, required=True)
@click.option("--out", default=None, help="Write the object to this file (.json added)")
@cap_options
def build(expr, out, dim_cap, level_cap, sigma_max, node_budget, report_path, timing):
    """Build a catalog object, e.g. `build sphere 2 --out s2`"""
    text = " ".join(expr)
    caps = _caps(dim_cap, level_cap, sigma_max, node_budget)
    _execute(f"build {text}", caps, _single(lambda: commands.build_command(text, out, caps)), report_path, timing)


@cli.command("map-space")
@click.option("--A", "A", required=True, help="Source object (catalog expression or file)")
@click.option("--Y", "Y", required=True, help="Target object")
@cap_options
def map_space(A, Y, dim_cap, level_cap, sigma_max, node_budget, report_path, timing):
    """Levels 0..m of map(A, Y) and its homotopy classes"""
    caps = _caps(dim_cap, level_cap, sigma_max, node_budget)
    _execute(f"map-space --A {A} --Y {Y}", caps, _single(lambda: commands.map_space_command(A, Y, caps)),
             report_path, timing)


@cli.group()
def algebra():
    """Discrete mapping algebras"""


@algebra.command("eval")
@click.option("--A", "A", default="s0", show_default=True, help="The generating object")
@click.option("--Y", "Y", required=True, help="Target of the realizable algebra M_A Y")
@click.option("--B", "B", required=True, help='Formal object, e.g. "wedge(susp(A,1),A)"')
@cap_options
def algebra_eval(A, Y, B, dim_cap, level_cap, sigma_max, node_budget, report_path, timing):
    """Evaluate M_A Y on a formal object and compare with the direct mapping space"""
    caps = _caps(dim_cap, level_cap, sigma_max, node_budget)
    _execute(f"algebra eval --B {B}", caps, _single(lambda: commands.algebra_eval_command(A, Y, B, caps)),
             report_path, timing)


@cli.command()
@click.option("--A", "A", required=True)
@click.option("--Y", "Y", required=True)
@click.option("--variant", type=click.Choice(["general", "cogroup"]), default="general", show_default=True)
@click.option("--cogroup", is_flag=True, help="Assert that A is a homotopy cogroup")
@click.option("--out", default=None, help="Directory for the object and its counit")
@cap_options
def stover(A, Y, variant, cogroup, out, dim_cap, level_cap, sigma_max, node_budget, report_path, timing):
    """Build L_A Y with its counit"""
    caps = _caps(dim_cap, level_cap, sigma_max, node_budget)
    _execute(f"stover --A {A} --Y {Y} --variant {variant}", caps,
             _single(lambda: commands.stover_command(A, Y, variant, cogroup, out, caps)), report_path, timing)


@cli.command()
@click.option("--kind", type=click.Choice(sorted(commands.KINDS)), default="dl", show_default=True)
@click.option("--A", "A", required=True)
@click.option("--Y", "Y", required=True)
@click.option("--stages", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--out", default=None, help="Directory for per-stage objects and maps")
@cap_options
def tower(kind, A, Y, stages, out, dim_cap, level_cap, sigma_max, node_budget, report_path, timing):
    """Run a recovery tower for a stage budget"""
    caps = _caps(dim_cap, level_cap, sigma_max, node_budget)
    _execute(f"tower --kind {kind} --A {A} --Y {Y} --stages {stages}", caps,
             _single(lambda: commands.tower_command(kind, A, Y, stages, out, caps)), report_path, timing)


@cli.command("check-laws")
@click.option("--suite", type=click.Choice(SUITES), required=True)
@click.option("--A", "A", default=None)
@click.option("--Y", "Y", default=None)
@click.option("--mutate", is_flag=True, help="Corrupt one structure value (monad_algebra)")
@cap_options
def check_laws(suite, A, Y, mutate, dim_cap, level_cap, sigma_max, node_budget, report_path, timing):
    """Run a law suite over the standard catalog or the given objects"""
    caps = _caps(dim_cap, level_cap, sigma_max, node_budget)
    _execute(f"check-laws --suite {suite}", caps,
             lambda: commands.check_laws_command(suite, A, Y, mutate, caps), report_path, timing)


@cli.command()
@click.option("--limit", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--stats", is_flag=True, help="Totals and mean time per command")
def history(limit, stats):
    """Show the run ledger"""
    if stats:
        for row in run_stats():
            click.echo(f"{row['command']:<12} runs={row['runs']:<5} mean_elapsed={row['mean_elapsed']}s")
        return
    for run in recent_runs(limit):
        stamp = run.created_at.strftime("%Y-%m-%d %H:%M:%S") if run.created_at else "-"
        click.echo(f"{run.id:>5}  {stamp}  exit={run.exit_code}  {run.elapsed:>8.3f}s  {run.command}  {run.verdicts}")


def main(argv=None) -> None:
    cli.main(args=argv, prog_name="stover")


if __name__ == "__main__":
    main()
