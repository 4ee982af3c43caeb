#!/usr/bin/env python3
"""
Command Line Interface for the reciprocal prime-counting sum

Tables go to stdout (or --out) as CSV; summaries and diagnostics go to
stderr through rich so stdout stays machine-readable.
"""

import asyncio
import logging
from pathlib import Path
from typing import Any, List, Optional

import click
from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from .models.asymptotics import FitReport
from .models.config import RunConfig, Settings
from .models.sieve import SieveConfig
from .models.summation import AuxSumKind
from .services.asymptotics import (
    compare_formulas,
    decompose,
    error_table,
    fit_B,
    fit_C,
    formula12,
    growth_ratio,
    prime_remainder,
)
from .services.constants import k_constants, verify_recurrence
from .services.li import li, li_quadrature
from .services.sieve import SieveOracle, exact_recip_sum
from .services.summation import aux_sum
from .utils.csv_output import open_output
from .utils.errors import DomainError, NumericalError
from .utils.grid import parse_grid, parse_integer
from .utils.settings import SettingsManager
from .utils.storage import ReportStore

console = Console(stderr=True)

# default truncation order of the comparison tables
_COMPARE_M = 4


class RecipSumCLI:
    """Settings and global flags shared by every subcommand"""

    def __init__(self, settings: Settings, manager: SettingsManager):
        self.settings = settings
        self.manager = manager
        self.out: Optional[Path] = None
        self.segment_size = settings.segment_size
        self.threads = settings.threads
        self.tolerance = settings.tolerance

    def run_config(self, command: str, **params: Any) -> RunConfig:
        try:
            return RunConfig(command=command, segment_size=self.segment_size, threads=self.threads,
                             tolerance=self.tolerance, out=self.out, **params)
        except ValidationError as e:
            first = e.errors()[0]
            raise click.UsageError(f"{command}: {first['msg']}")

    def oracle(self, cfg: RunConfig) -> SieveOracle:
        return SieveOracle(segment_size=cfg.segment_size, threads=cfg.threads)

    def grid(self, spec: Optional[str], default: str) -> List[int]:
        try:
            return parse_grid(spec or default)
        except DomainError as e:
            raise click.UsageError(str(e))


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def _fit_table(report: FitReport) -> Table:
    title = f"Fit of {report.constant_name.value}" + (f" (m={report.m})" if report.m is not None else "")
    table = Table(title=title)
    table.add_column("x", style="cyan", justify="right")
    table.add_column("estimate", style="white")
    for x, estimate in report.samples:
        table.add_row(str(x), repr(estimate))
    table.caption = (f"central={report.central_value!r}  spread={report.spread:.3e}  "
                     f"tolerance={report.tolerance:.3e}  "
                     + ("[green]stabilized[/green]" if report.stabilized else "[red]not stabilized[/red]"))
    return table


def _progress() -> Progress:
    return Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"),
                    console=console, transient=True)


def _report_numerical(e: NumericalError) -> None:
    console.print(f"❌ {e.operation} failed: {e.message}", style="red")
    for key, value in e.diagnostics.items():
        console.print(f"   {key}: {value}")


class RecipSumGroup(click.Group):
    """Maps domain errors to usage errors (exit 2) and numerical failures to exit 1"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except DomainError as e:
            raise click.UsageError(str(e), ctx)
        except NumericalError as e:
            _report_numerical(e)
            ctx.exit(1)


@click.group(cls=RecipSumGroup)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write CSV here instead of stdout (env RECIPSUM_OUT)")
@click.option("--segment-size", type=int, default=None, help="Odd flags per sieve segment")
@click.option("--threads", type=int, default=None, help="Sieve worker threads")
@click.option("--tolerance", type=float, default=None, help="Fixed stabilization tolerance for fits")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging")
@click.pass_context
def cli(ctx, out: Optional[Path], segment_size: Optional[int], threads: Optional[int],
        tolerance: Optional[float], verbose: bool):
    """Exact and asymptotic evaluation of the sum of 1/π(n)"""
    _setup_logging(verbose)
    if ctx.obj is None:
        load_dotenv()
        manager = SettingsManager()
        try:
            settings = manager.load()
        except DomainError as e:
            raise click.UsageError(str(e))
        ctx.obj = RecipSumCLI(settings, manager)

    cli_obj: RecipSumCLI = ctx.obj
    env_out = cli_obj.manager.env("out")
    cli_obj.out = out or (Path(env_out) if env_out else None)
    if segment_size is not None:
        cli_obj.segment_size = segment_size
    if threads is not None:
        cli_obj.threads = threads
    if tolerance is not None:
        cli_obj.tolerance = tolerance


def _integer_option(value: Optional[str], name: str) -> Optional[int]:
    if value is None:
        return None
    try:
        return parse_integer(value, name)
    except DomainError as e:
        raise click.UsageError(str(e))


@cli.command()
@click.option("--x", "x_text", required=True, help="Upper limit, e.g. 1000000 or 1e6")
@click.pass_context
def exact(ctx, x_text: str):
    """S(x) = Σ_{2<=n<=x} 1/π(n) by segmented sieve"""
    cli_obj: RecipSumCLI = ctx.obj
    cfg = cli_obj.run_config("exact", x=_integer_option(x_text, "x"))
    sieve_cfg = SieveConfig(limit=cfg.x, segment_size=cfg.segment_size, threads=cfg.threads)
    with _progress() as progress:
        progress.add_task(f"Sieving to {cfg.x}...", total=None)
        result = exact_recip_sum(cfg.x, sieve_cfg)
    with open_output(cfg.out) as writer:
        writer.models(["x", "value", "comp_error_bound", "n_terms"], [result])


@cli.command("li")
@click.option("--x", "x", type=float, required=True, help="Real point x >= 2")
@click.pass_context
def li_command(ctx, x: float):
    """li x by the exponential integral, cross-checked by quadrature"""
    cli_obj: RecipSumCLI = ctx.obj
    cfg = cli_obj.run_config("li")
    settings = cli_obj.settings
    primary = li(x)
    oracle = li_quadrature(x, rel_tol=settings.quad_rel_tol, max_panels=settings.max_panels)
    rel_diff = abs(primary.value - oracle.value) / max(abs(primary.value), 1.0)
    with open_output(cfg.out) as writer:
        writer.header(["x", "li", "abs_err_estimate", "li_quadrature", "rel_diff"])
        writer.row([x, primary.value, primary.abs_err_estimate, oracle.value, rel_diff])
    if rel_diff > settings.li_cross_tol:
        console.print(f"❌ li routes disagree: relative difference {rel_diff:.3e}", style="red")
        ctx.exit(1)


@cli.command()
@click.option("--m", "m", type=int, required=True, help="Number of constants k_1..k_m")
@click.pass_context
def kconst(ctx, m: int):
    """The integer constants k_1..k_m of the 1/li expansion"""
    cfg = ctx.obj.run_config("kconst", m=m)
    table = k_constants(cfg.m)
    if not verify_recurrence(table):
        console.print("❌ recurrence check failed", style="red")
        ctx.exit(1)
    with open_output(cfg.out) as writer:
        writer.header(["r", "k_r"])
        for r, value in enumerate(table.values, start=1):
            writer.row([r, value])


@cli.command()
@click.option("--kind", "kinds", multiple=True, required=True,
              help="log_over_n, recip_n, recip_n_log or recip_n_log_r:<r> (repeatable)")
@click.option("--grid", "grid_spec", default="1e4:1e6:x10", show_default=True, help="Grid of x values")
@click.pass_context
def auxsum(ctx, kinds: List[str], grid_spec: str):
    """Auxiliary partial sums over 3 <= n <= x and their constants"""
    cli_obj: RecipSumCLI = ctx.obj
    grid = cli_obj.grid(grid_spec, grid_spec)
    cfg = cli_obj.run_config("auxsum", grid=grid)
    try:
        parsed = [AuxSumKind.parse(kind) for kind in kinds]
    except (ValueError, ValidationError) as e:
        raise click.UsageError(f"auxsum: bad --kind: {e}")
    max_r = max([kind.r or 1 for kind in parsed])
    table = k_constants(max_r)
    with open_output(cfg.out) as writer:
        writer.header(["kind", "x", "value", "main_term", "constant_estimate"])
        for kind in parsed:
            for x in grid:
                if x < 3:
                    continue
                result = aux_sum(kind, x, table, cli_obj.settings.direct_sum_cutoff)
                writer.row([kind.label, x, result.value, result.main_term, result.constant_estimate])


@cli.command()
@click.option("--grid", "grid_spec", default=None, help="Grid spec start:stop:x<factor> (default from settings)")
@click.option("--m", "m", type=int, default=3, show_default=True, help="Truncation order m >= 2")
@click.option("--large", is_flag=True, help="Use the opt-in grid reaching 10^9")
@click.option("--report-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Save fit reports and the run summary as JSON here")
@click.pass_context
def verify(ctx, grid_spec: Optional[str], m: int, large: bool, report_dir: Optional[Path]):
    """Fit C and B, print the error table, exit 0 iff every check passes"""
    cli_obj: RecipSumCLI = ctx.obj
    settings = cli_obj.settings
    grid = cli_obj.grid(grid_spec, settings.large_grid if large else settings.default_grid)
    cfg = cli_obj.run_config("verify", grid=grid, m=m)
    table = k_constants(cfg.m)
    oracle = cli_obj.oracle(cfg)

    with _progress() as progress:
        progress.add_task(f"Sieving to {grid[-1]}...", total=None)
        oracle.prefetch(grid)
        fit_c = fit_C(grid, cfg.m, table, oracle, cfg.tolerance, settings.stabilization_constant)
        fit_b = fit_B(grid, oracle, cfg.tolerance, settings.stabilization_constant)
        rows = error_table(grid, cfg.m, fit_c.central_value, table, oracle)

    growth = growth_ratio([row.scaled_diff for row in rows])
    checks = {
        "C stabilized": fit_c.stabilized,
        "B stabilized": fit_b.stabilized,
        f"scaled_diff growth ≤ {settings.growth_limit:g}": growth <= settings.growth_limit,
    }

    with open_output(cfg.out) as writer:
        writer.models(["x", "exact", "approx", "diff", "scaled_diff"], rows)

    console.print(_fit_table(fit_c))
    console.print(_fit_table(fit_b))
    summary = Table(title="Checks")
    summary.add_column("Check", style="cyan")
    summary.add_column("Result")
    for name, passed in checks.items():
        summary.add_row(name, "✅ pass" if passed else "❌ fail")
    summary.caption = f"growth ratio = {growth:.3g}"
    console.print(summary)

    if report_dir is not None:
        store = ReportStore(report_dir)

        async def save() -> None:
            await store.initialize()
            await store.save_fit(fit_c)
            await store.save_fit(fit_b)
            await store.save_run("verify", {
                "grid": grid, "m": cfg.m, "growth_ratio": growth,
                "checks": checks, "C": fit_c.central_value, "B": fit_b.central_value,
            })

        asyncio.run(save())
        console.print(f"💾 Reports saved to {report_dir}", style="green")

    if not all(checks.values()):
        ctx.exit(1)


@cli.command("formula12")
@click.option("--x", "x_text", required=True, help="Point x > 3")
@click.option("--B", "B", type=float, default=None, help="Constant B (fitted on --grid when omitted)")
@click.option("--grid", "grid_spec", default="1e4:1e7:x10", show_default=True, help="Fit grid for B")
@click.pass_context
def formula12_command(ctx, x_text: str, B: Optional[float], grid_spec: str):
    """log x·log(li x) - ∫_3^x log(li t)/t dt + B next to the exact sum"""
    cli_obj: RecipSumCLI = ctx.obj
    cfg = cli_obj.run_config("formula12", x=_integer_option(x_text, "x"))
    if cfg.x <= 3:
        raise click.UsageError("formula12: x must exceed 3")
    oracle = cli_obj.oracle(cfg)
    if B is None:
        grid = cli_obj.grid(grid_spec, grid_spec)
        oracle.prefetch(grid + [cfg.x])
        B = fit_B(grid, oracle, cfg.tolerance, cli_obj.settings.stabilization_constant).central_value
    value = formula12(cfg.x, B)
    exact_value = oracle(cfg.x)
    with open_output(cfg.out) as writer:
        writer.header(["x", "B", "formula12", "exact", "diff"])
        writer.row([cfg.x, B, value, exact_value, exact_value - value])


@cli.command()
@click.option("--grid", "grid_spec", default="1e3:1e8:x10", show_default=True, help="Grid of x values")
@click.pass_context
def envelope(ctx, grid_spec: str):
    """π(x) - li x against the envelope x·exp(-C_env·δ(x))"""
    cli_obj: RecipSumCLI = ctx.obj
    grid = cli_obj.grid(grid_spec, grid_spec)
    cfg = cli_obj.run_config("envelope", grid=grid)
    if grid[0] < 3:
        raise click.UsageError("envelope: grid points must be at least 3")
    oracle = cli_obj.oracle(cfg)
    oracle.prefetch(grid)
    rows = [prime_remainder(x, oracle, cli_obj.settings.c_env) for x in grid]
    with open_output(cfg.out) as writer:
        writer.models(["x", "pi", "li", "remainder", "envelope", "ratio"], rows)


@cli.command()
@click.option("--grid", "grid_spec", default=None, help="Grid spec (default from settings)")
@click.option("--m", "m", type=int, default=_COMPARE_M, show_default=True,
              help="Truncation order of the log-power expansion")
@click.pass_context
def compare(ctx, grid_spec: Optional[str], m: int):
    """Every asymptotic formula next to the exact sum, constants fitted on the grid"""
    cli_obj: RecipSumCLI = ctx.obj
    settings = cli_obj.settings
    grid = cli_obj.grid(grid_spec, settings.default_grid)
    cfg = cli_obj.run_config("compare", grid=grid, m=m)
    if len(grid) < 3 or grid[0] < 1000:
        raise click.UsageError("compare: fitting needs at least 3 grid points >= 1000")
    table = k_constants(cfg.m)
    oracle = cli_obj.oracle(cfg)
    with _progress() as progress:
        progress.add_task(f"Sieving to {grid[-1]}...", total=None)
        oracle.prefetch(grid)
        C = fit_C(grid, cfg.m, table, oracle, cfg.tolerance, settings.stabilization_constant).central_value
        B = fit_B(grid, oracle, cfg.tolerance, settings.stabilization_constant).central_value
        rows = compare_formulas(grid, C, B, table, oracle, cfg.m)
    with open_output(cfg.out) as writer:
        writer.models(["x", "exact", "formula4", "formula5", "formula8", "formula12"], rows)
    console.print(Panel.fit(f"C = {C!r}\nB = {B!r}", title="Fitted constants"))


@cli.command("decompose")
@click.option("--grid", "grid_spec", default="1e3:1e6:x10", show_default=True, help="Grid of x values")
@click.pass_context
def decompose_command(ctx, grid_spec: str):
    """S(x) = Σ 1/li n + C_1 + tail, and Σ 1/li n = ∫ dt/li t + C_0 + tail"""
    cli_obj: RecipSumCLI = ctx.obj
    grid = cli_obj.grid(grid_spec, grid_spec)
    cfg = cli_obj.run_config("decompose", grid=grid)
    if grid[0] <= 3:
        raise click.UsageError("decompose: grid points must exceed 3")
    oracle = cli_obj.oracle(cfg)
    oracle.prefetch(grid)
    rows = [decompose(x, oracle, cli_obj.settings.direct_sum_cutoff) for x in grid]
    with open_output(cfg.out) as writer:
        writer.models(["x", "exact", "recip_li_sum", "c1_estimate", "recip_li_integral", "c0_estimate"], rows)


@cli.command("list-fits")
@click.option("--report-dir", type=click.Path(file_okay=False, path_type=Path), required=True,
              help="Directory written by verify --report-dir")
@click.pass_context
def list_fits(ctx, report_dir: Path):
    """Fit reports saved by verify, one CSV row each"""
    store = ReportStore(report_dir)

    async def load_all() -> List[FitReport]:
        reports = []
        for fit_id in await store.list_fits():
            report = await store.load_fit(fit_id)
            if report is not None:
                reports.append(report)
        return reports

    reports = asyncio.run(load_all())
    if not reports:
        console.print(f"No fit reports found in {report_dir}. Use 'verify --report-dir' to save some.",
                      style="yellow")
    with open_output(ctx.obj.out) as writer:
        writer.header(["fit_id", "constant", "m", "x_max", "central_value", "spread", "tolerance",
                       "stabilized"])
        for report in reports:
            writer.row([store.fit_id(report), report.constant_name.value,
                        "" if report.m is None else report.m, report.x_max, report.central_value,
                        report.spread, report.tolerance, report.stabilized])


def main():
    """Main entry point for the CLI"""
    cli()


if __name__ == "__main__":
    main()
