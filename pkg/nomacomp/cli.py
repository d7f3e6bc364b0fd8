"""CLI entry point for nomacomp."""

import logging
from pathlib import Path

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn
from rich.table import Table

from . import __version__
from .config import DEFAULT_TRIALS, get_presets_dir, load_user_config
from .errors import ConfigError, NomaCompError
from .evaluation import SummaryRow, aggregate
from .experiments import (
    AXIS_FIELDS,
    Experiment,
    ExperimentKind,
    Scheme,
    SweepAxis,
    default_axis,
    default_schemes,
    run_experiment,
)
from .output import read_results_csv
from .scenario import NetworkConfig, load_config

app = typer.Typer(
    name="nomacomp",
    help="NOMA-CoMP joint beamforming and power allocation experiments",
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)

EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3

CONFIG_OPTION = typer.Option(None, "--config", "-c", help="YAML config (defaults to the experiment's preset)")
TRIALS_OPTION = typer.Option(None, "--trials", "-t", help=f"Trials per sweep point [default: {DEFAULT_TRIALS}]")
SEED_OPTION = typer.Option(None, "--seed", help="Master seed (overrides the config)")
OUT_OPTION = typer.Option(None, "--out", "-o", help="Results CSV path; the sidecar is written next to it")
SCHEMES_OPTION = typer.Option(None, "--schemes", help="Comma-separated schemes, e.g. NOMA_CoMP,NoCoMP")
VALUES_OPTION = typer.Option(None, "--values", help="Comma-separated sweep values")
WORKERS_OPTION = typer.Option(None, "--workers", "-w", help="Worker processes [default: 1]")
TIMING_OPTION = typer.Option(True, "--timing/--no-timing", help="Record wall time (0 when disabled)")
DUMP_OPTION = typer.Option(None, "--dump-dir", help="Write the first conic subproblem of each trial here")
VERBOSE_OPTION = typer.Option(False, "--verbose", help="Debug logging")


def version_callback(value: bool):
    if value:
        console.print(f"nomacomp version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        None, "--version", "-v", callback=version_callback, is_eager=True,
        help="Show version and exit"
    ),
):
    """nomacomp - multi-cell NOMA beamforming with coordinated BSs."""
    pass


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _fail_config(e: ConfigError) -> None:
    console.print("[red]Config error:[/red]")
    for message in e.errors:
        console.print(f"  - {message}")
    raise typer.Exit(EXIT_CONFIG_ERROR)


def _parse_values(text: str) -> tuple[float, ...]:
    values, errors = [], []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        try:
            values.append(float(token))
        except ValueError:
            errors.append(f"sweep value is not a number: {token}")
    if errors:
        raise ConfigError(errors)
    return tuple(values)


def _resolve_base(kind: ExperimentKind, config_path: Path | None, seed: int | None) -> NetworkConfig:
    path = config_path or get_presets_dir() / f"{kind.value}.yaml"
    try:
        base = load_config(path)
    except OSError as e:
        raise ConfigError([f"cannot read config {path}: {e}"]) from e
    if seed is not None:
        base = base.replace(master_seed=seed)
    return base


def build_experiment(
    kind: ExperimentKind,
    config_path: Path | None = None,
    trials: int | None = None,
    seed: int | None = None,
    out: Path | None = None,
    schemes: str | None = None,
    values: str | None = None,
    workers: int | None = None,
    timing: bool = True,
    dump_dir: Path | None = None,
    axis: str | None = None,
) -> Experiment:
    """Resolve CLI arguments, user defaults and presets into an Experiment."""
    user = load_user_config()
    base = _resolve_base(kind, config_path, seed)
    sweep = default_axis(kind, base)
    if axis is not None:
        if axis not in AXIS_FIELDS:
            raise ConfigError([f"unknown sweep axis: {axis} (valid: {', '.join(AXIS_FIELDS)})"])
        sweep = SweepAxis(axis, (float(getattr(base, AXIS_FIELDS[axis])),))
    if values is not None:
        sweep = SweepAxis(sweep.name, _parse_values(values))
    if out is None:
        out = Path(user.get("out_dir", ".")) / f"{kind.value}.csv"
    return Experiment(
        kind=kind,
        base=base,
        axis=sweep,
        schemes=Scheme.parse(schemes) if schemes else default_schemes(kind),
        trials=trials if trials is not None else int(user.get("trials", DEFAULT_TRIALS)),
        output_path=out,
        workers=workers if workers is not None else int(user.get("workers", 1)),
        timing=timing,
        dump_dir=dump_dir,
    )


def _fmt(value: float, digits: int = 4) -> str:
    return f"{value:.{digits}g}" if value == value else "-"


def print_summary(rows: list[SummaryRow], title: str) -> None:
    table = Table(title=title)
    for column in ("sweep", "scheme", "trials", "mean rate", "min", "max",
                   "feasible", "failed", "QoS viol.", "mean iter.", "R_λ avg", "R_λ max", "R_λ min"):
        table.add_column(column, justify="left" if column == "scheme" else "right")
    for row in rows:
        table.add_row(
            _fmt(row.sweep_value, 6),
            row.scheme,
            str(row.trials),
            _fmt(row.mean_sum_rate),
            _fmt(row.min_sum_rate),
            _fmt(row.max_sum_rate),
            f"{row.feasible_fraction:.0%}" if row.feasible_fraction == row.feasible_fraction else "-",
            str(row.numerical_failures),
            str(row.qos_violations),
            _fmt(row.mean_iterations, 3),
            _fmt(row.r_lambda.average),
            _fmt(row.r_lambda.maximum),
            _fmt(row.r_lambda.minimum),
        )
    console.print(table)


def _run(kind: ExperimentKind, verbose: bool, **kwargs) -> None:
    _setup_logging(verbose)
    try:
        exp = build_experiment(kind, **kwargs)
    except ConfigError as e:
        _fail_config(e)

    console.print(f"[bold]{kind.value}[/bold]: {exp.axis.name} = "
                  f"{', '.join(_fmt(v, 6) for v in exp.axis.values)}; "
                  f"schemes {', '.join(s.value for s in exp.schemes)}; {exp.trials} trial(s)")
    try:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            console=console,
        ) as progress:
            task = progress.add_task("Solving...", total=None)

            def advance(done: int, total: int) -> None:
                progress.update(task, completed=done, total=total)

            output = run_experiment(exp, progress=advance)
    except ConfigError as e:
        _fail_config(e)
    except (NomaCompError, OSError) as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_RUNTIME_ERROR)

    print_summary(aggregate(output.records, [s.value for s in exp.schemes]), kind.value)
    for name, path in output.artifacts.items():
        console.print(f"  {name}: {path}")


@app.command()
def convergence(
    config: Path = CONFIG_OPTION,
    trials: int = TRIALS_OPTION,
    seed: int = SEED_OPTION,
    out: Path = OUT_OPTION,
    schemes: str = SCHEMES_OPTION,
    axis: str = typer.Option(None, "--axis", help="Swept parameter: antennas, gamma, snr, ..."),
    values: str = VALUES_OPTION,
    workers: int = WORKERS_OPTION,
    timing: bool = TIMING_OPTION,
    dump_dir: Path = DUMP_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """
    Objective traces of the SCA loop.

    Writes per-iteration objectives to <out>_traces.csv next to the results.
    """
    _run(ExperimentKind.CONVERGENCE, verbose, config_path=config, trials=trials, seed=seed, out=out,
         schemes=schemes, values=values, workers=workers, timing=timing, dump_dir=dump_dir, axis=axis)


@app.command("rank-table")
def rank_table_cmd(
    config: Path = CONFIG_OPTION,
    trials: int = TRIALS_OPTION,
    seed: int = SEED_OPTION,
    out: Path = OUT_OPTION,
    schemes: str = SCHEMES_OPTION,
    values: str = VALUES_OPTION,
    workers: int = WORKERS_OPTION,
    timing: bool = TIMING_OPTION,
    dump_dir: Path = DUMP_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """
    Average / maximum / minimum R_lambda per antenna count.

    The table goes to <out>_rank_table.csv.
    """
    _run(ExperimentKind.RANK_TABLE, verbose, config_path=config, trials=trials, seed=seed, out=out,
         schemes=schemes, values=values, workers=workers, timing=timing, dump_dir=dump_dir)


def _sweep_command(kind: ExperimentKind, doc: str):
    def command(
        config: Path = CONFIG_OPTION,
        trials: int = TRIALS_OPTION,
        seed: int = SEED_OPTION,
        out: Path = OUT_OPTION,
        schemes: str = SCHEMES_OPTION,
        values: str = VALUES_OPTION,
        workers: int = WORKERS_OPTION,
        timing: bool = TIMING_OPTION,
        dump_dir: Path = DUMP_OPTION,
        verbose: bool = VERBOSE_OPTION,
    ):
        _run(kind, verbose, config_path=config, trials=trials, seed=seed, out=out,
             schemes=schemes, values=values, workers=workers, timing=timing, dump_dir=dump_dir)

    command.__doc__ = doc
    app.command(kind.value.replace("_", "-"))(command)


_sweep_command(ExperimentKind.SWEEP_SNR, "Group-1 sum rate of every scheme versus transmit SNR.")
_sweep_command(ExperimentKind.SWEEP_CELLS, "Group-1 sum rate versus the number of cells.")
_sweep_command(ExperimentKind.SWEEP_ALPHA, "Group-1 sum rate versus the path-loss exponent.")
_sweep_command(ExperimentKind.SWEEP_CLUSTERS, "Group-1 sum rate versus clusters per cell.")
_sweep_command(ExperimentKind.ORACLE_COMPARE, "SCA against exhaustive search for N=2, M=1, K=1.")


@app.command()
def validate(
    config: Path = typer.Argument(..., help="YAML config to check"),
):
    """
    Check a config file and report every problem at once.
    """
    try:
        resolved = load_config(config)
    except ConfigError as e:
        _fail_config(e)
    except OSError as e:
        console.print(f"[red]Error:[/red] cannot read {config}: {e}")
        raise typer.Exit(EXIT_RUNTIME_ERROR)

    console.print(f"[green]OK:[/green] {config}")
    for name, value in resolved.to_dict().items():
        console.print(f"  {name}: {value}")
    console.print(f"  transmit_power: {resolved.transmit_power:g}")
    console.print(f"  target_rate: {resolved.target_rate:.6g} bits/s/Hz")


@app.command()
def summarize(
    results: Path = typer.Argument(..., help="Results CSV written by an experiment"),
):
    """
    Aggregate a results CSV per sweep value and scheme.
    """
    try:
        records = read_results_csv(results)
        rows = aggregate(records, [s.value for s in Scheme])
    except (NomaCompError, OSError) as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_RUNTIME_ERROR)
    print_summary(rows, str(results))


if __name__ == "__main__":
    app()
