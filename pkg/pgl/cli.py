"""The ``pgl`` command line.

Every command builds a :class:`~pgl.context.RunConfig`, looks the result up in the
cache, computes it otherwise and prints one :class:`~pgl.records.ResultRecord` on
stdout. Logs go to stderr. Exit codes: 0 ok, 1 check failure, 2 invalid input,
3 budget refusal.
"""

import contextlib
import logging
import os
import sys
import time
from pathlib import Path
from typing import Annotated, Any, Callable, Iterator

import typer

from pgl import __version__
from pgl.budget import deadline
from pgl.cache import cached
from pgl.context import LOG_LEVEL_ENV, RunConfig, build_config
from pgl.errors import BudgetExceeded, CheckFailed, InvalidInput, PglError
from pgl.extensions import min_extension_census
from pgl.ffalg import field_make
from pgl.freegrowth import burnside_class_count, free_bound_check, tuple_census
from pgl.groups import FiniteGroup
from pgl.modrep import r_counts, uberg_witness
from pgl.probgen import (exact_gen_probability, ideal_census, m_counts,
                         monte_carlo_gen_probability, pfr_sum_bound_check,
                         stable_lattice)
from pgl.records import Provenance, Quantity, ResultRecord, fraction_text
from pgl.specs import parse_group, parse_surjection
from pgl.suites import run_suite, suite_names

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="pgl",
    help="Growth quantities of finite groups, computed exactly and checked by brute force.",
    no_args_is_help=True,
    add_completion=False,
)

REFS: dict[str, str] = {
    "r": "r_n(G, F_q) irreducible and r*_n(G, F_q) absolutely irreducible representations of dimension n",
    "e_min_ab": "e_n^min(G) minimal extensions of degree n, abelian kernels",
    "e_min_nonab": "e_n^min(G) minimal extensions of degree n, abelian and nonabelian kernels",
    "census": "r_n(F_d, F_p) >= c_p^d p^(n^2 (d-1)) and >= |GL_n|^(d-1) - sum_k |P(k,n-k)|^(d-1)",
    "p_exact": "P(k) = sum_N mu(N, R) [R:N]^-k over H-stable N, with 1 - P(k) <= sum_n m_n^H(R) n^-k",
    "p_mc": "sampled probability that k uniform elements normally generate R in H",
    "m_stable": "m_n^H(R) maximal H-stable subgroups of R of index n",
    "m_ideal": "r_n(G, F_p) <= m_(p^n) <= p^n r_n(G, F_p) for maximal left ideals of F_p[G]",
    "verify": "pass/fail per check, each naming the statement it verifies",
}

GroupOpt = Annotated[
    str | None, typer.Option("--group", "-g", help="Group, e.g. S3, C2^3, S3xC2, PSL(2,7) or a JSON file.")
]
POpt = Annotated[int | None, typer.Option("--p", help="Characteristic.")]
EOpt = Annotated[int | None, typer.Option("--e", help="Field degree over F_p.")]
NMaxOpt = Annotated[int | None, typer.Option("--nmax", help="Largest dimension or degree.")]
KMaxOpt = Annotated[int | None, typer.Option("--kmax", help="Largest number of random elements.")]
DOpt = Annotated[int | None, typer.Option("--d", help="Rank of the free group.")]
SeedOpt = Annotated[int | None, typer.Option("--seed", help="Monte Carlo seed.")]
TrialsOpt = Annotated[int | None, typer.Option("--trials", help="Monte Carlo trials.")]
KernelOpt = Annotated[
    int | None, typer.Option("--kernel-order", help="Order of N in H -> H/N; whole group if unset.")
]
QuantityOpt = Annotated[str | None, typer.Option("--quantity", help="p_exact, p_mc or m_stable.")]
WorkersOpt = Annotated[int | None, typer.Option("--workers", help="Worker processes.")]
FormatOpt = Annotated[str | None, typer.Option("--format", help="json or csv.")]
CacheOpt = Annotated[Path | None, typer.Option("--cache", help="Result cache directory.")]
BudgetOpt = Annotated[int | None, typer.Option("--budget-ms", help="Wall-clock budget.")]
ConfigOpt = Annotated[Path | None, typer.Option("--config", help="YAML file with run options.")]
VerboseOpt = Annotated[bool, typer.Option("--verbose", "-v", help="Log at DEBUG level.")]


@contextlib.contextmanager
def _stderr_logging(verbose: bool) -> Iterator[None]:
    package_logger = logging.getLogger("pgl")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
    previous = package_logger.level
    level = "DEBUG" if verbose else os.environ.get(LOG_LEVEL_ENV, "WARNING").upper()
    package_logger.addHandler(handler)
    package_logger.setLevel(level if level in logging.getLevelNamesMapping() else "WARNING")
    package_logger.propagate = False
    try:
        yield
    finally:
        package_logger.removeHandler(handler)
        package_logger.setLevel(previous)
        package_logger.propagate = True


def _exit_code(exc: PglError) -> int:
    if isinstance(exc, CheckFailed):
        return 1
    if isinstance(exc, BudgetExceeded):
        return 3
    return 2


def _execute(
    command: str,
    options: dict[str, Any],
    config_file: Path | None,
    compute: Callable[[RunConfig], ResultRecord],
) -> None:
    """Run one command end to end and leave through :class:`typer.Exit` on failure."""
    try:
        config = build_config(command, options, config_file)
    except PglError as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(_exit_code(exc)) from exc
    with _stderr_logging(config.verbose):
        logger.debug("running %s", config.echo())

        def timed() -> ResultRecord:
            start = time.monotonic()
            record = compute(config)
            record.wall_ms = int((time.monotonic() - start) * 1000)
            return record

        try:
            with deadline(config.budget_ms):
                record, hit = cached(config.resolved_cache_dir(), config.echo(), timed)
        except PglError as exc:
            logger.warning("%s refused: %s", command, exc)
            typer.echo(f"error: {exc}", err=True)
            raise typer.Exit(_exit_code(exc)) from exc
        if hit:
            logger.info("served %s from cache", command)
        if config.format == "json":
            typer.echo(record.to_json())
        else:
            typer.echo(record.to_csv(), nl=False)
        if not record.passed:
            raise typer.Exit(1)


def _record(
    config: RunConfig,
    quantity: Quantity,
    rows: list[dict[str, Any]],
    *,
    passed: bool = True,
    notes: dict[str, str] | None = None,
    seeded: bool = False,
) -> ResultRecord:
    return ResultRecord(
        config=config.echo(),
        quantity=quantity,
        ref=REFS[quantity],
        rows=rows,
        provenance=Provenance(version=__version__, seed=config.seed if seeded else None),
        passed=passed,
        notes=notes or {},
    )


def _group(config: RunConfig) -> FiniteGroup:
    if config.group is None:
        raise InvalidInput("--group is required")
    return parse_group(config.group)


def _prime_field_only(config: RunConfig) -> None:
    if config.e != 1:
        raise InvalidInput(f"{config.command} works over the prime field only; got e={config.e}")


def compute_repgrowth(config: RunConfig) -> ResultRecord:
    table = r_counts(_group(config), field_make(config.p, config.e), config.n_max)
    notes = {
        "uberg_exponent": str(uberg_witness(table)),
        "uberg_scope": f"finite-range witness only, n <= {config.n_max}",
    }
    return _record(config, "r", [row.model_dump() for row in table.rows], notes=notes)


def compute_extgrowth(config: RunConfig) -> ResultRecord:
    g = _group(config)
    rows = []
    for census in min_extension_census(g, range(2, config.n_max + 1)):
        splits = [r.split for r in census.records]
        rows.append(
            {
                "degree": census.degree,
                "kind": census.kind,
                "count": census.count,
                "split": splits.count(True),
                "nonsplit": splits.count(False),
                "unknown": splits.count(None),
            }
        )
    quantity: Quantity = "e_min_nonab" if any(r["kind"] == "nonabelian" for r in rows) else "e_min_ab"
    return _record(config, quantity, rows)


def compute_freegrowth(config: RunConfig) -> ResultRecord:
    _prime_field_only(config)
    rows = []
    for n in range(1, config.n_max + 1):
        census = tuple_census(config.d, n, config.p, workers=config.workers)
        report = free_bound_check(census)
        burnside = burnside_class_count(census)
        rows.append(
            {
                "d": census.d,
                "n": n,
                "p": census.p,
                "total": census.total,
                "irreducible": census.irreducible,
                "iso_classes": census.iso_classes,
                "burnside": burnside,
                "c_p_bound": report.c_p_bound,
                "parabolic_bound": report.parabolic_bound,
                "holds": report.holds and burnside == census.iso_classes,
            }
        )
    return _record(config, "census", rows, passed=all(r["holds"] for r in rows))


def compute_probgen(config: RunConfig) -> ResultRecord:
    f = parse_surjection(_group(config), config.kernel_order)
    quantity = config.quantity or "p_exact"
    if quantity == "p_mc":
        lattice = stable_lattice(f)
        rows = []
        for k in range(1, config.k_max + 1):
            estimate = monte_carlo_gen_probability(f, k, config.trials, config.seed)
            exact = exact_gen_probability(lattice, k)
            rows.append(
                {
                    "k": k,
                    "trials": estimate.trials,
                    "successes": estimate.successes,
                    "estimate": f"{estimate.estimate:.6f}",
                    "stderr": f"{estimate.stderr:.6f}",
                    "p_exact": fraction_text(exact),
                    "within_3_stderr": estimate.agrees_with(exact),
                }
            )
        return _record(config, "p_mc", rows, seeded=True)
    lattice = stable_lattice(f)
    if quantity == "m_stable":
        rows = [{"index": n, "count": c} for n, c in sorted(m_counts(lattice).items())]
        return _record(config, "m_stable", rows)
    rows = []
    for k in range(1, config.k_max + 1):
        bound = pfr_sum_bound_check(lattice, k)
        rows.append(
            {
                "k": k,
                "p_exact": fraction_text(exact_gen_probability(lattice, k)),
                "failure": bound.failure,
                "union_bound": bound.bound,
                "holds": bound.holds,
            }
        )
    return _record(config, "p_exact", rows, passed=all(r["holds"] for r in rows))


def compute_idealgrowth(config: RunConfig) -> ResultRecord:
    _prime_field_only(config)
    census = ideal_census(_group(config), config.p, config.n_max)
    rows = [row.model_dump() for row in census.rows]
    return _record(config, "m_ideal", rows, passed=all(row.holds for row in census.rows))


def compute_verify(config: RunConfig) -> ResultRecord:
    if config.suite is None:
        raise InvalidInput(f"a suite is required; available: {', '.join(suite_names())}")
    report = run_suite(config.suite)
    rows = [check.model_dump() for check in report.checks]
    return _record(config, "verify", rows, passed=report.passed)


@app.command()
def repgrowth(
    group: GroupOpt = None,
    p: POpt = None,
    e: EOpt = None,
    nmax: NMaxOpt = None,
    fmt: FormatOpt = None,
    cache: CacheOpt = None,
    budget_ms: BudgetOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
) -> None:
    """Count irreducible and absolutely irreducible representations by dimension."""
    options = dict(group=group, p=p, e=e, n_max=nmax)
    options.update(format=fmt, cache_dir=cache, budget_ms=budget_ms, verbose=verbose or None)
    _execute("repgrowth", options, config, compute_repgrowth)


@app.command()
def extgrowth(
    group: GroupOpt = None,
    nmax: NMaxOpt = None,
    fmt: FormatOpt = None,
    cache: CacheOpt = None,
    budget_ms: BudgetOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
) -> None:
    """Count minimal extensions of every degree from 2 to ``--nmax`` by kernel kind."""
    options = dict(group=group, n_max=nmax)
    options.update(format=fmt, cache_dir=cache, budget_ms=budget_ms, verbose=verbose or None)
    _execute("extgrowth", options, config, compute_extgrowth)


@app.command()
def freegrowth(
    d: DOpt = None,
    p: POpt = None,
    e: EOpt = None,
    nmax: NMaxOpt = None,
    workers: WorkersOpt = None,
    fmt: FormatOpt = None,
    cache: CacheOpt = None,
    budget_ms: BudgetOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
) -> None:
    """Census of irreducible d-tuples in GL_n(F_p) for n up to ``--nmax``, with both lower bounds."""
    options = dict(d=d, p=p, e=e, n_max=nmax, workers=workers)
    options.update(format=fmt, cache_dir=cache, budget_ms=budget_ms, verbose=verbose or None)
    _execute("freegrowth", options, config, compute_freegrowth)


@app.command()
def probgen(
    group: GroupOpt = None,
    kernel_order: KernelOpt = None,
    kmax: KMaxOpt = None,
    quantity: QuantityOpt = None,
    seed: SeedOpt = None,
    trials: TrialsOpt = None,
    fmt: FormatOpt = None,
    cache: CacheOpt = None,
    budget_ms: BudgetOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
) -> None:
    """Probability that k random elements of H normally generate the kernel of H -> H/N."""
    options = dict(
        group=group, kernel_order=kernel_order, k_max=kmax, quantity=quantity, seed=seed, trials=trials
    )
    options.update(format=fmt, cache_dir=cache, budget_ms=budget_ms, verbose=verbose or None)
    _execute("probgen", options, config, compute_probgen)


@app.command()
def idealgrowth(
    group: GroupOpt = None,
    p: POpt = None,
    e: EOpt = None,
    nmax: NMaxOpt = None,
    fmt: FormatOpt = None,
    cache: CacheOpt = None,
    budget_ms: BudgetOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
) -> None:
    """Count maximal left ideals of F_p[G] by index against r_n(G, F_p)."""
    options = dict(group=group, p=p, e=e, n_max=nmax)
    options.update(format=fmt, cache_dir=cache, budget_ms=budget_ms, verbose=verbose or None)
    _execute("idealgrowth", options, config, compute_idealgrowth)


@app.command()
def verify(
    suite: Annotated[str | None, typer.Argument(help="Suite name, or 'all'.")] = None,
    fmt: FormatOpt = None,
    cache: CacheOpt = None,
    budget_ms: BudgetOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
) -> None:
    """Run a verification suite; exits 1 if any check fails."""
    options = dict(suite=suite)
    options.update(format=fmt, cache_dir=cache, budget_ms=budget_ms, verbose=verbose or None)
    _execute("verify", options, config, compute_verify)


def main() -> int:
    """Console entry point; returns the process exit code."""
    try:
        app(prog_name="pgl")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0
