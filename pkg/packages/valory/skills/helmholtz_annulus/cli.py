# -*- coding: utf-8 -*-
# ------------------------------------------------------------------------------
#
#   Copyright 2024 Valory AG
#
#   Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#   Unless required by applicable law or agreed to in writing, software
#   distributed under the License is distributed on an "AS IS" BASIS,
#   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#   See the License for the specific language governing permissions and
#   limitations under the License.
#
# ------------------------------------------------------------------------------

"""This module contains the command line interface of the helmholtz annulus skill."""

import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Optional

import click

from packages.valory.skills.helmholtz_annulus.exceptions import (
    ConfigError,
    HelmholtzAnnulusError,
)
from packages.valory.skills.helmholtz_annulus.io_.loader import (
    load_config,
    to_problem_spec,
    to_sweep_config,
)
from packages.valory.skills.helmholtz_annulus.io_.writers import (
    COEFFICIENTS_FILE,
    COEFFICIENTS_HEADER,
    CONVERGENCE_FILE,
    CONVERGENCE_HEADER,
    FIELD_FILE,
    FIELD_HEADER,
    PROBE_FILE,
    PROBE_HEADER,
    SUMMARY_FILE,
    coefficient_rows,
    convergence_rows,
    field_rows,
    probe_rows,
    summary,
    write_csv,
    write_json,
)
from packages.valory.skills.helmholtz_annulus.solver import solve
from packages.valory.skills.helmholtz_annulus.study import probe_mode, run_sweep
from packages.valory.skills.helmholtz_annulus.utils.grids import (
    angle_grid,
    radial_grid,
)


PACKAGE_LOGGER = "packages.valory.skills.helmholtz_annulus"
CONFIG_ERROR_EXIT_CODE = 2
NUMERIC_ERROR_EXIT_CODE = 3

_logger = logging.getLogger(__name__)


class PathArgument(click.Path):
    """Path parameter for CLI."""

    def convert(
        self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]
    ) -> Optional[Path]:
        """Convert path string to `pathlib.Path`"""
        path_string = super().convert(value, param, ctx)
        return None if path_string is None else Path(path_string)


def configure_logging(quiet: bool, verbose: bool) -> None:
    """Configure the log level of the package."""
    if quiet and verbose:
        raise click.UsageError("--quiet and --verbose are mutually exclusive.")
    level = logging.WARNING if quiet else logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    logging.getLogger(PACKAGE_LOGGER).setLevel(level)


def command(func: Callable[..., None]) -> Callable[..., None]:
    """Attach the shared arguments and map the errors to the exit codes."""

    @click.argument("config_path", type=PathArgument(dir_okay=False))
    @click.option(
        "--out",
        "out_dir",
        type=PathArgument(file_okay=False),
        default=Path("."),
        show_default=True,
        help="Directory the output files are written to.",
    )
    @click.option("--quiet", is_flag=True, help="Only log warnings and errors.")
    @click.option("--verbose", is_flag=True, help="Log debugging information.")
    @wraps(func)
    def wrapper(config_path: Path, out_dir: Path, quiet: bool, verbose: bool) -> None:
        configure_logging(quiet, verbose)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            func(config_path, out_dir)
        except ConfigError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(CONFIG_ERROR_EXIT_CODE)
        except HelmholtzAnnulusError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(NUMERIC_ERROR_EXIT_CODE)

    return wrapper


@click.group(name="helmholtz-annulus")
def cli() -> None:
    """Solve the exterior Helmholtz problem on an annulus by minimizing the radiation functional."""


@cli.command(name="solve")
@command
def cmd_solve(config_path: Path, out_dir: Path) -> None:
    """Write the mode coefficients of the minimizer and, if requested, field samples."""
    config = load_config(config_path, "solve")
    if config.solve is None:
        raise ConfigError("The configuration has no solve block.", "$.solve")
    spec = to_problem_spec(config)
    sol = solve(spec, config.solve.outer)
    path = write_csv(
        out_dir / COEFFICIENTS_FILE, COEFFICIENTS_HEADER, coefficient_rows(sol)
    )
    _logger.info(f"Wrote {len(sol.modes)} mode coefficients to {path}.")

    grid = config.solve.field_grid
    if grid is not None:
        r_min = spec.r0 if grid.r_min is None else grid.r_min
        r_max = sol.outer if grid.r_max is None else grid.r_max
        radii = radial_grid(r_min, r_max, grid.n_r)
        omegas = angle_grid(grid.n_omega)
        rows = field_rows(sol, radii, omegas)
        path = write_csv(out_dir / FIELD_FILE, FIELD_HEADER, rows)
        _logger.info(f"Wrote {len(rows)} field samples to {path}.")


@cli.command(name="sweep")
@command
def cmd_sweep(config_path: Path, out_dir: Path) -> None:
    """Write the convergence table of a sweep over the outer radius and its fitted slopes."""
    config = load_config(config_path, "sweep")
    report = run_sweep(to_sweep_config(config))
    write_csv(out_dir / CONVERGENCE_FILE, CONVERGENCE_HEADER, convergence_rows(report))
    path = write_json(out_dir / SUMMARY_FILE, summary(report))
    _logger.info(f"Wrote the summary of {report.n_points} radii to {path}.")


@cli.command(name="probe")
@command
def cmd_probe(config_path: Path, out_dir: Path) -> None:
    """Write the per-mode coefficient diagnostics over a list of outer radii."""
    config = load_config(config_path, "probe")
    if config.probe is None:
        raise ConfigError("The configuration has no probe block.", "$.probe")
    spec = to_problem_spec(config)
    rows = [
        row
        for n in config.probe.n
        for row in probe_mode(n, config.probe.r_values, spec)
    ]
    path = write_csv(out_dir / PROBE_FILE, PROBE_HEADER, probe_rows(rows))
    _logger.info(f"Wrote {len(rows)} probe rows to {path}.")


if __name__ == "__main__":
    cli()  # pragma: nocover
