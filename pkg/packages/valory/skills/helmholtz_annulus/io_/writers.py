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

"""This module contains the writers of the CSV and JSON outputs."""

import csv
import json
from dataclasses import asdict, dataclass, is_dataclass
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence

from packages.valory.skills.helmholtz_annulus.solver import AnnulusSolution
from packages.valory.skills.helmholtz_annulus.study import (
    ConvergenceReport,
    ProbeRow,
    SlopeFit,
)


COEFFICIENTS_HEADER = (
    "n",
    "re_f",
    "im_f",
    "c",
    "re_gamma",
    "im_gamma",
    "re_v",
    "im_v",
)
FIELD_HEADER = ("r", "omega", "re_u", "im_u", "re_psi", "im_psi", "abs_u_minus_psi")
CONVERGENCE_HEADER = (
    "R",
    "err_fixed",
    "err_full",
    "I_R",
    "max_mode_gamma",
    "max_mode_Rgc",
)
PROBE_HEADER = (
    "n",
    "R",
    "c",
    "abs_gamma",
    "abs_v",
    "R_times_gamma_over_c",
    "c_over_asymptotic_c",
)

COEFFICIENTS_FILE = "coefficients.csv"
FIELD_FILE = "field.csv"
CONVERGENCE_FILE = "convergence.csv"
SUMMARY_FILE = "summary.json"
PROBE_FILE = "probe.csv"


def format_number(value: Optional[float]) -> str:
    """Format a number with 17 significant digits; `None` is an empty cell."""
    if value is None:
        return ""
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".17g")


@dataclass(frozen=True)
class SweepSummary:
    """The fitted slopes of a sweep; norms that were not requested are null."""

    slope_fixed: Optional[float]
    residual_fixed: Optional[float]
    slope_full: Optional[float]
    residual_full: Optional[float]
    r_star: float
    n_points: int


class ReportEncoder(json.JSONEncoder):
    """JSON encoder of the report dataclasses."""

    def default(self, o: Any) -> Any:
        """Serialize dataclasses."""
        if is_dataclass(o) and not isinstance(o, type):
            return asdict(o)
        return super().default(o)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a header and numeric rows with `\\n` line endings."""
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(value) for value in row])
    return path


def write_json(path: Path, payload: Any) -> Path:
    """Write a JSON document with sorted keys."""
    with open(path, "w", encoding="utf-8", newline="") as file:
        json.dump(payload, file, cls=ReportEncoder, indent=2, sort_keys=True)
        file.write("\n")
    return path


def coefficient_rows(sol: AnnulusSolution) -> List[List[Any]]:
    """Get the rows of the coefficients file."""
    return [
        [
            mode.mode,
            mode.f.real,
            mode.f.imag,
            mode.c,
            mode.gamma.real,
            mode.gamma.imag,
            mode.v.real,
            mode.v.imag,
        ]
        for mode in sol.modes
    ]


def field_rows(
    sol: AnnulusSolution, radii: Sequence[float], omegas: Sequence[float]
) -> List[List[float]]:
    """Get the rows of the field file, ordered by radius then angle."""
    rows = []
    for radius in radii:
        for omega in omegas:
            u = sol.field(radius, omega, "u")
            psi = sol.field(radius, omega, "psi")
            rows.append(
                [radius, omega, u.real, u.imag, psi.real, psi.imag, abs(u - psi)]
            )
    return rows


def convergence_rows(report: ConvergenceReport) -> List[List[Optional[float]]]:
    """Get the rows of the convergence file."""
    return [
        [
            row.outer,
            row.err_fixed,
            row.err_full,
            row.reduced,
            row.max_mode_gamma,
            row.max_mode_rgc,
        ]
        for row in report.rows
    ]


def summary(report: ConvergenceReport) -> SweepSummary:
    """Get the summary of a sweep."""

    def unpack(fit: Optional[SlopeFit]) -> List[Optional[float]]:
        return [None, None] if fit is None else [fit.slope, fit.residual]

    slope_fixed, residual_fixed = unpack(report.slope_fixed)
    slope_full, residual_full = unpack(report.slope_full)
    return SweepSummary(
        slope_fixed=slope_fixed,
        residual_fixed=residual_fixed,
        slope_full=slope_full,
        residual_full=residual_full,
        r_star=report.r_star,
        n_points=report.n_points,
    )


def probe_rows(rows: Iterable[ProbeRow]) -> List[List[float]]:
    """Get the rows of the probe file."""
    return [
        [
            row.n,
            row.outer,
            row.c,
            row.abs_gamma,
            row.abs_v,
            row.r_gamma_over_c,
            row.c_over_asymptotic_c,
        ]
        for row in rows
    ]
