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

"""This module contains the configuration models of the helmholtz annulus skill."""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple


DEFAULT_MAX_ORDER = 64
DEFAULT_REL_TOL = 1e-10
DEFAULT_MAX_SUBINTERVALS = 20000
DEFAULT_MIN_GAP = 1e-6
DEFAULT_SLOPE_TOLERANCE = 0.2
DEFAULT_N_R = 16
DEFAULT_N_OMEGA = 32
COMMANDS = ("solve", "sweep", "probe")
NORMS = ("fixed_window", "full_domain")


@dataclass(frozen=True)
class NumericsParams:
    """The numerical parameters of a run."""

    # the largest accepted order of the cylinder functions
    max_order: int = DEFAULT_MAX_ORDER
    # the relative tolerance of the adaptive quadrature
    rel_tol: float = DEFAULT_REL_TOL
    # the subdivision limit of the adaptive quadrature
    max_subintervals: int = DEFAULT_MAX_SUBINTERVALS
    # solves require R >= R0 (1 + min_gap)
    min_gap: float = DEFAULT_MIN_GAP
    # the half-width of the acceptance band of the fitted slopes
    slope_tolerance: float = DEFAULT_SLOPE_TOLERANCE

    def __post_init__(self) -> None:
        """Perform post-initialization checks."""
        if self.max_order < 0:
            raise ValueError(
                f"The maximum order must be non-negative; got {self.max_order}."
            )
        if not 0 < self.rel_tol < 1:
            raise ValueError(
                f"The relative tolerance must be in (0, 1); got {self.rel_tol}."
            )
        if self.max_subintervals < 1:
            raise ValueError(
                f"The subdivision limit must be positive; got {self.max_subintervals}."
            )
        if self.min_gap < 0:
            raise ValueError(
                f"The minimum gap must be non-negative; got {self.min_gap}."
            )
        if self.slope_tolerance <= 0:
            raise ValueError(
                f"The slope tolerance must be positive; got {self.slope_tolerance}."
            )


@dataclass(frozen=True)
class ModeEntry:
    """A Fourier coefficient of the boundary data."""

    n: int
    re: float
    im: float = 0.0

    @property
    def value(self) -> complex:
        """Get the coefficient as a complex number."""
        return complex(self.re, self.im)


@dataclass(frozen=True)
class ProblemBlock:
    """The `problem` block: the wavenumber, the inner radius and the boundary data."""

    k: float
    r0: float
    modes: Tuple[ModeEntry, ...] = ()

    @property
    def coefficients(self) -> Dict[int, complex]:
        """Get the boundary data as a mapping from the mode number to its coefficient."""
        return {mode.n: mode.value for mode in self.modes}


@dataclass(frozen=True)
class FieldGrid:
    """The (r, omega) grid of the field samples written by `solve`."""

    r_min: Optional[float] = None
    r_max: Optional[float] = None
    n_r: int = DEFAULT_N_R
    n_omega: int = DEFAULT_N_OMEGA


@dataclass(frozen=True)
class SolveBlock:
    """The `solve` block."""

    outer: float
    field_grid: Optional[FieldGrid] = None


@dataclass(frozen=True)
class GeometricRange:
    """A geometric range of outer radii."""

    min: float
    max: float
    per_decade: int


@dataclass(frozen=True)
class SweepBlock:
    """The `sweep` block."""

    r_values: Optional[Tuple[float, ...]] = None
    geometric: Optional[GeometricRange] = None
    r_star: Optional[float] = None
    norms: Tuple[str, ...] = NORMS


@dataclass(frozen=True)
class ProbeBlock:
    """The `probe` block: the modes and the outer radii to inspect."""

    n: Tuple[int, ...]
    r_values: Tuple[float, ...]


@dataclass(frozen=True)
class RunConfig:
    """A parsed run configuration."""

    problem: ProblemBlock
    command: str
    solve: Optional[SolveBlock] = None
    sweep: Optional[SweepBlock] = None
    probe: Optional[ProbeBlock] = None
    numerics: NumericsParams = field(default_factory=NumericsParams)

    def to_dict(self) -> Dict[str, Any]:
        """Get the configuration in the document layout accepted by the loader."""
        problem = {
            "k": self.problem.k,
            "r0": self.problem.r0,
            "modes": [asdict(mode) for mode in self.problem.modes],
        }
        document: Dict[str, Any] = {
            "problem": problem,
            "numerics": asdict(self.numerics),
        }
        if self.solve is not None:
            solve: Dict[str, Any] = {"R": self.solve.outer}
            if self.solve.field_grid is not None:
                grid = asdict(self.solve.field_grid)
                solve["field_grid"] = {
                    key: value for key, value in grid.items() if value is not None
                }
            document["solve"] = solve
        if self.sweep is not None:
            sweep: Dict[str, Any] = {"norms": list(self.sweep.norms)}
            if self.sweep.r_values is not None:
                sweep["r_values"] = list(self.sweep.r_values)
            if self.sweep.geometric is not None:
                sweep["geometric"] = asdict(self.sweep.geometric)
            if self.sweep.r_star is not None:
                sweep["r_star"] = self.sweep.r_star
            document["sweep"] = sweep
        if self.probe is not None:
            document["probe"] = {
                "n": list(self.probe.n),
                "R": list(self.probe.r_values),
            }
        return document

    def to_json(self) -> str:
        """Serialize the configuration."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
