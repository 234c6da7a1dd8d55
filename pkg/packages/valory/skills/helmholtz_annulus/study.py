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

"""This module contains the convergence experiments of the annulus minimizer as the outer radius grows."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from packages.valory.skills.helmholtz_annulus.cylinder import cyl_eval
from packages.valory.skills.helmholtz_annulus.exceptions import (
    DomainError,
    FitError,
    HelmholtzAnnulusError,
    SweepError,
)
from packages.valory.skills.helmholtz_annulus.solver import (
    AnnulusSolution,
    ProblemSpec,
    c_coeff,
    eta_energy,
    gamma_coeff,
    reduced_functional,
    solve,
)
from packages.valory.skills.helmholtz_annulus.spectral import Annulus, h1_norm


_logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 8
MIN_ENVELOPE_MAXIMA = 3
DEFAULT_STABILITY_TOLERANCE = 0.1
DEFAULT_BURN_IN_DECADES = 1.0


class Norm(Enum):
    """The error norms of a sweep."""

    FIXED_WINDOW = "fixed_window"
    FULL_DOMAIN = "full_domain"


class ErrorMethod(Enum):
    """How the H^1 errors are evaluated."""

    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class SweepConfig:
    """A convergence sweep: the problem, the outer radii, the observation radius R* and the norms."""

    spec: ProblemSpec
    r_values: Tuple[float, ...]
    r_star: Optional[float] = None
    norms: Tuple[Norm, ...] = (Norm.FIXED_WINDOW, Norm.FULL_DOMAIN)
    method: ErrorMethod = ErrorMethod.CLOSED_FORM

    def __post_init__(self) -> None:
        """Perform post-initialization checks."""
        object.__setattr__(self, "r_values", tuple(float(r) for r in self.r_values))
        object.__setattr__(self, "norms", tuple(Norm(norm) for norm in self.norms))
        object.__setattr__(self, "method", ErrorMethod(self.method))
        if self.r_star is None:
            object.__setattr__(self, "r_star", 2.0 * self.spec.r0)

        if not self.r_values:
            raise DomainError("A sweep needs at least one outer radius.")
        if not self.norms:
            raise DomainError("A sweep needs at least one norm.")
        if any(b <= a for a, b in zip(self.r_values, self.r_values[1:])):
            raise DomainError("The outer radii of a sweep must be strictly increasing.")
        if not self.r_star > self.spec.r0:
            raise DomainError(
                f"R* must exceed R0={self.spec.r0!r}; got R*={self.r_star!r}."
            )
        if Norm.FIXED_WINDOW in self.norms and not self.r_values[0] > self.r_star:
            raise DomainError(
                f"Every outer radius must exceed R*={self.r_star!r}; got {self.r_values[0]!r}."
            )


@dataclass(frozen=True)
class ModeDiagnostics:
    """The per-mode quantities recorded in a sweep row."""

    abs_gamma: float
    c: float
    abs_v: float
    r_gamma_over_c: float


@dataclass(frozen=True)
class SweepRow:
    """One outer radius of a sweep."""

    outer: float
    err_fixed: Optional[float]
    err_full: Optional[float]
    reduced: float
    modes: Dict[int, ModeDiagnostics] = field(default_factory=dict)

    @property
    def max_mode_gamma(self) -> float:
        """Get the largest |gamma_n^R| over the modes."""
        return max((mode.abs_gamma for mode in self.modes.values()), default=0.0)

    @property
    def max_mode_rgc(self) -> float:
        """Get the largest R |gamma_n^R| / c_n^R over the modes."""
        return max((mode.r_gamma_over_c for mode in self.modes.values()), default=0.0)


@dataclass(frozen=True)
class SlopeFit:
    """A least-squares line through (log R, log error)."""

    slope: float
    intercept: float
    residual: float
    n_points: int


@dataclass(frozen=True)
class ConvergenceReport:
    """The rows of a sweep and the slopes fitted per norm."""

    rows: Tuple[SweepRow, ...]
    r_star: float
    slope_fixed: Optional[SlopeFit] = None
    slope_full: Optional[SlopeFit] = None

    @property
    def n_points(self) -> int:
        """Get the number of rows."""
        return len(self.rows)


def _error_norm(sol: AnnulusSolution, upper: float, method: ErrorMethod) -> float:
    """Get the H^1 norm of v_{A_R} = u_{A_R} - psi over [R0, upper]."""
    spec = sol.spec
    if method is ErrorMethod.QUADRATURE:
        return h1_norm(
            sol.v,
            Annulus(spec.r0, upper),
            spec.numerics.rel_tol,
            spec.numerics.max_subintervals,
        )
    total = 0.0
    for mode in sol.modes:
        if mode.v == 0:
            continue
        total += abs(mode.v) ** 2 * eta_energy(mode.mode, spec.r0, upper, spec)
    return math.sqrt(total)


def error_fixed_window(
    spec: ProblemSpec,
    outer: float,
    r_star: float,
    method: ErrorMethod = ErrorMethod.CLOSED_FORM,
) -> float:
    """
    Get the H^1 norm of psi - u_{A_R} over the fixed annulus R0 < r < R*.

    :param spec: the problem.
    :param outer: the outer radius R.
    :param r_star: the observation radius, R0 < R* < R.
    :param method: closed-form mode energies or quadrature.
    :return: the error.
    """
    if not spec.r0 < r_star < outer:
        raise DomainError(
            f"The fixed window requires R0 < R* < R; got R0={spec.r0!r}, R*={r_star!r}, R={outer!r}."
        )
    return _error_norm(solve(spec, outer), r_star, ErrorMethod(method))


def error_full_domain(
    spec: ProblemSpec, outer: float, method: ErrorMethod = ErrorMethod.CLOSED_FORM
) -> float:
    """Get the H^1 norm of psi - u_{A_R} over the whole annulus R0 < r < R."""
    return _error_norm(solve(spec, outer), outer, ErrorMethod(method))


def _log_points(points: Sequence[Tuple[float, float]]) -> Tuple[np.ndarray, np.ndarray]:
    """Check the points of a fit and take their logarithms."""
    radii = np.array([point[0] for point in points], dtype=float)
    errors = np.array([point[1] for point in points], dtype=float)
    if np.any(~np.isfinite(radii)) or np.any(radii <= 0):
        raise FitError("The radii of a log-log fit must be positive and finite.")
    if np.any(~np.isfinite(errors)) or np.any(errors <= 0):
        raise FitError(
            "The errors of a log-log fit must be positive and finite; the logarithm is undefined otherwise."
        )
    return np.log(radii), np.log(errors)


def _least_squares(log_r: np.ndarray, log_e: np.ndarray) -> SlopeFit:
    """Fit a line by ordinary least squares and report the RMS residual."""
    slope, intercept = np.polyfit(log_r, log_e, 1)
    residuals = log_e - (slope * log_r + intercept)
    residual = float(np.sqrt(np.mean(residuals**2)))
    return SlopeFit(float(slope), float(intercept), residual, int(log_r.size))


def fit_loglog_slope(points: Sequence[Tuple[float, float]]) -> SlopeFit:
    """
    Fit log(error) = slope log(R) + intercept.

    :param points: at least eight (R, error) pairs with distinct positive R and positive errors.
    :return: the fit, with the RMS residual of the log-errors about the line.
    """
    if len(points) < MIN_FIT_POINTS:
        raise FitError(
            f"A log-log fit needs at least {MIN_FIT_POINTS} points; got {len(points)}."
        )
    log_r, log_e = _log_points(points)
    if np.unique(log_r).size != log_r.size:
        raise FitError(
            "The radii of a log-log fit must be distinct; the spread is degenerate."
        )
    return _least_squares(log_r, log_e)


def fit_envelope_slope(points: Sequence[Tuple[float, float]]) -> SlopeFit:
    """
    Fit the log-log slope through the local maxima of an oscillating error sequence.

    The points are taken in increasing R; a point is a local maximum when it
    is not below either neighbour. At least three maxima are required.
    """
    ordered = sorted(points)
    log_r, log_e = _log_points(ordered)
    if np.unique(log_r).size != log_r.size:
        raise FitError("The radii of an envelope fit must be distinct.")
    peaks = [
        i
        for i in range(1, log_e.size - 1)
        if log_e[i] >= log_e[i - 1] and log_e[i] >= log_e[i + 1]
    ]
    if len(peaks) < MIN_ENVELOPE_MAXIMA:
        raise FitError(
            f"An envelope fit needs at least {MIN_ENVELOPE_MAXIMA} local maxima; found {len(peaks)}."
        )
    return _least_squares(log_r[peaks], log_e[peaks])


def asymptotic_c(n: int, outer: float, spec: ProblemSpec) -> float:
    """Get the leading term (2 k R / pi) [J_n(k R0)^2 + Y_n(k R0)^2] of c_n^R."""
    if not outer > spec.r0:
        raise DomainError(
            f"The outer radius must exceed R0={spec.r0!r}; got R={outer!r}."
        )
    inner = cyl_eval(abs(n), spec.inner_argument, spec.max_order)
    return 2.0 * spec.k * outer / math.pi * (inner.j**2 + inner.y**2)


def running_max_stabilized(
    radii: Sequence[float],
    values: Sequence[float],
    tolerance: float = DEFAULT_STABILITY_TOLERANCE,
    burn_in_decades: float = DEFAULT_BURN_IN_DECADES,
) -> bool:
    """
    Check that the running maximum of a bounded sequence has stabilized.

    The points within `burn_in_decades` of the first radius are discarded.
    The maximum over the final decade must then be within `tolerance`
    (relative) of the maximum over the remaining points, and so must the
    running maximum reached before the final decade.

    :param radii: increasing radii.
    :param values: the non-negative values at the radii.
    :param tolerance: the relative tolerance.
    :param burn_in_decades: the number of leading decades to discard.
    :return: whether the running maximum stabilized.
    """
    r = np.asarray(radii, dtype=float)
    v = np.asarray(values, dtype=float)
    if r.size != v.size or r.size == 0:
        raise DomainError(
            "The radii and the values must be non-empty and of equal length."
        )
    if np.any(np.diff(r) <= 0) or r[0] <= 0:
        raise DomainError("The radii must be positive and strictly increasing.")
    if not np.all(np.isfinite(v)):
        return False

    kept = r >= r[0] * 10.0**burn_in_decades
    if not np.any(kept):
        raise DomainError(
            f"No radius is left after a burn-in of {burn_in_decades} decades."
        )
    overall = float(np.max(v[kept]))
    final_decade = r >= r[-1] / 10.0
    bound = (1.0 - tolerance) * overall
    if float(np.max(v[kept & final_decade])) < bound:
        return False
    earlier = kept & ~final_decade
    return not np.any(earlier) or float(np.max(v[earlier])) >= bound


@dataclass(frozen=True)
class ProbeRow:
    """The coefficient diagnostics of one mode at one outer radius."""

    n: int
    outer: float
    c: float
    abs_gamma: float
    abs_v: float
    r_gamma_over_c: float
    c_over_asymptotic_c: float


def probe_mode(n: int, radii: Sequence[float], spec: ProblemSpec) -> List[ProbeRow]:
    """
    Get c_n^R, |gamma_n^R|, |v_n^R|, R |gamma_n^R| / c_n^R and c_n^R over its leading term at each radius.

    The mode need not carry boundary data, in which case |v_n^R| is zero.
    """
    f = spec.data.coefficient(n)
    rows = []
    for outer in radii:
        c = c_coeff(n, outer, spec)
        gamma = gamma_coeff(n, outer, spec)
        rows.append(
            ProbeRow(
                n=n,
                outer=float(outer),
                c=c,
                abs_gamma=abs(gamma),
                abs_v=abs(f * gamma / c),
                r_gamma_over_c=outer * abs(gamma) / c,
                c_over_asymptotic_c=c / asymptotic_c(n, outer, spec),
            )
        )
    return rows


def _sweep_row(config: SweepConfig, outer: float) -> SweepRow:
    """Solve at one outer radius and collect the row."""
    sol = solve(config.spec, outer)
    err_fixed = (
        _error_norm(sol, config.r_star, config.method)
        if Norm.FIXED_WINDOW in config.norms
        else None
    )
    err_full = (
        _error_norm(sol, outer, config.method)
        if Norm.FULL_DOMAIN in config.norms
        else None
    )
    modes = {
        mode.mode: ModeDiagnostics(
            abs_gamma=abs(mode.gamma),
            c=mode.c,
            abs_v=abs(mode.v),
            r_gamma_over_c=outer * abs(mode.gamma) / mode.c,
        )
        for mode in sol.modes
    }
    return SweepRow(outer, err_fixed, err_full, reduced_functional(sol), modes)


def run_sweep(config: SweepConfig) -> ConvergenceReport:
    """
    Run a convergence sweep and fit the log-log slope of every requested norm.

    :param config: the sweep.
    :return: the report, rows in increasing R.
    """
    rows: List[SweepRow] = []
    for outer in config.r_values:
        try:
            row = _sweep_row(config, outer)
        except HelmholtzAnnulusError as e:
            raise SweepError(outer, e) from e
        _logger.info(
            f"R={outer}: err_fixed={row.err_fixed}, err_full={row.err_full}, I_R={row.reduced}"
        )
        rows.append(row)

    slopes: Dict[Norm, SlopeFit] = {}
    for norm in config.norms:
        attribute = "err_fixed" if norm is Norm.FIXED_WINDOW else "err_full"
        points = [(row.outer, getattr(row, attribute)) for row in rows]
        slopes[norm] = fit_loglog_slope(points)
        fit = slopes[norm]
        _logger.info(
            f"Fitted {norm.value} slope {fit.slope:.4f} (residual {fit.residual:.3e})."
        )
        tolerance = config.spec.numerics.slope_tolerance
        expected = -1.0 if norm is Norm.FIXED_WINDOW else -0.5
        if abs(fit.slope - expected) > tolerance:
            _logger.warning(
                f"The {norm.value} slope {fit.slope:.4f} lies outside {expected} +- {tolerance}."
            )

    return ConvergenceReport(
        rows=tuple(rows),
        r_star=float(config.r_star),
        slope_fixed=slopes.get(Norm.FIXED_WINDOW),
        slope_full=slopes.get(Norm.FULL_DOMAIN),
    )
