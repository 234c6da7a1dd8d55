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

"""This module contains the tests of the convergence experiments."""

import math

import numpy as np
import pytest

from packages.valory.skills.helmholtz_annulus.exceptions import (
    ConditioningError,
    DomainError,
    FitError,
    SweepError,
)
from packages.valory.skills.helmholtz_annulus.solver import ProblemSpec, c_coeff
from packages.valory.skills.helmholtz_annulus.study import (
    ErrorMethod,
    Norm,
    SweepConfig,
    asymptotic_c,
    error_fixed_window,
    error_full_domain,
    fit_envelope_slope,
    fit_loglog_slope,
    probe_mode,
    run_sweep,
    running_max_stabilized,
)
from packages.valory.skills.helmholtz_annulus.tests.conftest import make_spec
from packages.valory.skills.helmholtz_annulus.utils.grids import (
    geometric_radii,
    log_grid,
)


RADII = [10.0 * i for i in range(1, 9)]


@pytest.mark.parametrize(
    "law, slope",
    [
        (lambda r: 7.0 / r, -1.0),
        (lambda r: 3.0 / math.sqrt(r), -0.5),
        (lambda r: 0.2 * r**2, 2.0),
    ],
)
def test_exact_power_laws(law, slope: float) -> None:
    """Test that exact power laws are fitted exactly."""
    fit = fit_loglog_slope([(r, law(r)) for r in RADII])
    assert fit.slope == pytest.approx(slope, abs=1e-12)
    assert fit.residual <= 1e-12
    assert fit.n_points == 8


def test_fit_refusals() -> None:
    """Test that degenerate fits are refused."""
    with pytest.raises(FitError):
        fit_loglog_slope([(r, 1.0 / r) for r in RADII[:7]])
    with pytest.raises(FitError):
        fit_loglog_slope([(50.0, 0.02)] * 8)
    with pytest.raises(FitError):
        fit_loglog_slope([(r, 0.0 if r == 30.0 else 1.0 / r) for r in RADII])
    with pytest.raises(FitError):
        fit_loglog_slope([(r, -1.0 / r) for r in RADII])


def test_envelope_fit() -> None:
    """Test the fit through the local maxima of an oscillating sequence."""
    radii = geometric_radii(10.0, 1000.0, 8)
    points = [(r, (2.0 if i % 2 else 1.0) / r) for i, r in enumerate(radii)]
    fit = fit_envelope_slope(points)
    assert fit.slope == pytest.approx(-1.0, abs=1e-12)
    with pytest.raises(FitError):
        fit_envelope_slope([(r, 1.0 / r) for r in radii])


def test_asymptotic_c() -> None:
    """Test that the leading term of c_n^R is linear in R and even in n."""
    spec = make_spec({0: 1.0})
    assert asymptotic_c(2, 40.0, spec) == 2.0 * asymptotic_c(2, 20.0, spec)
    assert asymptotic_c(-3, 20.0, spec) == asymptotic_c(3, 20.0, spec)
    with pytest.raises(DomainError):
        asymptotic_c(0, 1.0, spec)


@pytest.mark.parametrize("n", range(5))
def test_c_coeff_approaches_its_leading_term(n: int) -> None:
    """Test c_n^R over its leading term at R = 1000 R0."""
    spec = make_spec({n: 1.0})
    ratio = c_coeff(n, 1000.0, spec) / asymptotic_c(n, 1000.0, spec)
    assert ratio == pytest.approx(1.0, abs=0.02)


def test_errors_of_zero_data() -> None:
    """Test that zero data has zero errors."""
    spec = make_spec({0: 0.0})
    assert error_fixed_window(spec, 10.0, 2.0) == 0.0
    assert error_full_domain(spec, 10.0) == 0.0


def test_errors_are_homogeneous() -> None:
    """Test that scaling the data scales the errors by its modulus."""
    spec = make_spec({0: 1.0, 1: -0.5j})
    alpha = 2.0 - 1.5j
    scaled = spec.with_data(spec.data.scaled(alpha))
    assert error_fixed_window(scaled, 30.0, 2.0) == pytest.approx(
        abs(alpha) * error_fixed_window(spec, 30.0, 2.0), rel=1e-12
    )
    assert error_full_domain(scaled, 30.0) == pytest.approx(
        abs(alpha) * error_full_domain(spec, 30.0), rel=1e-12
    )


def test_error_rates_single_mode() -> None:
    """Test the halving of the errors when R doubles (fixed window) or quadruples (full domain)."""
    spec = make_spec({0: 1.0})
    fixed = error_fixed_window(spec, 200.0, 2.0) / error_fixed_window(spec, 100.0, 2.0)
    assert fixed == pytest.approx(0.5, rel=0.25)
    full = error_full_domain(spec, 200.0) / error_full_domain(spec, 50.0)
    assert full == pytest.approx(0.5, rel=0.25)


@pytest.mark.parametrize("outer", [3.0, 10.0, 40.0])
def test_full_domain_dominates_fixed_window(
    acceptance_spec: ProblemSpec, outer: float
) -> None:
    """Test that the error over the whole annulus bounds the error over the window."""
    assert error_full_domain(acceptance_spec, outer) >= error_fixed_window(
        acceptance_spec, outer, 2.0
    )


@pytest.mark.parametrize("k", [0.5, 1.0, 2.7])
def test_error_methods_agree(k: float) -> None:
    """Test the closed-form errors against the quadrature norm."""
    spec = make_spec({0: 1.0, 2: 0.5}, k=k)
    for method in (ErrorMethod.CLOSED_FORM, ErrorMethod.QUADRATURE):
        assert error_fixed_window(spec, 8.0, 2.0, method) > 0
    assert error_fixed_window(spec, 8.0, 2.0, ErrorMethod.QUADRATURE) == pytest.approx(
        error_fixed_window(spec, 8.0, 2.0), rel=1e-8
    )
    assert error_full_domain(spec, 8.0, ErrorMethod.QUADRATURE) == pytest.approx(
        error_full_domain(spec, 8.0), rel=1e-8
    )


def test_fixed_window_requires_ordered_radii() -> None:
    """Test that R0 < R* < R is required."""
    spec = make_spec({0: 1.0})
    with pytest.raises(DomainError):
        error_fixed_window(spec, 3.0, 3.0)
    with pytest.raises(DomainError):
        error_fixed_window(spec, 3.0, 0.5)


def test_running_max_stabilized() -> None:
    """Test the stabilization check on synthetic sequences."""
    radii = log_grid(10.0, 1e4, 40)
    assert running_max_stabilized(radii, [1.0] * 40)
    assert not running_max_stabilized(radii, list(np.log(radii)))
    spike = [5.0 if r < 50.0 else 1.0 + 0.01 * math.sin(r) for r in radii]
    assert running_max_stabilized(radii, spike)
    assert not running_max_stabilized(radii, spike, burn_in_decades=0.0)
    with pytest.raises(DomainError):
        running_max_stabilized(radii, [1.0] * 40, burn_in_decades=4.0)
    with pytest.raises(DomainError):
        running_max_stabilized(radii[::-1], [1.0] * 40)


@pytest.mark.parametrize("n", [0, 1, 3])
def test_gamma_over_c_mechanism(n: int) -> None:
    """Test that R |gamma_n^R| / c_n^R is bounded and its running maximum stabilizes."""
    spec = make_spec({n: 1.0})
    radii = log_grid(10.0, 1e4, 40)
    rows = probe_mode(n, radii, spec)
    values = [row.r_gamma_over_c for row in rows]
    assert all(math.isfinite(value) for value in values)
    assert running_max_stabilized(radii, values)


@pytest.mark.parametrize("n", [1, 3])
def test_gamma_over_c_final_decade_holds_the_maximum(n: int) -> None:
    """Test that the final decade of R |gamma_n^R| / c_n^R reaches its overall maximum."""
    radii = log_grid(10.0, 1e4, 40)
    rows = probe_mode(n, radii, make_spec({n: 1.0}))
    values = np.array([row.r_gamma_over_c for row in rows])
    final_decade = np.asarray(radii) >= radii[-1] / 10.0
    assert values[final_decade].max() >= 0.9 * values.max()


def test_gamma_over_c_transient_of_mode_zero() -> None:
    """Test that mode 0 peaks in its first decade, which the burn-in discards."""
    radii = log_grid(10.0, 1e4, 40)
    values = [row.r_gamma_over_c for row in probe_mode(0, radii, make_spec({0: 1.0}))]
    assert not running_max_stabilized(radii, values, burn_in_decades=0.0)
    assert running_max_stabilized(radii, values)


def test_probe_mode() -> None:
    """Test the coefficient diagnostics."""
    spec = make_spec({0: 2.0})
    radii = [2.0, 10.0, 100.0, 1000.0]
    rows = probe_mode(0, radii, spec)
    assert [row.outer for row in rows] == radii
    assert all(b.c > a.c for a, b in zip(rows, rows[1:]))
    assert rows[-1].c_over_asymptotic_c == pytest.approx(1.0, abs=0.02)
    for row in rows:
        assert row.abs_v == pytest.approx(2.0 * row.abs_gamma / row.c, rel=1e-14)
        expected = row.outer * row.abs_gamma / row.c
        assert row.r_gamma_over_c == pytest.approx(expected, rel=1e-14)
    assert all(row.abs_v == 0 for row in probe_mode(1, radii, spec))


def test_sweep_config_validation(acceptance_spec: ProblemSpec) -> None:
    """Test the invariants of a sweep."""
    assert SweepConfig(acceptance_spec, (3.0, 4.0)).r_star == 2.0
    with pytest.raises(DomainError):
        SweepConfig(acceptance_spec, (4.0, 3.0))
    with pytest.raises(DomainError):
        SweepConfig(acceptance_spec, (4.0, 4.0))
    with pytest.raises(DomainError):
        SweepConfig(acceptance_spec, (4.0, 5.0), r_star=1.0)
    with pytest.raises(DomainError):
        SweepConfig(acceptance_spec, (2.0, 5.0))
    with pytest.raises(DomainError):
        SweepConfig(acceptance_spec, ())
    config = SweepConfig(acceptance_spec, (2.0, 5.0), norms=("full_domain",))
    assert config.norms == (Norm.FULL_DOMAIN,)


def test_acceptance_sweep(acceptance_spec: ProblemSpec) -> None:
    """Test the rates R^-1 on the fixed window and R^-1/2 on the whole annulus."""
    config = SweepConfig(acceptance_spec, tuple(geometric_radii(20.0, 640.0, 16)))
    report = run_sweep(config)
    assert report.n_points == 25
    radii = [row.outer for row in report.rows]
    assert radii == sorted(radii)
    assert -1.2 <= report.slope_fixed.slope <= -0.8
    assert -0.7 <= report.slope_full.slope <= -0.3
    for row in report.rows:
        assert 0 <= row.err_fixed <= row.err_full
        assert row.reduced <= 0
        rgc = [mode.r_gamma_over_c for mode in row.modes.values()]
        assert row.max_mode_rgc == max(rgc)
    assert run_sweep(config) == report


def test_sweep_of_zero_data() -> None:
    """Test that the fit of zero errors is refused."""
    config = SweepConfig(make_spec({0: 0.0}), tuple(RADII))
    with pytest.raises(FitError):
        run_sweep(config)


def test_sweep_single_norm(acceptance_spec: ProblemSpec) -> None:
    """Test a sweep restricted to the fixed window."""
    config = SweepConfig(acceptance_spec, tuple(RADII), norms=(Norm.FIXED_WINDOW,))
    report = run_sweep(config)
    assert report.slope_full is None
    assert all(row.err_full is None for row in report.rows)


def test_sweep_failure_identifies_the_radius(
    acceptance_spec: ProblemSpec, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Test that a failing row aborts the sweep with its radius."""
    from packages.valory.skills.helmholtz_annulus import study

    original = study.solve

    def failing_solve(spec: ProblemSpec, outer: float):
        if outer == 40.0:
            raise ConditioningError("ill-conditioned")
        return original(spec, outer)

    monkeypatch.setattr(study, "solve", failing_solve)
    with pytest.raises(SweepError) as excinfo:
        run_sweep(SweepConfig(acceptance_spec, tuple(RADII)))
    assert excinfo.value.outer == 40.0
    assert isinstance(excinfo.value.__cause__, ConditioningError)
