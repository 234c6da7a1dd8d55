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

"""This module contains the tests of the Fourier modes, the hermitian product and the quadrature."""

import cmath
import math
from typing import Dict, List

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packages.valory.skills.helmholtz_annulus.exceptions import (
    AliasingError,
    DomainError,
    QuadratureAccuracyError,
)
from packages.valory.skills.helmholtz_annulus.spectral import (
    Annulus,
    FourierModes,
    RadialModeFunction,
    evaluate_field,
    fourier_coeffs_from_samples,
    gauge_transform,
    h1_norm,
    hermitian_product,
    ordered_modes,
    quad,
    seminorm,
)


UNIT_ANNULUS = Annulus(1.0, 2.0)

complex_numbers = st.complex_numbers(
    max_magnitude=10.0, allow_nan=False, allow_infinity=False
)
positive_numbers = st.floats(min_value=0.1, max_value=10.0)


def polynomial_mode(mode: int, coefficients: List[complex]) -> RadialModeFunction:
    """Get the radial mode sum_j a_j rho^j."""

    def evaluator(rho: float):
        value = sum(a * rho**j for j, a in enumerate(coefficients))
        derivative = sum(
            j * a * rho ** (j - 1) for j, a in enumerate(coefficients) if j
        )
        return value, derivative

    return RadialModeFunction(mode, evaluator)


def polynomial_fields(
    coefficients: st.SearchStrategy = complex_numbers,
) -> st.SearchStrategy:
    """Strategy of mode sets with polynomial radial parts."""
    return st.dictionaries(
        st.integers(min_value=-4, max_value=4),
        st.lists(coefficients, min_size=1, max_size=4),
        min_size=1,
        max_size=4,
    ).map(lambda raw: {n: polynomial_mode(n, values) for n, values in raw.items()})


def samples_of(function, count: int) -> List[complex]:
    """Sample a function of the angle on the uniform grid."""
    return [function(2.0 * math.pi * j / count) for j in range(count)]


def test_summation_order() -> None:
    """Test the fixed order: ascending |n|, n before -n."""
    assert ordered_modes({-2: 0, 1: 0, 0: 0, 2: 0, -1: 0}) == [0, 1, -1, 2, -2]


def test_constant_samples() -> None:
    """Test the coefficients of constant data."""
    modes = fourier_coeffs_from_samples([1.0] * 13, 3)
    assert modes.coefficient(0) == pytest.approx(1.0, abs=1e-15)
    for n in range(-3, 4):
        if n:
            assert abs(modes.coefficient(n)) <= 1e-15


def test_single_exponential() -> None:
    """Test the coefficients of exp(2 i omega)."""
    modes = fourier_coeffs_from_samples(samples_of(lambda w: cmath.exp(2j * w), 13), 3)
    for n in range(-3, 4):
        expected = 1.0 if n == 2 else 0.0
        assert abs(modes.coefficient(n) - expected) <= 1e-12


def test_cosine_samples() -> None:
    """Test the coefficients of real cosine data."""
    modes = fourier_coeffs_from_samples(samples_of(math.cos, 16), 3, real=True)
    assert modes.coefficient(1) == pytest.approx(0.5, abs=1e-12)
    assert modes.coefficient(-1) == pytest.approx(0.5, abs=1e-12)
    assert modes.real


@given(st.lists(complex_numbers, min_size=7, max_size=7))
def test_trigonometric_polynomials_are_exact(coefficients: List[complex]) -> None:
    """Test that trigonometric polynomials of degree 3 are recovered from 13 samples."""
    data = dict(zip(range(-3, 4), coefficients))
    samples = samples_of(
        lambda w: sum(c * cmath.exp(1j * n * w) for n, c in data.items()), 13
    )
    modes = fourier_coeffs_from_samples(samples, 3)
    scale = max(1.0, max(map(abs, coefficients)))
    for n, value in data.items():
        assert abs(modes.coefficient(n) - value) <= 1e-12 * scale


def test_aliasing_is_refused() -> None:
    """Test that fewer than 4 N + 1 samples are refused."""
    with pytest.raises(AliasingError):
        fourier_coeffs_from_samples([1.0] * 12, 3)


def test_real_samples_with_imaginary_parts() -> None:
    """Test that complex samples declared real are refused."""
    with pytest.raises(DomainError):
        fourier_coeffs_from_samples([1j] * 5, 1, real=True)


def test_fourier_modes_validation() -> None:
    """Test the truncation and the opt-in conjugate symmetry."""
    with pytest.raises(DomainError):
        FourierModes(1, {2: 1.0})
    with pytest.raises(DomainError):
        FourierModes(1, {1: 1j, -1: 1j}, real=True)
    modes = FourierModes(1, {1: 1j, -1: -1j}, real=True)
    assert modes.coefficient(0) == 0
    assert FourierModes.from_mapping({-3: 1.0, 1: 2.0}).truncation == 3
    assert FourierModes(1, {1: 1j}).evaluate(0.5) == pytest.approx(1j * cmath.exp(0.5j))


def test_quad_examples() -> None:
    """Test the quadrature on elementary integrals."""
    assert quad(lambda s: s, 1.0, 2.0).value == pytest.approx(1.5, rel=1e-12)
    assert quad(math.sin, 0.0, math.pi).value == pytest.approx(2.0, rel=1e-12)
    result = quad(lambda s: cmath.exp(1j * s), 0.0, math.pi)
    assert result.value == pytest.approx(2j, rel=1e-12)
    assert quad(math.exp, 1.0, 1.0).value == 0.0


def test_quad_refuses_reversed_interval() -> None:
    """Test that a > b is refused."""
    with pytest.raises(DomainError):
        quad(math.exp, 2.0, 1.0)


def test_quad_accuracy_error() -> None:
    """Test that an estimate above the tolerance is refused and carried by the error."""
    with pytest.raises(QuadratureAccuracyError) as excinfo:
        quad(
            lambda s: math.sin(100.0 * s),
            0.0,
            10.0,
            rel_tol=1e-12,
            max_subintervals=1,
        )
    assert excinfo.value.error > 0
    assert math.isfinite(excinfo.value.estimate)


def test_hermitian_product_examples() -> None:
    """Test the product on hand-computed fields."""
    constant = {0: RadialModeFunction(0, lambda rho: (3.0, 0.0))}
    assert hermitian_product(constant, constant, UNIT_ANNULUS) == 0.0
    linear = {1: RadialModeFunction(1, lambda rho: (rho, 1.0))}
    product = hermitian_product(linear, linear, UNIT_ANNULUS)
    assert product == pytest.approx(3.0, rel=1e-12)
    assert seminorm(linear, UNIT_ANNULUS) == pytest.approx(math.sqrt(3.0), rel=1e-12)


def test_disjoint_modes_are_orthogonal() -> None:
    """Test that fields on disjoint mode sets are orthogonal."""
    u = {1: polynomial_mode(1, [1.0, 2j])}
    v = {2: polynomial_mode(2, [0.5, -1.0, 3.0])}
    assert hermitian_product(u, v, UNIT_ANNULUS) == 0.0


@settings(deadline=None, max_examples=500)
@given(polynomial_fields())
def test_hermitian_product_is_positive(u: Dict[int, RadialModeFunction]) -> None:
    """Test that the product of a field with itself is non-negative."""
    assert hermitian_product(u, u, UNIT_ANNULUS) >= 0.0
    assert h1_norm(u, UNIT_ANNULUS) >= seminorm(u, UNIT_ANNULUS) * (1 - 1e-12)


@settings(deadline=None)
@given(polynomial_fields(positive_numbers), polynomial_fields(positive_numbers))
def test_hermitian_product_is_symmetric(
    u: Dict[int, RadialModeFunction], v: Dict[int, RadialModeFunction]
) -> None:
    """Test that the real part of the product is symmetric."""
    uv = hermitian_product(u, v, UNIT_ANNULUS)
    assert uv == pytest.approx(hermitian_product(v, u, UNIT_ANNULUS), rel=1e-12)


def test_h1_norm_examples() -> None:
    """Test the H^1 norm of the zero field and of a constant."""
    assert h1_norm({}, UNIT_ANNULUS) == 0.0
    one = {0: RadialModeFunction(0, lambda rho: (1.0, 0.0))}
    assert h1_norm(one, UNIT_ANNULUS) == pytest.approx(math.sqrt(1.5), rel=1e-12)


def test_gauge_transform() -> None:
    """Test the unimodular factor and the removal of the radiating tail."""
    k = 1.3
    outgoing = {
        0: RadialModeFunction(
            0,
            lambda r: (
                cmath.exp(1j * k * r) / math.sqrt(r),
                cmath.exp(1j * k * r) * (1j * k / math.sqrt(r) - 0.5 * r**-1.5),
            ),
        )
    }
    gauged = gauge_transform(outgoing, k)
    for r in (1.0, 10.0, 100.0):
        assert abs(gauged[0](r)[0]) == pytest.approx(abs(outgoing[0](r)[0]), rel=1e-14)
    ratio = abs(gauged[0](100.0)[1]) / abs(gauged[0](10.0)[1])
    assert ratio == pytest.approx(10**-1.5, rel=0.05)

    twice = gauge_transform(gauged, k)
    for r in (1.5, 7.0):
        value, _ = outgoing[0](r)
        expected = cmath.exp(-2j * k * r) * value
        assert twice[0](r)[0] == pytest.approx(expected, rel=1e-13)


def test_gauge_transform_wavenumber() -> None:
    """Test that non-positive wavenumbers are refused."""
    with pytest.raises(DomainError):
        gauge_transform({}, 0.0)


def test_evaluate_field() -> None:
    """Test the assembly of the modes."""
    radial = lambda r: (r**2, 2 * r)  # noqa: E731
    single = {0: RadialModeFunction(0, radial)}
    values = {evaluate_field(None, single, 1.5, omega) for omega in (0.0, 1.0, 2.5)}
    assert values == {2.25 + 0j}

    pair = {n: RadialModeFunction(n, radial) for n in (1, -1)}
    modes = FourierModes(1, {1: 1.0, -1: 1.0})
    for omega in (0.0, 0.7, 2.0):
        assert evaluate_field(modes, pair, 1.5, omega) == pytest.approx(
            2 * math.cos(omega) * 2.25, abs=1e-14
        )

    with pytest.raises(DomainError):
        evaluate_field(None, single, 2.5, 0.0, UNIT_ANNULUS)


def test_evaluate_field_matches_direct_summation() -> None:
    """Test the assembly against a direct summation at random points."""
    rng = np.random.default_rng(7)
    radial = {n: polynomial_mode(n, [1.0, 0.5j * n, 0.1]) for n in range(-3, 4)}
    modes = FourierModes(3, {n: complex(*rng.normal(size=2)) for n in range(-3, 4)})
    for r, omega in zip(rng.uniform(1.0, 2.0, 20), rng.uniform(0.0, 2 * math.pi, 20)):
        expected = sum(
            modes.coefficient(n) * radial[n](r)[0] * cmath.exp(1j * n * omega)
            for n in range(-3, 4)
        )
        actual = evaluate_field(modes, radial, float(r), float(omega), UNIT_ANNULUS)
        assert actual == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_annulus_validation() -> None:
    """Test that 0 < inner < outer is required."""
    with pytest.raises(DomainError):
        Annulus(2.0, 1.0)
    assert UNIT_ANNULUS.contains(1.0) and not UNIT_ANNULUS.contains(2.5)
