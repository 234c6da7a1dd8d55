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

"""This module contains the Fourier-mode data model, the hermitian product and the quadrature oracle."""

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate

from packages.valory.skills.helmholtz_annulus.exceptions import (
    AliasingError,
    DomainError,
    QuadratureAccuracyError,
)
from packages.valory.skills.helmholtz_annulus.models import (
    DEFAULT_MAX_SUBINTERVALS,
    DEFAULT_REL_TOL,
)


_logger = logging.getLogger(__name__)

ABS_FLOOR = 1e-14
# the reported error may exceed the requested one by this factor before the quadrature is refused
ACCURACY_SLACK = 10.0
REAL_SYMMETRY_TOL = 1e-12

RadialValue = Tuple[complex, complex]
Integrand = Callable[[float], Union[float, complex]]


def summation_key(mode: int) -> Tuple[int, bool]:
    """Get the key of the fixed summation order: ascending |n|, n before -n."""
    return abs(mode), mode < 0


def ordered_modes(modes: Mapping[int, object]) -> List[int]:
    """Get the mode numbers of a mapping in the fixed summation order."""
    return sorted(modes, key=summation_key)


@dataclass(frozen=True)
class Annulus:
    """The annulus between the radii `inner` and `outer`."""

    inner: float
    outer: float

    def __post_init__(self) -> None:
        """Perform post-initialization checks."""
        if not 0 < self.inner < self.outer:
            raise DomainError(
                f"An annulus requires 0 < inner < outer; got inner={self.inner!r}, outer={self.outer!r}."
            )

    def contains(self, radius: float) -> bool:
        """Check whether the radius lies in the closed annulus."""
        return self.inner <= radius <= self.outer


@dataclass(frozen=True)
class FourierModes:
    """The Fourier coefficients f_n, |n| <= N, of angular data; absent coefficients are zero."""

    truncation: int
    coefficients: Dict[int, complex] = field(default_factory=dict)
    real: bool = False

    def __post_init__(self) -> None:
        """Perform post-initialization checks."""
        if self.truncation < 0:
            raise DomainError(
                f"The truncation must be non-negative; got {self.truncation}."
            )
        outside = [n for n in self.coefficients if abs(n) > self.truncation]
        if outside:
            raise DomainError(
                f"Modes {sorted(outside)} lie outside the truncation |n| <= {self.truncation}."
            )
        casted = {int(n): complex(value) for n, value in self.coefficients.items()}
        object.__setattr__(self, "coefficients", casted)
        if self.real:
            self._check_real_symmetry()

    def _check_real_symmetry(self) -> None:
        """Check that the coefficients describe real-valued angular data."""
        scale = max((abs(value) for value in self.coefficients.values()), default=0.0)
        for n, value in self.coefficients.items():
            mirrored = self.coefficient(-n).conjugate()
            if abs(value - mirrored) > REAL_SYMMETRY_TOL * max(scale, 1.0):
                raise DomainError(
                    f"Coefficients of real data must satisfy f(-n) = conj(f(n)); mode {n} does not."
                )

    @classmethod
    def from_mapping(
        cls, coefficients: Mapping[int, complex], real: bool = False
    ) -> "FourierModes":
        """Build the modes with the smallest truncation holding the given coefficients."""
        truncation = max((abs(n) for n in coefficients), default=0)
        return cls(truncation, dict(coefficients), real)

    @property
    def modes(self) -> List[int]:
        """Get the present mode numbers in the fixed summation order."""
        return ordered_modes(self.coefficients)

    def coefficient(self, mode: int) -> complex:
        """Get the coefficient of a mode, zero if absent."""
        return self.coefficients.get(mode, 0j)

    def scaled(self, factor: complex) -> "FourierModes":
        """Get the coefficients multiplied by a complex factor."""
        coefficients = {n: factor * value for n, value in self.coefficients.items()}
        real = self.real and complex(factor).imag == 0
        return FourierModes(self.truncation, coefficients, real)

    def evaluate(self, omega: float) -> complex:
        """Evaluate the angular data at an angle."""
        return sum(
            (self.coefficients[n] * cmath.exp(1j * n * omega) for n in self.modes),
            0j,
        )


@dataclass(frozen=True)
class RadialModeFunction:
    """The radial part u_n of one Fourier mode, returning the value and the radial derivative."""

    mode: int
    evaluator: Callable[[float], RadialValue]

    def __call__(self, radius: float) -> RadialValue:
        """Evaluate the radial part and its derivative."""
        value, derivative = self.evaluator(radius)
        return complex(value), complex(derivative)


RadialModes = Mapping[int, RadialModeFunction]


@dataclass(frozen=True)
class QuadratureResult:
    """An adaptive quadrature estimate with its error estimate."""

    value: Union[float, complex]
    error: float


def fourier_coeffs_from_samples(
    samples: Sequence[complex], truncation: int, real: bool = False
) -> FourierModes:
    """
    Get the Fourier coefficients of data sampled on a uniform angular grid over [0, 2 pi).

    f_n = (1 / M) sum_j s_j exp(-i n omega_j), the trapezoidal rule for the
    defining integral, exact for trigonometric polynomials of degree < M / 2.

    :param samples: the M samples at omega_j = 2 pi j / M.
    :param truncation: the truncation N; M >= 4 N + 1 is required.
    :param real: whether the data are real-valued, in which case the conjugate symmetry is imposed.
    :return: the Fourier modes.
    """
    values = np.asarray(samples, dtype=complex)
    n_samples = values.size
    if truncation < 0:
        raise DomainError(f"The truncation must be non-negative; got {truncation}.")
    if n_samples < 4 * truncation + 1:
        raise AliasingError(
            f"{n_samples} samples alias a truncation of {truncation}; "
            f"at least {4 * truncation + 1} are required."
        )
    if real and np.any(values.imag != 0):
        raise DomainError(
            "The samples were declared real but have non-zero imaginary parts."
        )

    omegas = 2.0 * np.pi * np.arange(n_samples) / n_samples
    modes = np.arange(-truncation, truncation + 1)
    kernel = np.exp(-1j * np.outer(modes, omegas))
    coefficients = {
        int(n): complex(value) for n, value in zip(modes, kernel @ values / n_samples)
    }
    if real:
        for n in range(1, truncation + 1):
            coefficients[-n] = coefficients[n].conjugate()
        coefficients[0] = complex(coefficients[0].real)
    return FourierModes(truncation, coefficients, real)


def _quad_part(
    integrand: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float,
    max_subintervals: int,
) -> Tuple[float, float]:
    """Integrate a real-valued function with QUADPACK's adaptive Gauss-Kronrod rule."""
    value, error, info, *message = integrate.quad(
        integrand,
        a,
        b,
        epsabs=ABS_FLOOR,
        epsrel=rel_tol,
        limit=max_subintervals,
        full_output=1,
    )
    if message:
        _logger.debug(
            f"Quadrature over [{a}, {b}] reported after {info['last']} subintervals: {message[0]}"
        )
    return value, error


def quad(
    integrand: Integrand,
    a: float,
    b: float,
    rel_tol: float = DEFAULT_REL_TOL,
    max_subintervals: int = DEFAULT_MAX_SUBINTERVALS,
) -> QuadratureResult:
    """
    Integrate a real- or complex-valued function over [a, b].

    Complex integrands are integrated part by part. The estimate is refused if
    its reported error exceeds `rel_tol |value| + 1e-14` by more than the
    accuracy slack, which is what happens when the subdivision limit is hit.

    :param integrand: the function to integrate.
    :param a: the lower limit.
    :param b: the upper limit, not smaller than `a`.
    :param rel_tol: the relative tolerance.
    :param max_subintervals: the subdivision limit.
    :return: the estimate and its error estimate.
    """
    if not a <= b:
        raise DomainError(f"The integration interval requires a <= b; got [{a}, {b}].")
    if a == b:
        return QuadratureResult(0.0, 0.0)

    probe = integrand(0.5 * (a + b))
    if isinstance(probe, complex) or np.iscomplexobj(probe):
        real_value, real_error = _quad_part(
            lambda s: complex(integrand(s)).real, a, b, rel_tol, max_subintervals
        )
        imag_value, imag_error = _quad_part(
            lambda s: complex(integrand(s)).imag, a, b, rel_tol, max_subintervals
        )
        value: Union[float, complex] = complex(real_value, imag_value)
        error = math.hypot(real_error, imag_error)
    else:
        value, error = _quad_part(
            lambda s: float(integrand(s)), a, b, rel_tol, max_subintervals
        )

    if error > ACCURACY_SLACK * (rel_tol * abs(value) + ABS_FLOOR):
        raise QuadratureAccuracyError(
            f"The quadrature over [{a}, {b}] did not reach the relative tolerance {rel_tol}",
            value,
            error,
        )
    return QuadratureResult(value, error)


def _mode_integral(
    integrand: Callable[[float], float],
    domain: Annulus,
    rel_tol: float,
    max_subintervals: int,
) -> float:
    """Integrate a real mode integrand over the radial range of the annulus."""
    return float(
        quad(integrand, domain.inner, domain.outer, rel_tol, max_subintervals).value
    )


def hermitian_product(
    u: RadialModes,
    v: RadialModes,
    domain: Annulus,
    rel_tol: float = DEFAULT_REL_TOL,
    max_subintervals: int = DEFAULT_MAX_SUBINTERVALS,
) -> float:
    """
    Get the hermitian product Re sum_n int [rho u_n' conj(v_n') + (n^2 / rho) u_n conj(v_n)] d rho.

    The angular Parseval factor 2 pi is omitted. Modes present in only one of
    the two sets contribute nothing.

    :param u: the radial modes of the first field.
    :param v: the radial modes of the second field.
    :param domain: the annulus.
    :param rel_tol: the quadrature relative tolerance.
    :param max_subintervals: the quadrature subdivision limit.
    :return: the product.
    """
    total = 0.0
    for n in ordered_modes(u):
        if n not in v:
            continue
        u_mode, v_mode = u[n], v[n]

        def integrand(
            rho: float,
            n: int = n,
            u_mode: RadialModeFunction = u_mode,
            v_mode: RadialModeFunction = v_mode,
        ) -> float:
            u_val, u_der = u_mode(rho)
            v_val, v_der = (u_val, u_der) if v_mode is u_mode else v_mode(rho)
            value = (
                rho * u_der * v_der.conjugate()
                + n * n / rho * u_val * v_val.conjugate()
            )
            return value.real

        total += _mode_integral(integrand, domain, rel_tol, max_subintervals)
    return total


def seminorm(
    u: RadialModes,
    domain: Annulus,
    rel_tol: float = DEFAULT_REL_TOL,
    max_subintervals: int = DEFAULT_MAX_SUBINTERVALS,
) -> float:
    """Get the seminorm associated to the hermitian product."""
    product = hermitian_product(u, u, domain, rel_tol, max_subintervals)
    return math.sqrt(max(product, 0.0))


def h1_norm(
    v: RadialModes,
    domain: Annulus,
    rel_tol: float = DEFAULT_REL_TOL,
    max_subintervals: int = DEFAULT_MAX_SUBINTERVALS,
) -> float:
    """
    Get the H^1 norm of a field given by its radial modes.

    sqrt(sum_n int [rho |v_n'|^2 + (n^2 / rho + rho) |v_n|^2] d rho), with the
    same convention on the 2 pi factor as the hermitian product.
    """
    total = 0.0
    for n in ordered_modes(v):
        mode = v[n]

        def integrand(rho: float, n: int = n, mode: RadialModeFunction = mode) -> float:
            value, derivative = mode(rho)
            return rho * abs(derivative) ** 2 + (n * n / rho + rho) * abs(value) ** 2

        total += _mode_integral(integrand, domain, rel_tol, max_subintervals)
    return math.sqrt(total)


def gauge_transform(u: RadialModes, k: float) -> Dict[int, RadialModeFunction]:
    """Get the modes of U = exp(-i k r) u, whose derivative is exp(-i k r) (u' - i k u)."""
    if not k > 0:
        raise DomainError(f"The wavenumber must be positive; got {k!r}.")

    def transformed(mode: RadialModeFunction) -> RadialModeFunction:
        def evaluator(radius: float) -> RadialValue:
            value, derivative = mode(radius)
            phase = cmath.exp(-1j * k * radius)
            return phase * value, phase * (derivative - 1j * k * value)

        return RadialModeFunction(mode.mode, evaluator)

    return {n: transformed(u[n]) for n in ordered_modes(u)}


def evaluate_field(
    modes: Optional[FourierModes],
    radial: RadialModes,
    radius: float,
    omega: float,
    domain: Optional[Annulus] = None,
) -> complex:
    """
    Evaluate sum_n w_n u_n(r) exp(i n omega).

    :param modes: the weights w_n; unit weights are used when `None`.
    :param radial: the radial modes u_n.
    :param radius: the radius r.
    :param omega: the angle.
    :param domain: the annulus the radius must lie in, if any.
    :return: the value of the field.
    """
    if domain is not None and not domain.contains(radius):
        raise DomainError(
            f"Radius {radius!r} lies outside the annulus [{domain.inner}, {domain.outer}]."
        )
    total = 0j
    for n in ordered_modes(radial):
        weight = 1.0 if modes is None else modes.coefficient(n)
        if weight == 0:
            continue
        value, _ = radial[n](radius)
        total += weight * value * cmath.exp(1j * n * omega)
    return total
