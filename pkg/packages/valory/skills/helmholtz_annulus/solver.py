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

"""
This module contains the closed-form solver of the radiation-functional minimization on an annulus.

For boundary data f = sum_n f_n exp(i n omega) on the circle of radius R0,
the minimizer over the annulus R0 < r < R is u = psi + v, where psi is the
exact outgoing solution and v = sum_n v_n eta_n(k r) exp(i n omega), with
v_n = -f_n gamma_n / c_n. The coefficients c_n and gamma_n are evaluated in
closed form from the exact antiderivatives of the `cylinder` module after the
substitution s = k rho.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from packages.valory.skills.helmholtz_annulus.cylinder import (
    CylinderFunction,
    cross_product_integral,
    cyl_eval,
    hankel_eval,
    hankel_function,
    pair_antiderivative,
)
from packages.valory.skills.helmholtz_annulus.exceptions import (
    ConditioningError,
    CylinderOverflowError,
    DomainError,
)
from packages.valory.skills.helmholtz_annulus.models import NumericsParams
from packages.valory.skills.helmholtz_annulus.spectral import (
    Annulus,
    FourierModes,
    RadialModeFunction,
    RadialValue,
    evaluate_field,
    gauge_transform,
    hermitian_product,
    ordered_modes,
    quad,
)


_logger = logging.getLogger(__name__)

TWO_OVER_PI = 2.0 / math.pi


@dataclass(frozen=True)
class ProblemSpec:
    """The exterior Dirichlet problem: wavenumber k, inner radius R0 and boundary data f."""

    k: float
    r0: float
    data: FourierModes
    numerics: NumericsParams = field(default_factory=NumericsParams)

    def __post_init__(self) -> None:
        """Perform post-initialization checks."""
        for name in ("k", "r0"):
            value = getattr(self, name)
            if not value > 0 or not math.isfinite(value):
                raise DomainError(f"{name} must be positive and finite; got {value!r}.")
        for n in self.data.modes:
            h1 = hankel_eval(abs(n), self.inner_argument, self.max_order).h1
            if h1 == 0:
                raise DomainError(
                    f"H_{n}^(1)(k R0) vanishes; mode {n} cannot be normalised."
                )

    @property
    def inner_argument(self) -> float:
        """Get k R0."""
        return self.k * self.r0

    @property
    def max_order(self) -> int:
        """Get the largest accepted order."""
        return self.numerics.max_order

    def with_data(self, data: FourierModes) -> "ProblemSpec":
        """Get the same problem with other boundary data."""
        return ProblemSpec(self.k, self.r0, data, self.numerics)


def eta_function(n: int, spec: ProblemSpec) -> CylinderFunction:
    """Get eta_n = Y_n(k R0) J_n - J_n(k R0) Y_n as a cylinder function; it depends on |n| only."""
    order = abs(n)
    inner = cyl_eval(order, spec.inner_argument, spec.max_order)
    return CylinderFunction(order, inner.y, -inner.j, spec.max_order)


def eta(n: int, rho: float, spec: ProblemSpec) -> Tuple[float, float]:
    """
    Evaluate eta_n and its derivative with respect to its own argument.

    :param n: the mode number.
    :param rho: the positive argument.
    :param spec: the problem.
    :return: eta_n(rho) and eta_n'(rho).
    """
    order = abs(n)
    inner = cyl_eval(order, spec.inner_argument, spec.max_order)
    point = cyl_eval(order, rho, spec.max_order)
    value = inner.y * point.j - inner.j * point.y
    derivative = inner.y * point.jp - inner.j * point.yp
    return value, derivative


def _check_outer(outer: float, spec: ProblemSpec) -> None:
    """Check that the outer radius encloses the inner one."""
    if not outer > spec.r0 or not math.isfinite(outer):
        raise DomainError(
            f"The outer radius must exceed R0={spec.r0!r}; got R={outer!r}."
        )


def _eta_antiderivative(n: int, argument: float, spec: ProblemSpec) -> float:
    """Get the pair antiderivative with C = D = eta_n."""
    value, derivative = eta(n, argument, spec)
    return pair_antiderivative(
        abs(n), argument, value, derivative, value, derivative
    ).real


def c_coeff(n: int, outer: float, spec: ProblemSpec) -> float:
    """
    Get c_n^R = int_{R0}^{R} [rho k^2 eta_n'(k rho)^2 + (rho k^2 + n^2 / rho) eta_n(k rho)^2] d rho.

    With s = k rho the integral is int_{k R0}^{k R} [s eta'^2 + (s + n^2 / s) eta^2] ds,
    so that c_n^R = F(k R) - F(k R0) with F the pair antiderivative of eta_n with itself.

    :param n: the mode number.
    :param outer: the outer radius R.
    :param spec: the problem.
    :return: the positive coefficient.
    """
    _check_outer(outer, spec)
    upper = _eta_antiderivative(n, spec.k * outer, spec)
    lower = _eta_antiderivative(n, spec.inner_argument, spec)
    c = upper - lower
    if not c > 0:
        raise ConditioningError(
            f"c_{n} is not positive at R={outer!r} (c={c!r}); R is too close to R0={spec.r0!r}."
        )
    return c


def _hankel_eta_antiderivative(
    n: int, argument: float, hankel: CylinderFunction, spec: ProblemSpec
) -> complex:
    """Get the pair antiderivative with C = H_n^(1) and D = eta_n."""
    h_val, h_der = hankel.value(argument)
    e_val, e_der = eta(n, argument, spec)
    return pair_antiderivative(abs(n), argument, h_val, h_der, e_val, e_der)


def gamma_coeff(n: int, outer: float, spec: ProblemSpec) -> complex:
    """
    Get gamma_n^R = (2 / pi) k i (R - R0) + [G(k R) - G(k R0)] / H_n^(1)(k R0).

    G is the pair antiderivative with C = H_n^(1), D = eta_n; since
    eta_n(k R0) = 0, G(k R0) = -(2 k R0 / pi) H_n^(1)'(k R0).

    :param n: the mode number.
    :param outer: the outer radius R.
    :param spec: the problem.
    :return: the coefficient.
    """
    _check_outer(outer, spec)
    hankel = hankel_function(abs(n), spec.max_order)
    inner_value, _ = hankel.value(spec.inner_argument)
    upper = _hankel_eta_antiderivative(n, spec.k * outer, hankel, spec)
    lower = _hankel_eta_antiderivative(n, spec.inner_argument, hankel, spec)
    return 1j * TWO_OVER_PI * spec.k * (outer - spec.r0) + (upper - lower) / inner_value


@dataclass(frozen=True)
class ModeSolution:
    """The closed-form quantities of one mode: c_n^R, gamma_n^R and v_n^R = -f_n gamma_n^R / c_n^R."""

    mode: int
    f: complex
    c: float
    gamma: complex
    v: complex
    outer: float

    def __post_init__(self) -> None:
        """Perform post-initialization checks."""
        if not self.c > 0:
            raise ConditioningError(f"c_{self.mode} must be positive; got {self.c!r}.")
        if self.v != -self.f * self.gamma / self.c:
            raise ValueError(f"v_{self.mode} is not the minimizer -f gamma / c.")

    @classmethod
    def build(
        cls, mode: int, f: complex, c: float, gamma: complex, outer: float
    ) -> "ModeSolution":
        """Build the mode solution from its coefficients."""
        if not c > 0:
            raise ConditioningError(f"c_{mode} must be positive; got {c!r}.")
        return cls(mode, f, c, gamma, -f * gamma / c, outer)


def exact_solution(spec: ProblemSpec) -> Dict[int, RadialModeFunction]:
    """
    Get the radial modes of the exact outgoing solution psi.

    Mode n is f_n H_n^(1)(k r) / H_n^(1)(k R0), with derivative
    f_n k H_n^(1)'(k r) / H_n^(1)(k R0). The sign (-1)^n relating the orders n
    and -n cancels in the ratio.
    """
    k = spec.k

    def build(n: int) -> RadialModeFunction:
        hankel = hankel_function(abs(n), spec.max_order)
        inner_value, _ = hankel.value(spec.inner_argument)
        amplitude = spec.data.coefficient(n) / inner_value

        def evaluator(radius: float) -> RadialValue:
            value, derivative = hankel.value(k * radius)
            return amplitude * value, amplitude * k * derivative

        return RadialModeFunction(n, evaluator)

    return {n: build(n) for n in spec.data.modes}


def _eta_mode(n: int, amplitude: complex, spec: ProblemSpec) -> RadialModeFunction:
    """Get the radial mode amplitude * eta_n(k r)."""
    k = spec.k

    def evaluator(radius: float) -> RadialValue:
        value, derivative = eta(n, k * radius, spec)
        return amplitude * value, amplitude * k * derivative

    return RadialModeFunction(n, evaluator)


def _sum_modes(
    first: RadialModeFunction, second: RadialModeFunction
) -> RadialModeFunction:
    """Get the sum of two radial modes."""

    def evaluator(radius: float) -> RadialValue:
        value_1, derivative_1 = first(radius)
        value_2, derivative_2 = second(radius)
        return value_1 + value_2, derivative_1 + derivative_2

    return RadialModeFunction(first.mode, evaluator)


@dataclass(frozen=True)
class AnnulusSolution:
    """The minimizer u = psi + v of the radiation functional on the annulus R0 < r < R."""

    spec: ProblemSpec
    outer: float
    modes: Tuple[ModeSolution, ...]

    @property
    def domain(self) -> Annulus:
        """Get the annulus."""
        return Annulus(self.spec.r0, self.outer)

    def mode(self, n: int) -> ModeSolution:
        """Get the solution of a mode."""
        for mode in self.modes:
            if mode.mode == n:
                return mode
        raise KeyError(f"Mode {n} is not part of the solution.")

    @property
    def psi(self) -> Dict[int, RadialModeFunction]:
        """Get the radial modes of the exact solution psi."""
        return exact_solution(self.spec)

    @property
    def v(self) -> Dict[int, RadialModeFunction]:
        """Get the radial modes of v = u - psi."""
        return {
            mode.mode: _eta_mode(mode.mode, mode.v, self.spec) for mode in self.modes
        }

    @property
    def u(self) -> Dict[int, RadialModeFunction]:
        """Get the radial modes of the minimizer u."""
        psi, v = self.psi, self.v
        return {n: _sum_modes(psi[n], v[n]) for n in ordered_modes(psi)}

    @property
    def coefficients(self) -> Dict[int, complex]:
        """Get the minimizing coefficients v_n^R."""
        return {mode.mode: mode.v for mode in self.modes}

    def field(self, radius: float, omega: float, which: str = "u") -> complex:
        """Evaluate `u`, `psi` or `v` at a point of the annulus."""
        if which not in ("u", "psi", "v"):
            raise ValueError(f"Unknown field {which!r}; expected one of u, psi, v.")
        return evaluate_field(None, getattr(self, which), radius, omega, self.domain)


def solve(spec: ProblemSpec, outer: float) -> AnnulusSolution:
    """
    Solve the minimization problem on the annulus R0 < r < R.

    :param spec: the problem.
    :param outer: the outer radius R.
    :return: the solution.
    """
    _check_outer(outer, spec)
    if outer < spec.r0 * (1.0 + spec.numerics.min_gap):
        raise ConditioningError(
            f"R={outer!r} is closer to R0={spec.r0!r} than the relative gap "
            f"{spec.numerics.min_gap}; the minimization degenerates."
        )
    modes: List[ModeSolution] = []
    for n in spec.data.modes:
        c = c_coeff(n, outer, spec)
        gamma = gamma_coeff(n, outer, spec)
        modes.append(ModeSolution.build(n, spec.data.coefficient(n), c, gamma, outer))
        _logger.debug(f"Mode {n} at R={outer}: c={c!r}, gamma={gamma!r}.")
    return AnnulusSolution(spec, outer, tuple(modes))


def reduced_functional(
    sol: AnnulusSolution, v_override: Optional[Mapping[int, complex]] = None
) -> float:
    """
    Get I_R(v) = sum_n [c_n |v_n|^2 + 2 Re(f_n gamma_n conj(v_n))].

    :param sol: the solution providing c_n, gamma_n and, by default, v_n.
    :param v_override: coefficients replacing the solved ones, mode by mode.
    :return: the value; at the solved coefficients it equals -sum |f_n gamma_n|^2 / c_n.
    """
    overrides = dict(v_override or {})
    truncation = sol.spec.data.truncation
    outside = [n for n in overrides if abs(n) > truncation]
    if outside:
        raise DomainError(
            f"Overrides {sorted(outside)} lie outside the truncation |n| <= {truncation}."
        )
    terms: Dict[int, Tuple[float, complex, complex]] = {
        mode.mode: (mode.c, mode.f * mode.gamma, overrides.pop(mode.mode, mode.v))
        for mode in sol.modes
    }
    # modes without data only contribute their quadratic term
    for n, value in overrides.items():
        terms[n] = (c_coeff(n, sol.outer, sol.spec), 0j, value)

    total = 0.0
    for n in ordered_modes(terms):
        c, f_gamma, v = terms[n]
        total += c * abs(v) ** 2 + 2.0 * (f_gamma * v.conjugate()).real
    return total


def helmholtz_residual(sol: AnnulusSolution, samples: Iterable[float]) -> float:
    """
    Get the largest relative residual |u'' + u'/r + (k^2 - n^2/r^2) u| of the solved modes.

    The second derivatives come from the recurrence
    C_n'' = (C_{n-2} - 2 C_n + C_{n+2}) / 4, independently of the Bessel equation.

    :param sol: the solution.
    :param samples: radii interior to the annulus.
    :return: the residual, each term scaled by |u''| + |u'| / r + |k^2 - n^2 / r^2| |u|.
    """
    spec = sol.spec
    k = spec.k
    radii = list(samples)
    domain = sol.domain
    for radius in radii:
        if not domain.inner < radius < domain.outer:
            raise DomainError(
                f"Sample radius {radius!r} is not interior to the annulus."
            )

    worst = 0.0
    for mode in sol.modes:
        n = mode.mode
        hankel = hankel_function(abs(n), spec.max_order)
        inner_value, _ = hankel.value(spec.inner_argument)
        psi_amplitude = mode.f / inner_value
        eta_fn = eta_function(n, spec)
        for radius in radii:
            s = k * radius
            h_0, h_1, h_2 = hankel.derivatives(s)
            e_0, e_1, e_2 = eta_fn.derivatives(s)
            value = psi_amplitude * h_0 + mode.v * e_0
            first = k * (psi_amplitude * h_1 + mode.v * e_1)
            second = k * k * (psi_amplitude * h_2 + mode.v * e_2)
            potential = k * k - n * n / (radius * radius)
            residual = abs(second + first / radius + potential * value)
            scale = abs(second) + abs(first) / radius + abs(potential) * abs(value)
            if scale > 0:
                worst = max(worst, residual / scale)
    return worst


def eta_energy(n: int, a_radius: float, b_radius: float, spec: ProblemSpec) -> float:
    """
    Get int_a^b [rho |d/d rho eta_n(k rho)|^2 + (n^2 / rho + rho) eta_n(k rho)^2] d rho in closed form.

    After s = k rho the integral is the pair antiderivative of eta_n with
    itself plus (1 / k^2 - 1) times the cross-product antiderivative, whose
    shifted members keep eta_n's coefficients Y_n(k R0) and -J_n(k R0).

    :param n: the mode number.
    :param a_radius: the lower radius.
    :param b_radius: the upper radius.
    :param spec: the problem.
    :return: the squared H^1 norm of eta_n(k r) over the radial range.
    """
    if not 0 < a_radius <= b_radius:
        raise DomainError(
            f"The radial range requires 0 < a <= b; got [{a_radius!r}, {b_radius!r}]."
        )
    order = abs(n)
    eta_fn = eta_function(n, spec)
    factor = 1.0 / (spec.k * spec.k) - 1.0

    def antiderivative(radius: float) -> float:
        s = spec.k * radius
        value = _eta_antiderivative(n, s, spec)
        if factor != 0:
            triple = eta_fn.triple(s)
            value += factor * cross_product_integral(order, s, triple, triple).real
        return value

    energy = antiderivative(b_radius) - antiderivative(a_radius)
    if not math.isfinite(energy):
        raise CylinderOverflowError(f"The energy of eta_{n} overflows.")
    return max(energy, 0.0)


def radiation_functional(
    u: Mapping[int, RadialModeFunction],
    k: float,
    domain: Annulus,
    rel_tol: Optional[float] = None,
) -> float:
    """
    Get J_R(u) = int |grad u - i k u x / |x||^2 dx by direct quadrature of its mode integrands.

    Mode n contributes int [rho |u_n' - i k u_n|^2 + (n^2 / rho) |u_n|^2] d rho,
    with the same convention on the 2 pi factor as the hermitian product.
    """
    if not k > 0:
        raise DomainError(f"The wavenumber must be positive; got {k!r}.")
    total = 0.0
    for n in ordered_modes(u):
        mode = u[n]

        def integrand(rho: float, n: int = n, mode: RadialModeFunction = mode) -> float:
            value, derivative = mode(rho)
            gradient = abs(derivative - 1j * k * value) ** 2
            return rho * gradient + n * n / rho * abs(value) ** 2

        if rel_tol is None:
            total += quad(integrand, domain.inner, domain.outer).value
        else:
            total += quad(integrand, domain.inner, domain.outer, rel_tol).value
    return float(total)


def psi_energy(spec: ProblemSpec, outer: float) -> float:
    """Get <Psi, Psi>_R, the constant part of J_R, by quadrature of the gauge-transformed exact solution."""
    _check_outer(outer, spec)
    psi_gauged = gauge_transform(exact_solution(spec), spec.k)
    return hermitian_product(
        psi_gauged,
        psi_gauged,
        Annulus(spec.r0, outer),
        spec.numerics.rel_tol,
        spec.numerics.max_subintervals,
    )


def functional_value(sol: AnnulusSolution) -> float:
    """Get J_R(u) at the minimizer as <Psi, Psi>_R + I_R(v)."""
    return psi_energy(sol.spec, sol.outer) + reduced_functional(sol)
