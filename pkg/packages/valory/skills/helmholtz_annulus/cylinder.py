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
This module contains the evaluation of the cylinder functions of integer order.

The Bessel, Neumann and Hankel functions are evaluated through `scipy.special`;
derivatives and the second derivatives needed by the residual checks are
obtained from the three-term recurrences, so that they are consistent with the
values at the neighbouring orders. The module also provides the exact
antiderivatives of the weighted products of two cylinder functions used by the
closed-form solver.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
from scipy import special

from packages.valory.skills.helmholtz_annulus.exceptions import (
    CylinderOverflowError,
    DomainError,
    UnsupportedOrderError,
)
from packages.valory.skills.helmholtz_annulus.models import DEFAULT_MAX_ORDER


Triple = Tuple[complex, complex, complex]


def reflection_sign(order: int) -> int:
    """Get the sign relating a cylinder function of order `order` to the one of order `|order|`."""
    if order < 0 and order % 2:
        return -1
    return 1


def _check_arguments(order: int, argument: float, max_order: int) -> None:
    """Check the order and the argument of an evaluation."""
    if order < 0:
        raise DomainError(
            f"Cylinder functions are evaluated for non-negative orders; got {order}. "
            "Use the reflection identities for negative orders."
        )
    if order > max_order:
        raise UnsupportedOrderError(
            f"Order {order} exceeds the configured maximum order {max_order}."
        )
    if not argument > 0 or not math.isfinite(argument):
        raise DomainError(
            f"The argument must be positive and finite; got {argument!r}. "
            "The Neumann functions diverge as the argument tends to zero."
        )


def _values(orders: Iterable[int], argument: float) -> Tuple[np.ndarray, np.ndarray]:
    """Get `J_m(argument)` and `Y_m(argument)` for the given (possibly negative) orders."""
    orders_ = np.asarray(list(orders), dtype=int)
    magnitudes = np.abs(orders_)
    signs = np.array([reflection_sign(int(order)) for order in orders_], dtype=float)
    j = signs * special.jv(magnitudes, argument)
    y = signs * special.yn(magnitudes, argument)
    if not (np.all(np.isfinite(j)) and np.all(np.isfinite(y))):
        raise CylinderOverflowError(
            f"Cylinder functions of orders {orders_.tolist()} overflow at argument {argument!r}."
        )
    return j, y


@dataclass(frozen=True)
class CylinderPoint:
    """The values of `J_n`, `Y_n` and of their derivatives at one argument."""

    order: int
    argument: float
    j: float
    y: float
    jp: float
    yp: float

    @property
    def wronskian(self) -> float:
        """Get `J_n Y_n' - J_n' Y_n`, which equals `2 / (pi x)`."""
        return self.j * self.yp - self.jp * self.y


@dataclass(frozen=True)
class HankelValue:
    """The values of the Hankel functions of the first and second kind at one argument."""

    order: int
    argument: float
    h1: complex
    h1p: complex
    h2: complex

    @classmethod
    def from_point(cls, point: CylinderPoint) -> "HankelValue":
        """Build the Hankel values from the Bessel and Neumann values."""
        return cls(
            order=point.order,
            argument=point.argument,
            h1=complex(point.j, point.y),
            h1p=complex(point.jp, point.yp),
            h2=complex(point.j, -point.y),
        )


def cyl_eval(
    order: int, argument: float, max_order: int = DEFAULT_MAX_ORDER
) -> CylinderPoint:
    """
    Evaluate `J_n`, `Y_n` and their derivatives.

    The derivatives are taken from the recurrence `C_n' = (C_{n-1} - C_{n+1}) / 2`,
    which is free of cancellation for both kinds in every regime.

    :param order: the non-negative integer order n.
    :param argument: the positive argument x.
    :param max_order: the largest accepted order.
    :return: the cylinder point.
    """
    _check_arguments(order, argument, max_order)
    j, y = _values((order - 1, order, order + 1), argument)
    return CylinderPoint(
        order=order,
        argument=float(argument),
        j=float(j[1]),
        y=float(y[1]),
        jp=float(0.5 * (j[0] - j[2])),
        yp=float(0.5 * (y[0] - y[2])),
    )


def hankel_eval(
    order: int, argument: float, max_order: int = DEFAULT_MAX_ORDER
) -> HankelValue:
    """Evaluate the Hankel functions `H_n^(1)`, its derivative and `H_n^(2)`."""
    return HankelValue.from_point(cyl_eval(order, argument, max_order))


@dataclass(frozen=True)
class CylinderFunction:
    """
    A cylinder function `alpha J_n + beta Y_n` of fixed integer order.

    The shifted members `alpha J_{n +- 1} + beta Y_{n +- 1}` keep the same
    coefficients, which is what the cross-product antiderivative requires.
    """

    order: int
    alpha: complex
    beta: complex
    max_order: int = DEFAULT_MAX_ORDER

    def _combine(self, shifts: Iterable[int], argument: float) -> np.ndarray:
        """Combine the Bessel and Neumann values at the shifted orders."""
        _check_arguments(self.order, argument, self.max_order)
        j, y = _values((self.order + shift for shift in shifts), argument)
        return self.alpha * j + self.beta * y

    def value(self, argument: float) -> Tuple[complex, complex]:
        """Get the value and the derivative at the given argument."""
        lower, centre, upper = self._combine((-1, 0, 1), argument)
        return complex(centre), complex(0.5 * (lower - upper))

    def triple(self, argument: float) -> Triple:
        """Get the values of the members of orders n - 1, n and n + 1."""
        lower, centre, upper = self._combine((-1, 0, 1), argument)
        return complex(lower), complex(centre), complex(upper)

    def derivatives(self, argument: float) -> Triple:
        """Get the value, the first and the second derivative, all recurrence-derived."""
        c_m2, c_m1, c_0, c_p1, c_p2 = self._combine((-2, -1, 0, 1, 2), argument)
        first = 0.5 * (c_m1 - c_p1)
        second = 0.25 * (c_m2 - 2.0 * c_0 + c_p2)
        return complex(c_0), complex(first), complex(second)


def hankel_function(order: int, max_order: int = DEFAULT_MAX_ORDER) -> CylinderFunction:
    """Get `H_n^(1) = J_n + i Y_n` as a cylinder function."""
    return CylinderFunction(order, 1.0, 1j, max_order)


def _ensure_finite(value: complex, what: str, argument: float) -> complex:
    """Raise an overflow error if a result is not finite."""
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise CylinderOverflowError(f"The {what} overflows at argument {argument!r}.")
    return value


def pair_antiderivative(  # pylint: disable=too-many-arguments
    order: int,
    argument: float,
    c_val: complex,
    c_prime: complex,
    d_val: complex,
    d_prime: complex,
) -> complex:
    """
    Get the antiderivative of `r C' D' + (r + n^2 / r) C D` for two cylinder functions.

    F(r) = r^2 (C D + C' D') + r C' D - n^2 C D. The middle term is not
    symmetric in C and D.

    :param order: the order n shared by the two cylinder functions.
    :param argument: the argument r.
    :param c_val: the value of C at r.
    :param c_prime: the derivative of C at r.
    :param d_val: the value of D at r.
    :param d_prime: the derivative of D at r.
    :return: the value of the antiderivative at r.
    """
    r = argument
    product = c_val * d_val
    value = (
        r * r * (product + c_prime * d_prime)
        + r * c_prime * d_val
        - order * order * product
    )
    return _ensure_finite(complex(value), "pair antiderivative", argument)


def cross_product_integral(
    order: int, argument: float, c_vals: Triple, d_vals: Triple
) -> complex:
    """
    Get the antiderivative of `r C_n(r) D_n(r)`.

    (r^2 / 4) (2 C_n D_n - C_{n-1} D_{n+1} - C_{n+1} D_{n-1}), where the triples
    hold the members of orders n - 1, n and n + 1 at r.

    :param order: the order n; the formula does not depend on it explicitly.
    :param argument: the argument r.
    :param c_vals: the members of C of orders n - 1, n, n + 1.
    :param d_vals: the members of D of orders n - 1, n, n + 1.
    :return: the value of the antiderivative at r.
    """
    if order < 0:
        raise DomainError(f"The order must be non-negative; got {order}.")
    c_lower, c_centre, c_upper = c_vals
    d_lower, d_centre, d_upper = d_vals
    value = (
        0.25
        * argument
        * argument
        * (2.0 * c_centre * d_centre - c_lower * d_upper - c_upper * d_lower)
    )
    return _ensure_finite(complex(value), "cross product integral", argument)
