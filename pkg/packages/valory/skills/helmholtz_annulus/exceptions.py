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

"""This module contains the exceptions raised by the helmholtz annulus skill."""

from typing import Optional


class HelmholtzAnnulusError(Exception):
    """Base class of every error raised by the skill."""


class ConfigError(HelmholtzAnnulusError, ValueError):
    """A run configuration does not satisfy the schema or its semantic checks."""

    def __init__(self, message: str, path: str = "") -> None:
        """Initialize the error, keeping the path of the offending field."""
        self.path = path
        prefix = f"{path}: " if path else ""
        super().__init__(f"{prefix}{message}")


class DomainError(HelmholtzAnnulusError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class UnsupportedOrderError(DomainError):
    """A cylinder function order exceeds the configured maximum."""


class AliasingError(DomainError):
    """Too few angular samples were given for the requested truncation."""


class CylinderOverflowError(HelmholtzAnnulusError, ArithmeticError):
    """A special function value or an antiderivative is not finite."""


class ConditioningError(HelmholtzAnnulusError, ArithmeticError):
    """The outer radius is too close to the inner one for a stable solve."""


class QuadratureAccuracyError(HelmholtzAnnulusError, ArithmeticError):
    """The adaptive quadrature could not reach the requested accuracy."""

    def __init__(self, message: str, estimate: complex, error: float) -> None:
        """Initialize the error, keeping the best estimate that was reached."""
        self.estimate = estimate
        self.error = error
        super().__init__(f"{message} (estimate={estimate!r}, error={error:.3e})")


class FitError(HelmholtzAnnulusError, ValueError):
    """A log-log fit cannot be performed on the given points."""


class SweepError(HelmholtzAnnulusError):
    """A row of a convergence sweep failed."""

    def __init__(self, outer: float, cause: Optional[BaseException] = None) -> None:
        """Initialize the error, keeping the outer radius of the failing row."""
        self.outer = outer
        reason = f": {cause}" if cause is not None else ""
        super().__init__(f"Sweep failed at R={outer!r}{reason}")
