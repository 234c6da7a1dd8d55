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

"""This module contains helpers building radius and angle grids."""

import math
from typing import List

import numpy as np

from packages.valory.skills.helmholtz_annulus.exceptions import DomainError


def geometric_radii(r_min: float, r_max: float, per_decade: int) -> List[float]:
    """
    Get geometrically spaced radii from `r_min` to `r_max`, both included.

    The number of intervals is the number of decades times `per_decade`,
    rounded to the nearest integer; [20, 640] at 16 per decade gives 25 radii.

    :param r_min: the first radius.
    :param r_max: the last radius.
    :param per_decade: the number of radii per decade.
    :return: the radii in increasing order.
    """
    if not 0 < r_min < r_max:
        raise DomainError(
            f"A geometric range requires 0 < min < max; got [{r_min!r}, {r_max!r}]."
        )
    if per_decade < 1:
        raise DomainError(
            f"At least one radius per decade is required; got {per_decade}."
        )
    intervals = max(int(round(per_decade * math.log10(r_max / r_min))), 1)
    return log_grid(r_min, r_max, intervals + 1)


def log_grid(r_min: float, r_max: float, count: int) -> List[float]:
    """Get `count` geometrically spaced radii with exact end points."""
    if count < 2:
        raise DomainError(f"A grid needs at least two points; got {count}.")
    return [float(r) for r in np.geomspace(r_min, r_max, count)]


def radial_grid(r_min: float, r_max: float, count: int) -> List[float]:
    """Get `count` uniformly spaced radii from `r_min` to `r_max`."""
    if count < 1:
        raise DomainError(f"A grid needs at least one point; got {count}.")
    if count == 1:
        return [float(r_min)]
    return [float(r) for r in np.linspace(r_min, r_max, count)]


def angle_grid(count: int) -> List[float]:
    """Get the uniform angles 2 pi j / count, j = 0, ..., count - 1."""
    if count < 1:
        raise DomainError(f"A grid needs at least one angle; got {count}.")
    return [2.0 * math.pi * j / count for j in range(count)]
