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

"""Conftest module for helmholtz annulus tests."""

import os
from typing import Dict

import pytest
from hypothesis import settings

from packages.valory.skills.helmholtz_annulus.solver import ProblemSpec
from packages.valory.skills.helmholtz_annulus.spectral import FourierModes


# pylint: skip-file


CI = "CI"
settings.register_profile(CI, deadline=5000)
profile_name = ("default", "CI")[bool(os.getenv("CI"))]
settings.load_profile(profile_name)


def make_spec(
    modes: Dict[int, complex], k: float = 1.0, r0: float = 1.0
) -> ProblemSpec:
    """Build a problem from its boundary Fourier coefficients."""
    return ProblemSpec(k, r0, FourierModes.from_mapping(modes))


@pytest.fixture
def acceptance_spec() -> ProblemSpec:
    """The problem of the convergence checks: k = 1, R0 = 1, modes 0, 1 and 3 with unit data."""
    return make_spec({0: 1.0, 1: 1.0, 3: 1.0})
