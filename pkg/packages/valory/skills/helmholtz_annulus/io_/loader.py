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

"""This module contains the loader of the run configurations."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from jsonschema import Draft7Validator, validators
from jsonschema.exceptions import best_match

from packages.valory.skills.helmholtz_annulus.exceptions import ConfigError
from packages.valory.skills.helmholtz_annulus.models import (
    COMMANDS,
    NORMS,
    FieldGrid,
    GeometricRange,
    ModeEntry,
    NumericsParams,
    ProbeBlock,
    ProblemBlock,
    RunConfig,
    SolveBlock,
    SweepBlock,
)
from packages.valory.skills.helmholtz_annulus.solver import ProblemSpec
from packages.valory.skills.helmholtz_annulus.spectral import FourierModes
from packages.valory.skills.helmholtz_annulus.study import MIN_FIT_POINTS, SweepConfig
from packages.valory.skills.helmholtz_annulus.utils.grids import geometric_radii


POSITIVE = {"type": "number", "exclusiveMinimum": 0}
POSITIVE_LIST = {"type": "array", "items": POSITIVE, "minItems": 1}

SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "additionalProperties": False,
    "required": ["problem"],
    "properties": {
        "problem": {
            "type": "object",
            "additionalProperties": False,
            "required": ["k", "r0", "modes"],
            "properties": {
                "k": POSITIVE,
                "r0": POSITIVE,
                "modes": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["n", "re"],
                        "properties": {
                            "n": {"type": "integer"},
                            "re": {"type": "number"},
                            "im": {"type": "number"},
                        },
                    },
                },
            },
        },
        "solve": {
            "type": "object",
            "additionalProperties": False,
            "required": ["R"],
            "properties": {
                "R": POSITIVE,
                "field_grid": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "r_min": POSITIVE,
                        "r_max": POSITIVE,
                        "n_r": {"type": "integer", "minimum": 1},
                        "n_omega": {"type": "integer", "minimum": 1},
                    },
                },
            },
        },
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "r_values": POSITIVE_LIST,
                "geometric": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["min", "max", "per_decade"],
                    "properties": {
                        "min": POSITIVE,
                        "max": POSITIVE,
                        "per_decade": {"type": "integer", "minimum": 1},
                    },
                },
                "r_star": POSITIVE,
                "norms": {
                    "type": "array",
                    "items": {"enum": list(NORMS)},
                    "minItems": 1,
                    "uniqueItems": True,
                },
            },
        },
        "probe": {
            "type": "object",
            "additionalProperties": False,
            "required": ["n", "R"],
            "properties": {
                "n": {
                    "oneOf": [
                        {"type": "integer"},
                        {"type": "array", "items": {"type": "integer"}, "minItems": 1},
                    ]
                },
                "R": POSITIVE_LIST,
            },
        },
        "numerics": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_order": {"type": "integer", "minimum": 0},
                "rel_tol": {
                    "type": "number",
                    "exclusiveMinimum": 0,
                    "exclusiveMaximum": 1,
                },
                "max_subintervals": {"type": "integer", "minimum": 1},
                "min_gap": {"type": "number", "minimum": 0},
                "slope_tolerance": POSITIVE,
            },
        },
    },
}



def _is_integer(checker: Any, instance: Any) -> bool:  # pylint: disable=unused-argument
    """Accept only JSON integers written without a fraction; `2.0` is a number."""
    return isinstance(instance, int) and not isinstance(instance, bool)


StrictValidator = validators.extend(
    Draft7Validator,
    type_checker=Draft7Validator.TYPE_CHECKER.redefine("integer", _is_integer),
)
VALIDATOR = StrictValidator(SCHEMA)


def _path(parts: Any) -> str:
    """Render the path of a document field."""
    return ".".join(["$", *(str(part) for part in parts)])


def validate_document(document: Any) -> None:
    """Validate a parsed document against the schema, reporting the most relevant violation."""
    error = best_match(VALIDATOR.iter_errors(document))
    if error is not None:
        raise ConfigError(error.message, _path(error.absolute_path))


def _problem(raw: Dict[str, Any], max_order: int) -> ProblemBlock:
    """Parse the `problem` block."""
    modes = tuple(
        ModeEntry(int(mode["n"]), float(mode["re"]), float(mode.get("im", 0.0)))
        for mode in raw["modes"]
    )
    seen = set()
    for i, mode in enumerate(modes):
        path = _path(("problem", "modes", i, "n"))
        if mode.n in seen:
            raise ConfigError(f"Mode {mode.n} appears more than once.", path)
        if abs(mode.n) > max_order:
            raise ConfigError(
                f"Mode {mode.n} exceeds the maximum order {max_order}.", path
            )
        seen.add(mode.n)
    return ProblemBlock(float(raw["k"]), float(raw["r0"]), modes)


def _solve(raw: Dict[str, Any], problem: ProblemBlock) -> SolveBlock:
    """Parse the `solve` block."""
    outer = float(raw["R"])
    if not outer > problem.r0:
        raise ConfigError(
            f"R={outer!r} must exceed r0={problem.r0!r}.", _path(("solve", "R"))
        )
    grid: Optional[FieldGrid] = None
    if "field_grid" in raw:
        spec = raw["field_grid"]
        grid = FieldGrid(**{key: spec[key] for key in spec})
        r_min = problem.r0 if grid.r_min is None else grid.r_min
        r_max = outer if grid.r_max is None else grid.r_max
        if not problem.r0 <= r_min <= r_max <= outer:
            raise ConfigError(
                f"The field grid [{r_min!r}, {r_max!r}] must lie within [{problem.r0!r}, {outer!r}].",
                _path(("solve", "field_grid")),
            )
    return SolveBlock(outer, grid)


def _sweep(raw: Dict[str, Any], problem: ProblemBlock) -> SweepBlock:
    """Parse the `sweep` block."""
    if ("r_values" in raw) == ("geometric" in raw):
        raise ConfigError(
            "Exactly one of r_values and geometric is required.", _path(("sweep",))
        )
    r_values: Optional[Tuple[float, ...]] = None
    geometric: Optional[GeometricRange] = None
    if "r_values" in raw:
        r_values = tuple(float(r) for r in raw["r_values"])
        if any(b <= a for a, b in zip(r_values, r_values[1:])):
            raise ConfigError(
                "The radii must be strictly increasing.", _path(("sweep", "r_values"))
            )
        smallest = r_values[0]
    else:
        spec = raw["geometric"]
        geometric = GeometricRange(
            float(spec["min"]), float(spec["max"]), int(spec["per_decade"])
        )
        if not geometric.min < geometric.max:
            raise ConfigError(
                "The range requires min < max.", _path(("sweep", "geometric"))
            )
        smallest = geometric.min

    count = len(sweep_radii(SweepBlock(r_values, geometric)))
    if count < MIN_FIT_POINTS:
        raise ConfigError(
            f"A sweep needs at least {MIN_FIT_POINTS} radii to fit slopes; got {count}.",
            _path(("sweep",)),
        )

    r_star = raw.get("r_star")
    effective_r_star = 2.0 * problem.r0 if r_star is None else float(r_star)
    if not problem.r0 < effective_r_star < smallest:
        raise ConfigError(
            f"R*={effective_r_star!r} must satisfy r0 < R* < min(R) with r0={problem.r0!r}, min(R)={smallest!r}.",
            _path(("sweep", "r_star")),
        )
    norms = tuple(raw.get("norms", NORMS))
    return SweepBlock(
        r_values, geometric, None if r_star is None else float(r_star), norms
    )


def _probe(raw: Dict[str, Any], problem: ProblemBlock, max_order: int) -> ProbeBlock:
    """Parse the `probe` block."""
    modes = raw["n"]
    n = (modes,) if isinstance(modes, int) else tuple(int(mode) for mode in modes)
    for mode in n:
        if abs(mode) > max_order:
            raise ConfigError(
                f"Mode {mode} exceeds the maximum order {max_order}.",
                _path(("probe", "n")),
            )
    r_values = tuple(float(r) for r in raw["R"])
    for i, outer in enumerate(r_values):
        if not outer > problem.r0:
            raise ConfigError(
                f"R={outer!r} must exceed r0={problem.r0!r}.", _path(("probe", "R", i))
            )
    return ProbeBlock(n, r_values)


def parse_config(document: Any, command: str) -> RunConfig:
    """
    Parse and check a configuration document for a command.

    :param document: the decoded JSON document.
    :param command: one of `solve`, `sweep`, `probe`.
    :return: the configuration.
    """
    if command not in COMMANDS:
        raise ConfigError(
            f"Unknown command {command!r}; expected one of {', '.join(COMMANDS)}."
        )
    validate_document(document)

    blocks = [name for name in COMMANDS if name in document]
    if len(blocks) != 1:
        raise ConfigError(
            f"Exactly one command block is required; found {blocks or 'none'}.",
            _path(()),
        )
    if blocks[0] != command:
        raise ConfigError(
            f"The configuration holds a {blocks[0]!r} block but the command is {command!r}.",
            _path((blocks[0],)),
        )

    try:
        numerics = NumericsParams(**document.get("numerics", {}))
    except ValueError as e:
        raise ConfigError(str(e), _path(("numerics",))) from e

    problem = _problem(document["problem"], numerics.max_order)
    solve: Optional[SolveBlock] = None
    sweep: Optional[SweepBlock] = None
    probe: Optional[ProbeBlock] = None
    if command == "solve":
        solve = _solve(document["solve"], problem)
    elif command == "sweep":
        sweep = _sweep(document["sweep"], problem)
    else:
        probe = _probe(document["probe"], problem, numerics.max_order)
    return RunConfig(problem, command, solve, sweep, probe, numerics)


def load_config(path: Union[str, Path], command: str) -> RunConfig:
    """
    Load a configuration file.

    :param path: the path of the JSON file.
    :param command: the command the configuration is meant for.
    :return: the configuration.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(
            f"Cannot read the configuration: {e.strerror}.", str(path)
        ) from e
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"Invalid JSON: {e.msg} at line {e.lineno}, column {e.colno}.", str(path)
        ) from e
    return parse_config(document, command)


def to_problem_spec(config: RunConfig) -> ProblemSpec:
    """Get the problem described by a configuration."""
    coefficients = config.problem.coefficients
    truncation = max((abs(n) for n in coefficients), default=0)
    data = FourierModes(truncation, coefficients)
    return ProblemSpec(config.problem.k, config.problem.r0, data, config.numerics)


def sweep_radii(block: SweepBlock) -> List[float]:
    """Get the outer radii of a sweep block."""
    if block.r_values is not None:
        return list(block.r_values)
    if block.geometric is None:
        raise ConfigError(
            "A sweep needs r_values or a geometric range.", _path(("sweep",))
        )
    geometric = block.geometric
    return geometric_radii(geometric.min, geometric.max, geometric.per_decade)


def to_sweep_config(config: RunConfig) -> SweepConfig:
    """Get the sweep described by a configuration."""
    if config.sweep is None:
        raise ConfigError("The configuration has no sweep block.", _path(("sweep",)))
    return SweepConfig(
        spec=to_problem_spec(config),
        r_values=tuple(sweep_radii(config.sweep)),
        r_star=config.sweep.r_star,
        norms=config.sweep.norms,
    )
