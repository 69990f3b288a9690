"""Run configuration for the command line.

This module provides the data classes that carry every command line option,
optionally preloaded from a YAML file.
"""

import os
from pathlib import Path
from typing import Any, Literal

import sympy
import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from pgl.errors import InvalidInput

CACHE_ENV = "PGL_CACHE"
LOG_LEVEL_ENV = "PGL_LOG_LEVEL"

# options that steer how a run is executed but not what it computes
_EXECUTION_FIELDS = {"cache_dir", "budget_ms", "workers", "format", "verbose"}


class RunConfig(BaseModel):
    """Represents one command line invocation.

    :ivar command: The subcommand.
    :type command: str
    :ivar group: Group specification, see :func:`pgl.specs.parse_group`.
    :type group: str | None
    :ivar p: Characteristic of the coefficient field.
    :type p: int
    :ivar e: Degree of the coefficient field over ``F_p``.
    :type e: int
    :ivar n_max: Largest dimension reported.
    :type n_max: int
    :ivar k_max: Largest number of random elements.
    :type k_max: int
    :ivar d: Rank of the free group.
    :type d: int
    :ivar seed: Seed of the Monte Carlo generator.
    :type seed: int
    :ivar trials: Monte Carlo trials.
    :type trials: int
    :ivar kernel_order: Order of the normal subgroup ``N`` selecting ``H -> H/N``.
    :type kernel_order: int | None
    :ivar suite: Suite name for ``verify``.
    :type suite: str | None
    :ivar quantity: What ``probgen`` reports.
    :type quantity: str | None
    """

    command: str = Field(description="The subcommand.")
    group: str | None = Field(default=None, description="Group specification.")
    p: int = Field(default=2, description="Characteristic of the coefficient field.")
    e: int = Field(default=1, description="Degree of the coefficient field over F_p.")
    n_max: int = Field(default=4, description="Largest dimension reported.")
    k_max: int = Field(default=4, description="Largest number of random elements.")
    d: int = Field(default=2, description="Rank of the free group.")
    seed: int = Field(default=0, description="Seed of the Monte Carlo generator.")
    trials: int = Field(default=10**5, description="Monte Carlo trials.")
    kernel_order: int | None = Field(
        default=None, description="Order of the normal subgroup N selecting H -> H/N."
    )
    suite: str | None = Field(default=None, description="Suite name for verify.")
    quantity: Literal["p_exact", "p_mc", "m_stable"] | None = Field(
        default=None, description="What probgen reports; p_exact when unset."
    )
    format: Literal["json", "csv"] = Field(default="json", description="Output format.")
    cache_dir: Path | None = Field(default=None, description="Result cache directory.")
    budget_ms: int | None = Field(default=None, description="Wall-clock budget in milliseconds.")
    workers: int = Field(default=1, description="Worker processes for internal parallelism.")
    verbose: bool = Field(default=False, description="Log at DEBUG level.")

    @field_validator("n_max", "k_max", "d", "e", "trials", "workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be positive")
        return value

    @field_validator("p")
    @classmethod
    def _prime(cls, value: int) -> int:
        if not sympy.isprime(value):
            raise ValueError(f"{value} is not prime")
        return value

    @field_validator("budget_ms", "kernel_order")
    @classmethod
    def _positive_or_none(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError("must be positive")
        return value

    def echo(self) -> dict[str, Any]:
        """The part of the configuration that determines the result."""
        return self.model_dump(mode="json", exclude=_EXECUTION_FIELDS)

    def resolved_cache_dir(self) -> Path | None:
        """``PGL_CACHE`` overrides the configured directory."""
        env = os.environ.get(CACHE_ENV, "").strip()
        if env:
            return Path(env)
        return self.cache_dir


def load_config_file(path: Path) -> dict[str, Any]:
    """Read RunConfig fields from a YAML mapping.

    :param path: The YAML file.
    :type path: Path
    :return: The mapping, keys are RunConfig field names.
    :rtype: dict
    :raises InvalidInput: If the file cannot be read or is not a mapping.
    """
    try:
        data = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise InvalidInput(f"cannot read config file {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InvalidInput(f"config file {path} must hold a mapping")
    unknown = set(data) - set(RunConfig.model_fields)
    if unknown:
        raise InvalidInput(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def build_config(
    command: str, options: dict[str, Any], config_file: Path | None = None
) -> RunConfig:
    """Merge file values with explicit options; options that are ``None`` are not set.

    :raises InvalidInput: If the merged values fail validation.
    """
    values: dict[str, Any] = {}
    if config_file is not None:
        values.update(load_config_file(config_file))
    values.update({k: v for k, v in options.items() if v is not None})
    values["command"] = command
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        raise InvalidInput(str(exc)) from exc
