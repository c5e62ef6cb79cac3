"""Engine options, validated with voluptuous."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import voluptuous as vol

from .const import (
    CONF_CACHE_SIZE,
    CONF_LEVEL_BOUND,
    CONF_SERIES_READING,
    CONF_STEP_BUDGET,
    CONF_STRATEGY,
    DEFAULT_CACHE_SIZE,
    DEFAULT_LEVEL_BOUND,
    DEFAULT_SERIES_READING,
    DEFAULT_STEP_BUDGET,
    DEFAULT_STRATEGY,
    SERIES_READINGS,
    STRATEGIES,
)
from .exceptions import ConfigurationError

_LOGGER = logging.getLogger(__name__)

CONFIG_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_LEVEL_BOUND, default=DEFAULT_LEVEL_BOUND): vol.All(
            vol.Coerce(int), vol.Range(min=1, max=DEFAULT_LEVEL_BOUND)
        ),
        vol.Optional(CONF_STEP_BUDGET, default=DEFAULT_STEP_BUDGET): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional(CONF_CACHE_SIZE, default=DEFAULT_CACHE_SIZE): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional(CONF_STRATEGY, default=DEFAULT_STRATEGY): vol.In(STRATEGIES),
        vol.Optional(CONF_SERIES_READING, default=DEFAULT_SERIES_READING): vol.In(
            SERIES_READINGS
        ),
    }
)


@dataclass(frozen=True)
class EngineConfig:
    """Validated engine options."""

    level_bound: int = DEFAULT_LEVEL_BOUND
    step_budget: int = DEFAULT_STEP_BUDGET
    strategy: str = DEFAULT_STRATEGY
    series_reading: str = DEFAULT_SERIES_READING
    cache_size: int = DEFAULT_CACHE_SIZE

    @classmethod
    def from_options(cls, options: Mapping[str, Any] | None = None) -> EngineConfig:
        """Validate an option mapping, filling in defaults.

        Options set to None are treated as absent.
        """
        options = {key: value for key, value in (options or {}).items() if value is not None}
        try:
            data = CONFIG_SCHEMA(options)
        except vol.Invalid as err:
            raise ConfigurationError(f"invalid engine option: {err}") from err
        _LOGGER.debug("Engine options: %s", data)
        return cls(
            level_bound=data[CONF_LEVEL_BOUND],
            step_budget=data[CONF_STEP_BUDGET],
            strategy=data[CONF_STRATEGY],
            series_reading=data[CONF_SERIES_READING],
            cache_size=data[CONF_CACHE_SIZE],
        )

    def as_options(self) -> dict[str, Any]:
        """Return the options as a plain mapping."""
        return {
            CONF_LEVEL_BOUND: self.level_bound,
            CONF_STEP_BUDGET: self.step_budget,
            CONF_STRATEGY: self.strategy,
            CONF_SERIES_READING: self.series_reading,
            CONF_CACHE_SIZE: self.cache_size,
        }
