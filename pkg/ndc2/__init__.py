"""Exact symbolic engine for the bosonic differential calculus on the quantum plane."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import Expr, Generator, Kind, deta, dxi, eta, xi
from .config import EngineConfig
from .engine import Engine
from .exceptions import (
    ConfigurationError,
    ContractError,
    DomainError,
    EvaluationError,
    Ndc2Error,
    ParseError,
    ResourceBudgetError,
)
from .parser import parse
from .render import render
from .scalars import NumericContext, ScalarContext

__version__ = json.loads((Path(__file__).parent / "manifest.json").read_text())["version"]

__all__ = [
    "ConfigurationError",
    "ContractError",
    "DomainError",
    "Engine",
    "EngineConfig",
    "EvaluationError",
    "Expr",
    "Generator",
    "Kind",
    "Ndc2Error",
    "NumericContext",
    "ParseError",
    "ResourceBudgetError",
    "ScalarContext",
    "deta",
    "dxi",
    "eta",
    "parse",
    "render",
    "xi",
]
