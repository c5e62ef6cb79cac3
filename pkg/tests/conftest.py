"""Pytest configuration for the ndc2 tests."""

from __future__ import annotations

import os
import sys

import pytest

# Add the repository root to the Python path
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

# Now we can import the package after path setup
from ndc2.consistency import general_context  # noqa: E402
from ndc2.engine import Engine  # noqa: E402
from ndc2.parser import parse  # noqa: E402
from ndc2.scalars import ScalarContext  # noqa: E402


@pytest.fixture(scope="session")
def ctx():
    """Scalar context over p and q."""
    return ScalarContext()


@pytest.fixture(scope="session")
def general_ctx():
    """Scalar context over p, q and C1..C4."""
    return general_context()


@pytest.fixture(scope="session")
def engine(ctx):
    """Engine with default options, shared so memoized normal forms are reused."""
    return Engine(ctx=ctx)


@pytest.fixture
def plane(engine):
    """Rewrite system of the exchange relations."""
    return engine.plane


@pytest.fixture
def calculus(engine):
    """Derivatives and d over the plane system."""
    return engine.calculus


@pytest.fixture
def expr(ctx):
    """Parse expression text over p and q."""

    def _parse(text):
        return parse(text, ctx)

    return _parse
