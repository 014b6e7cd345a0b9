"""Shared fixtures for the ringlab test suite."""

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from harness.parser import ring_from_text  # noqa: E402

settings.register_profile(
    "ringlab",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ringlab")


@pytest.fixture
def ring():
    """Ring from expression text, e.g. ``ring("Z/12")``."""
    return ring_from_text


@pytest.fixture
def z8():
    return ring_from_text("Z/8")


@pytest.fixture
def z12():
    return ring_from_text("Z/12")


@pytest.fixture
def f2x3():
    return ring_from_text("F2[x]/(x^3)")


@pytest.fixture
def zloc2():
    return ring_from_text("Zloc(2)")


@pytest.fixture
def triv_q():
    """Zloc(2) ∝ Q."""
    return ring_from_text("triv(Zloc(2), Frac)")
