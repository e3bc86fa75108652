"""Pytest configuration and shared fixtures."""

import sys
from pathlib import Path

import pytest

# Add src directory to path so imports work
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

from mscalc.functorial import ExtensionContext, OrbitDatum, OrbitKind  # noqa: E402
from mscalc.segments import plain_line  # noqa: E402


@pytest.fixture
def rho():
    """The line of a plain cuspidal atom of GL_1."""
    return plain_line("rho")


@pytest.fixture
def ctx2():
    """Quadratic extension with one orbit of each kind."""
    return ExtensionContext(2, (OrbitDatum("s", 1, OrbitKind.TYPE_I), OrbitDatum("t", 1, OrbitKind.TYPE_II)))


@pytest.fixture
def ctx3():
    """Cubic extension with one orbit of each kind."""
    return ExtensionContext(3, (OrbitDatum("s", 1, OrbitKind.TYPE_I), OrbitDatum("t", 1, OrbitKind.TYPE_II)))
