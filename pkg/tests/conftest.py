import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from picard_forms import fixtures

settings.register_profile("suite", deadline=None, derandomize=True)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def surfaces():
    """All bundled surfaces by name, loaded once."""
    return {name: fixtures.bundled_surface(name) for name in fixtures.surface_names()}


@pytest.fixture(scope="session")
def curves():
    return {name: fixtures.bundled_curve(name) for name in fixtures.curve_names()}
