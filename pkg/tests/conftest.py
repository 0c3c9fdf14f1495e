import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from classpair.catalog import builtin_entry
from classpair.heights import build_profile


@pytest.fixture(scope="session")
def rank2_entry():
    return builtin_entry("demo-rank2")


@pytest.fixture(scope="session")
def rank3_entry():
    return builtin_entry("demo-rank3")


@pytest.fixture(scope="session")
def rank2_profile(rank2_entry):
    return build_profile(rank2_entry.curve, rank2_entry.generators, tol=1e-6)


@pytest.fixture(scope="session")
def rank3_profile(rank3_entry):
    return build_profile(rank3_entry.curve, rank3_entry.generators, tol=1e-6)
