import os

import pytest
from hypothesis import HealthCheck, settings

from fermat_hodge import SearchBudget, enumerate_level, hilbert_basis

settings.register_profile(
    "suite", deadline=None, suppress_health_check=list(HealthCheck)
)
settings.load_profile("suite")

_BASIS_MEMO = {}
_LEVEL_MEMO = {}


def stretch_enabled() -> bool:
    return os.environ.get("FERMAT_STRETCH") == "1"


@pytest.fixture(scope="session")
def get_basis():
    """Session-memoized complete basis (shared across test modules)."""

    def fn(m: int):
        if m not in _BASIS_MEMO:
            _BASIS_MEMO[m] = hilbert_basis(
                m, budget=SearchBudget(max_seconds=1800, max_candidates=None)
            )
        return _BASIS_MEMO[m]

    return fn


@pytest.fixture(scope="session")
def get_level():
    """Session-memoized level slices."""

    def fn(m: int, y: int):
        if (m, y) not in _LEVEL_MEMO:
            _LEVEL_MEMO[(m, y)] = tuple(enumerate_level(m, y))
        return _LEVEL_MEMO[(m, y)]

    return fn
