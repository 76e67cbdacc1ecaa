import random

import pytest

from services.config import load_settings
from services.ring_service import RingSpec


@pytest.fixture
def Z():
    return RingSpec.integers()


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture
def settings(monkeypatch):
    for key in ("BOX_BOUND", "PELL_BOUND", "WORKERS", "VERBOSE"):
        monkeypatch.delenv(f"UNILAB_{key}", raising=False)
    return load_settings(workers=1)
