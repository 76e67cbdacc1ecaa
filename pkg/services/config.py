"""
Search budgets and guards for the lab services.
"""

import os
from typing import Optional

import dotenv
from pydantic import BaseModel, Field

# Defaults shipped with the package; environment variables win.
SEARCH_CONFIG = {
    "box_bound": 25,
    "pell_bound": 64,
    "residue_cap": 10_000,
    "quadratic_box": 10,
    "witness_budget": 200,
    "matrix_order_guard": 16,
    "j21_order_guard": 6,
    "wv2_order_guard": 6,
    "workers": 1,
    "verbose": False,
}

ENV_PREFIX = "UNILAB_"


class SearchSettings(BaseModel):
    """Validated budgets used by every bounded search."""

    model_config = {"frozen": True}

    box_bound: int = Field(ge=0)
    pell_bound: int = Field(ge=0)
    residue_cap: int = Field(ge=2)
    quadratic_box: int = Field(ge=0)
    witness_budget: int = Field(ge=1)
    matrix_order_guard: int = Field(ge=2)
    j21_order_guard: int = Field(ge=2)
    wv2_order_guard: int = Field(ge=2)
    workers: int = Field(ge=1)
    verbose: bool = False

    def with_overrides(self, **overrides) -> "SearchSettings":
        values = {k: v for k, v in overrides.items() if v is not None}
        return self.model_copy(update=values) if values else self


def _read_env(key: str) -> Optional[str]:
    value = os.getenv(ENV_PREFIX + key.upper())
    return value if value not in (None, "") else None


def load_settings(**overrides) -> SearchSettings:
    """
    Resolve search settings.

    Priority order:
    1. Explicit overrides (CLI flags)
    2. Environment variables (UNILAB_BOX_BOUND, ...), .env files included
    3. SEARCH_CONFIG defaults

    Raises:
        ValueError: if an environment value is not a valid integer
    """
    dotenv.load_dotenv()

    values = {}
    for key, default in SEARCH_CONFIG.items():
        raw = _read_env(key)
        if raw is None:
            values[key] = default
        elif isinstance(default, bool):
            values[key] = raw.strip().lower() in ("1", "true", "yes", "on")
        else:
            try:
                values[key] = int(raw)
            except ValueError:
                raise ValueError(f"{ENV_PREFIX}{key.upper()} must be an integer, got {raw!r}")

    return SearchSettings(**values).with_overrides(**overrides)
