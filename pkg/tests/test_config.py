import pytest
from pydantic import ValidationError

from services.config import SEARCH_CONFIG, load_settings


def test_defaults(settings):
    assert settings.box_bound == SEARCH_CONFIG["box_bound"]
    assert settings.workers == 1


def test_environment_overrides_defaults(monkeypatch):
    monkeypatch.setenv("UNILAB_BOX_BOUND", "7")
    monkeypatch.setenv("UNILAB_VERBOSE", "yes")
    settings = load_settings()
    assert settings.box_bound == 7
    assert settings.verbose


def test_explicit_overrides_win(monkeypatch):
    monkeypatch.setenv("UNILAB_WORKERS", "4")
    assert load_settings(workers=2).workers == 2
    assert load_settings(workers=None).workers == 4


def test_bad_integer_is_reported(monkeypatch):
    monkeypatch.setenv("UNILAB_PELL_BOUND", "lots")
    with pytest.raises(ValueError, match="UNILAB_PELL_BOUND"):
        load_settings()


def test_out_of_range_values_fail_validation(monkeypatch):
    monkeypatch.setenv("UNILAB_WORKERS", "0")
    with pytest.raises(ValidationError):
        load_settings()


def test_settings_are_frozen(settings):
    with pytest.raises(ValidationError):
        settings.box_bound = 3
