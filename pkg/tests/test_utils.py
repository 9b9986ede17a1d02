import os
from dataclasses import fields

import pytest

from gassmann.errors import BadParameter
from gassmann.utils import Settings, export_settings, get_settings


def test_defaults(monkeypatch):
    for name in ("GASSMANN_SEED", "GASSMANN_BUDGET_SECONDS", "GASSMANN_TRACE", "GASSMANN_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    settings = get_settings()
    assert settings.seed == 0
    assert settings.budget_seconds == 3600.0
    assert settings.trace == "off"
    assert settings.log_level == "WARNING"


def test_environment(monkeypatch):
    monkeypatch.setenv("GASSMANN_JOBS", "4")
    monkeypatch.setenv("GASSMANN_SEED", "17")
    monkeypatch.setenv("GASSMANN_PROGRESS", "1")
    monkeypatch.setenv("GASSMANN_LOG_LEVEL", "debug")
    settings = get_settings()
    assert (settings.jobs, settings.seed, settings.progress, settings.log_level) == (4, 17, True, "DEBUG")


def test_jobs_floor(monkeypatch):
    monkeypatch.setenv("GASSMANN_JOBS", "0")
    assert get_settings().jobs == 1


@pytest.mark.parametrize("name, value", [("GASSMANN_SEED", "x"), ("GASSMANN_BUDGET_SECONDS", "soon")])
def test_bad_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(BadParameter):
        get_settings()


def test_override_skips_none():
    settings = Settings().override(seed=5, jobs=None)
    assert settings.seed == 5
    assert settings.jobs == 1


def test_export_round_trip(monkeypatch):
    for field in fields(Settings):
        monkeypatch.setenv(f"GASSMANN_{field.name.upper()}", "")
    wanted = Settings(seed=9, progress=True, budget_seconds=12.5)
    export_settings(wanted)
    assert os.environ["GASSMANN_PROGRESS"] == "1"
    assert get_settings().seed == 9
    assert get_settings().budget_seconds == 12.5
