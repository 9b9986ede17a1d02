from dataclasses import fields

import pytest

from gassmann.utils import Settings


@pytest.fixture(autouse=True)
def _serial_quiet(monkeypatch):
    for field in fields(Settings):
        monkeypatch.delenv(f"GASSMANN_{field.name.upper()}", raising=False)
    monkeypatch.setenv("GASSMANN_PROGRESS", "0")
    monkeypatch.setenv("GASSMANN_JOBS", "1")
