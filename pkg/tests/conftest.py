# tests/conftest.py

import pytest

from isolab.config import reset_settings
from isolab.utils.logging import reset_logger


@pytest.fixture(autouse=True)
def isolated_workspace(tmp_path, monkeypatch):
    """Point every ISOLAB_* directory at a fresh temporary workspace."""
    monkeypatch.setenv("ISOLAB_WORKSPACE", str(tmp_path / "workspace"))
    monkeypatch.setenv("ISOLAB_LOGS", str(tmp_path / "workspace" / "system_logs"))
    monkeypatch.setenv("ISOLAB_CACHE", str(tmp_path / "workspace" / "cache"))
    monkeypatch.delenv("ISOLAB_PRIME", raising=False)
    monkeypatch.delenv("ISOLAB_PRECISION", raising=False)
    reset_settings()
    reset_logger()
    yield tmp_path
    reset_settings()
    reset_logger()
