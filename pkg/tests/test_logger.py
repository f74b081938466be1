# tests/test_logger.py

import json
import os

from isolab.config import get_settings
from isolab.utils.logging import Logger, get_logger


def test_logger_initialization():
    """
    Test if Logger initializes correctly:
    - Local log files created, one per category
    """
    logger = Logger()
    for category in logger.LOG_CATEGORIES:
        log_file = os.path.join(get_settings().logs_dir, f"{category}.log")
        assert os.path.exists(log_file), f"Missing log file: {log_file}"
    print("[TEST] Logger initialization passed.")


def test_local_logging():
    """
    Test if a log entry is written to the correct local file.
    """
    logger = Logger()
    logger.info("This is a test INFO log", source="test_local_logging", category="system")
    logger.error("This is a test ERROR log", source="test_local_logging", error=Exception("Test error"), category="cli")
    logger.debug("This is a test DEBUG log", source="test_local_logging", category="verify")

    for category in logger.LOG_CATEGORIES:
        log_file = os.path.join(get_settings().logs_dir, f"{category}.log")
        with open(log_file, "r", encoding="utf-8") as f:
            lines = f.readlines()
            assert len(lines) > 0, f"No log entries in {log_file}"
            last_entry = json.loads(lines[-1])
            assert "timestamp" in last_entry
            assert "level" in last_entry
            assert "message" in last_entry
            assert "file_name" in last_entry
            assert "line_number" in last_entry
            print(f"[TEST] Log entry verified in {category}.log")

    print("[TEST] Local logging passed.")


def test_error_entry_carries_stack_trace():
    """
    Errors record the formatted exception; unknown categories fall back to system.
    """
    logger = Logger()
    try:
        raise ValueError("boom")
    except ValueError as exc:
        entry = logger.error("failure", source="test", error=exc, category="nowhere")
    assert "ValueError: boom" in entry["stack_trace"]
    assert entry["file_name"] == "test_logger.py"
    with open(os.path.join(get_settings().logs_dir, "system.log"), encoding="utf-8") as f:
        assert json.loads(f.readlines()[-1])["message"] == "failure"


def test_file_logging_can_be_disabled(tmp_path, monkeypatch):
    """
    ISOLAB_LOG_TO_FILE=0 keeps the logger in memory only.
    """
    monkeypatch.setenv("ISOLAB_LOG_TO_FILE", "0")
    from isolab.config import reset_settings

    reset_settings()
    target = tmp_path / "nologs"
    logger = Logger(logs_dir=str(target))
    entry = logger.info("quiet", source="test")
    assert entry["level"] == "INFO"
    assert not target.exists()


def test_get_logger_is_shared():
    assert get_logger() is get_logger()


if __name__ == "__main__":
    print("=== Running Logger Tests ===")
    test_logger_initialization()
    test_local_logging()
    print("=== All Logger Tests Completed ===")
