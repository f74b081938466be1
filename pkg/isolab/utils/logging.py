# isolab/utils/logging.py

import inspect
import json
import os
import traceback
from datetime import datetime
from typing import Dict, Optional

from isolab.config import get_settings


def _caller_location():
    """First stack frame outside this module, as (file name, line number)."""
    frame = inspect.currentframe()
    while frame is not None and frame.f_code.co_filename == __file__:
        frame = frame.f_back
    if frame is None:
        return "<unknown>", 0
    return os.path.basename(frame.f_code.co_filename), frame.f_lineno


class Logger:
    """
    Centralized logging system for isolab.
    Writes one JSON object per line into a category-specific local log file.

    On initialization, ensures the log directory and the category files exist
    (unless file logging is disabled through ``ISOLAB_LOG_TO_FILE``).
    """

    LOG_CATEGORIES = ["system", "cli", "verify"]

    def __init__(self, logs_dir: Optional[str] = None, to_file: Optional[bool] = None):
        """
        Initialize the logger.

        Parameters
        ----------
        logs_dir : str, optional
            Directory for the category files. Defaults to the configured logs directory.
        to_file : bool, optional
            Overrides the ``log_to_file`` setting.
        """
        settings = get_settings()
        self.logs_dir = logs_dir or settings.logs_dir
        self.to_file = settings.log_to_file if to_file is None else to_file

        # Set local log files per category
        self.local_log_files = {
            category: os.path.join(self.logs_dir, f"{category}.log")
            for category in self.LOG_CATEGORIES
        }

        if self.to_file:
            os.makedirs(self.logs_dir, exist_ok=True)
            for path in self.local_log_files.values():
                if not os.path.exists(path):
                    with open(path, "w", encoding="utf-8") as f:
                        f.write("")  # Create empty log file

    def _write_to_local(self, entry: Dict, category: str) -> None:
        """
        Append log entry to the appropriate local log file.

        Parameters
        ----------
        entry : dict
            Log entry data.
        category : str
            Log category (system, cli, verify).
        """
        if not self.to_file:
            return
        log_file = self.local_log_files.get(category, self.local_log_files["system"])
        with open(log_file, "a", encoding="utf-8") as f:
            f.write(json.dumps(entry, ensure_ascii=False, default=str) + "\n")

    def log(self, level: str, message: str, source: str,
            category: str = "system", event_type: str = "general",
            context: Optional[Dict] = None,
            error: Optional[Exception] = None) -> Dict:
        """
        Create a log entry and write it locally.

        Parameters
        ----------
        level : str
            Log level ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL').
        message : str
            Human-readable message.
        source : str
            Origin module/component.
        category : str, optional
            Log file category (system, cli, verify). Defaults to 'system'.
        event_type : str, optional
            Event category. Defaults to 'general'.
        context : dict, optional
            Extra context info.
        error : Exception, optional
            Exception for stack trace.

        Returns
        -------
        dict
            The entry that was written.
        """
        if category not in self.LOG_CATEGORIES:
            category = "system"  # Default to system if unknown

        file_name, line_number = _caller_location()
        stack_trace = ""
        if error is not None:
            stack_trace = "".join(traceback.format_exception(type(error), error, error.__traceback__))

        entry = {
            "timestamp": datetime.now().isoformat() + "Z",
            "level": level,
            "message": message,
            "source": source,
            "event_type": event_type,
            "context": context or {},
            "stack_trace": stack_trace,
            "file_name": file_name,
            "line_number": line_number,
        }
        self._write_to_local(entry, category)
        return entry

    # Shortcut methods
    def info(self, message: str, source: str, **kwargs):
        return self.log("INFO", message, source, **kwargs)

    def error(self, message: str, source: str, error: Exception, **kwargs):
        return self.log("ERROR", message, source, error=error, **kwargs)

    def debug(self, message: str, source: str, **kwargs):
        return self.log("DEBUG", message, source, **kwargs)

    def warning(self, message: str, source: str, **kwargs):
        return self.log("WARNING", message, source, **kwargs)

    def critical(self, message: str, source: str, **kwargs):
        return self.log("CRITICAL", message, source, **kwargs)


_LOGGER: Optional[Logger] = None


def get_logger() -> Logger:
    """Return the process-wide logger, creating it on first use."""
    global _LOGGER
    if _LOGGER is None:
        _LOGGER = Logger()
    return _LOGGER


def reset_logger() -> None:
    """Forget the process-wide logger (tests redirect the logs directory)."""
    global _LOGGER
    _LOGGER = None
