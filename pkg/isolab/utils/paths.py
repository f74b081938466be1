# isolab/utils/paths.py

import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# === Root Directories ===
# Automatically resolve PROJECT_ROOT as absolute path one level up from the package
PROJECT_ROOT: str = os.path.abspath(os.path.join(os.path.dirname(__file__), "../../"))


def workspace_dir() -> str:
    """Workspace root, overridable with ISOLAB_WORKSPACE."""
    return os.getenv("ISOLAB_WORKSPACE", os.path.join(PROJECT_ROOT, "workspace"))


def logs_dir() -> str:
    """Directory holding the JSON-lines category logs."""
    return os.getenv("ISOLAB_LOGS", os.path.join(workspace_dir(), "system_logs"))


def cache_dir() -> str:
    """Structure-polynomial cache directory (ISOLAB_CACHE)."""
    return os.getenv("ISOLAB_CACHE", os.path.join(workspace_dir(), "cache"))


def exports_dir() -> str:
    """Default location for scan CSVs, reports and SVG polygons."""
    return os.path.join(workspace_dir(), "exports")


def ensure_directories() -> None:
    """
    Create all required directories under the workspace if they do not exist.

    Notes
    -----
    Directories are resolved at call time so tests can redirect them with
    ``monkeypatch.setenv``.
    """
    for dir_path in (workspace_dir(), logs_dir(), cache_dir(), exports_dir()):
        os.makedirs(dir_path, exist_ok=True)


def print_project_paths() -> None:
    """
    Print a structured summary of all resolved paths.

    Outputs
    -------
    Displays the resolved absolute paths for verification and debugging purposes.
    """
    divider = "-" * 70
    print(f"\n{divider}\nisolab Path Configuration\n{divider}")
    print(f"Project Root:                 {PROJECT_ROOT}")
    print(f"Workspace Directory:          {workspace_dir()}\n")
    print(f"  System Logs:                {logs_dir()}")
    print(f"  Structure Poly Cache:       {cache_dir()}")
    print(f"  Exports Directory:          {exports_dir()}")
    print(f"{divider}\n")
