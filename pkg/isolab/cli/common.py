# isolab/cli/common.py

"""
Helpers shared by the sub-commands: option parsing, input resolution,
output and the mapping from exceptions to exit codes.
"""

import functools
import json
import os
from typing import Any, Callable, List, Optional, Tuple

import typer

from isolab.config import get_settings
from isolab.errors import InputError, IsolabError, PrecisionError
from isolab.services.constants import (
    EXIT_INPUT_ERROR,
    EXIT_PRECISION_ERROR,
    FILTRATION_PRESETS,
    ISOCRYSTAL_PRESETS,
)
from isolab.services.isocrystal import FilteredIsocrystal, Isocrystal
from isolab.utils.logging import get_logger
from isolab.utils.serialization import dumps
from isolab.utils.validators import (
    build_filtered,
    build_filtered_document,
    build_isocrystal,
    load_json,
    preset_filtered,
    preset_isocrystal,
)


def handle_errors(command: str) -> Callable:
    """
    Run a command body, turning InputError into exit code 2 and
    PrecisionError into exit code 3 with the message on stderr.
    """

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger()
            try:
                return func(*args, **kwargs)
            except typer.Exit:
                raise
            except PrecisionError as exc:
                logger.error(f"{command} failed on precision", source=f"cli.{command}", error=exc, category="cli")
                typer.echo(f"precision error: {exc}", err=True)
                raise typer.Exit(code=EXIT_PRECISION_ERROR)
            except (InputError, IsolabError) as exc:
                logger.error(f"{command} rejected its input", source=f"cli.{command}", error=exc, category="cli")
                typer.echo(f"input error: {exc}", err=True)
                raise typer.Exit(code=EXIT_INPUT_ERROR)

        return wrapper

    return decorator


def resolve_prime(prime: Optional[int]) -> int:
    return get_settings().default_prime if prime is None else prime


def resolve_precision(precision: Optional[int]) -> int:
    return get_settings().default_precision if precision is None else precision


def parse_weights(raw: Optional[str]) -> Optional[List[int]]:
    """``"0,1,1"`` -> [0, 1, 1]."""
    if raw is None:
        return None
    try:
        weights = [int(x) for x in raw.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"weights must be comma-separated integers, got {raw!r}") from exc
    if not weights:
        raise InputError("the Hodge-Tate multiset must be nonempty")
    return weights


def read_document(value: str) -> Any:
    """A JSON file path, or an inline JSON document."""
    if os.path.exists(value):
        return load_json(value)
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise InputError(f"{value!r} is neither a file nor valid JSON") from exc


def load_target(source: str, p: int, s: int, prec: int,
                filtration: Optional[str] = None) -> Tuple[Isocrystal, Optional[FilteredIsocrystal]]:
    """
    Resolve ``--input``: an isocrystal preset, a filtration preset, an
    isocrystal document or a combined ``{"isocrystal", "filtration"}`` document.
    """
    FD: Optional[FilteredIsocrystal] = None
    if source in ISOCRYSTAL_PRESETS:
        iso = preset_isocrystal(source, p, s, prec)
    elif source in FILTRATION_PRESETS:
        FD = preset_filtered(source, p, s, prec)
        iso = FD.iso
    else:
        document = read_document(source)
        if isinstance(document, dict) and "filtration" in document:
            FD = build_filtered_document(document, prec)
            iso = FD.iso
        else:
            iso = build_isocrystal(document, prec)
    if filtration is not None:
        FD = build_filtered(iso, read_document(filtration))
    return iso, FD


def emit(text: str, out: Optional[str]) -> None:
    """Write ``text`` to ``out`` or print it."""
    if out is None:
        typer.echo(text, nl=False)
        return
    os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def emit_json(document: Any, out: Optional[str]) -> None:
    emit(dumps(document), out)


def check_format(value: str, allowed: List[str]) -> str:
    if value not in allowed:
        raise InputError(f"--format must be one of {allowed}, got {value!r}")
    return value
