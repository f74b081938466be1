# isolab/cli/scan_cli.py

from typing import List, Optional

import typer
from pydantic import ValidationError

from isolab.cli.common import (
    check_format,
    emit,
    emit_json,
    handle_errors,
    parse_weights,
    read_document,
    resolve_precision,
    resolve_prime,
)
from isolab.errors import InputError
from isolab.services.scan import ScanConfig, run_scan
from isolab.utils.serialization import dumps


def _forced_flags(values: Optional[List[str]]):
    forced = []
    for value in values or []:
        document = read_document(value)
        if not isinstance(document, dict):
            raise InputError("a forced point is a flag document {\"i\": [[...]]}")
        forced.append(document.get("flags", document))
    return forced


@handle_errors("scan")
def scan(
    input: str = typer.Option("ord2", "--input", "-i", help="Isocrystal preset name or JSON file."),
    weights: str = typer.Option("0,1", "--weights", "-w", help="Hodge-Tate weights, comma separated."),
    prime: Optional[int] = typer.Option(None, "--prime", "-p"),
    degree: int = typer.Option(1, "--degree", "-s"),
    precision: Optional[int] = typer.Option(None, "--precision", "-N"),
    samples: int = typer.Option(100, "--samples", "-n", help="Number of sampled flags."),
    seed: int = typer.Option(0, "--seed"),
    force: Optional[List[str]] = typer.Option(None, "--force", help="Extra flag document to evaluate (repeatable)."),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="CSV (or JSON) output file."),
    format: str = typer.Option("csv", "--format", help="csv or json."),
    progress: bool = typer.Option(False, "--progress", help="Show a progress bar."),
):
    """
    Sample flags in local coordinates and decide weak admissibility at each.

    With ``--out`` the rows go to the file and the summary is printed.
    """
    check_format(format, ["csv", "json"])
    try:
        config = ScanConfig(
            p=resolve_prime(prime),
            s=degree,
            prec=resolve_precision(precision),
            isocrystal=input,
            weights=parse_weights(weights),
            samples=samples,
            seed=seed,
            out=out,
            forced=_forced_flags(force),
            show_progress=progress,
        )
    except ValidationError as exc:
        raise InputError(f"invalid scan parameters: {exc.errors()[0]['msg']}") from exc
    result = run_scan(config)
    if format == "json":
        emit_json({"summary": result.summary, "rows": [row.model_dump() for row in result.rows]}, out)
    else:
        emit(result.csv(), out)
    if out is not None:
        typer.echo(dumps(result.summary), nl=False)
