# isolab/cli/verify_cli.py

from typing import Optional

import typer
from pydantic import ValidationError

from isolab.cli.common import emit_json, handle_errors
from isolab.errors import InputError
from isolab.services.constants import EXIT_SUITE_FAILURE
from isolab.services.verification import VerifyConfig, run_verification


@handle_errors("verify")
def verify(
    suite: str = typer.Argument("all", help="witt, seminorm, isocrystal, robba or all."),
    seed: int = typer.Option(0, "--seed"),
    samples: int = typer.Option(100, "--samples", "-n", help="Random pairs per property."),
    filtrations: int = typer.Option(50, "--filtrations", help="Random filtrations per oracle check."),
    precision: int = typer.Option(10, "--precision", "-N"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Report file (stdout when omitted)."),
):
    """Run property suites; exits 1 when any check fails."""
    try:
        config = VerifyConfig(seed=seed, pairs=samples, filtrations=filtrations, prec=precision)
    except ValidationError as exc:
        raise InputError(f"invalid suite sizes: {exc.errors()[0]['msg']}") from exc
    report = run_verification(suite, config)
    emit_json(report, out)
    if not report["passed"]:
        raise typer.Exit(code=EXIT_SUITE_FAILURE)
