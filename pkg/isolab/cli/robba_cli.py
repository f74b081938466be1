# isolab/cli/robba_cli.py

from typing import Optional

import typer

from isolab.cli.common import emit_json, handle_errors, resolve_precision, resolve_prime
from isolab.services.constants import EXIT_SUITE_FAILURE
from isolab.services.verification import VerifyConfig, run_suite

app = typer.Typer(help="Robba-ring diagnostics.")


@app.command("check")
@handle_errors("robba.check")
def check_command(
    prime: Optional[int] = typer.Option(None, "--prime", "-p"),
    precision: Optional[int] = typer.Option(None, "--precision", "-N"),
    order: int = typer.Option(6, "--order", "-m", help="t-adic order of the diagram checks."),
    samples: int = typer.Option(20, "--samples", "-n", help="Random filtrations for the degree identity."),
    seed: int = typer.Option(0, "--seed"),
    out: Optional[str] = typer.Option(None, "--out", "-o"),
):
    """Diagram, commutation and modification-degree checks as a JSON report."""
    config = VerifyConfig(
        seed=seed,
        primes=[resolve_prime(prime)],
        prec=max(resolve_precision(precision), 2),
        robba_order=max(order, 1),
        filtrations=max(samples, 1),
    )
    report = run_suite("robba", config)
    emit_json(report, out)
    if not report["passed"]:
        raise typer.Exit(code=EXIT_SUITE_FAILURE)
