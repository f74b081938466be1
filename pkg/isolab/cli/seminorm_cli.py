# isolab/cli/seminorm_cli.py

from typing import Optional

import typer

from isolab.cli.common import emit_json, handle_errors, read_document, resolve_prime
from isolab.services.seminorms import evaluate
from isolab.utils.validators import build_element, build_evaluator

app = typer.Typer(help="Evaluate points of Gel'fand spectra.")


@app.command("eval")
@handle_errors("seminorm.eval")
def eval_command(
    evaluator: str = typer.Option(..., "--evaluator", "-e", help="Evaluator JSON file or inline document."),
    element: str = typer.Option(..., "--element", "-x", help="Element JSON file or inline document."),
    prime: Optional[int] = typer.Option(None, "--prime", "-p", help="Prime for perfect ring elements."),
    degree: int = typer.Option(1, "--degree", "-s", help="Residue degree for perfect ring elements."),
    out: Optional[str] = typer.Option(None, "--out", "-o"),
):
    """
    Print {"neg_log", "base", "exact", "bound"} for the evaluator at the element,
    with "neg_log_p" when the base is the prime.
    """
    point = build_evaluator(read_document(evaluator))
    p = getattr(point, "p", None) or resolve_prime(prime)
    value = evaluate(point, build_element(read_document(element), p, degree))
    emit_json(value.to_json(p), out)
