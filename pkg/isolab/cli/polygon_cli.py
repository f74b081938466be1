# isolab/cli/polygon_cli.py

from fractions import Fraction
from typing import Dict, Optional

import typer

from isolab.cli.common import (
    check_format,
    emit,
    emit_json,
    handle_errors,
    load_target,
    parse_weights,
    read_document,
    resolve_precision,
    resolve_prime,
)
from isolab.errors import InputError
from isolab.services.constants import FILTRATION_PRESETS, ISOCRYSTAL_PRESETS
from isolab.services.isocrystal import hodge_polygon
from isolab.services.padic_core import NewtonPolygon
from isolab.services.polygon_svg import render_svg
from isolab.utils.serialization import polygon_to_json


def polygon_from_document(document) -> Optional[NewtonPolygon]:
    """``{"vertices": [[x, "y"], ...]}`` or ``{"slopes": [...]}``; None for other documents."""
    if not isinstance(document, dict):
        return None
    try:
        if "vertices" in document:
            return NewtonPolygon(tuple((int(x), Fraction(y)) for x, y in document["vertices"]))
        if "slopes" in document:
            return NewtonPolygon.from_slopes(Fraction(s) for s in document["slopes"])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed polygon document: {exc}") from exc
    return None


@handle_errors("polygon")
def polygon(
    input: Optional[str] = typer.Option(None, "--input", "-i", help="Polygon JSON, isocrystal JSON or preset."),
    weights: Optional[str] = typer.Option(None, "--weights", "-w", help="Hodge-Tate weights for the Hodge polygon."),
    prime: Optional[int] = typer.Option(None, "--prime", "-p"),
    degree: int = typer.Option(1, "--degree", "-s"),
    precision: Optional[int] = typer.Option(None, "--precision", "-N"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output file (stdout when omitted)."),
    format: str = typer.Option("svg", "--format", help="svg or json."),
):
    """Draw the Hodge and Newton polygons, overlaid when both are available."""
    check_format(format, ["svg", "json"])
    polygons: Dict[str, NewtonPolygon] = {}
    hodge_weights = parse_weights(weights)
    if hodge_weights is not None:
        polygons["hodge"] = hodge_polygon(hodge_weights)
    if input is not None:
        given = None
        if input not in ISOCRYSTAL_PRESETS and input not in FILTRATION_PRESETS:
            given = polygon_from_document(read_document(input))
        if given is not None:
            polygons["polygon"] = given
        else:
            iso, FD = load_target(input, resolve_prime(prime), degree, resolve_precision(precision))
            polygons["newton"] = iso.newton_polygon()
            if FD is not None and "hodge" not in polygons:
                polygons["hodge"] = FD.hodge_polygon()
    if not polygons:
        raise InputError("give --weights, --input or both")

    if format == "json":
        document = {name: polygon_to_json(poly) for name, poly in polygons.items()}
        if "hodge" in polygons and "newton" in polygons:
            document["hodge_below_newton"] = polygons["hodge"].lies_on_or_below(polygons["newton"])
        emit_json(document, out)
    else:
        emit(render_svg(polygons), out)
