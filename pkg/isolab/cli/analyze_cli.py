# isolab/cli/analyze_cli.py

from typing import Any, Dict, Optional

import typer

from isolab.cli.common import (
    check_format,
    emit_json,
    handle_errors,
    load_target,
    resolve_precision,
    resolve_prime,
)
from isolab.errors import InputError, SplittingError
from isolab.services.isocrystal import FilteredIsocrystal, Isocrystal, weakly_admissible
from isolab.services.polygon_svg import write_svg
from isolab.services.robba import berger_degree
from isolab.utils.logging import get_logger
from isolab.utils.serialization import dm_to_json, format_rational, polygon_to_json


def analysis_report(iso: Isocrystal, FD: Optional[FilteredIsocrystal], seed: int, samples: int) -> Dict[str, Any]:
    """Degree, slope, Newton data and DM data; the filtered invariants when a filtration is given."""
    report: Dict[str, Any] = {
        "isocrystal": iso.to_json(),
        "rank": iso.rank,
        "degree": iso.degree(),
        "slope": format_rational(iso.slope()),
        "newton_slopes": [format_rational(s) for s in iso.newton_slopes()],
        "newton_polygon": polygon_to_json(iso.newton_polygon()),
    }
    try:
        report["dm"] = dm_to_json(iso.dm_data(seed=seed))
    except SplittingError as exc:
        report["dm"] = "DM unavailable"
        report["dm_reason"] = str(exc)
    if FD is not None:
        decision = weakly_admissible(FD, samples=samples, seed=seed)
        report["filtration"] = {
            "hodge_tate_weights": FD.hodge_tate_weights(),
            "hodge_polygon": polygon_to_json(FD.hodge_polygon()),
            "tN": FD.t_N(),
            "tH": FD.t_H(),
            "weakly_admissible": decision.to_json(),
            "berger_degree": berger_degree(FD).degree,
        }
    return report


@handle_errors("analyze")
def analyze(
    input: str = typer.Option("ord2", "--input", "-i", help="Preset name or JSON file (isocrystal or isocrystal + filtration)."),
    filtration: Optional[str] = typer.Option(None, "--filtration", help="Filtration JSON file or inline document."),
    prime: Optional[int] = typer.Option(None, "--prime", "-p", help="Prime for presets."),
    degree: int = typer.Option(1, "--degree", "-s", help="Unramified degree s for presets."),
    precision: Optional[int] = typer.Option(None, "--precision", "-N", help="p-adic precision."),
    samples: int = typer.Option(200, "--samples", help="Search-path sample count."),
    seed: int = typer.Option(0, "--seed"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output file (stdout when omitted)."),
    format: str = typer.Option("json", "--format", help="json, or svg for the polygon drawing."),
):
    """Degree, slope, Newton slopes and Dieudonne-Manin data of an isocrystal."""
    check_format(format, ["json", "svg"])
    p, prec = resolve_prime(prime), resolve_precision(precision)
    iso, FD = load_target(input, p, degree, prec, filtration)
    if format == "svg":
        if out is None:
            raise InputError("--format svg needs --out")
        polygons = {"newton": iso.newton_polygon()}
        if FD is not None:
            polygons["hodge"] = FD.hodge_polygon()
        write_svg(polygons, out, title=f"isocrystal {input}")
    else:
        emit_json(analysis_report(iso, FD, seed, samples), out)
    get_logger().info(
        "Analysis finished",
        source="cli.analyze",
        category="cli",
        context={"input": input, "p": iso.p, "s": iso.s, "prec": iso.prec, "format": format},
    )
