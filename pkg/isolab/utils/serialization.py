# isolab/utils/serialization.py

"""
Plain-dict encoders for the objects that leave the process: isocrystals,
filtered isocrystals, weak-admissibility decisions, polygons and reports.

Rationals are written as strings ``"a"`` or ``"a/b"`` so that documents stay
exact, and ``"inf"`` stands for an infinite valuation. All dumps sort keys,
which makes repeated runs byte-identical.
"""

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

from isolab.services.padic_core import INF, ExtensionElement, NewtonPolygon, PadicScalar, valuation_of_rational


def format_rational(x) -> str:
    if x == INF:
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_element(e: ExtensionElement):
    """A single string over Q_p, else the list of coordinates (low to high)."""
    if e.field.degree == 1:
        return format_rational(e.coeffs[0])
    return [format_rational(c) for c in e.coeffs]


def scalar_to_json(x) -> Dict[str, Any]:
    """
    ``{"p", "val", "unit", "prec"}`` for x = p^val * unit modulo p^prec.

    Over an extension ``unit`` lists the coordinates of x / p^val (low to
    high), ``val`` is the smallest coordinate valuation, and ``"h"`` (the
    unramified modulus) or ``"level"`` (the cyclotomic level) names the field.
    """
    if isinstance(x, PadicScalar):
        val = "inf" if x.val == INF else int(x.val)
        return {"p": x.p, "val": val, "unit": str(x.unit), "prec": x.prec}
    field = x.field
    document: Dict[str, Any] = {"p": field.p, "prec": x.prec}
    val = min(valuation_of_rational(c, field.p) for c in x.coeffs)
    if val == INF:
        document.update(val="inf", unit=["0"] * field.degree)
    else:
        scale = Fraction(field.p) ** val
        document.update(val=int(val), unit=[format_rational(c / scale) for c in x.coeffs])
    if field.kind == "cyclotomic":
        document["level"] = field.level
    else:
        document["h"] = list(field.modulus)
    return document


def matrix_to_json(A: Sequence[Sequence[ExtensionElement]]) -> List[List[Any]]:
    return [[format_element(x) for x in row] for row in A]


def polygon_to_json(poly: NewtonPolygon) -> Dict[str, Any]:
    return {
        "vertices": [[int(x), format_rational(y)] for x, y in poly.vertices],
        "slopes": [format_rational(s) for s in poly.slopes()],
    }


def isocrystal_to_json(D) -> Dict[str, Any]:
    """Input-compatible document: the same keys the validators accept."""
    return {"p": D.p, "s": D.s, "prec": D.prec, "phi": matrix_to_json(D.phi)}


def filtered_to_json(FD) -> Dict[str, Any]:
    return {
        "isocrystal": isocrystal_to_json(FD.iso),
        "hodge": list(FD.weights),
        "basis": matrix_to_json(FD.basis),
        "tN": FD.t_N(),
        "tH": FD.t_H(),
    }


def witness_to_json(witness) -> Optional[Any]:
    if witness is None:
        return None
    if all(isinstance(w, int) for w in witness):
        return {"summands": list(witness)}
    return {"columns": [[format_element(x) for x in col] for col in witness]}


def decision_to_json(decision) -> Dict[str, Any]:
    return {
        "wa": decision.status,
        "path": decision.path,
        "tN": decision.t_N,
        "tH": decision.t_H,
        "witness": witness_to_json(decision.witness),
        "evidence": list(decision.evidence),
    }


def dm_to_json(dm) -> Dict[str, Any]:
    return {
        "summands": [{"a": a, "b": b, "slope": format_rational(Fraction(b, a))} for a, b in dm.summands],
        "multiplicity_free": dm.is_multiplicity_free(),
        "basis_change": matrix_to_json(dm.basis_change),
    }


def dumps(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def csv_text(header_comment: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV with a leading ``# ...`` comment line and ``\\n`` line endings."""
    buffer = io.StringIO()
    buffer.write(f"# {header_comment}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()
