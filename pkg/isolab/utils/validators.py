# isolab/utils/validators.py

"""
Pydantic models for the JSON documents accepted on the command line, and the
builders turning validated documents into service objects.

Every failure, whether a schema violation or an invalid mathematical value,
surfaces as :class:`isolab.errors.InputError` so the CLI can map it to exit
code 2.
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from isolab.errors import InputError
from isolab.services.constants import FILTRATION_PRESETS, ISOCRYSTAL_PRESETS
from isolab.services.isocrystal import FilteredIsocrystal, Isocrystal
from isolab.services.padic_core import (
    CyclotomicElement,
    PadicScalar,
    UnramifiedElement,
    cyclotomic_field,
    unramified_field,
)
from isolab.services.perfect_rings import PerfectLaurentElement, residue_field
from isolab.services import seminorms
from isolab.services.witt import WittVector

Rational = Union[int, str]


def parse_rational(value: Rational) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {value!r}") from exc


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ScalarJsonDoc(_Document):
    """``{"p", "val", "unit", "prec"}``, plus ``h`` or ``level`` over an extension."""

    p: int = Field(ge=2)
    val: Union[int, Literal["inf"]]
    unit: Union[str, List[str]]
    prec: int = Field(ge=1)
    h: Optional[List[int]] = None
    level: Optional[int] = Field(default=None, ge=1)


ScalarDoc = Union[Rational, List[Rational], ScalarJsonDoc]


class IsocrystalDoc(_Document):
    """``{"p", "s", "prec", "phi"}``; entries are rationals, coordinate lists or scalar documents."""

    p: int = Field(ge=2)
    s: int = Field(default=1, ge=1)
    prec: Optional[int] = Field(default=None, ge=1)
    phi: List[List[ScalarDoc]]

    @field_validator("p")
    @classmethod
    def validate_prime(cls, v: int) -> int:
        if any(v % q == 0 for q in range(2, int(v ** 0.5) + 1)):
            raise ValueError(f"{v} is not prime")
        return v

    @field_validator("phi")
    @classmethod
    def validate_square(cls, v):
        if not v or any(len(row) != len(v) for row in v):
            raise ValueError("phi must be a nonempty square matrix")
        return v


class FiltrationDoc(_Document):
    """``{"jumps": [...], "flags": {"i": [[...]]}}``; ``hodge`` is accepted for ``jumps``."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    jumps: List[int] = Field(alias="hodge")
    flags: Dict[str, List[List[ScalarDoc]]] = Field(default_factory=dict)


class FilteredIsocrystalDoc(_Document):
    isocrystal: IsocrystalDoc
    filtration: FiltrationDoc


class PerfectTermDoc(_Document):
    """The term coeff * X^(num / p^den_pow)."""

    num: int
    den_pow: int = Field(default=0, ge=0)
    coeff: List[int] = Field(default_factory=lambda: [1])


class PerfectElementDoc(_Document):
    terms: List[PerfectTermDoc] = Field(default_factory=list)
    laurent: bool = False
    p: Optional[int] = None
    s: Optional[int] = None


class WittDoc(_Document):
    p: int = Field(ge=2)
    len: int = Field(ge=1)
    s: int = Field(default=1, ge=1)
    components: List[Union[PerfectElementDoc, int]]


class EvaluatorDoc(_Document):
    """Tagged by ``kind``; the remaining keys depend on the kind."""

    model_config = ConfigDict(extra="allow")

    kind: str


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as exc:
        raise InputError(f"input file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc.msg} (line {exc.lineno})") from exc


def _validate(model, document):
    try:
        return model.model_validate(document)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(x) for x in first["loc"]) or "document"
        raise InputError(f"invalid {model.__name__} at {where}: {first['msg']}") from exc


def _unit(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise InputError(f"scalar units are decimal integers, got {text!r}") from exc


def _scalar_value(doc: ScalarJsonDoc):
    if doc.h is not None and doc.level is not None:
        raise InputError("a scalar names its field by h or by level, not both")
    values = [_unit(u) for u in ([doc.unit] if isinstance(doc.unit, str) else doc.unit)]
    if doc.val == "inf":
        scale = Fraction(0)
    else:
        if all(u % doc.p == 0 for u in values):
            raise InputError(f"unit {doc.unit!r} is divisible by {doc.p}")
        scale = Fraction(doc.p) ** doc.val
    if doc.h is None and doc.level is None:
        if len(values) != 1:
            raise InputError("a Q_p scalar has a single unit")
        return PadicScalar.from_rational(doc.p, values[0] * scale, doc.prec)
    if doc.h is not None:
        if len(doc.h) < 2:
            raise InputError(f"modulus {doc.h} has no roots")
        field, kind = unramified_field(doc.p, len(doc.h) - 1, tuple(doc.h)), UnramifiedElement
    else:
        field, kind = cyclotomic_field(doc.p, doc.level), CyclotomicElement
    if len(values) != field.degree:
        raise InputError(f"{len(values)} unit coordinates for a field of degree {field.degree}")
    return kind(field, [u * scale for u in values], doc.prec)


def scalar_from_json(document: Dict[str, Any]):
    """
    Inverse of :func:`isolab.utils.serialization.scalar_to_json`.

    Returns a :class:`PadicScalar`, or an unramified or cyclotomic element
    when the document carries ``h`` or ``level``.
    """
    return _scalar_value(_validate(ScalarJsonDoc, document))


def _scalar(doc: ScalarDoc, p: int):
    if isinstance(doc, ScalarJsonDoc):
        if doc.p != p:
            raise InputError(f"scalar over p = {doc.p} in a document over p = {p}")
        value = _scalar_value(doc)
        if isinstance(value, CyclotomicElement):
            raise InputError("matrix entries lie in Q_{p^s}, not in a cyclotomic field")
        return value.to_fraction() if isinstance(value, PadicScalar) else value
    if isinstance(doc, list):
        return [parse_rational(c) for c in doc]
    return parse_rational(doc)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_isocrystal(document: Dict[str, Any], default_prec: int) -> Isocrystal:
    doc = _validate(IsocrystalDoc, document)
    phi = [[_scalar(x, doc.p) for x in row] for row in doc.phi]
    return Isocrystal(unramified_field(doc.p, doc.s), phi, doc.prec or default_prec)


def preset_isocrystal(name: str, p: int, s: int, prec: int) -> Isocrystal:
    if name not in ISOCRYSTAL_PRESETS:
        raise InputError(f"unknown preset {name!r}; choose from {sorted(ISOCRYSTAL_PRESETS)}")
    return Isocrystal(unramified_field(p, s), ISOCRYSTAL_PRESETS[name](p), prec)


def build_filtered(iso: Isocrystal, document: Dict[str, Any]) -> FilteredIsocrystal:
    doc = _validate(FiltrationDoc, document)
    flags = {int(k): [[_scalar(x, iso.p) for x in row] for row in v] for k, v in doc.flags.items()}
    return FilteredIsocrystal.from_flags(iso, doc.jumps, flags)


def preset_filtered(name: str, p: int, s: int, prec: int) -> FilteredIsocrystal:
    if name not in FILTRATION_PRESETS:
        raise InputError(f"unknown filtration preset {name!r}; choose from {sorted(FILTRATION_PRESETS)}")
    iso_name, hodge, flags = FILTRATION_PRESETS[name]
    return FilteredIsocrystal.from_flags(preset_isocrystal(iso_name, p, s, prec), hodge, flags)


def build_filtered_document(document: Dict[str, Any], default_prec: int) -> FilteredIsocrystal:
    """A combined ``{"isocrystal": ..., "filtration": ...}`` document."""
    doc = _validate(FilteredIsocrystalDoc, document)
    iso = build_isocrystal(doc.isocrystal.model_dump(), default_prec)
    return build_filtered(iso, doc.filtration.model_dump(by_alias=True))


def build_perfect(document: Dict[str, Any], p: int, s: int = 1) -> PerfectLaurentElement:
    doc = _validate(PerfectElementDoc, document)
    field = residue_field(doc.p or p, doc.s or s)
    terms = [(Fraction(t.num, field.p ** t.den_pow), field.element(t.coeff)) for t in doc.terms]
    return PerfectLaurentElement(field, terms, doc.laurent)


def build_witt(document: Dict[str, Any]) -> WittVector:
    doc = _validate(WittDoc, document)
    if len(doc.components) != doc.len:
        raise InputError(f"Witt vector declares len {doc.len} but has {len(doc.components)} components")
    components = []
    for c in doc.components:
        if isinstance(c, int):
            components.append(c)
        else:
            components.append(build_perfect(c.model_dump(), doc.p, doc.s))
    return WittVector(doc.p, components)


def build_evaluator(document: Dict[str, Any]) -> seminorms.PointEvaluator:
    """Inverse of the evaluators' ``to_json``."""
    doc = _validate(EvaluatorDoc, document)
    extra = dict(doc.model_extra or {})
    kind = doc.kind
    try:
        if kind == "trivial":
            return seminorms.TrivialNorm(int(extra.get("p", 2)))
        if kind == "padic":
            return seminorms.PadicAbsolute(int(extra["p"]))
        if kind == "comb":
            return seminorms.CombPoint(int(extra["p"]), parse_rational(extra["c"]))
        if kind == "gauss":
            return seminorms.GaussNorm(build_evaluator(extra["base"]))
        if kind == "disc":
            r = extra.get("radius_neg_log", 0)
            radius = seminorms.INF if r == "inf" else parse_rational(r)
            return seminorms.DiscPoint(int(extra["p"]), parse_rational(extra.get("z", 0)), radius)
        if kind == "x_adic":
            return seminorms.XAdicPoint(int(extra["p"]), parse_rational(extra.get("const", 1)))
        if kind == "witt":
            inner = build_evaluator(extra["inner"]) if "inner" in extra else None
            return seminorms.WittPoint(int(extra["p"]), extra.get("mode", "lambda"), inner)
        if kind == "mu":
            return seminorms.MuPoint(build_evaluator(extra["beta"]), int(extra.get("length", 3)))
        if kind == "power":
            return seminorms.PowerOf(build_evaluator(extra["inner"]), parse_rational(extra["c"]))
    except KeyError as exc:
        raise InputError(f"evaluator of kind {kind!r} is missing {exc.args[0]!r}") from exc
    raise InputError(f"unknown evaluator kind {kind!r}")


def build_element(document: Any, p: int, s: int = 1):
    """
    Element document for ``seminorm eval``.

    Integers, rational strings and scalar documents ``{"p", "val", "unit",
    "prec"}`` are scalars, ``{"poly": [...]}`` is a polynomial over Q (low to
    high), ``{"terms": ...}`` a perfect ring element and ``{"components": ...}``
    a Witt vector.
    """
    if isinstance(document, bool):
        raise InputError("booleans are not ring elements")
    if isinstance(document, int):
        return document
    if isinstance(document, str):
        return parse_rational(document)
    if isinstance(document, dict) and "unit" in document:
        value = scalar_from_json(document)
        if not isinstance(value, PadicScalar):
            raise InputError("seminorm elements over extensions are not supported")
        return value.to_fraction()
    if isinstance(document, dict):
        if "poly" in document:
            return [parse_rational(c) for c in document["poly"]]
        if "components" in document:
            return build_witt(document)
        if "terms" in document:
            return build_perfect(document, p, s)
    raise InputError("unrecognized element document")
