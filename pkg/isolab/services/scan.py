"""
Weak-admissibility scans over sampled points of a flag variety.

A point is given in the big cell's local coordinates: with the Hodge-Tate
weights sorted ascending, the adapted basis is upper unitriangular and its
(i, j) entry is free exactly when weight i < weight j. All coordinates are
drawn from one seeded generator before any row is evaluated, so the sample
sequence depends only on the seed.
"""

import json
import os
import random
from collections import Counter
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator
from tqdm import tqdm

from isolab.errors import InputError, SplittingError
from isolab.services.constants import ISOCRYSTAL_PRESETS, SCAN_CSV_COLUMNS, SCAN_CSV_VERSION
from isolab.services.isocrystal import FilteredIsocrystal, Isocrystal, weakly_admissible
from isolab.services.padic_core import UnramifiedElement
from isolab.utils.logging import get_logger
from isolab.utils.serialization import csv_text, format_rational, witness_to_json


class ScanConfig(BaseModel):
    """
    Parameters of one scan.

    ``isocrystal`` is a preset name or the path of an isocrystal JSON file.
    ``forced`` lists extra points as flag documents ``{"i": [[...]]}``,
    evaluated after the samples.
    """

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=2)
    s: int = Field(default=1, ge=1)
    prec: int = Field(default=10, ge=1)
    isocrystal: str
    weights: List[int]
    samples: int = Field(default=100, ge=1)
    seed: int = 0
    out: Optional[str] = None
    coordinate_digits: int = Field(default=3, ge=1)
    search_samples: int = Field(default=50, ge=1)
    forced: List[Dict[str, Any]] = Field(default_factory=list)
    show_progress: bool = False

    @field_validator("weights")
    @classmethod
    def validate_weights(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("the Hodge-Tate multiset must be nonempty")
        return sorted(v)


class ScanRow(BaseModel):
    index: str
    coordinates: List[Any]
    t_N: int
    t_H: int
    decision: str
    path: str
    witness: Optional[Dict[str, Any]] = None

    def as_csv(self) -> List[str]:
        witness = "" if self.witness is None else json.dumps(self.witness, sort_keys=True, separators=(",", ":"))
        coords = " ".join(c if isinstance(c, str) else ";".join(c) for c in self.coordinates)
        return [self.index, coords, str(self.t_N), str(self.t_H), self.decision, self.path, witness]


class ScanResult(BaseModel):
    rows: List[ScanRow]
    summary: Dict[str, Any]

    def csv(self) -> str:
        return csv_text(SCAN_CSV_VERSION, SCAN_CSV_COLUMNS, (row.as_csv() for row in self.rows))


def resolve_isocrystal(config: ScanConfig) -> Isocrystal:
    if config.isocrystal in ISOCRYSTAL_PRESETS:
        return Isocrystal.from_rationals(config.p, ISOCRYSTAL_PRESETS[config.isocrystal](config.p),
                                         config.s, config.prec)
    if not os.path.exists(config.isocrystal):
        raise InputError(f"{config.isocrystal!r} is neither a preset nor an existing file")
    from isolab.utils.validators import build_isocrystal, load_json

    return build_isocrystal(load_json(config.isocrystal), config.prec)


def free_positions(weights: List[int]) -> List[Tuple[int, int]]:
    """Chart coordinates: entries (i, j), i < j, with weights[i] < weights[j]."""
    d = len(weights)
    return [(i, j) for j in range(d) for i in range(j) if weights[i] < weights[j]]


def sample_coordinates(config: ScanConfig, rng: random.Random) -> List[List[int]]:
    """One coordinate list of length s per free position."""
    bound = config.p ** config.coordinate_digits
    return [[rng.randrange(bound) for _ in range(config.s)] for _ in free_positions(config.weights)]


def chart_point(iso: Isocrystal, weights: List[int], coordinates: List[List[int]]) -> FilteredIsocrystal:
    d = iso.rank
    basis = [[iso.one() if i == j else iso.zero() for j in range(d)] for i in range(d)]
    for (i, j), value in zip(free_positions(weights), coordinates):
        basis[i][j] = UnramifiedElement(iso.field, value, iso.prec)
    return FilteredIsocrystal(iso, basis, weights)


def _row(index: str, coordinates, FD: FilteredIsocrystal, config: ScanConfig, seed: int) -> ScanRow:
    decision = weakly_admissible(FD, samples=config.search_samples, seed=seed)
    return ScanRow(
        index=index,
        coordinates=coordinates,
        t_N=decision.t_N,
        t_H=decision.t_H,
        decision=decision.status,
        path=decision.path,
        witness=witness_to_json(decision.witness),
    )


def _format_coordinates(coordinates: List[List[int]]) -> List[Any]:
    return [format_rational(c[0]) if len(c) == 1 else [format_rational(x) for x in c] for c in coordinates]


def run_scan(config: ScanConfig) -> ScanResult:
    """
    Evaluate weak admissibility at ``config.samples`` chart points plus the
    forced points, in index order.
    """
    logger = get_logger()
    iso = resolve_isocrystal(config)
    if len(config.weights) != iso.rank:
        raise InputError(f"{len(config.weights)} weights for an isocrystal of rank {iso.rank}")

    try:
        dm = iso.dm_data(seed=config.seed)
        exact_path = dm.is_multiplicity_free()
    except SplittingError:
        exact_path = False
    if not exact_path:
        logger.warning(
            "Exact path unavailable; rows may be undecided",
            source="scan.run_scan",
            category="verify",
            context={"isocrystal": config.isocrystal, "s": config.s},
        )

    rng = random.Random(config.seed)
    points = [sample_coordinates(config, rng) for _ in range(config.samples)]

    rows: List[ScanRow] = []
    iterator = tqdm(points, desc="Scanning flags", disable=not config.show_progress)
    for k, coordinates in enumerate(iterator):
        FD = chart_point(iso, config.weights, coordinates)
        rows.append(_row(str(k), _format_coordinates(coordinates), FD, config, config.seed + k))

    for k, flags in enumerate(config.forced):
        parsed = {int(i): [[Fraction(x) if not isinstance(x, list) else [Fraction(c) for c in x] for x in row]
                           for row in M] for i, M in flags.items()}
        FD = FilteredIsocrystal.from_flags(iso, config.weights, parsed)
        coordinates = {str(i): [[format_rational(x) if not isinstance(x, list) else ";".join(map(format_rational, x))
                                 for x in row] for row in M] for i, M in sorted(parsed.items())}
        rows.append(_row(f"forced-{k}", [json.dumps(coordinates, sort_keys=True, separators=(",", ":"))],
                         FD, config, config.seed + config.samples + k))

    counts = Counter(row.decision for row in rows)
    summary = {
        "isocrystal": config.isocrystal,
        "p": config.p,
        "s": config.s,
        "prec": config.prec,
        "weights": list(config.weights),
        "samples": config.samples,
        "forced": len(config.forced),
        "seed": config.seed,
        "exact_path": exact_path,
        "counts": {status: counts.get(status, 0) for status in ("true", "false", "unknown")},
    }
    logger.info(
        "Scan finished",
        source="scan.run_scan",
        category="verify",
        event_type="scan",
        context=summary,
    )
    return ScanResult(rows=rows, summary=summary)
