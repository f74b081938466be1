# isolab/storage/cache.py

import json
import os
from typing import Dict, List, Optional, Tuple

from isolab.config import get_settings
from isolab.utils.logging import get_logger

# Bumped whenever the on-disk layout changes; older files are ignored.
CACHE_FORMAT = 1

Terms = List[Tuple[Tuple[int, ...], int]]


class StructurePolynomialCache:
    """
    On-disk store for Witt structure polynomials.

    Each (p, n) pair is one JSON file ``witt_p{p}_n{n}.json`` holding, per family
    ("sum", "product", "difference"), the list of polynomials as
    ``[[exponent vector, coefficient], ...]`` term lists.
    """

    def __init__(self, cache_dir: Optional[str] = None):
        self.cache_dir = cache_dir or get_settings().cache_dir
        self.logger = get_logger()

    def _path(self, p: int, n: int) -> str:
        return os.path.join(self.cache_dir, f"witt_p{p}_n{n}.json")

    def load(self, p: int, n: int) -> Optional[Dict[str, List[Terms]]]:
        """
        Read the cached families for (p, n).

        Returns
        -------
        dict or None
            ``None`` when the file is missing, unreadable or from another format.
        """
        path = self._path(p, n)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                payload = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            self.logger.warning(
                f"Ignoring unreadable structure polynomial cache {path}",
                source="storage.cache",
                context={"error": str(e)},
            )
            return None
        if payload.get("format") != CACHE_FORMAT or payload.get("p") != p or payload.get("n") != n:
            return None
        return {
            family: [[(tuple(monom), int(coeff)) for monom, coeff in poly] for poly in polys]
            for family, polys in payload["families"].items()
        }

    def store(self, p: int, n: int, families: Dict[str, List[Terms]]) -> Optional[str]:
        """Write the families for (p, n); failures are logged, not raised."""
        path = self._path(p, n)
        payload = {
            "format": CACHE_FORMAT,
            "p": p,
            "n": n,
            "families": {
                family: [[[list(monom), int(coeff)] for monom, coeff in poly] for poly in polys]
                for family, polys in families.items()
            },
        }
        try:
            os.makedirs(self.cache_dir, exist_ok=True)
            tmp_path = path + ".tmp"
            with open(tmp_path, "w", encoding="utf-8") as f:
                json.dump(payload, f)
            os.replace(tmp_path, path)
        except OSError as e:
            self.logger.error(
                f"Could not write structure polynomial cache {path}",
                source="storage.cache",
                error=e,
            )
            return None
        self.logger.debug(f"Cached structure polynomials p={p} n={n}", source="storage.cache")
        return path

    def clear(self) -> int:
        """Delete every cached file; returns how many were removed."""
        if not os.path.isdir(self.cache_dir):
            return 0
        removed = 0
        for name in os.listdir(self.cache_dir):
            if name.startswith("witt_p") and name.endswith(".json"):
                os.remove(os.path.join(self.cache_dir, name))
                removed += 1
        return removed
