"""
Constants including isocrystal presets, filtration presets and output formats.
"""

# Frobenius matrices as functions of p, with rational entries (columns = phi(e_j)).
ISOCRYSTAL_PRESETS = {
    # ordinary: slopes {0, 1}
    "ord2": lambda p: [[1, 0], [0, p]],
    # supersingular: single simple summand of slope 1/2
    "ss2": lambda p: [[0, p], [1, 0]],
    # rank 3, multiplicity free: slope 0 plus the supersingular block
    "mf3": lambda p: [[1, 0, 0], [0, 0, p], [0, 1, 0]],
    # unit-root, non-split triangular variant of ord2
    "tri2": lambda p: [[1, 1], [0, p]],
    "unit2": lambda p: [[1, 0], [0, 1]],
    "scalar2": lambda p: [[p, 0], [0, p]],
}

PRESET_DESCRIPTIONS = {
    "ord2": "diag(1, p): ordinary rank 2, slopes 0 and 1",
    "ss2": "[[0, p], [1, 0]]: supersingular rank 2, slope 1/2",
    "mf3": "1 + [[0, p], [1, 0]]: rank 3, slopes 0, 1/2, 1/2",
    "tri2": "[[1, 1], [0, p]]: ordinary rank 2 in a non-adapted basis",
    "unit2": "identity: slopes 0, 0",
    "scalar2": "p * identity: slopes 1, 1",
}

# Hodge-Tate weights and flags (columns over Q) per preset; jumps omitted are all of D.
FILTRATION_PRESETS = {
    "ord2-generic": ("ord2", [0, 1], {1: [[1], [1]]}),
    "ord2-special": ("ord2", [0, 1], {1: [[1], [0]]}),
    "ss2-line": ("ss2", [0, 1], {1: [[1], [0]]}),
    "mf3-generic": ("mf3", [0, 0, 1], {1: [[1], [1], [1]]}),
    "unit2-trivial": ("unit2", [0, 0], {}),
    "scalar2-trivial": ("scalar2", [0, 0], {}),
}

# Weak-admissibility decisions for the filtration presets.
EXPECTED_DECISIONS = {
    "ord2-generic": "true",
    "ord2-special": "false",
    "ss2-line": "true",
    "mf3-generic": "true",
    "unit2-trivial": "true",
    "scalar2-trivial": "false",
}

# Scan output
SCAN_CSV_VERSION = "isolab-scan v1"
SCAN_CSV_COLUMNS = ["index", "coordinates", "tN", "tH", "decision", "path", "witness"]

# Verification suites
VERIFY_SUITES = ["witt", "seminorm", "isocrystal", "robba"]

# Exit codes
EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_PRECISION_ERROR = 3

# SVG styling
SVG_WIDTH = 420
SVG_HEIGHT = 320
SVG_MARGIN = 30
SVG_COLORS = {"newton": "#1f77b4", "hodge": "#d62728", "polygon": "#2ca02c"}
