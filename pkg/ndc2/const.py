"""Constants for the ndc2 engine."""

from __future__ import annotations

from typing import Final

DOMAIN: Final = "ndc2"

# Indeterminates
PLANE_INDETERMINATES: Final = ("p", "q")
GENERAL_INDETERMINATES: Final = ("p", "q", "C1", "C2", "C3", "C4")

# Configuration
CONF_LEVEL_BOUND = "level_bound"
CONF_STEP_BUDGET = "step_budget"
CONF_STRATEGY = "strategy"
CONF_SERIES_READING = "series_reading"
CONF_CACHE_SIZE = "cache_size"

# Absolute level cap checked at generator construction; the configured level
# bound is enforced by the parser and the calculus
DEFAULT_LEVEL_BOUND = 2**16

# Rule applications allowed per normalize call
DEFAULT_STEP_BUDGET = 10**6

# Memoized rules and word normal forms kept per rewrite system
DEFAULT_CACHE_SIZE = 200_000

STRATEGY_LEFTMOST = "leftmost"
STRATEGY_RIGHTMOST = "rightmost"
STRATEGY_RANDOM = "random"
STRATEGIES = [STRATEGY_LEFTMOST, STRATEGY_RIGHTMOST, STRATEGY_RANDOM]
DEFAULT_STRATEGY = STRATEGY_LEFTMOST

# Readings of the eta term in the upper branch of d/d eta^m . eta^n
READING_SYMMETRIC = "symmetric"
READING_PRINTED = "printed"
SERIES_READINGS = [READING_SYMMETRIC, READING_PRINTED]
DEFAULT_SERIES_READING = READING_SYMMETRIC

# Generator kind names, as they appear in the textual syntax
KIND_XI = "xi"
KIND_ETA = "eta"
KIND_DXI = "dxi"
KIND_DETA = "deta"

# Parser modes
MODE_PLANE = "plane"
MODE_GENERAL = "general"
MODE_QGROUP = "qgroup"
PARSE_MODES = [MODE_PLANE, MODE_GENERAL, MODE_QGROUP]

# Output formats
FORMAT_TEXT = "text"
FORMAT_JSON = "json"
FORMAT_LATEX = "latex"
FORMATS = [FORMAT_TEXT, FORMAT_JSON, FORMAT_LATEX]

# Relation ids: exchange relations at one level and across adjacent levels
EQ_SAME_LEVEL = "13"
EQ_XI_XI = "14"
EQ_ETA_ETA = "15"
EQ_ETA_XI = "16"
EQ_XI_ETA = "17"
PLANE_RELATIONS = [EQ_SAME_LEVEL, EQ_XI_XI, EQ_ETA_ETA, EQ_ETA_XI, EQ_XI_ETA]

# Generalized relations for arbitrary level gaps
EQ_GAP_XI_XI = "19"
EQ_GAP_ETA_ETA = "20"
EQ_GAP_ETA_XI = "21"
EQ_GAP_XI_ETA = "22"
GAP_RELATIONS = [EQ_GAP_XI_XI, EQ_GAP_ETA_ETA, EQ_GAP_ETA_XI, EQ_GAP_XI_ETA]

# Relations with free coefficients C1..C4
EQ_GENERAL_SAME_LEVEL = "5"
EQ_GENERAL_XI_XI = "6"
EQ_GENERAL_ETA_ETA = "7"
EQ_GENERAL_ETA_XI = "8"
EQ_GENERAL_XI_ETA = "9"

# Check names
CHECK_RELATIONS = "relations"
CHECK_CONFLUENCE = "confluence"
CHECK_COVARIANCE = "covariance"
CHECK_CONDITION10 = "condition10"
CHECK_DERIVATIVE_RULES = "derivative-rules"
CHECK_CLASSICAL_LIMIT = "classical-limit"
CHECK_NUMERIC = "numeric"
CHECKS = [
    CHECK_RELATIONS,
    CHECK_CONFLUENCE,
    CHECK_COVARIANCE,
    CHECK_CONDITION10,
    CHECK_DERIVATIVE_RULES,
    CHECK_CLASSICAL_LIMIT,
    CHECK_NUMERIC,
]

# Check defaults
DEFAULT_RELATIONS_MAX_LEVEL = 5
DEFAULT_GAP_MAX_LEVEL = 7
DEFAULT_GAP_WIDTH = 4
DEFAULT_CONFLUENCE_MAX_LEVEL = 4
DEFAULT_CONFLUENCE_WORD_LEN = 3
DEFAULT_CONFLUENCE_SAMPLES = 1000
DEFAULT_CONFLUENCE_SAMPLE_LEN = 5
DEFAULT_COVARIANCE_MAX_LEVEL = 2
DEFAULT_QCONFLUENCE_LEN = 4
DEFAULT_EQUIVALENCE_MAX_LEN = 3
DEFAULT_EQUIVALENCE_MAX_LEVEL = 3
DEFAULT_CLASSICAL_SAMPLES = 500
DEFAULT_NUMERIC_SAMPLES = 200
DEFAULT_SEED = 0

# Exit codes
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_DOMAIN_ERROR = 3
EXIT_BUDGET_EXHAUSTED = 4

# Logging
LOG_FORMAT = "%(asctime)s.%(msecs)03d %(levelname)-8s %(name)s:%(filename)s:%(lineno)d %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
