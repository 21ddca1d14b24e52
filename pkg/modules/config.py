# modules/config.py

# Environment overrides
WORKERS_ENV = "STRATASPIN_WORKERS"
ARF_MAX_GENUS_ENV = "STRATASPIN_ARF_MAX_GENUS"
LOG_LEVEL_ENV = "STRATASPIN_LOG_LEVEL"

# Defaults
DEFAULT_WORKERS = 1
DEFAULT_ARF_MAX_GENUS = 6  # rank 2g <= 12
DEFAULT_LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# Enumeration: extra zero mass allowed on top of max_sum for quadratic patterns
ZERO_MASS_SLACK = 4

# Parser: most singularities a single pattern may expand to
MAX_PATTERN_ENTRIES = 10 ** 6

# Exit codes
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DISAGREEMENT = 3
EXIT_INTERRUPTED = 130

# Seeds for the reproducible corpora
FORM_SEED = 20040901
TRANSVECTION_SEED = 20040902
ANGLE_SEED = 20040903

# Corpus sizes
RANDOM_FORM_COUNT = 50
TRANSVECTION_SEQUENCES = 100
TRANSVECTION_MAX_LENGTH = 100
RANDOM_FORM_MAX_RANK = 8
ANGLE_SYSTEM_COUNT = 1000
ANGLE_MAX_VERTICES = 12
ANGLE_MAX_DENOMINATOR = 60

# JSON output
JSON_INDENT = 2
