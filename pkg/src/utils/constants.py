import logging
import os


def _non_negative_int(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    value = int(raw) if raw.strip().isdecimal() else -1
    if value < 0:
        logging.getLogger(__name__).warning(f"{name}={raw!r} is not a non-negative integer; using {default}")
        return default
    return value


LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
CLOUD_RUN = os.getenv("CLOUD_RUN", "False")
APP_VERSION = os.getenv("APP_VERSION", "0.1.0")

SENTRY_DSN = os.getenv("SENTRY_DSN", "")
SENTRY_ENVIRONMENT = os.getenv("SENTRY_ENVIRONMENT", "development")

# markdown only; json, csv and plotdata keep full precision
DISPLAY_PRECISION = _non_negative_int("DISPLAY_PRECISION", 2)
# the reports are never coloured, so this is informational
NO_COLOR = os.getenv("NO_COLOR", "")

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2

H_SEQUENCE = "h_sequence"
EM_SEQUENCE = "em_sequence"
EM_PRIME_SEQUENCE = "em_prime_sequence"
EXCESS_TOTAL = "excess_total"
TAIL_TOTAL = "tail_total"

MEASURES = [H_SEQUENCE, EM_SEQUENCE, EM_PRIME_SEQUENCE, EXCESS_TOTAL, TAIL_TOTAL]

# cohort documents name the two decomposition measures after the table columns
DOCUMENT_FIELDS = {
    H_SEQUENCE: "h_sequence",
    EM_SEQUENCE: "em_sequence",
    EM_PRIME_SEQUENCE: "em_prime_sequence",
    EXCESS_TOTAL: "excess_citations",
    TAIL_TOTAL: "tail_citations",
}

MEASURE_LABELS = {
    H_SEQUENCE: "h-index Sequence",
    EM_SEQUENCE: "EM-index Sequence",
    EM_PRIME_SEQUENCE: "EM′-index Sequence",
    EXCESS_TOTAL: "Excess Citations",
    TAIL_TOTAL: "Tail Citations",
}

H_INDEX = "h"
EM_INDEX = "em"
EM_PRIME_INDEX = "emprime"

INDICES = [H_INDEX, EM_INDEX, EM_PRIME_INDEX]

INDEX_LABELS = {
    H_INDEX: "h-index",
    EM_INDEX: "EM-index",
    EM_PRIME_INDEX: "EM′-index",
}

JSON = "json"
CSV = "csv"
MARKDOWN = "markdown"
PLOTDATA = "plotdata"

INPUT_FORMATS = [JSON, CSV]
OUTPUT_FORMATS = [JSON, CSV, MARKDOWN, PLOTDATA]
