from src.utils import constants

measure_value_schema = {"type": "number", "minimum": 0}


def _cohort_row_schema(strict: bool) -> dict:
    return {
        "type": "object",
        "properties": {
            "author_id": {"type": "integer", "minimum": 0},
            "author": {"type": "string", "maxLength": 1000},
            **{field: measure_value_schema for field in constants.DOCUMENT_FIELDS.values()},
        },
        "required": ["author_id", "author", *constants.DOCUMENT_FIELDS.values()],
        "additionalProperties": not strict,
    }


def _cohort_schema(strict: bool) -> dict:
    return {
        "type": "object",
        "properties": {
            "schema_version": {"const": constants.SCHEMA_VERSION},
            "authors": {"type": "array", "minItems": 1, "items": _cohort_row_schema(strict)},
        },
        "required": ["schema_version", "authors"],
        "additionalProperties": not strict,
    }


cohort_schema = _cohort_schema(strict=True)
lenient_cohort_schema = _cohort_schema(strict=False)
