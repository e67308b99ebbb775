from src.utils import constants

citations_schema = {
    "type": "object",
    "propertyNames": {"pattern": "^[0-9]{4}$"},
    "additionalProperties": {"type": "integer", "minimum": 0},
}


def _publication_schema(strict: bool) -> dict:
    return {
        "type": "object",
        "properties": {
            "pub_year": {"type": ["integer", "null"], "minimum": 0, "maximum": 9999},
            "citations": citations_schema,
        },
        "required": ["citations"],
        "additionalProperties": not strict,
    }


def _author_matrix_schema(strict: bool) -> dict:
    return {
        "type": "object",
        "properties": {
            "schema_version": {"const": constants.SCHEMA_VERSION},
            "author": {"type": "string", "maxLength": 1000},
            "author_id": {"type": ["integer", "null"], "minimum": 0},
            "publications": {
                "type": "array",
                "minItems": 1,
                "items": _publication_schema(strict),
            },
        },
        "required": ["schema_version", "author", "publications"],
        "additionalProperties": not strict,
    }


author_matrix_schema = _author_matrix_schema(strict=True)
lenient_author_matrix_schema = _author_matrix_schema(strict=False)
