from typing import Mapping, Optional

from jsonschema import Draft7Validator, ValidationError, validate

from src.utils import custom_logging
from src.utils.errors import DocumentError

logger = custom_logging.setup_logging(__name__)


def _json_path(error: ValidationError) -> str:
    path = "$"
    for part in error.absolute_path:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def validate_document(data: dict, schema: dict, messages: Optional[Mapping[str, str]] = None) -> dict:
    """Validate `data` against a jsonschema dict.

    `messages` maps a failing schema keyword (e.g. "minimum") to a message
    template; `{instance}` is replaced by the offending value.
    """
    try:
        validate(instance=data, schema=schema, cls=Draft7Validator)
        return data
    except ValidationError as e:
        errorMessage: str = e.message
        if messages and e.validator in messages:
            errorMessage = messages[str(e.validator)].format(instance=e.instance)
        logger.error(errorMessage)
        raise DocumentError(errorMessage, path=_json_path(e)) from e
