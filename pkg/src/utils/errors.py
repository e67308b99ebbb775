from typing import Optional

from src.utils import constants


class EngineError(Exception):
    exit_code = constants.EXIT_VALIDATION

    def __init__(self, description: str):
        super().__init__(description)
        self.description = description

    def __str__(self) -> str:
        return self.description


class InvalidInputError(EngineError, ValueError):
    pass


class YearOutOfSpanError(EngineError, LookupError):
    def __init__(self, year: int, first_year: Optional[int], current_year: Optional[int]):
        if first_year is None:
            span = "the matrix has no cited years"
        else:
            span = f"span is {first_year}-{current_year}"
        super().__init__(f"year {year} is outside the career span ({span})")
        self.year = year


class DocumentError(EngineError):
    def __init__(
        self,
        description: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        path: Optional[str] = None,
    ):
        location = []
        if path:
            location.append(f"at {path}")
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            description = f"{description} ({', '.join(location)})"
        super().__init__(description)
        self.line = line
        self.column = column
        self.path = path


class MeasureError(EngineError, LookupError):
    pass


class CorrelationError(EngineError, ValueError):
    pass


class ReportError(EngineError):
    pass


class SinkError(EngineError, OSError):
    exit_code = constants.EXIT_IO
