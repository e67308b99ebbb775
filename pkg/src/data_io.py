import csv
import io
import json
import math
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple, Union

from src.cohort import CohortRecord
from src.sequences import CitationMatrix, Publication
from src.utils import constants, custom_logging
from src.utils.errors import DocumentError, EngineError
from src.utils.schemas.author_matrix import author_matrix_schema, lenient_author_matrix_schema
from src.utils.schemas.cohort import cohort_schema, lenient_cohort_schema
from src.utils.validation import validate_document

logger = custom_logging.setup_logging(__name__)

Source = Union[str, Path, TextIO]

FIXTURES_DIR = Path(__file__).parent / "fixtures"

YEAR_PATTERN = re.compile(r"^[0-9]{4}$")
INTEGER_PATTERN = re.compile(r"^[+-]?[0-9]+$")

SCHEMA_MESSAGES = {
    "minimum": "negative count {instance}",
    "minItems": "empty list: at least one entry is required",
    "const": "unsupported schema_version {instance}",
}


def fixture_path(name: str) -> Path:
    return FIXTURES_DIR / name


def _infer_format(source: Source, fmt: Optional[str]) -> str:
    if fmt:
        if fmt not in constants.INPUT_FORMATS:
            raise DocumentError(f"unknown input format {fmt!r}; use one of {', '.join(constants.INPUT_FORMATS)}")
        return fmt
    if isinstance(source, (str, Path)) and str(source) != "-":
        suffix = Path(source).suffix.lower().lstrip(".")
        if suffix in constants.INPUT_FORMATS:
            return suffix
    raise DocumentError("cannot infer the input format; pass it explicitly (json or csv)")


def _read_text(source: Source) -> str:
    try:
        if isinstance(source, (str, Path)):
            if str(source) == "-":
                return sys.stdin.read()
            with open(source, encoding="utf-8") as f:
                return f.read()
        return source.read()
    except UnicodeDecodeError as e:
        raise DocumentError(f"input is not valid UTF-8: {e.reason}") from e


def _source_name(source: Source) -> str:
    if isinstance(source, (str, Path)) and str(source) != "-":
        return Path(source).stem
    return "stdin"


def _reject_duplicate_keys(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    document: Dict[str, Any] = {}
    for key, value in pairs:
        if key in document:
            raise DocumentError(f"duplicate key {key!r}")
        document[key] = value
    return document


def _parse_json(text: str) -> Any:
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno) from e


def _read_csv_cells(text: str) -> List[Tuple[int, List[str]]]:
    """Rows as (line, cells); blank lines are skipped but still counted."""
    reader = csv.reader(io.StringIO(text, newline=""))
    rows: List[Tuple[int, List[str]]] = []
    start = 1
    try:
        for row in reader:
            if len(row) > 1 or (row and row[0].strip()):
                rows.append((start, [cell.strip() for cell in row]))
            start = reader.line_num + 1
    except csv.Error as e:
        raise DocumentError(f"invalid CSV: {e}", line=reader.line_num) from e
    if not rows:
        raise DocumentError("empty CSV document", line=1)

    width = len(rows[0][1])
    for line, cells in rows[1:]:
        if len(cells) != width:
            raise DocumentError(f"row has {len(cells)} fields but the header has {width}", line=line)
    return rows


def _parse_count(cell: str, line: int, column: int) -> int:
    if cell == "":
        return 0
    if not INTEGER_PATTERN.match(cell):
        raise DocumentError(f"citation count {cell!r} is not an integer", line=line, column=column)
    count = int(cell)
    if count < 0:
        raise DocumentError(f"negative count {count}", line=line, column=column)
    return count


def _integer(value: Any, path: str) -> Any:
    # jsonschema's "integer" also admits 3.0
    if isinstance(value, float):
        raise DocumentError(f"{value!r} is not an integer", path=path)
    return value


def _matrix_from_json(document: dict, strict: bool) -> CitationMatrix:
    schema = author_matrix_schema if strict else lenient_author_matrix_schema
    validate_document(document, schema, SCHEMA_MESSAGES)
    known_publication = {"pub_year", "citations"}
    known_document = {"schema_version", "author", "author_id", "publications"}
    publications = tuple(
        Publication(
            pub_year=_integer(p.get("pub_year"), f"$.publications[{i}].pub_year"),
            citations={
                int(year): _integer(count, f"$.publications[{i}].citations.{year}")
                for year, count in p["citations"].items()
            },
            extra={key: value for key, value in p.items() if key not in known_publication},
        )
        for i, p in enumerate(document["publications"])
    )
    return CitationMatrix(
        author=document["author"],
        author_id=_integer(document.get("author_id"), "$.author_id"),
        publications=publications,
        extra={key: value for key, value in document.items() if key not in known_document},
    )


def _matrix_from_csv(cells: List[Tuple[int, List[str]]], author: str, strict: bool) -> CitationMatrix:
    (header_line, header), rows = cells[0], cells[1:]
    if not rows:
        raise DocumentError("empty list: the matrix has no publications", line=header_line + 1)

    year_columns: Dict[int, int] = {}
    extra_columns: Dict[int, str] = {}
    for column, name in enumerate(header[1:], 2):
        if YEAR_PATTERN.match(name):
            year = int(name)
            if year in year_columns.values():
                raise DocumentError(f"duplicate citing-year column {name}", line=header_line, column=column)
            year_columns[column] = year
        elif strict:
            raise DocumentError(
                f"column header {name!r} is not a 4-digit citing year", line=header_line, column=column
            )
        else:
            extra_columns[column] = name

    publications = []
    for line, row in rows:
        pub_year_cell = row[0]
        if pub_year_cell and not INTEGER_PATTERN.match(pub_year_cell):
            raise DocumentError(f"publication year {pub_year_cell!r} is not an integer", line=line, column=1)
        publications.append(
            Publication(
                pub_year=int(pub_year_cell) if pub_year_cell else None,
                citations={year: _parse_count(row[column - 1], line, column) for column, year in year_columns.items()},
                extra={name: row[column - 1] for column, name in extra_columns.items()},
            )
        )
    return CitationMatrix(author=author, publications=tuple(publications))


def load_author_matrix(
    source: Source, fmt: Optional[str] = None, strict: bool = True, author: Optional[str] = None
) -> CitationMatrix:
    fmt = _infer_format(source, fmt)
    text = _read_text(source)
    try:
        if fmt == constants.JSON:
            matrix = _matrix_from_json(_parse_json(text), strict)
        else:
            matrix = _matrix_from_csv(_read_csv_cells(text), author or _source_name(source), strict)
    except EngineError as e:
        logger.error(f"rejected author matrix from {_source_name(source)}: {e}")
        raise

    logger.info(
        f"loaded {matrix.author}: {matrix.k} publications, citing years {matrix.first_year}-{matrix.current_year}"
    )
    return matrix


def _parse_measure(cell: str, field: str, line: int, column: int) -> float:
    try:
        value = int(cell) if INTEGER_PATTERN.match(cell) else float(cell)
    except ValueError as e:
        raise DocumentError(f"{field} value {cell!r} is not a number", line=line, column=column) from e
    if not math.isfinite(value) or value < 0:
        raise DocumentError(f"{field} value {cell!r} must be finite and >= 0", line=line, column=column)
    return value


def _cohort_rows_from_csv(cells: List[Tuple[int, List[str]]], strict: bool) -> List[Dict[str, Any]]:
    (header_line, header), rows = cells[0], cells[1:]
    if not rows:
        raise DocumentError("empty list: the cohort has no authors", line=header_line + 1)
    required = ["author_id", "author", *constants.DOCUMENT_FIELDS.values()]
    for name in required:
        if name not in header:
            raise DocumentError(f"missing column {name!r}", line=header_line)
    if len(set(header)) != len(header):
        raise DocumentError("duplicate column names in header", line=header_line)
    unknown = [name for name in header if name not in required]
    if unknown and strict:
        raise DocumentError(
            f"unknown columns: {', '.join(unknown)}", line=header_line, column=header.index(unknown[0]) + 1
        )

    documents = []
    for line, row in rows:
        cell = dict(zip(header, row))
        author_id = cell["author_id"]
        if not INTEGER_PATTERN.match(author_id) or int(author_id) < 0:
            raise DocumentError(
                f"author_id {author_id!r} is not a non-negative integer",
                line=line,
                column=header.index("author_id") + 1,
            )
        document: Dict[str, Any] = {"author_id": int(author_id), "author": cell["author"]}
        for field in constants.DOCUMENT_FIELDS.values():
            document[field] = _parse_measure(cell[field], field, line, header.index(field) + 1)
        document.update({name: cell[name] for name in unknown})
        documents.append(document)
    return documents


def _records_from_rows(rows: List[Dict[str, Any]]) -> List[CohortRecord]:
    known = {"author_id", "author", *constants.DOCUMENT_FIELDS.values()}
    records = []
    seen = set()
    for position, row in enumerate(rows):
        _integer(row["author_id"], f"$.authors[{position}].author_id")
        if row["author_id"] in seen:
            raise DocumentError(f"duplicate author_id {row['author_id']}", path=f"$.authors[{position}]")
        seen.add(row["author_id"])
        for field in constants.DOCUMENT_FIELDS.values():
            if not math.isfinite(row[field]):
                raise DocumentError(f"{field} must be finite", path=f"$.authors[{position}].{field}")
        records.append(
            CohortRecord(
                author_id=row["author_id"],
                author=row["author"],
                measures={measure: row[field] for measure, field in constants.DOCUMENT_FIELDS.items()},
                extra={key: value for key, value in row.items() if key not in known},
            )
        )
    return records


def load_cohort(source: Source, fmt: Optional[str] = None, strict: bool = True) -> List[CohortRecord]:
    fmt = _infer_format(source, fmt)
    text = _read_text(source)
    try:
        if fmt == constants.JSON:
            document = _parse_json(text)
            validate_document(document, cohort_schema if strict else lenient_cohort_schema, SCHEMA_MESSAGES)
            rows = document["authors"]
        else:
            rows = _cohort_rows_from_csv(_read_csv_cells(text), strict)
        records = _records_from_rows(rows)
    except EngineError as e:
        logger.error(f"rejected cohort from {_source_name(source)}: {e}")
        raise

    logger.info(f"loaded cohort of {len(records)} authors")
    return records


def matrix_document(m: CitationMatrix) -> Dict[str, Any]:
    document: Dict[str, Any] = {"schema_version": constants.SCHEMA_VERSION, "author": m.author}
    if m.author_id is not None:
        document["author_id"] = m.author_id
    document["publications"] = [
        {
            "pub_year": p.pub_year,
            "citations": {str(year): count for year, count in sorted(p.citations.items())},
            **p.extra,
        }
        for p in m.publications
    ]
    document.update(m.extra)
    return document


def matrix_rows(m: CitationMatrix) -> Tuple[List[str], List[List[Any]]]:
    years = m.declared_years
    extra_columns = list(dict.fromkeys(name for p in m.publications for name in p.extra))
    header = ["pub_year", *(str(year) for year in years), *extra_columns]
    rows = [
        [
            "" if p.pub_year is None else p.pub_year,
            *(p.citations.get(year, 0) for year in years),
            *(p.extra.get(name, "") for name in extra_columns),
        ]
        for p in m.publications
    ]
    return header, rows


def cohort_document(records: List[CohortRecord]) -> Dict[str, Any]:
    return {
        "schema_version": constants.SCHEMA_VERSION,
        "authors": [cohort_row(record) for record in records],
    }


def cohort_row(record: CohortRecord) -> Dict[str, Any]:
    return {
        "author_id": record.author_id,
        "author": record.author,
        **{field: record.measures[measure] for measure, field in constants.DOCUMENT_FIELDS.items()},
        **record.extra,
    }
