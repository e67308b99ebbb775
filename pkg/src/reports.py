import json
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src import data_io, sequences
from src.cohort import CohortRecord, CorrelationMatrix, RankTable
from src.indices import VectorReport
from src.sequences import CitationMatrix, ComponentComparison, SequenceProfile
from src.utils import constants, custom_logging
from src.utils.errors import ReportError, SinkError

logger = custom_logging.setup_logging(__name__)

Rows = Tuple[List[str], List[List[Any]]]


@dataclass(frozen=True)
class SequenceReport:
    matrix: CitationMatrix
    profile: SequenceProfile
    indices: Tuple[str, ...]
    year_based_em_index: float


def sequence_report(m: CitationMatrix, indices: Sequence[str] = tuple(constants.INDICES)) -> SequenceReport:
    return SequenceReport(
        matrix=m,
        profile=sequences.sequence_profile(m),
        indices=tuple(index for index in constants.INDICES if index in indices),
        year_based_em_index=sequences.year_based_em_index(m),
    )


def _display(value: Any, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{precision}f}"
    return str(value)


def _elements(elements: Sequence[int]) -> str:
    return ", ".join(str(element) for element in elements)


def _escape(cell: str) -> str:
    return cell.replace("|", "\\|")


def _markdown_table(header: Sequence[str], rows: Sequence[Sequence[Any]], precision: int) -> str:
    lines = [
        "| " + " | ".join(_escape(str(name)) for name in header) + " |",
        "|" + "|".join(" --- " for _ in header) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_escape(_display(cell, precision)) for cell in row) + " |")
    return "\n".join(lines) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    frame = pd.DataFrame([list(row) for row in rows], columns=list(header), dtype=object)
    return frame.to_csv(index=False, lineterminator="\n")


def _plotdata(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join("" if cell is None else str(cell) for cell in row))
    return "\n".join(lines) + "\n"


# ---- vector reports


def _vector_document(report: VectorReport) -> Dict[str, Any]:
    d = report.decomposition
    return {
        "counts": list(report.counts),
        "h_index": report.h,
        "em_elements": list(report.em.elements),
        "em_index": report.em.value,
        "em_prime_elements": list(report.em_prime.elements),
        "em_prime_index": report.em_prime.value,
        "core_citations": d.core_citations,
        "excess_citations": d.excess_citations,
        "tail_citations": d.tail_citations,
    }


def _vector_rows(report: VectorReport) -> Rows:
    d = report.decomposition
    rows = [
        ["h-index", report.h],
        ["EM-index elements", _elements(report.em.elements)],
        ["EM-index", report.em.value],
        ["EM′-index elements", _elements(report.em_prime.elements)],
        ["EM′-index", report.em_prime.value],
        ["h-core citations", d.core_citations],
        ["Excess Citations", d.excess_citations],
        ["Tail Citations", d.tail_citations],
    ]
    return ["measure", "value"], rows


def _vector_plot_rows(report: VectorReport) -> Rows:
    depth = max(len(report.em), len(report.em_prime))
    em, em_prime = report.em.elements, report.em_prime.elements
    rows = [[level + 1, em[level] if level < len(em) else None, em_prime[level] if level < len(em_prime) else None]
            for level in range(depth)]
    return ["level", "em_element", "em_prime_element"], rows


# ---- sequence reports


def _sequence_document(report: SequenceReport) -> Dict[str, Any]:
    profile = report.profile
    per_year = []
    for entry in profile.per_year:
        row: Dict[str, Any] = {"year": entry.year}
        if constants.H_INDEX in report.indices:
            row["h"] = entry.h
        if constants.EM_INDEX in report.indices:
            row["em_elements"] = list(entry.em.elements)
            row["em"] = entry.em_value
        if constants.EM_PRIME_INDEX in report.indices:
            row["em_prime_elements"] = list(entry.em_prime.elements)
            row["em_prime"] = entry.em_prime_value
        row["core_citations"] = entry.decomposition.core_citations
        row["excess_citations"] = entry.decomposition.excess_citations
        row["tail_citations"] = entry.decomposition.tail_citations
        per_year.append(row)

    return {
        "schema_version": constants.SCHEMA_VERSION,
        "author": profile.author,
        "author_id": profile.author_id,
        "first_year": report.matrix.first_year,
        "current_year": report.matrix.current_year,
        "publications": report.matrix.k,
        "per_year": per_year,
        "sequences": {index: profile.sequence_value(index) for index in report.indices},
        "excess_total": profile.excess_total,
        "tail_total": profile.tail_total,
        "total_citations": profile.total_citations,
        "year_based_em_index": report.year_based_em_index,
    }


def _sequence_columns(report: SequenceReport) -> List[Tuple[str, str]]:
    columns = []
    if constants.H_INDEX in report.indices:
        columns.append(("h", constants.H_INDEX))
    if constants.EM_INDEX in report.indices:
        columns.append(("em", constants.EM_INDEX))
    if constants.EM_PRIME_INDEX in report.indices:
        columns.append(("em_prime", constants.EM_PRIME_INDEX))
    return columns


def _sequence_rows(report: SequenceReport) -> Rows:
    columns = _sequence_columns(report)
    header = ["year", *(name for name, _ in columns), "core_citations", "excess_citations", "tail_citations"]
    rows = []
    for entry in report.profile.per_year:
        d = entry.decomposition
        rows.append(
            [entry.year, *(entry.value(index) for _, index in columns),
             d.core_citations, d.excess_citations, d.tail_citations]
        )
    return header, rows


def _sequence_plot_rows(report: SequenceReport) -> Rows:
    columns = _sequence_columns(report)
    header = ["year", *(name for name, _ in columns)]
    rows = [[entry.year, *(entry.value(index) for _, index in columns)] for entry in report.profile.per_year]
    return header, rows


def _sequence_markdown(report: SequenceReport, precision: int) -> str:
    m, profile = report.matrix, report.profile
    years = profile.years
    header = ["Publication Year", *(str(year) for year in years)]
    rows: List[List[Any]] = [
        ["" if p.pub_year is None else p.pub_year, *(p.citations.get(year, 0) for year in years)]
        for p in m.publications
    ]
    for index in report.indices:
        rows.append([constants.INDEX_LABELS[index], *(entry.value(index) for entry in profile.per_year)])

    summary = [[f"{constants.INDEX_LABELS[index]} sequence", profile.sequence_value(index)] for index in report.indices]
    summary += [
        ["Excess Citations", profile.excess_total],
        ["Tail Citations", profile.tail_total],
        ["Year based EM-index by citations", report.year_based_em_index],
    ]
    return (
        f"## {_escape(m.author)}\n\n"
        + _markdown_table(header, rows, precision)
        + "\n"
        + _markdown_table(["Measure", "Value"], summary, precision)
    )


# ---- cohorts, ranks, correlations, comparisons


def _cohort_rows(records: Sequence[CohortRecord]) -> Rows:
    documents = [data_io.cohort_row(record) for record in records]
    header = list(dict.fromkeys(key for document in documents for key in document))
    return header, [[document.get(key, "") for key in header] for document in documents]


def _cohort_markdown(records: Sequence[CohortRecord], precision: int) -> str:
    header = ["ID", "Author"]
    for measure in constants.MEASURES:
        header.append(constants.MEASURE_LABELS[measure])
        if any(measure in record.ranks for record in records):
            header.append("Rank")
    rows = []
    for record in records:
        row: List[Any] = [record.author_id, record.author]
        for measure in constants.MEASURES:
            row.append(record.measures.get(measure))
            if any(measure in r.ranks for r in records):
                row.append(record.ranks.get(measure))
        rows.append(row)
    return _markdown_table(header, rows, precision)


def _cohort_plot_rows(records: Sequence[CohortRecord]) -> Rows:
    header = ["id", *constants.MEASURES]
    return header, [[record.author_id, *(record.measures.get(m) for m in constants.MEASURES)] for record in records]


def _rank_document(table: RankTable) -> Dict[str, Any]:
    return {
        "measure": table.measure,
        "ranks": [
            {
                "author_id": record.author_id,
                "author": record.author,
                "value": record.measures[table.measure],
                "rank": record.ranks[table.measure],
                "average_rank": record.average_ranks[table.measure],
            }
            for record in table.records
        ],
    }


def _rank_rows(table: RankTable) -> Rows:
    rows = [[r.author_id, r.author, table.measure, r.ranks[table.measure]] for r in table.records]
    return ["id", "author", "measure", "rank"], rows


def _rank_markdown(table: RankTable, precision: int) -> str:
    rows = [[r.ranks[table.measure], r.author_id, r.author, r.measures[table.measure]] for r in table.records]
    return _markdown_table(["Rank", "ID", "Author", constants.MEASURE_LABELS[table.measure]], rows, precision)


def _rank_plot_rows(table: RankTable) -> Rows:
    rows = [[r.ranks[table.measure], r.measures[table.measure]] for r in table.records]
    return ["rank", table.measure], rows


def _correlation_rows(matrix: CorrelationMatrix) -> Rows:
    rows = [[measure, *row] for measure, row in zip(matrix.measures, matrix.values)]
    return ["measure", *matrix.measures], rows


def _correlation_markdown(matrix: CorrelationMatrix, precision: int) -> str:
    labels = [constants.MEASURE_LABELS[measure] for measure in matrix.measures]
    rows = [[label, *row] for label, row in zip(labels, matrix.values)]
    return _markdown_table(["", *labels], rows, precision)


def _comparison_rows(comparison: ComponentComparison) -> Rows:
    rows = [[year, *row] for year, row in zip(comparison.career_years, comparison.rows)]
    return ["career_year", *comparison.authors], rows


def _comparison_markdown(comparison: ComponentComparison, precision: int) -> str:
    header, rows = _comparison_rows(comparison)
    rows = rows + [["Total", *comparison.totals]]
    header = ["Career Year", *header[1:]]
    return f"## {constants.INDEX_LABELS[comparison.index]} components\n\n" + _markdown_table(header, rows, precision)


def _matrix_markdown(m: CitationMatrix, precision: int) -> str:
    header, rows = data_io.matrix_rows(m)
    return f"## {_escape(m.author)}\n\n" + _markdown_table(["Publication Year", *header[1:]], rows, precision)


def _matrix_plot_rows(m: CitationMatrix) -> Rows:
    return ["year", "citations"], [[year, total] for year, total in zip(m.years, sequences.yearly_totals(m))]


def _render(result: Any, fmt: str, precision: int) -> str:
    if isinstance(result, VectorReport):
        document, rows, plot, markdown = (
            _vector_document, _vector_rows, _vector_plot_rows, None)
    elif isinstance(result, SequenceReport):
        document, rows, plot, markdown = (
            _sequence_document, _sequence_rows, _sequence_plot_rows, _sequence_markdown)
    elif isinstance(result, CitationMatrix):
        document, rows, plot, markdown = (
            data_io.matrix_document, data_io.matrix_rows, _matrix_plot_rows, _matrix_markdown)
    elif isinstance(result, RankTable):
        document, rows, plot, markdown = (_rank_document, _rank_rows, _rank_plot_rows, _rank_markdown)
    elif isinstance(result, CorrelationMatrix):
        document, rows, plot, markdown = (
            lambda r: {"measures": list(r.measures), "matrix": [list(row) for row in r.values]},
            _correlation_rows, _correlation_rows, _correlation_markdown)
    elif isinstance(result, ComponentComparison):
        document, rows, plot, markdown = (
            lambda r: {"index": r.index, "authors": list(r.authors), "career_years": list(r.career_years),
                       "rows": [list(row) for row in r.rows], "totals": list(r.totals)},
            _comparison_rows, _comparison_rows, _comparison_markdown)
    elif isinstance(result, list) and all(isinstance(record, CohortRecord) for record in result):
        document, rows, plot, markdown = (
            data_io.cohort_document, _cohort_rows, _cohort_plot_rows, _cohort_markdown)
    else:
        raise ReportError(f"cannot render a {type(result).__name__} report")

    if fmt == constants.JSON:
        return json.dumps(document(result), indent=2, ensure_ascii=False) + "\n"
    if fmt == constants.CSV:
        return _csv(*rows(result))
    if fmt == constants.PLOTDATA:
        return _plotdata(*plot(result))
    if fmt == constants.MARKDOWN:
        if markdown is None:
            return _markdown_table(*rows(result), precision)
        return markdown(result, precision)
    raise ReportError(f"unknown output format {fmt!r}; use one of {', '.join(constants.OUTPUT_FORMATS)}")


def write_report(result: Any, fmt: str = constants.MARKDOWN, precision: Optional[int] = None) -> bytes:
    """Render `result` as UTF-8 bytes; identical inputs give identical bytes."""
    if precision is None:
        precision = constants.DISPLAY_PRECISION
    text = _render(result, fmt, precision)
    logger.debug("rendered %s as %s (%d characters)", type(result).__name__, fmt, len(text))
    return text.encode("utf-8")


def emit(data: bytes, output: Optional[str] = None) -> None:
    """Write rendered bytes to `output`, or to stdout when it is None or "-"."""
    try:
        if output is None or output == "-":
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            with open(output, "wb") as f:
                f.write(data)
    except OSError as e:
        raise SinkError(f"cannot write report to {output or 'stdout'}: {e.strerror or e}") from e
