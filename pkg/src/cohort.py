from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from src import sequences
from src.sequences import CitationMatrix
from src.utils import constants, custom_logging
from src.utils.errors import CorrelationError, InvalidInputError, MeasureError

logger = custom_logging.setup_logging(__name__)


@dataclass(frozen=True)
class CohortRecord:
    author_id: int
    author: str
    measures: Mapping[str, float]
    ranks: Mapping[str, int] = field(default_factory=dict)
    # tied values share the mean of their positions; used for correlation
    average_ranks: Mapping[str, float] = field(default_factory=dict)
    extra: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class RankTable:
    measure: str
    records: Tuple[CohortRecord, ...]


@dataclass(frozen=True)
class CorrelationMatrix:
    measures: Tuple[str, ...]
    values: Tuple[Tuple[float, ...], ...]


def _check_measure(measure: str) -> None:
    if measure not in constants.MEASURES:
        raise MeasureError(f"unknown measure {measure!r}; valid measures: {', '.join(constants.MEASURES)}")


def _values(records: Sequence[CohortRecord], measure: str) -> List[float]:
    _check_measure(measure)
    values = []
    for record in records:
        if measure not in record.measures:
            raise MeasureError(f"record {record.author_id} ({record.author}) has no value for {measure}")
        values.append(record.measures[measure])
    return values


def rankdata_avg_ties(x: Sequence[float]) -> np.ndarray:
    """1-based ascending ranks; tied values share the average of their positions."""
    a = np.asarray(x, dtype=np.float64).reshape(-1)
    n = int(a.size)
    order = np.argsort(a, kind="mergesort")
    ranks = np.empty((n,), dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and a[order[j + 1]] == a[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def rank_cohort(records: Sequence[CohortRecord], measure: str) -> List[CohortRecord]:
    """Assign display ranks (1 = largest value) for `measure`.

    Display ranks are ordinal: ties go to the smaller author_id first.
    Average ranks are stored alongside for correlation. Records come back in
    their input order.
    """
    values = _values(records, measure)
    order = sorted(range(len(records)), key=lambda i: (-values[i], records[i].author_id))
    display = {index: position for position, index in enumerate(order, 1)}
    # descending ranks: the largest value gets average rank 1
    average = rankdata_avg_ties([-value for value in values]) if values else []

    ranked = []
    for i, record in enumerate(records):
        ranked.append(
            replace(
                record,
                ranks={**record.ranks, measure: display[i]},
                average_ranks={**record.average_ranks, measure: float(average[i])},
            )
        )
    return ranked


def rank_table(records: Sequence[CohortRecord], measure: str) -> RankTable:
    ranked = rank_cohort(records, measure)
    return RankTable(measure, tuple(sorted(ranked, key=lambda record: record.ranks[measure])))


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    a = a - float(a.mean())
    b = b - float(b.mean())
    denom = float(np.sqrt(float(np.sum(a * a)) * float(np.sum(b * b))))
    if not np.isfinite(denom) or denom <= 0:
        raise CorrelationError("rank correlation is undefined when one input has no variation")
    r = float(np.sum(a * b) / denom)
    return max(-1.0, min(1.0, r))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation of average ranks."""
    if len(x) != len(y):
        raise CorrelationError(f"inputs differ in length: {len(x)} != {len(y)}")
    if len(x) < 2:
        raise CorrelationError(f"rank correlation needs at least 2 observations, got {len(x)}")
    return _pearson(rankdata_avg_ties(x), rankdata_avg_ties(y))


def correlation_matrix(records: Sequence[CohortRecord], measures: Sequence[str]) -> CorrelationMatrix:
    if len(records) < 2:
        raise CorrelationError(f"a correlation matrix needs at least 2 records, got {len(records)}")
    columns = {measure: _values(records, measure) for measure in measures}
    n = len(measures)
    values = [[1.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            values[i][j] = values[j][i] = spearman(columns[measures[i]], columns[measures[j]])
    return CorrelationMatrix(tuple(measures), tuple(tuple(row) for row in values))


def record_from_matrix(m: CitationMatrix, author_id: int) -> CohortRecord:
    profile = sequences.sequence_profile(m)
    measures: Dict[str, float] = {
        constants.H_SEQUENCE: profile.h_sequence_value,
        constants.EM_SEQUENCE: profile.em_sequence_value,
        constants.EM_PRIME_SEQUENCE: profile.em_prime_sequence_value,
        constants.EXCESS_TOTAL: profile.excess_total,
        constants.TAIL_TOTAL: profile.tail_total,
    }
    return CohortRecord(author_id=author_id, author=m.author, measures=measures)


def build_cohort(matrices: Sequence[CitationMatrix], first_id: int = 1) -> List[CohortRecord]:
    """One record per matrix; documents without an author_id are numbered by position."""
    records = []
    for position, m in enumerate(matrices):
        author_id = m.author_id if m.author_id is not None else first_id + position
        records.append(record_from_matrix(m, author_id))
    seen = set()
    for record in records:
        if record.author_id in seen:
            raise InvalidInputError(f"duplicate author_id {record.author_id} ({record.author}) in cohort")
        seen.add(record.author_id)
    logger.info(f"built cohort of {len(records)} authors")
    return records
