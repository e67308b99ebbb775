import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src import indices
from src.indices import CitationVector, Decomposition, IndexElements
from src.utils import constants, custom_logging
from src.utils.errors import InvalidInputError, YearOutOfSpanError

logger = custom_logging.setup_logging(__name__)


@dataclass(frozen=True)
class Publication:
    pub_year: Optional[int]
    citations: Mapping[int, int]
    extra: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class CitationMatrix:
    author: str
    publications: Tuple[Publication, ...]
    author_id: Optional[int] = None
    extra: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if not self.publications:
            raise InvalidInputError(f"{self.author}: a citation matrix needs at least one publication")
        for row, publication in enumerate(self.publications, 1):
            for year, count in publication.citations.items():
                if count < 0:
                    raise InvalidInputError(f"{self.author}: negative count {count} for {year} in publication {row}")

    @property
    def k(self) -> int:
        return len(self.publications)

    @property
    def declared_years(self) -> List[int]:
        """Every citing year named by any publication, zero columns included."""
        return sorted({year for p in self.publications for year in p.citations})

    @property
    def cited_years(self) -> List[int]:
        return sorted({year for p in self.publications for year, count in p.citations.items() if count})

    @property
    def first_year(self) -> Optional[int]:
        cited = self.cited_years
        return cited[0] if cited else None

    @property
    def current_year(self) -> Optional[int]:
        cited = self.cited_years
        return cited[-1] if cited else None

    @property
    def years(self) -> List[int]:
        if self.first_year is None:
            return []
        return list(range(self.first_year, self.current_year + 1))

    @property
    def span(self) -> int:
        return len(self.years)


@dataclass(frozen=True)
class YearEntry:
    year: int
    h: int
    em: IndexElements
    em_prime: IndexElements
    decomposition: Decomposition

    @property
    def em_value(self) -> float:
        return self.em.value

    @property
    def em_prime_value(self) -> float:
        return self.em_prime.value

    def value(self, index: str) -> float:
        if index == constants.H_INDEX:
            return self.h
        if index == constants.EM_INDEX:
            return self.em_value
        return self.em_prime_value


@dataclass(frozen=True)
class SequenceFragment:
    index: str
    per_year: Tuple[Tuple[int, float], ...]
    value: float


@dataclass(frozen=True)
class SequenceProfile:
    author: str
    author_id: Optional[int]
    per_year: Tuple[YearEntry, ...]
    h_sequence_value: int
    em_sequence_value: float
    em_prime_sequence_value: float
    excess_total: int
    tail_total: int

    @property
    def years(self) -> List[int]:
        return [entry.year for entry in self.per_year]

    @property
    def total_citations(self) -> int:
        return sum(entry.decomposition.total_citations for entry in self.per_year)

    @property
    def core_citations_total(self) -> int:
        return sum(entry.decomposition.core_citations for entry in self.per_year)

    @property
    def uncounted_by_h(self) -> int:
        """Citations the h-index sequence ignores: h-core excess plus h-tail."""
        return self.excess_total + self.tail_total

    def sequence_value(self, index: str) -> float:
        return {
            constants.H_INDEX: self.h_sequence_value,
            constants.EM_INDEX: self.em_sequence_value,
            constants.EM_PRIME_INDEX: self.em_prime_sequence_value,
        }[index]


@dataclass(frozen=True)
class CareerIndices:
    h: int
    em: IndexElements
    em_prime: IndexElements
    year_based_em: IndexElements


@dataclass(frozen=True)
class ComponentComparison:
    index: str
    authors: Tuple[str, ...]
    career_years: Tuple[int, ...]
    # rows[i][j] is author j's value in career year i + 1, None past their span
    rows: Tuple[Tuple[Optional[float], ...], ...]
    totals: Tuple[float, ...]


def yearly_vector(m: CitationMatrix, year: int) -> CitationVector:
    """Citations each publication received in `year`, zeros included."""
    if m.first_year is None or not m.first_year <= year <= m.current_year:
        raise YearOutOfSpanError(year, m.first_year, m.current_year)
    return [p.citations.get(year, 0) for p in m.publications]


def _fragment(m: CitationMatrix, index: str, per_year_value) -> SequenceFragment:
    per_year = tuple((year, per_year_value(yearly_vector(m, year))) for year in m.years)
    return SequenceFragment(index, per_year, math.fsum(value for _, value in per_year))


def h_sequence(m: CitationMatrix) -> SequenceFragment:
    per_year = tuple((year, indices.h_index(yearly_vector(m, year))) for year in m.years)
    return SequenceFragment(constants.H_INDEX, per_year, sum(value for _, value in per_year))


def em_sequence(m: CitationMatrix) -> SequenceFragment:
    return _fragment(m, constants.EM_INDEX, indices.em_index)


def em_prime_sequence(m: CitationMatrix) -> SequenceFragment:
    return _fragment(m, constants.EM_PRIME_INDEX, indices.em_prime_index)


def excess_tail_totals(m: CitationMatrix) -> Tuple[int, int]:
    excess_total = tail_total = 0
    for year in m.years:
        decomposition = indices.core_excess_tail(yearly_vector(m, year))
        excess_total += decomposition.excess_citations
        tail_total += decomposition.tail_citations
    return excess_total, tail_total


def yearly_totals(m: CitationMatrix) -> CitationVector:
    return [sum(yearly_vector(m, year)) for year in m.years]


def publication_totals(m: CitationMatrix) -> CitationVector:
    return [sum(p.citations.values()) for p in m.publications]


def year_based_em_index(m: CitationMatrix) -> float:
    return indices.em_index(yearly_totals(m))


def career_indices(m: CitationMatrix) -> CareerIndices:
    totals = publication_totals(m)
    return CareerIndices(
        h=indices.h_index(totals),
        em=indices.em_elements(totals),
        em_prime=indices.em_prime_elements(totals),
        year_based_em=indices.em_elements(yearly_totals(m)),
    )


def sequence_profile(m: CitationMatrix) -> SequenceProfile:
    entries = []
    for year in m.years:
        v = yearly_vector(m, year)
        decomposition = indices.core_excess_tail(v)
        entries.append(
            YearEntry(
                year=year,
                h=decomposition.h,
                em=indices.em_elements(v),
                em_prime=indices.em_prime_elements(v),
                decomposition=decomposition,
            )
        )
    logger.info(f"computed {len(entries)} yearly entries for {m.author} over {m.k} publications")

    return SequenceProfile(
        author=m.author,
        author_id=m.author_id,
        per_year=tuple(entries),
        h_sequence_value=sum(entry.h for entry in entries),
        em_sequence_value=math.fsum(entry.em_value for entry in entries),
        em_prime_sequence_value=math.fsum(entry.em_prime_value for entry in entries),
        excess_total=sum(entry.decomposition.excess_citations for entry in entries),
        tail_total=sum(entry.decomposition.tail_citations for entry in entries),
    )


def career_components(profile: SequenceProfile, index: str) -> List[float]:
    """Per-year values indexed by career year (position 0 is the first span year)."""
    return [entry.value(index) for entry in profile.per_year]


def compare_components(
    profiles: Sequence[SequenceProfile], index: str, years: Optional[int] = None
) -> ComponentComparison:
    """Align authors by career year, optionally keeping only the first `years` years."""
    components = [career_components(profile, index) for profile in profiles]
    length = max((len(values) for values in components), default=0)
    if years is not None:
        if years < 1:
            raise InvalidInputError(f"the compared window must cover at least one career year, got {years}")
        length = min(length, years)

    rows = tuple(
        tuple(values[i] if i < len(values) else None for values in components) for i in range(length)
    )
    totals = tuple(math.fsum(values[:length]) for values in components)
    return ComponentComparison(
        index=index,
        authors=tuple(profile.author for profile in profiles),
        career_years=tuple(range(1, length + 1)),
        rows=rows,
        totals=totals,
    )


def matrix_from_rows(
    author: str, rows: Sequence[Tuple[Optional[int], Dict[int, int]]], author_id: Optional[int] = None
) -> CitationMatrix:
    return CitationMatrix(
        author=author,
        author_id=author_id,
        publications=tuple(Publication(pub_year, dict(citations)) for pub_year, citations in rows),
    )
