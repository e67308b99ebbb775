"""h-index family indicators over a single citation multiset.

A citation vector is any sequence of non-negative integers, one entry per item
(a publication for a yearly column, a career year for the year-based index).
Every function treats it as a multiset; zero entries never affect a result.
All arithmetic stays in integers until the final square root.
"""

import math
from dataclasses import dataclass
from numbers import Integral
from typing import List, Sequence, Tuple

from src.utils import custom_logging
from src.utils.errors import InvalidInputError

logger = custom_logging.setup_logging(__name__)

CitationVector = Sequence[int]


@dataclass(frozen=True)
class IndexElements:
    elements: Tuple[int, ...] = ()

    @property
    def total(self) -> int:
        return sum(self.elements)

    @property
    def value(self) -> float:
        return math.sqrt(self.total)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Decomposition:
    h: int = 0
    core_citations: int = 0
    excess_citations: int = 0
    tail_citations: int = 0

    @property
    def total_citations(self) -> int:
        return self.core_citations + self.tail_citations


@dataclass(frozen=True)
class VectorReport:
    counts: Tuple[int, ...]
    h: int
    em: IndexElements
    em_prime: IndexElements
    decomposition: Decomposition


def _pool(v: CitationVector) -> List[int]:
    """Validated entries sorted descending, zeros dropped."""
    pool = []
    for position, count in enumerate(v):
        if isinstance(count, bool) or not isinstance(count, Integral):
            raise InvalidInputError(f"citation count at position {position} is not an integer: {count!r}")
        if count < 0:
            raise InvalidInputError(f"negative citation count at position {position}: {count}")
        if count:
            pool.append(int(count))
    pool.sort(reverse=True)
    return pool


def _h_of_sorted(pool: Sequence[int]) -> int:
    h = 0
    for rank, count in enumerate(pool, 1):
        if count < rank:
            break
        h = rank
    return h


def _reduce_top(pool: List[int], h: int) -> List[int]:
    # ties at the h boundary are interchangeable, so the sorted prefix is canonical
    reduced = [count - h for count in pool[:h]] + pool[h:]
    return sorted((count for count in reduced if count), reverse=True)


def h_index(v: CitationVector) -> int:
    """Largest k such that at least k entries of `v` are >= k."""
    return _h_of_sorted(_pool(v))


def em_elements(v: CitationVector) -> IndexElements:
    """Iterated h-core extraction.

    Each round records the h-index of the pool and keeps only the h-core,
    reduced by h. Extraction stops once h reaches 0 or after recording a 1.
    """
    pool = _pool(v)
    elements: List[int] = []
    while True:
        h = _h_of_sorted(pool)
        if h == 0:
            break
        elements.append(h)
        if h == 1:
            break
        pool = [count - h for count in pool[:h] if count > h]
        logger.debug("em round %d: h=%d, pool=%s", len(elements), h, pool)
    return IndexElements(tuple(elements))


def em_index(v: CitationVector) -> float:
    return em_elements(v).value


def em_prime_elements(v: CitationVector) -> IndexElements:
    """Iterated extraction over the whole pool, h-tail included.

    The pool is re-ranked every round. A single remaining item or a pool of
    ones contributes one final element of 1.
    """
    pool = _pool(v)
    elements: List[int] = []
    while pool:
        if len(pool) == 1 or pool[0] == 1:
            elements.append(1)
            break
        h = _h_of_sorted(pool)
        elements.append(h)
        pool = _reduce_top(pool, h)
        logger.debug("em' round %d: h=%d, pool=%s", len(elements), h, pool)
    return IndexElements(tuple(elements))


def em_prime_index(v: CitationVector) -> float:
    return em_prime_elements(v).value


def core_excess_tail(v: CitationVector) -> Decomposition:
    pool = _pool(v)
    h = _h_of_sorted(pool)
    core = sum(pool[:h])
    return Decomposition(
        h=h,
        core_citations=core,
        excess_citations=core - h * h,
        tail_citations=sum(pool[h:]),
    )


def describe_vector(v: CitationVector) -> VectorReport:
    _pool(v)
    counts = tuple(int(count) for count in v)
    decomposition = core_excess_tail(counts)
    return VectorReport(
        counts=counts,
        h=decomposition.h,
        em=em_elements(counts),
        em_prime=em_prime_elements(counts),
        decomposition=decomposition,
    )
