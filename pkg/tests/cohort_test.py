from dataclasses import replace

import pandas as pd
import pytest

from src import cohort, data_io
from src.cohort import CohortRecord
from src.utils import constants
from src.utils.errors import CorrelationError, InvalidInputError, MeasureError

PUBLISHED_RANK_COLUMNS = {
    constants.H_SEQUENCE: "h_rank",
    constants.EM_SEQUENCE: "em_rank",
    constants.EM_PRIME_SEQUENCE: "em_prime_rank",
}


def _record(author_id, **measures):
    return CohortRecord(author_id=author_id, author=f"author {author_id}", measures=measures)


def test_rank_by_em_sequence(cohort89):
    table = cohort.rank_table(cohort89, constants.EM_SEQUENCE)
    assert table.records[0].author_id == 37
    assert [r.author_id for r in table.records[:5]] == [37, 76, 74, 56, 23]
    assert table.records[-1].author_id == 30


@pytest.mark.parametrize("measure", list(PUBLISHED_RANK_COLUMNS))
def test_ranks_match_published_tables(cohort89, measure):
    published = pd.read_csv(data_io.fixture_path("cohort89_published_ranks.csv")).set_index("id")
    ranked = cohort.rank_cohort(cohort89, measure)
    mismatches = [
        (r.author_id, r.ranks[measure], int(published.loc[r.author_id, PUBLISHED_RANK_COLUMNS[measure]]))
        for r in ranked
        if r.ranks[measure] != published.loc[r.author_id, PUBLISHED_RANK_COLUMNS[measure]]
    ]
    assert mismatches == []


def test_ties_go_to_smaller_author_id(cohort89):
    ranks = {r.author_id: r for r in cohort.rank_cohort(cohort89, constants.H_SEQUENCE)}
    # three authors with an h-index sequence of 61
    assert [ranks[i].ranks[constants.H_SEQUENCE] for i in (8, 10, 71)] == [20, 21, 22]
    assert ranks[8].average_ranks[constants.H_SEQUENCE] == 21.0

    ranks = {r.author_id: r for r in cohort.rank_cohort(cohort89, constants.EM_SEQUENCE)}
    assert (ranks[43].ranks[constants.EM_SEQUENCE], ranks[83].ranks[constants.EM_SEQUENCE]) == (30, 31)
    assert (ranks[5].ranks[constants.EM_SEQUENCE], ranks[65].ranks[constants.EM_SEQUENCE]) == (77, 78)
    assert ranks[5].average_ranks[constants.EM_SEQUENCE] == 77.5


def test_rank_cohort_keeps_input_order_and_earlier_ranks():
    records = [_record(3, h_sequence=5), _record(1, h_sequence=5), _record(2, h_sequence=9)]
    ranked = cohort.rank_cohort(records, constants.H_SEQUENCE)
    assert [r.author_id for r in ranked] == [3, 1, 2]
    assert [r.ranks[constants.H_SEQUENCE] for r in ranked] == [3, 2, 1]
    assert [r.average_ranks[constants.H_SEQUENCE] for r in ranked] == [2.5, 2.5, 1.0]

    reranked = cohort.rank_cohort(
        [replace(r, measures={**r.measures, "tail_total": r.author_id}) for r in ranked],
        constants.TAIL_TOTAL,
    )
    assert reranked[0].ranks == {constants.H_SEQUENCE: 3, constants.TAIL_TOTAL: 1}


def test_rank_cohort_errors(cohort89):
    with pytest.raises(MeasureError) as e:
        cohort.rank_cohort(cohort89, "bogus")
    assert "em_prime_sequence" in str(e.value)

    with pytest.raises(MeasureError) as e:
        cohort.rank_cohort([_record(1, h_sequence=3), _record(2, em_sequence=1.0)], constants.H_SEQUENCE)
    assert "record 2" in str(e.value)


def test_rankdata_avg_ties():
    assert cohort.rankdata_avg_ties([10, 20, 20, 5]).tolist() == [2.0, 3.5, 3.5, 1.0]
    assert cohort.rankdata_avg_ties([]).tolist() == []


def test_spearman_basic():
    assert cohort.spearman([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)
    assert cohort.spearman([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)
    # monotone transforms do not change ranks
    assert cohort.spearman([1, 5, 2, 8], [1, 25, 4, 64]) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "x, y",
    [([1, 2, 3], [1, 2]), ([1], [1]), ([], []), ([3, 3, 3], [1, 2, 3])],
)
def test_spearman_errors(x, y):
    with pytest.raises(CorrelationError):
        cohort.spearman(x, y)


def test_correlation_matrix_matches_published_table(cohort89):
    measures = [constants.H_SEQUENCE, constants.EM_SEQUENCE, constants.EM_PRIME_SEQUENCE]
    matrix = cohort.correlation_matrix(cohort89, measures)
    values = matrix.values

    assert matrix.measures == tuple(measures)
    for i in range(3):
        assert values[i][i] == 1.0
        for j in range(3):
            assert values[i][j] == values[j][i]
            assert -1.0 <= values[i][j] <= 1.0

    assert abs(values[0][1] - 0.93) <= 0.01
    assert abs(values[0][2] - 0.94) <= 0.01
    assert abs(values[1][2] - 0.96) <= 0.01
    assert values[0][1] == pytest.approx(0.926338, abs=1e-5)
    assert values[0][2] == pytest.approx(0.945745, abs=1e-5)
    assert values[1][2] == pytest.approx(0.963049, abs=1e-5)


def test_correlation_matrix_needs_two_records(cohort89):
    with pytest.raises(CorrelationError):
        cohort.correlation_matrix(cohort89[:1], [constants.H_SEQUENCE, constants.EM_SEQUENCE])


def test_build_cohort(jackson):
    records = cohort.build_cohort([jackson])
    assert len(records) == 1
    record = records[0]
    assert record.author_id == 7
    assert record.measures[constants.H_SEQUENCE] == 35
    assert round(record.measures[constants.EM_SEQUENCE], 2) == 30.51
    assert record.measures[constants.EXCESS_TOTAL] == 170
    assert record.measures[constants.TAIL_TOTAL] == 34


def test_build_cohort_numbers_documents_without_ids(jackson_csv):
    records = cohort.build_cohort([jackson_csv, jackson_csv], first_id=10)
    assert [r.author_id for r in records] == [10, 11]


def test_build_cohort_rejects_duplicate_ids(jackson):
    with pytest.raises(InvalidInputError):
        cohort.build_cohort([jackson, jackson])


def test_equal_values_rank_by_author_id():
    records = [_record(i, em_sequence=4.0) for i in (5, 2, 9, 1)]
    ranked = {r.author_id: r for r in cohort.rank_cohort(records, constants.EM_SEQUENCE)}
    assert [ranked[i].ranks[constants.EM_SEQUENCE] for i in (1, 2, 5, 9)] == [1, 2, 3, 4]
    assert {r.average_ranks[constants.EM_SEQUENCE] for r in ranked.values()} == {2.5}


def test_author_ranks_differ_by_measure(cohort89):
    expected = {37: (5, 1), 74: (1, 3), 51: (50, 20)}
    by_h = {r.author_id: r.ranks[constants.H_SEQUENCE] for r in cohort.rank_cohort(cohort89, constants.H_SEQUENCE)}
    by_em = {r.author_id: r.ranks[constants.EM_SEQUENCE] for r in cohort.rank_cohort(cohort89, constants.EM_SEQUENCE)}
    assert {author_id: (by_h[author_id], by_em[author_id]) for author_id in expected} == expected
