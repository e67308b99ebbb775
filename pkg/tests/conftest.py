import pytest

from src import data_io
from src.sequences import CitationMatrix


@pytest.fixture
def jackson() -> CitationMatrix:
    return data_io.load_author_matrix(data_io.fixture_path("jackson.json"))


@pytest.fixture
def jackson_csv() -> CitationMatrix:
    return data_io.load_author_matrix(data_io.fixture_path("jackson.csv"), author="Andrew D. Jackson")


@pytest.fixture
def cohort89():
    return data_io.load_cohort(data_io.fixture_path("cohort89.csv"))
