import io
import json

import pytest

from src import data_io
from src.cli import main
from src.utils import constants

JACKSON_JSON = str(data_io.fixture_path("jackson.json"))
JACKSON_CSV = str(data_io.fixture_path("jackson.csv"))
COHORT = str(data_io.fixture_path("cohort89.csv"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_index_vector(capsys):
    code, out, _ = run(capsys, "index", "--vector", "30,30,25,22,22,21,15,15,14,10,10,10,9,8,1")
    assert code == constants.EXIT_OK
    assert "| EM-index elements | 10, 6, 5, 3, 2, 2, 2 |" in out
    assert "| EM-index | 5.48 |" in out


def test_index_zero_vector(capsys):
    code, out, _ = run(capsys, "index", "--vector", "0,0")
    assert code == constants.EXIT_OK
    assert "| h-index | 0 |" in out
    assert "| EM-index | 0.00 |" in out
    assert "| EM′-index | 0.00 |" in out


def test_index_em_prime(capsys):
    code, out, _ = run(capsys, "index", "--vector", "9,6,1", "--json")
    assert code == constants.EXIT_OK
    assert json.loads(out)["em_prime_index"] == pytest.approx(3.0)


@pytest.mark.parametrize(
    "argv",
    [
        ["index", "--vector", "3,-1"],
        ["index", "--vector", "1,x"],
        ["index", "--vector", "1", "--matrix", JACKSON_JSON],
        ["index"],
        ["index", "--vector", "1", "--json", "--csv"],
        ["index", "--vector", "1", "--precision", "-1"],
        [],
        ["sequence", JACKSON_JSON, "--index", "g"],
    ],
)
def test_usage_and_validation_errors_exit_2(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == constants.EXIT_VALIDATION
    assert out == ""


def test_index_matrix_uses_career_totals(capsys):
    code, out, _ = run(capsys, "index", "--matrix", JACKSON_JSON, "--json")
    assert code == constants.EXIT_OK
    document = json.loads(out)
    assert document["h_index"] == 5
    assert sum(document["counts"]) == 323


def test_sequence_h(capsys):
    code, out, _ = run(capsys, "sequence", JACKSON_JSON, "--index", "h")
    assert code == constants.EXIT_OK
    assert "| h-index sequence | 35 |" in out
    assert "EM-index sequence" not in out


def test_sequence_em(capsys):
    code, out, _ = run(capsys, "sequence", JACKSON_CSV, "--index", "em", "--author", "Andrew D. Jackson")
    assert code == constants.EXIT_OK
    assert "## Andrew D. Jackson" in out
    assert "| EM-index sequence | 30.51 |" in out
    assert "| EM-index | 2.24 | 2.65 | 3.16 |" in out


def test_sequence_output_ignores_zero_padding(capsys, tmp_path):
    padded = tmp_path / "padded.csv"
    lines = data_io.fixture_path("jackson.csv").read_text(encoding="utf-8").splitlines()
    header, rows = lines[0], lines[1:]
    padded.write_text(
        "\n".join([header.replace("pub_year,", "pub_year,2005,") + ",2018,2019"]
                  + [row.replace(",", ",0,", 1) + ",0,0" for row in rows]) + "\n",
        encoding="utf-8",
    )
    for fmt in ("--markdown", "--csv", "--json"):
        _, plain, _ = run(capsys, "sequence", JACKSON_CSV, "--author", "x", fmt)
        _, with_zeros, _ = run(capsys, "sequence", str(padded), "--author", "x", fmt)
        assert plain == with_zeros


def test_output_is_byte_identical_across_runs(capsys):
    for argv in (
        ["sequence", JACKSON_JSON, "--json"],
        ["cohort", "correlate", COHORT],
        ["cohort", "rank", COHORT, "--by", "h_sequence", "--csv"],
    ):
        code, first, _ = run(capsys, *argv)
        assert code == constants.EXIT_OK
        assert run(capsys, *argv)[1] == first


def test_sequence_from_stdin(capsys, monkeypatch):
    text = data_io.fixture_path("jackson.json").read_text(encoding="utf-8")
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, out, _ = run(capsys, "sequence", "-", "--format", "json", "--index", "h", "--plotdata")
    assert code == constants.EXIT_OK
    assert out.splitlines()[0] == "year\th"


def test_stdin_needs_a_format(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("{}"))
    code, _, err = run(capsys, "sequence", "-")
    assert code == constants.EXIT_VALIDATION
    assert "cannot infer the input format" in err


def test_cohort_rank(capsys):
    code, out, _ = run(capsys, "cohort", "rank", COHORT, "--by", "em_sequence", "--csv")
    assert code == constants.EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "id,author,measure,rank"
    assert lines[1].startswith("37,")


def test_cohort_rank_unknown_measure(capsys):
    code, out, err = run(capsys, "cohort", "rank", COHORT, "--by", "bogus")
    assert code == constants.EXIT_VALIDATION
    assert out == ""
    assert "em_prime_sequence" in err


def test_cohort_correlate(capsys):
    code, out, _ = run(capsys, "cohort", "correlate", COHORT, "--measures", "h_sequence,em_sequence,em_prime_sequence")
    assert code == constants.EXIT_OK
    assert "| h-index Sequence | 1.00 | 0.93 | 0.95 |" in out
    assert "| EM-index Sequence | 0.93 | 1.00 | 0.96 |" in out


def test_cohort_correlate_unknown_measure(capsys):
    code, _, err = run(capsys, "cohort", "correlate", COHORT, "--measures", "h_sequence,g_sequence")
    assert code == constants.EXIT_VALIDATION
    assert "valid measures" in err


def test_cohort_build_then_rank(capsys, tmp_path):
    cohort_path = tmp_path / "cohort.json"
    code, _, _ = run(capsys, "cohort", "build", JACKSON_JSON, "--json", "-o", str(cohort_path))
    assert code == constants.EXIT_OK
    document = json.loads(cohort_path.read_text(encoding="utf-8"))
    assert document["authors"][0]["author_id"] == 7
    assert document["authors"][0]["h_sequence"] == 35
    assert document["authors"][0]["excess_citations"] == 170

    code, out, _ = run(capsys, "cohort", "rank", str(cohort_path), "--by", "tail_total", "--csv")
    assert code == constants.EXIT_OK
    assert out.splitlines()[1] == "7,Andrew D. Jackson,tail_total,1"


def test_compare(capsys):
    code, out, _ = run(
        capsys, "compare", JACKSON_JSON, JACKSON_CSV, "--index", "h", "--years", "2",
        "--plotdata",
    )
    assert code == constants.EXIT_OK
    assert out.splitlines() == ["career_year\tAndrew D. Jackson\tjackson", "1\t2\t2", "2\t2\t2"]


def test_missing_input_exits_1(capsys, tmp_path):
    code, out, err = run(capsys, "sequence", str(tmp_path / "missing.json"))
    assert code == constants.EXIT_IO
    assert out == ""
    assert "error:" in err


def test_unwritable_output_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "sequence", JACKSON_JSON, "-o", str(tmp_path / "no" / "such" / "dir.md"))
    assert code == constants.EXIT_IO
    assert "cannot write report" in err


def test_invalid_document_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("pub_year,2001\n2000,-1\n", encoding="utf-8")
    code, out, err = run(capsys, "sequence", str(path))
    assert code == constants.EXIT_VALIDATION
    assert out == ""
    assert "negative count -1" in err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == constants.EXIT_OK
    assert out.strip() == f"run.py {constants.APP_VERSION}"
