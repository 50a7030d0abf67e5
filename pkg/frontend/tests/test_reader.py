import numpy as np
import pytest

from epiplot import SchemaError, read_trajectory


def test_reads_exact_values(trajectory_csv):
    data = read_trajectory(str(trajectory_csv))
    assert data.shape == (50, 5)
    lines = trajectory_csv.read_text().splitlines()[1:]
    expected = np.array([[float(v) for v in line.split(",")] for line in lines])
    assert np.array_equal(data, expected)


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError, match="no such file"):
        read_trajectory(str(tmp_path / "absent.csv"))


def test_wrong_header(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,s,i,r\n0,1,0,0\n1,1,0,0\n")
    with pytest.raises(SchemaError, match="header"):
        read_trajectory(str(bad))


def test_ragged_row(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,s,i,r,d\n0,1,0,0,0\n1,1,0,0\n")
    with pytest.raises(SchemaError, match="bad.csv:3"):
        read_trajectory(str(bad))


def test_non_numeric_cell(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,s,i,r,d\n0,1,0,0,0\n1,one,0,0,0\n")
    with pytest.raises(SchemaError, match="non-numeric"):
        read_trajectory(str(bad))


def test_non_finite_cell(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,s,i,r,d\n0,1,0,0,0\n1,nan,0,0,0\n")
    with pytest.raises(SchemaError, match="non-finite"):
        read_trajectory(str(bad))


def test_too_few_rows(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,s,i,r,d\n0,1,0,0,0\n")
    with pytest.raises(SchemaError, match="two data rows"):
        read_trajectory(str(bad))


def test_empty_file(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("")
    with pytest.raises(SchemaError, match="empty"):
        read_trajectory(str(bad))
