import csv
import json

import numpy as np
import pytest

from experiment_flow.schedules import mv2_schedule
from models import NoiseModel, TraceFormat
from multiverse import run_multiverse
from qstate import basis_state
from utils.trace_export import read_trace, trace_header, write_trace


@pytest.fixture
def trace():
    model = NoiseModel(p=0.8, p1=0.95, n_paths=4, seed=11)
    return run_multiverse(basis_state(2, 0), mv2_schedule(9), model).trace


def test_header_layout():
    header = trace_header(2)
    assert header[:4] == ["step", "fidelity", "purity", "entropy"]
    assert header[4:8] == ["eig_0", "eig_1", "eig_2", "eig_3"]
    assert header[8:14] == ["q1_Px", "q1_Py", "q1_Pz", "q2_Px", "q2_Py", "q2_Pz"]
    assert header[14] == "c1_2_xx" and header[-1] == "c1_2_zz"
    assert len(header) == 4 + 4 + 6 + 9
    assert len(trace_header(3)) == 4 + 8 + 9 + 27


def test_csv_has_header_plus_one_row_per_step(trace, tmp_path):
    path = write_trace(trace, tmp_path / "run.csv", TraceFormat.csv)
    with path.open() as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == trace_header(2)
    assert len(rows) == 1 + 9
    assert [int(row[0]) for row in rows[1:]] == list(range(1, 10))
    assert all(len(row) == len(rows[0]) for row in rows)


def test_csv_and_json_agree(trace, tmp_path):
    csv_rows = read_trace(write_trace(trace, tmp_path / "run.csv", TraceFormat.csv))
    json_path = write_trace(trace, tmp_path / "run.json", TraceFormat.json)
    payload = json.loads(json_path.read_text())
    assert payload["nq"] == 2
    assert payload["columns"] == trace_header(2)
    np.testing.assert_array_equal(np.array(read_trace(json_path)), np.array(csv_rows))


def test_values_use_six_significant_digits(tmp_path):
    clean = run_multiverse(basis_state(2, 0), mv2_schedule(), NoiseModel(p=1.0)).trace
    path = write_trace(clean, tmp_path / "run.csv")
    first = path.read_text().splitlines()[1].split(",")
    # noiseless: after H1 the fidelity is 1/sqrt(2) and the state stays pure
    assert first[1:4] == ["0.707107", "1", "0"]


def test_output_directory_is_created(trace, tmp_path):
    path = write_trace(trace, tmp_path / "nested" / "dir" / "run.csv")
    assert path.is_file()
