import json

import numpy as np
import pytest

from src.domain.entities.coverage_report import CoverageReport
from src.domain.entities.run_manifest import RunManifest
from src.domain.errors import ConfigError
from src.infrastructure.persistence.results_writer import ResultsWriter, format_value, read_manifest_line


@pytest.fixture
def writer(tmp_path):
    return ResultsWriter(tmp_path / "out", RunManifest("fit", {"simulation.n": 40}, "0.1.0", 3))


def test_format_value():
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(np.float64(1.0)) == "1"
    assert format_value(np.bool_(True)) == "true"
    assert format_value(7) == "7"
    assert format_value("matern") == "matern"


def test_csv_layout(writer):
    path = writer.write_csv("table.csv", ["x", "value"], [[0.5, 1 / 3], [1.0, np.nan]])
    lines = path.read_bytes().split(b"\r\n")
    assert lines[0].startswith(b"# manifest: {")
    assert lines[1:] == [b"x,value", b"0.5,0.33333333333333331", b"1,nan", b""]
    manifest = read_manifest_line(path)
    assert manifest == {"subcommand": "fit", "version": "0.1.0", "base_seed": 3, "config": {"simulation.n": 40}}


def test_manifest_has_no_wall_clock(writer):
    assert "started_at" not in json.dumps(writer.manifest.to_dict())


def test_json_carries_manifest(writer):
    path = writer.write_json("result.json", {"values": np.array([1.0, 2.0]), "count": np.int64(2)})
    document = json.loads(path.read_text(encoding="utf-8"))
    assert document["manifest"]["subcommand"] == "fit"
    assert document["values"] == [1.0, 2.0]
    assert document["count"] == 2


def test_run_info_lists_files(writer):
    writer.write_csv("b.csv", ["x"], [[1.0]])
    writer.write_json("a.json", {})
    writer.manifest.finish()
    info = json.loads(writer.write_run_info().read_text(encoding="utf-8"))
    assert info["files"] == ["a.json", "b.csv"]
    assert info["wall_clock"]["elapsed_seconds"] >= 0


def test_run_info_carries_cell_runtimes(writer):
    writer.record_runtime({"nu": 0.1, "n": 200}, {"elapsed_seconds": np.float64(1.5), "workers": 4})
    writer.manifest.finish()
    info = json.loads(writer.write_run_info().read_text(encoding="utf-8"))
    assert info["cell_runtimes"] == [{"nu": 0.1, "n": 200, "elapsed_seconds": 1.5, "workers": 4}]


def test_missing_manifest_line(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("x,y\n1,2\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        read_manifest_line(path)


def test_coverage_report_serialization():
    report = CoverageReport(
        nu=0.1, n=200, replicates=100, levels=[0.8], grid=np.linspace(0, 1, 3),
        simultaneous={0.8: 0.9}, pointwise={0.8: np.array([1.0, 0.5, 0.9])},
        mean_radius={0.8: 0.2}, mean_half_length={0.8: 0.1}, narrow_band_fraction={0.8: 0.0}, lambda_=0.05,
    )
    data = report.to_dict()
    assert data["simultaneous"] == {"0.8": 0.9}
    assert data["simultaneous_se"]["0.8"] == pytest.approx(0.03)
    assert data["pointwise_min"] == {"0.8": 0.5}
    np.testing.assert_allclose(report.pointwise_se(0.8), [0.0, 0.05, 0.03])
    assert "runtime" not in data
