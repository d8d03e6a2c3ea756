"""Integration tests for the divgaps command line."""

import pytest

from divgaps.cli.main import run
from divgaps.utils.serialization import loads_json

pytestmark = pytest.mark.integration

COARSE = "0.00390625"


@pytest.fixture
def coarse_config(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(f"grid_step: {COARSE}\nd_u_max: 6\n")
    return path


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCount:
    """Test single values."""

    def test_f_exact(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "--output-dir", str(tmp_path), "count", "f", "--q", "2", "--n", "2", "--m", "1")
        assert code == 0
        assert out == "3/4\n"

    def test_p_with_dash(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "--output-dir", str(tmp_path), "count", "p", "--q", "-", "--n", "3", "--m", "1")
        assert code == 0
        assert out == "1/3\n"

    def test_integer_ratio_printed_bare(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "--output-dir", str(tmp_path), "count", "g", "--n", "3", "--m", "3")
        assert code == 0
        assert out == "1\n"

    def test_numeric(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "--output-dir", str(tmp_path), "count", "r", "--q", "2", "--n", "2", "--m", "1", "--numeric"
        )
        assert code == 0
        assert float(out) == pytest.approx(0.25)

    @pytest.mark.parametrize(
        "argv",
        [
            ("count", "f", "--n", "3", "--m", "1"),
            ("count", "g", "--q", "2", "--n", "3", "--m", "1"),
            ("count", "r", "--q", "1", "--n", "3", "--m", "1"),
            ("count", "f", "--q", "2", "--n", "-1", "--m", "1"),
        ],
    )
    def test_domain_errors(self, capsys, tmp_path, argv):
        code, out, err = _run(capsys, "--output-dir", str(tmp_path), *argv)
        assert code == 2
        assert out == ""
        assert err.startswith("divgaps: ")


class TestTable:
    def test_csv_to_stdout(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "--output-dir", str(tmp_path), "table", "f", "--q", "2", "--m", "1", "--n-max", "2"
        )
        assert code == 0
        assert out.splitlines() == [
            "kind,q,n,m,value_exact,value_float",
            "f,2,0,1,1/1,1",
            "f,2,1,1,1/1,1",
            "f,2,2,1,3/4,0.75",
        ]

    def test_cache_reused(self, capsys, tmp_path):
        argv = ("--output-dir", str(tmp_path), "table", "p", "--q", "-", "--m", "2", "--n-max", "10")
        first = _run(capsys, *argv)
        cached = list((tmp_path / "cache").glob("*.json"))
        assert len(cached) == 1
        assert cached[0].name.startswith("p-exact-qperm-m2-n10-v")
        assert _run(capsys, *argv) == first

    def test_no_cache(self, capsys, tmp_path):
        code, _, _ = _run(
            capsys, "--output-dir", str(tmp_path), "--no-cache", "table", "g", "--q", "-", "--m", "1", "--n-max", "5"
        )
        assert code == 0
        assert not (tmp_path / "cache").exists()

    def test_json_to_file(self, capsys, tmp_path):
        target = tmp_path / "tables" / "r.json"
        code, out, _ = _run(
            capsys,
            "--output-dir", str(tmp_path),
            "table", "r", "--q", "3", "--m", "1", "--n-max", "3",
            "--format", "json", "--output", str(target),
        )
        assert code == 0
        assert out == ""
        records = loads_json(target.read_bytes())
        assert [r["n"] for r in records] == [0, 1, 2, 3]
        assert records[2]["value_exact"] == "1/3"


class TestCensus:
    def test_poly(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "--output-dir", str(tmp_path), "census", "poly", "--q", "2", "--n", "2")
        assert code == 0
        assert out.splitlines() == [
            "m,f_count,r_count",
            "1,3,1",
            "2,4,0",
            "# total=4 criterion_agrees=true",
        ]

    def test_perm(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "--output-dir", str(tmp_path), "census", "perm", "--n", "3")
        assert code == 0
        assert out.splitlines()[1] == "1,2/3,1/3"

    def test_budget(self, capsys, tmp_path):
        code, _, err = _run(capsys, "--output-dir", str(tmp_path), "census", "perm", "--n", "61")
        assert code == 2
        assert "divgaps:" in err


class TestGrids:
    """Test ω, d and constants on a coarse grid set through --config."""

    def test_buchstab_point(self, capsys, coarse_config, tmp_path):
        code, out, _ = _run(
            capsys, "--config", str(coarse_config), "--output-dir", str(tmp_path), "buchstab", "--u", "2.5"
        )
        assert code == 0
        value, error = out.strip().split(" +- ")
        assert float(value) == pytest.approx(0.56218604, abs=1e-8)
        assert float(error) < 1e-8

    def test_buchstab_dump(self, capsys, coarse_config, tmp_path):
        code, out, _ = _run(
            capsys, "--config", str(coarse_config), "--output-dir", str(tmp_path), "buchstab", "--dump"
        )
        assert code == 0
        path = tmp_path / "omega.csv"
        assert out.strip() == str(path)
        assert path.read_text().splitlines()[0] == "u,value,error_bound,closed_form"

    def test_dfunc_outside_grid(self, capsys, coarse_config, tmp_path):
        code, out, _ = _run(
            capsys, "--config", str(coarse_config), "--output-dir", str(tmp_path), "dfunc", "--u", "0.5"
        )
        assert code == 0
        assert out == "1 +- 0\n"

    def test_constants(self, capsys, coarse_config, tmp_path):
        code, out, _ = _run(capsys, "--config", str(coarse_config), "--output-dir", str(tmp_path), "constants")
        assert code == 0
        assert out.splitlines() == ["C=2.280291", "kappa=0.433489", "tau=0.205466"]
        assert loads_json((tmp_path / "constants.json").read_bytes())["precision"] == 256


class TestVerifyAndEstimate:
    def test_verify_passing_suite(self, capsys, tmp_path):
        report = tmp_path / "report.json"
        code, out, _ = _run(capsys, "--output-dir", str(tmp_path), "verify", "--suite", "cqh", "--report", str(report))
        assert code == 0
        assert out.startswith("PASS cqh:")
        assert report.is_file()

    def test_verify_unknown_suite(self, capsys, tmp_path):
        code, _, err = _run(capsys, "--output-dir", str(tmp_path), "verify", "--suite", "nonsense")
        assert code == 2
        assert "nonsense" in err

    def test_estimate_json(self, capsys, coarse_config, tmp_path):
        code, out, _ = _run(
            capsys,
            "--config", str(coarse_config), "--output-dir", str(tmp_path),
            "estimate", "eta", "--q", "-", "--m", "1", "--n", "300",
        )
        assert code == 0
        payload = loads_json(out)
        assert payload["label"] == "estimate"
        assert payload["q"] is None
        assert payload["n"] == 300

    def test_estimate_cq_needs_q(self, capsys, tmp_path):
        code, _, _ = _run(capsys, "--output-dir", str(tmp_path), "estimate", "cq", "--q", "-")
        assert code == 2


def test_invalid_config_file(capsys, tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("grid_step: 0.3\n")
    code, _, err = _run(capsys, "--config", str(path), "constants")
    assert code == 2
    assert err.startswith("divgaps: invalid configuration")
