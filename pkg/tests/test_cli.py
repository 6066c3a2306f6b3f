import json

import pytest
from click.testing import CliRunner

from ck.cli import cli
from conftest import FIXTURES


@pytest.fixture()
def runner():
    return CliRunner()


def process_args(out_path, config=None):
    args = [
        "process",
        "--danmaku", str(FIXTURES / "danmaku.xml"),
        "--transcript", str(FIXTURES / "transcript.srt"),
        "--meta", str(FIXTURES / "meta.json"),
        "--out", str(out_path),
    ]
    if config:
        args[1:1] = ["--config", str(config)]
    return args


class TestProcess:
    def test_process_writes_bundle(self, runner, tmp_path):
        out = tmp_path / "bundle.json"
        result = runner.invoke(cli, process_args(out))
        assert result.exit_code == 0, result.output
        assert out.exists()
        assert "clusters" in result.output

    def test_byte_identical_across_runs(self, runner, tmp_path):
        out1, out2 = tmp_path / "b1.json", tmp_path / "b2.json"
        assert runner.invoke(cli, process_args(out1)).exit_code == 0
        assert runner.invoke(cli, process_args(out2)).exit_code == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_bad_config_fails_before_work(self, runner, tmp_path):
        from ck.errors import ConfigError

        config = tmp_path / "ck.toml"
        config.write_text("[cluster]\neps = -2.0\n")
        out = tmp_path / "bundle.json"
        result = runner.invoke(cli, process_args(out, config=config))
        assert result.exit_code != 0
        assert isinstance(result.exception, ConfigError)
        assert not out.exists()

    def test_config_override_lands_in_provenance(self, runner, tmp_path):
        config = tmp_path / "ck.toml"
        config.write_text("[cluster]\neps = 0.5\n")
        out = tmp_path / "bundle.json"
        assert runner.invoke(cli, process_args(out, config=config)).exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["provenance"]["tunables"]["cluster.eps"] == 0.5


class TestReports:
    def test_distribution_table(self, runner, tmp_path):
        out = tmp_path / "bundle.json"
        runner.invoke(cli, process_args(out))
        result = runner.invoke(cli, ["report", "distribution", str(out)])
        assert result.exit_code == 0
        assert "inquiry" in result.output
        assert "100.0%" in result.output

    def test_distribution_json(self, runner, tmp_path):
        out = tmp_path / "bundle.json"
        runner.invoke(cli, process_args(out))
        result = runner.invoke(cli, ["report", "distribution", str(out), "--json"])
        payload = json.loads(result.output)
        assert payload["total_knowledge"] > 0
        assert len(payload["rows"]) == 7

    def test_coverage_report(self, runner):
        result = runner.invoke(cli, ["report", "coverage", "--study", str(FIXTURES / "study.json")])
        assert result.exit_code == 0
        assert "wilcoxon signed-rank" in result.output
        assert "danmaku higher" in result.output
        assert "p=0.016" in result.output

    def test_coverage_json(self, runner):
        result = runner.invoke(cli, ["report", "coverage", "--study", str(FIXTURES / "study.json"), "--json"])
        payload = json.loads(result.output)
        assert payload["test"]["p_two_sided"] == pytest.approx(0.015625)
        assert len(payload["pairs"]) == 7


class TestRender:
    def test_wordstream_svg(self, runner, tmp_path):
        out = tmp_path / "bundle.json"
        runner.invoke(cli, process_args(out))
        svg_path = tmp_path / "stream.svg"
        result = runner.invoke(cli, ["render", "wordstream", str(out), "--out", str(svg_path)])
        assert result.exit_code == 0
        svg = svg_path.read_text("utf-8")
        assert svg.startswith("<svg")
        assert "polygon" in svg


class TestExitCodes:
    def test_usage_error_is_1(self, runner):
        import subprocess
        import sys

        proc = subprocess.run(
            [sys.executable, "-m", "ck.cli", "process", "--danmaku", "x"],
            capture_output=True,
            text=True,
            env={"PYTHONPATH": "src", "PATH": "/usr/bin:/bin"},
            cwd=str(FIXTURES.parents[1]),
        )
        assert proc.returncode == 1

    def test_data_error_is_2(self, runner, tmp_path):
        import subprocess
        import sys

        bad = tmp_path / "bad.xml"
        bad.write_text("not xml at all")
        proc = subprocess.run(
            [
                sys.executable, "-m", "ck.cli", "process",
                "--danmaku", str(bad),
                "--transcript", str(FIXTURES / "transcript.srt"),
                "--meta", str(FIXTURES / "meta.json"),
                "--out", str(tmp_path / "o.json"),
            ],
            capture_output=True,
            text=True,
            env={"PYTHONPATH": "src", "PATH": "/usr/bin:/bin"},
            cwd=str(FIXTURES.parents[1]),
        )
        assert proc.returncode == 2
        assert "error" in proc.stderr.lower()
