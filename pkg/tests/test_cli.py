# tests/test_cli.py

import json

from typer.testing import CliRunner

from isolab.cli import verify_cli
from isolab.cli.cli import cli

runner = CliRunner()


def test_analyze_supersingular_preset():
    result = runner.invoke(cli, ["analyze", "--input", "ss2", "--prime", "3"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["slope"] == "1/2"
    assert report["newton_slopes"] == ["1/2", "1/2"]
    assert report["dm"]["summands"] == [{"a": 2, "b": 1, "slope": "1/2"}]
    print("[TEST] analyze ss2 passed.")


def test_analyze_filtration_preset(tmp_path):
    out = tmp_path / "ord2.json"
    result = runner.invoke(cli, ["analyze", "-i", "ord2-special", "-o", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["filtration"]["weakly_admissible"]["wa"] == "false"
    assert report["filtration"]["tN"] == 1 and report["filtration"]["tH"] == 1
    print("[TEST] analyze filtration passed.")


def test_analyze_exit_codes(tmp_path):
    """Bad input exits 2, an undeterminable answer exits 3."""
    result = runner.invoke(cli, ["analyze", "--input", "no-such-thing.json"])
    assert result.exit_code == 2

    singular = tmp_path / "singular.json"
    singular.write_text(json.dumps({"p": 2, "phi": [[0, 0], [0, 1]]}), encoding="utf-8")
    result = runner.invoke(cli, ["analyze", "--input", str(singular)])
    assert result.exit_code == 3

    result = runner.invoke(cli, ["analyze", "--input", "ord2", "--format", "pdf"])
    assert result.exit_code == 2
    print("[TEST] analyze exit codes passed.")


def test_polygon_json_from_weights():
    result = runner.invoke(cli, ["polygon", "--weights", "0,1", "--format", "json"])
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["hodge"]["vertices"] == [[0, "0"], [1, "0"], [2, "1"]]
    print("[TEST] polygon JSON passed.")


def test_polygon_overlay_svg(tmp_path):
    out = tmp_path / "ord2.svg"
    result = runner.invoke(cli, ["polygon", "-i", "ord2-generic", "-o", str(out)])
    assert result.exit_code == 0, result.output
    svg = out.read_text(encoding="utf-8")
    assert 'class="hodge"' in svg and 'class="newton"' in svg
    assert runner.invoke(cli, ["polygon"]).exit_code == 2
    print("[TEST] polygon SVG passed.")


def test_scan_writes_csv_and_prints_summary(tmp_path):
    out = tmp_path / "scan.csv"
    args = ["scan", "-i", "ord2", "-w", "0,1", "-n", "5", "--seed", "2",
            "--force", '{"1": [[1], [0]]}', "-o", str(out)]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    summary = json.loads(result.stdout)
    assert summary["counts"] == {"true": 5, "false": 1, "unknown": 0}
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# isolab-scan v1"
    assert len(lines) == 2 + 6
    assert runner.invoke(cli, ["scan", "-w", "a,b"]).exit_code == 2
    print("[TEST] scan passed.")


def test_seminorm_eval():
    result = runner.invoke(cli, ["seminorm", "eval", "-e", '{"kind": "padic", "p": 2}', "-x", "12"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["neg_log_p"] == "2"
    assert json.loads(result.stdout)["base"] == "2"

    comb = runner.invoke(cli, ["seminorm", "eval", "-e", '{"kind": "comb", "p": 3, "c": "1/2"}', "-x", "18"])
    assert comb.exit_code == 0, comb.output
    document = json.loads(comb.stdout)
    assert document["base"] == "2" and document["neg_log"] == "2"
    assert "neg_log_p" not in document

    result = runner.invoke(cli, ["seminorm", "eval", "-e", '{"kind": "sideways"}', "-x", "12"])
    assert result.exit_code == 2
    print("[TEST] seminorm eval passed.")


def test_verify_is_deterministic():
    args = ["verify", "seminorm", "--seed", "5", "-n", "3", "--filtrations", "1"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    assert runner.invoke(cli, ["verify", "galois"]).exit_code == 2
    print("[TEST] verify determinism passed.")


def test_verify_failure_exits_one(monkeypatch):
    monkeypatch.setattr(verify_cli, "run_verification",
                        lambda suite, config: {"suite": suite, "seed": 0, "passed": False, "checks": []})
    result = runner.invoke(cli, ["verify", "witt"])
    assert result.exit_code == 1
    print("[TEST] verify failure exit code passed.")


def test_paths_command(tmp_path):
    result = runner.invoke(cli, ["paths", "--create"])
    assert result.exit_code == 0
    assert "isolab Path Configuration" in result.stdout
    assert (tmp_path / "workspace" / "exports").is_dir()
    print("[TEST] paths passed.")


if __name__ == "__main__":
    test_analyze_supersingular_preset()
    test_polygon_json_from_weights()
    test_seminorm_eval()
    test_verify_is_deterministic()
