"""Tests for the command-line entry point."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING, Any

import pytest

from envlab import __version__
from envlab.main import main

if TYPE_CHECKING:
    from pathlib import Path

TEST_EXIT_INPUT_ERROR = 2


@pytest.fixture
def input_file(tmp_path: Path, a2_input_data: dict[str, Any], monkeypatch: pytest.MonkeyPatch) -> Path:
    """The minimal input written to a file, with the working directory moved away from any config."""
    monkeypatch.chdir(tmp_path)
    path = tmp_path / "a2_minimal.json"
    path.write_text(json.dumps(a2_input_data))
    return path


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    """--version prints the tool version."""
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0  # noqa: S101
    assert __version__ in capsys.readouterr().out  # noqa: S101


def test_validate_command(input_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """validate builds the workspace and prints a one-line summary."""
    assert main(["validate", str(input_file)]) == 0  # noqa: S101
    assert capsys.readouterr().out.startswith("a2_minimal: ok")  # noqa: S101


def test_run_machine_to_file(input_file: Path, tmp_path: Path) -> None:
    """run --out writes the machine report and returns its exit code."""
    out = tmp_path / "report.json"
    code = main(["run", str(input_file), "--format", "machine", "--seed", "4", "--out", str(out)])
    report = json.loads(out.read_text())
    assert code == 0  # noqa: S101
    assert report["seed"] == 4  # noqa: S101
    assert report["tasks"][0]["envelope"]["def_simples"] == ["S[S1]"]  # noqa: S101


def test_run_human_to_stdout(input_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """The human report ends with the overall verdict."""
    assert main(["run", str(input_file)]) == 0  # noqa: S101
    out = capsys.readouterr().out
    assert "i_R(P1) = (1, 1)" in out  # noqa: S101
    assert out.rstrip().endswith("verdict: pass (exit 0)")  # noqa: S101


def test_run_uses_config_file(input_file: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """--config supplies defaults that flags can override."""
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"output_format": "machine", "seed": 11}))
    assert main(["run", str(input_file), "--config", str(config)]) == 0  # noqa: S101
    assert json.loads(capsys.readouterr().out)["seed"] == 11  # noqa: S101, PLR2004


def test_missing_input_is_input_error(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """A missing file exits 2 with the bad-input code."""
    assert main(["run", str(tmp_path / "absent.json")]) == TEST_EXIT_INPUT_ERROR  # noqa: S101
    assert "E_BAD_INPUT" in capsys.readouterr().err  # noqa: S101


def test_bad_override_is_input_error(input_file: Path) -> None:
    """A negative depth is rejected before anything runs."""
    assert main(["run", str(input_file), "--depth", "-1"]) == TEST_EXIT_INPUT_ERROR  # noqa: S101


def test_corpus_commands(capsys: pytest.CaptureFixture[str]) -> None:
    """corpus list names every entry; corpus show prints canonical JSON."""
    assert main(["corpus", "list"]) == 0  # noqa: S101
    assert "kron" in capsys.readouterr().out.split()  # noqa: S101
    assert main(["corpus", "show", "a2_split"]) == 0  # noqa: S101
    assert json.loads(capsys.readouterr().out)["name"] == "a2_split"  # noqa: S101
    assert main(["corpus", "show", "nothing"]) == TEST_EXIT_INPUT_ERROR  # noqa: S101
