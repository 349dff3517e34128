"""Tests for the task runner, run reports and the bundled corpus."""

from __future__ import annotations

import copy
import json
from typing import TYPE_CHECKING, Any

import pytest

from envlab.config import ConfigError, RunConfig, WorkbenchInput
from envlab.state import TaskResult
from envlab.workbench import (
    RunReport,
    build_workspace,
    corpus_names,
    emit_report,
    input_digest,
    load_corpus,
    run_tasks,
    show_corpus,
)
from envlab.workbench.report import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS

if TYPE_CHECKING:
    from envlab.workbench import Workspace

TEST_CORPUS = ["a2_all", "a2_compare", "a2_proj", "a2_split", "kron"]
TEST_DIGEST_LENGTH = len("sha256:") + 64
TEST_A2_ENVELOPE_DIM = 3

_BAD_STRUCTURE = {
    "kind": "generated",
    "conflations": [
        {
            "label": "bad",
            "i": {"src": {"P2": 1}, "tgt": {"P1": 1}, "maps": {"2": [[0]]}},
            "d": {"src": {"P1": 1}, "tgt": {"S1": 1}, "maps": {"1": [[1]]}},
        },
    ],
}


def _with(data: dict[str, Any], structures: dict[str, Any], tasks: list[dict[str, Any]]) -> WorkbenchInput:
    mutated = copy.deepcopy(data)
    mutated["structures"].update(structures)
    mutated["tasks"] = tasks
    return WorkbenchInput.from_dict(mutated)


def test_corpus_names() -> None:
    """Every bundled input is listed."""
    assert corpus_names() == TEST_CORPUS  # noqa: S101


def test_unknown_corpus_entry() -> None:
    """An unknown name is bad input."""
    with pytest.raises(ConfigError):
        load_corpus("missing")


def test_show_corpus_is_canonical() -> None:
    """The shown text parses back to the bundled input."""
    text = show_corpus("a2_all")
    assert text.endswith("}\n")  # noqa: S101
    assert WorkbenchInput.from_dict(json.loads(text)) == load_corpus("a2_all")  # noqa: S101


@pytest.mark.parametrize("name", TEST_CORPUS)
def test_corpus_runs_pass(name: str) -> None:
    """Every bundled task passes."""
    report = run_tasks(load_corpus(name))
    failing = [r.to_dict() for r in report.results if r.verdict != "pass"]
    assert not failing, failing  # noqa: S101
    assert report.exit_code == EXIT_PASS  # noqa: S101
    assert len(report.results) == len(load_corpus(name).tasks)  # noqa: S101


def test_envelope_task_summary(a2_all: Workspace) -> None:
    """The envelope task carries dimensions and i_R."""
    report = run_tasks(a2_all)
    envelope = next(r.envelope for r in report.results if r.op == "envelope")
    assert envelope is not None  # noqa: S101
    assert envelope["dim_envelope_algebra"] == TEST_A2_ENVELOPE_DIM  # noqa: S101
    assert envelope["def_simples"] == ["S[S1]"]  # noqa: S101


def test_machine_report_is_deterministic() -> None:
    """Same input and seed give byte-identical machine output, whatever the worker count."""
    source = load_corpus("a2_compare")
    first = emit_report(run_tasks(source, RunConfig(seed=9)), "machine")
    second = emit_report(run_tasks(source, RunConfig(seed=9, workers=3)), "machine")
    assert first == second  # noqa: S101
    data = json.loads(first)
    assert data["input"]["digest"] == input_digest(source)  # noqa: S101
    assert "timings" not in data  # noqa: S101


def test_machine_report_timings_on_request() -> None:
    """Timings are added only when asked for."""
    report = run_tasks(load_corpus("a2_proj"))
    data = json.loads(emit_report(report, "machine", timings=True))
    assert set(data["timings"]) == {"total", "tasks"}  # noqa: S101


def test_input_digest() -> None:
    """A sha256 over the canonical form."""
    digest = input_digest(load_corpus("kron"))
    assert digest.startswith("sha256:")  # noqa: S101
    assert len(digest) == TEST_DIGEST_LENGTH  # noqa: S101


def test_empty_task_list(a2_input_data: dict[str, Any]) -> None:
    """No tasks is a passing run."""
    report = run_tasks(_with(a2_input_data, {}, []))
    assert report.results == []  # noqa: S101
    assert report.exit_code == EXIT_PASS  # noqa: S101
    assert json.loads(emit_report(report, "machine"))["tasks"] == []  # noqa: S101


def test_failing_structure_reports_counterexample(a2_input_data: dict[str, Any]) -> None:
    """A zero inflation fails validation and the human report shows the instance."""
    source = _with(a2_input_data, {"bad": _BAD_STRUCTURE}, [{"op": "validate", "structure": "bad"}])
    report = run_tasks(source)
    assert report.exit_code == EXIT_FAIL  # noqa: S101
    text = emit_report(report, "human")
    assert "counterexample validate[bad] :: conflation[bad]" in text  # noqa: S101
    assert text.rstrip().endswith("verdict: fail (exit 1)")  # noqa: S101


def test_task_error_does_not_abort_batch(a2_input_data: dict[str, Any]) -> None:
    """An unknown module label errors one task; the next task still runs."""
    tasks = [
        {"op": "check:dense", "structure": "all", "params": {"module": "S[nowhere]"}},
        {"op": "envelope", "structure": "all"},
    ]
    report = run_tasks(_with(a2_input_data, {}, tasks))
    first, second = report.results
    assert first.verdict == "error"  # noqa: S101
    assert first.error is not None  # noqa: S101
    assert first.error["code"] == "E_BAD_INPUT"  # noqa: S101
    assert second.verdict == "pass"  # noqa: S101
    assert report.exit_code == EXIT_FAIL  # noqa: S101


def test_dense_module_filter(a2_input_data: dict[str, Any]) -> None:
    """params.module selects one test module by label."""
    tasks = [{"op": "check:dense", "structure": "all", "params": {"module": "i_R[S1]"}}]
    report = run_tasks(_with(a2_input_data, {}, tasks))
    assert [r["name"] for r in report.results[0].reports] == ["dense[i_R[S1]]"]  # noqa: S101


def test_unknown_functor(a2_input_data: dict[str, Any]) -> None:
    """Only the ambient, envelope and zero functors exist."""
    tasks = [{"op": "check:universal", "structure": "all", "params": {"functor": "forgetful"}}]
    report = run_tasks(build_workspace(_with(a2_input_data, {}, tasks)))
    assert report.results[0].error is not None  # noqa: S101


@pytest.mark.parametrize(
    ("verdicts", "expected"),
    [
        ([], EXIT_PASS),
        (["pass", "pass"], EXIT_PASS),
        (["pass", "inconclusive"], EXIT_INCONCLUSIVE),
        (["inconclusive", "fail"], EXIT_FAIL),
        (["pass", "error"], EXIT_FAIL),
    ],
)
def test_exit_codes(verdicts: list[str], expected: int) -> None:
    """Fail and error dominate inconclusive, which dominates pass."""
    results = [TaskResult(k, "validate", "all", v) for k, v in enumerate(verdicts)]
    report = RunReport("input", "sha256:0", 0, 2, results)
    assert report.exit_code == expected  # noqa: S101


def test_unknown_report_format() -> None:
    """Only human and machine output exist."""
    with pytest.raises(ValueError, match="Unknown report format"):
        emit_report(RunReport("input", "sha256:0", 0, 2), "yaml")
