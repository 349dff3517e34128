"""Run reports and their human and machine renderings."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from envlab import __version__
from envlab.verdicts import Verdict, combine

if TYPE_CHECKING:
    from collections.abc import Sequence

    from envlab.config.run_config import RunConfig
    from envlab.config.workbench_input import WorkbenchInput
    from envlab.state import TaskResult

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1
REPORT_FORMATS = ("human", "machine")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3


def input_digest(source: WorkbenchInput) -> str:
    """sha256 of the canonical JSON of an input."""
    return "sha256:" + hashlib.sha256(source.canonical_json().encode()).hexdigest()


@dataclass
class RunReport:
    """Outcome of every task of one run; timings are kept apart from the replayable part."""

    input_name: str
    digest: str
    seed: int
    depth: int
    results: list[TaskResult] = field(default_factory=list)
    elapsed: float = 0.0
    version: str = __version__

    @classmethod
    def build(
        cls,
        source: WorkbenchInput,
        config: RunConfig,
        results: Sequence[TaskResult],
        elapsed: float,
    ) -> RunReport:
        """Report for a finished run, with results sorted by task index."""
        ordered = sorted(results, key=lambda r: r.index)
        return cls(source.name, input_digest(source), config.seed, config.depth, ordered, elapsed)

    @property
    def verdict(self) -> Verdict:
        """Worst task verdict; an empty run passes."""
        return combine(Verdict(r.verdict) for r in self.results)

    @property
    def exit_code(self) -> int:
        """0 all pass, 1 any fail or task error, 3 inconclusive without failures."""
        verdict = self.verdict
        if verdict in (Verdict.FAIL, Verdict.ERROR):
            return EXIT_FAIL
        if verdict is Verdict.INCONCLUSIVE:
            return EXIT_INCONCLUSIVE
        return EXIT_PASS

    def timings(self) -> dict[str, Any]:
        """Wall-clock seconds, total and per task."""
        return {"total": round(self.elapsed, 6), "tasks": {str(r.index): round(r.elapsed, 6) for r in self.results}}

    def to_dict(self, *, timings: bool = False) -> dict[str, Any]:
        """Stable schema; identical input and seed give an identical dictionary without timings."""
        data: dict[str, Any] = {
            "schema": REPORT_SCHEMA,
            "tool": {"name": "envlab", "version": self.version},
            "input": {"name": self.input_name, "digest": self.digest},
            "seed": self.seed,
            "depth": self.depth,
            "verdict": self.verdict.value,
            "exit_code": self.exit_code,
            "tasks": [r.to_dict() for r in self.results],
        }
        if timings:
            data["timings"] = self.timings()
        return data


def _counterexamples(report: dict[str, Any]) -> list[dict[str, Any]]:
    return [i for i in report.get("instances", []) if i["verdict"] in (Verdict.FAIL.value, Verdict.ERROR.value)]


def _passed(report: dict[str, Any]) -> str:
    instances = report.get("instances", [])
    passed = sum(1 for i in instances if i["verdict"] == Verdict.PASS.value)
    return f"{passed}/{len(instances)}"


def _human(report: RunReport) -> str:
    digest = report.digest.removeprefix("sha256:")[:12]
    header = f"envlab {report.version}  input {report.input_name}  sha256 {digest}"
    lines = [f"{header}  seed {report.seed}  depth {report.depth}"]
    for result in report.results:
        lines.append("")
        lines.append(f"[{result.index}] {result.op}  {result.structure or '-'}  {result.verdict}")
        if result.error is not None:
            lines.append(f"    error {result.error['code']}: {result.error['message']}")
        lines.extend(
            f"    {check['name']:<40} {check['verdict']:<13} {_passed(check):>9}" for check in result.reports
        )
        if result.envelope is not None:
            envelope = result.envelope
            lines.append(
                f"    envelope: dim Gamma {envelope['dim_gamma']}, dim eGammae {envelope['dim_envelope_algebra']}, "
                f"def {', '.join(envelope['def_simples']) or 'none'}",
            )
            lines.extend(
                f"    i_R({name}) = ({', '.join(str(d) for d in dims.values())})"
                for name, dims in envelope["i_R"].items()
            )
        for check in result.reports:
            for instance in _counterexamples(check):
                lines.append(f"    counterexample {check['name']} :: {instance['name']}")
                lines.extend("      " + line for line in json.dumps(instance["witness"], sort_keys=True).splitlines())
    lines.append("")
    lines.append(f"verdict: {report.verdict.value} (exit {report.exit_code})")
    return "\n".join(lines) + "\n"


def emit_report(report: RunReport, fmt: str = "human", *, timings: bool = False) -> str:
    """Render a report; both formats are byte-stable for a fixed input and seed unless timings are asked for."""
    if fmt == "machine":
        return json.dumps(report.to_dict(timings=timings), sort_keys=True, indent=2) + "\n"
    if fmt == "human":
        text = _human(report)
        if timings:
            text += f"elapsed: {report.elapsed:.3f}s\n"
        return text
    msg = f"Unknown report format {fmt!r}; expected one of {', '.join(REPORT_FORMATS)}"
    logger.error(msg)
    raise ValueError(msg)
