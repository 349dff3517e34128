"""Runs the tasks of a workbench input and collects their results."""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, Any

from envlab.category.add_category import EObject
from envlab.category.exact_structure import validate_structure
from envlab.config.run_config import RunConfig
from envlab.envelope import (
    ambient_functor,
    check_embedding,
    compare_structures,
    construct_envelope,
    dense_extension_check,
    dualize,
    envelope_functor,
    ext_coherence_report,
    induce_functor,
    left_abelian_report,
    left_coherence_report,
    left_envelope,
    lex_def_closed_check,
    oracle_check,
    split_identity_check,
    zero_functor,
)
from envlab.envelope.universal import default_test_modules
from envlab.errors import BadInputError, EnvlabError
from envlab.state import RunStateManager, TaskResult, TaskState
from envlab.utils.logging_helper import log_check, log_envelope, log_task
from envlab.verdicts import CheckInstance, CheckReport, Verdict, combine
from envlab.workbench.report import RunReport
from envlab.workbench.workspace import Workspace, build_workspace

if TYPE_CHECKING:
    from envlab.algebra.modules import FDModule
    from envlab.category.structures import ExactStructure
    from envlab.config.workbench_input import TaskSpec, WorkbenchInput
    from envlab.envelope.envelope import Envelope

logger = logging.getLogger(__name__)

_VERDICT_STATE = {
    Verdict.PASS: TaskState.PASSED,
    Verdict.FAIL: TaskState.FAILED,
    Verdict.INCONCLUSIVE: TaskState.INCONCLUSIVE,
    Verdict.ERROR: TaskState.ERROR,
}

FUNCTORS = ("ambient", "envelope", "zero")


def envelope_of(structure: ExactStructure) -> Envelope:
    """The envelope of a structure, built once per run."""
    with structure.lock:
        envelope = structure.cache.get("envelope")
    if envelope is None:
        envelope = construct_envelope(structure)
        with structure.lock:
            envelope = structure.cache.setdefault("envelope", envelope)
    return envelope


def envelope_test_modules(env: Envelope) -> list[tuple[str, FDModule]]:
    """Simples and projectives of e Gamma e, and the images of the generators."""
    category = env.category
    modules = default_test_modules(env.algebra)
    modules += [(f"i_R[{name}]", env.obj(EObject.generator(k))) for k, name in enumerate(category.generators)]
    return modules


class TaskRunner:
    """Dispatches one task onto the checker it names."""

    def __init__(self, workspace: Workspace, config: RunConfig) -> None:
        """Initialize with a built workspace and the run settings."""
        self.workspace = workspace
        self.config = config

    def depth(self, task: TaskSpec) -> int:
        """Task depth, falling back to the run depth."""
        return task.params.get("depth", self.config.depth)

    def rng(self, task: TaskSpec) -> random.Random:
        """A generator seeded from the task or the run."""
        return random.Random(task.params.get("seed", self.config.seed))

    def structure(self, task: TaskSpec) -> ExactStructure:
        """The structure the task names."""
        if task.structure is None:
            msg = f"Operation {task.op} needs a structure"
            raise BadInputError(msg)
        return self.workspace.structure(task.structure)

    def run(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        """Reports and the envelope summary of one task."""
        handler = getattr(self, "_op_" + task.op.replace("check:", "check_"))
        return handler(task)

    def _op_validate(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        report = validate_structure(self.structure(task), self.depth(task), self.config.max_candidates)
        return [report], None

    def _op_envelope(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        started = time.perf_counter()
        env = envelope_of(self.structure(task))
        summary = env.summary()
        log_envelope(summary)
        report = CheckReport.from_instances(
            f"envelope[{env.structure.name}]",
            [CheckInstance("constructed", Verdict.PASS, {"def_simples": summary["def_simples"]})],
        )
        return [report.with_elapsed(time.perf_counter() - started)], summary

    def _op_compare(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        other = self.workspace.structure(task.params["with"])
        return [compare_structures(self.structure(task), other, self.depth(task))], None

    def _op_dualize(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        started = time.perf_counter()
        structure = self.structure(task)
        category = self.workspace.category
        dual_category, dual = dualize(category, structure)
        back_category, back = dualize(dual_category, dual)
        instances = [
            CheckInstance(
                "involution[category]",
                Verdict.PASS if back_category.to_dict() == category.to_dict() else Verdict.FAIL,
                {},
            ),
            CheckInstance(
                "involution[structure]",
                Verdict.PASS if back.to_dict() == structure.to_dict() else Verdict.FAIL,
                {},
            ),
        ]
        env = left_envelope(structure)
        summary = env.summary()
        log_envelope(summary)
        report = CheckReport.from_instances(f"dualize[{structure.name}]", instances)
        return [report.with_elapsed(time.perf_counter() - started)], summary

    def _op_check_embedding(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        return [check_embedding(envelope_of(self.structure(task)), self.depth(task))], None

    def _op_check_ext_coherence(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        report = ext_coherence_report(self.structure(task), self.depth(task), self.config.max_candidates)
        return [report], None

    def _op_check_left_coherence(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        del task
        return [left_coherence_report(self.workspace.category)], None

    def _op_check_dense(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        env = envelope_of(self.structure(task))
        modules = envelope_test_modules(env)
        wanted = task.params.get("module")
        if wanted is not None:
            modules = [(label, module) for label, module in modules if label == wanted]
            if not modules:
                msg = f"Unknown envelope module {wanted!r}"
                raise BadInputError(msg)
        reports = []
        for label, module in modules:
            report = dense_extension_check(env, module, self.depth(task))
            reports.append(
                CheckReport(
                    f"dense[{label}]",
                    report.verdict,
                    report.instances,
                    report.depth,
                    report.elapsed,
                    report.summary,
                ),
            )
        return reports, None

    def _op_check_universal(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        env = envelope_of(self.structure(task))
        category = env.category
        choice = task.params.get("functor", "ambient" if category.modules is not None else "envelope")
        if choice == "ambient":
            functor = ambient_functor(category)
        elif choice == "envelope":
            functor = envelope_functor(env)
        elif choice == "zero":
            functor = zero_functor(category, env.algebra)
        else:
            msg = f"Unknown functor {choice!r}; expected one of {', '.join(FUNCTORS)}"
            raise BadInputError(msg)
        _, report = induce_functor(env, functor)
        return [report], None

    def _op_check_left_abelian(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        env = envelope_of(self.structure(task))
        return [left_abelian_report(env, self.rng(task), task.params.get("samples", 20))], None

    def _op_check_lex_def_closed(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        env = envelope_of(self.structure(task))
        count = task.params.get("samples", 10)
        return [lex_def_closed_check(env, rng=self.rng(task), count=count)], None

    def _op_check_split_identity(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        del task
        return [split_identity_check(self.workspace.category)], None

    def _op_check_oracle(self, task: TaskSpec) -> tuple[list[CheckReport], dict[str, Any] | None]:
        env = envelope_of(self.structure(task))
        count = task.params.get("samples", self.config.fuzz_instances)
        return [oracle_check(env, self.rng(task), count)], None


def _run_one(runner: TaskRunner, state: RunStateManager, index: int, task: TaskSpec) -> None:
    state.set_task_state(index, TaskState.RUNNING)
    started = time.perf_counter()
    result = TaskResult(index, task.op, task.structure, Verdict.ERROR.value)
    try:
        reports, envelope = runner.run(task)
    except EnvlabError as e:
        logger.error("Task %d (%s) failed: %s", index, task.op, e)  # noqa: TRY400
        result.error = {"code": e.code, "message": str(e)}
        result.reports = [CheckReport.error(task.op, e.code, str(e)).to_dict()]
    except Exception as e:
        logger.exception("Unexpected error in task %d (%s)", index, task.op)
        result.error = {"code": EnvlabError.code, "message": f"{type(e).__name__}: {e}"}
    else:
        for report in reports:
            log_check(report)
        result.verdict = combine(r.verdict for r in reports).value
        result.reports = [r.to_dict() for r in reports]
        result.envelope = envelope
    result.elapsed = time.perf_counter() - started
    state.record_result(result)
    final = _VERDICT_STATE[Verdict(result.verdict)]
    state.set_task_state(index, final)
    log_task(index, task.op, final)


def run_tasks(source: WorkbenchInput | Workspace, config: RunConfig | None = None) -> RunReport:
    """Execute every task, each isolated; task errors are recorded and never abort the batch."""
    config = config or RunConfig()
    started = time.perf_counter()
    workspace = source if isinstance(source, Workspace) else build_workspace(source)
    tasks = workspace.source.tasks
    runner = TaskRunner(workspace, config)
    state = RunStateManager(len(tasks))
    if tasks:
        with ThreadPoolExecutor(max_workers=config.workers, thread_name_prefix="envlab-task") as executor:
            futures = [executor.submit(_run_one, runner, state, k, task) for k, task in enumerate(tasks)]
            for future in futures:
                future.result()
    report = RunReport.build(workspace.source, config, state.results(), time.perf_counter() - started)
    logger.info("Run of %s finished: %s (exit %d)", workspace.source.name, report.verdict.value, report.exit_code)
    return report
