"""Workbench: input files, the task runner, the bundled corpus and reports."""

from envlab.workbench.corpus import corpus_names, load_corpus, show_corpus
from envlab.workbench.report import RunReport, emit_report, input_digest
from envlab.workbench.runner import TaskRunner, run_tasks
from envlab.workbench.workspace import Workspace, build_workspace, parse_morphism

__all__ = [
    "RunReport",
    "TaskRunner",
    "Workspace",
    "build_workspace",
    "corpus_names",
    "emit_report",
    "input_digest",
    "load_corpus",
    "parse_morphism",
    "run_tasks",
    "show_corpus",
]
