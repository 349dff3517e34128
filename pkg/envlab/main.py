"""Main entry point for the envlab command-line workbench."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from envlab import __version__
from envlab.config import ConfigError, RunConfig, WorkbenchInput
from envlab.config.run_config import OUTPUT_FORMATS
from envlab.errors import EnvlabError
from envlab.utils.logging_setup import setup_logging
from envlab.workbench import build_workspace, corpus_names, emit_report, run_tasks, show_corpus
from envlab.workbench.report import EXIT_INPUT_ERROR, EXIT_PASS

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("./config/envlab_config.json")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for the validate, run and corpus commands."""
    parser = argparse.ArgumentParser(prog="envlab", description="Right abelian envelopes of finite exact categories")
    parser.add_argument("--version", action="version", version=f"envlab {__version__}")
    parser.add_argument("--log-level", help="Logging level name (overrides the run configuration)")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Parse an input file and build everything it names")
    validate.add_argument("file", type=Path)

    run = commands.add_parser("run", help="Run the tasks of an input file")
    run.add_argument("file", type=Path)
    run.add_argument("--out", type=Path, help="Write the report to this file instead of stdout")
    run.add_argument("--depth", type=int, help="Deflation search depth")
    run.add_argument("--seed", type=int, help="Seed for the randomized checks")
    run.add_argument("--format", choices=OUTPUT_FORMATS, dest="output_format")
    run.add_argument("--workers", type=int, help="Tasks run in parallel")
    run.add_argument("--config", type=Path, help="Run configuration file")
    run.add_argument("--timings", action="store_true", help="Include wall-clock timings in the report")

    corpus = commands.add_parser("corpus", help="List or show the bundled inputs")
    corpus_commands = corpus.add_subparsers(dest="corpus_command", required=True)
    corpus_commands.add_parser("list", help="Names of the bundled inputs")
    show = corpus_commands.add_parser("show", help="Canonical JSON of a bundled input")
    show.add_argument("name")
    return parser


def load_run_config(path: Path | None) -> RunConfig:
    """The run configuration from ``path``, the default file, or defaults."""
    if path is not None:
        return RunConfig.load_from_file(path)
    if DEFAULT_CONFIG_PATH.exists():
        return RunConfig.load_from_file(DEFAULT_CONFIG_PATH)
    return RunConfig()


def command_validate(args: argparse.Namespace) -> int:
    """Parse and build an input; report what it contains."""
    source = WorkbenchInput.load_from_file(args.file)
    workspace = build_workspace(source)
    sys.stdout.write(
        f"{source.name}: ok (dim algebra {workspace.algebra.dim}, {workspace.category.num_generators} generators, "
        f"{len(workspace.structures)} structures, {len(source.tasks)} tasks)\n",
    )
    return EXIT_PASS


def command_run(args: argparse.Namespace, config: RunConfig) -> int:
    """Run every task of an input and emit the report."""
    config = config.with_overrides(
        depth=args.depth,
        seed=args.seed,
        output_format=args.output_format,
        workers=args.workers,
    )
    source = WorkbenchInput.load_from_file(args.file)
    report = run_tasks(source, config)
    text = emit_report(report, config.output_format, timings=args.timings)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
        logger.info("Report written to %s", args.out)
    else:
        sys.stdout.write(text)
    return report.exit_code


def command_corpus(args: argparse.Namespace) -> int:
    """List the corpus or print one entry."""
    if args.corpus_command == "list":
        sys.stdout.write("".join(f"{name}\n" for name in corpus_names()))
    else:
        sys.stdout.write(show_corpus(args.name))
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    """Main function: parse arguments, configure logging and dispatch."""
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level or "WARNING")

    try:
        config = load_run_config(getattr(args, "config", None))
        if args.log_level is None:
            setup_logging(config.log_level)
        if args.command == "validate":
            return command_validate(args)
        if args.command == "run":
            return command_run(args, config)
        return command_corpus(args)
    except (EnvlabError, FileNotFoundError) as e:
        code = e.code if isinstance(e, EnvlabError) else ConfigError.code
        sys.stderr.write(f"envlab: {code}: {e}\n")
        return EXIT_INPUT_ERROR
    except KeyboardInterrupt:
        logger.info("Received KeyboardInterrupt. Shutting down.")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
