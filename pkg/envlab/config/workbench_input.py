"""Workbench input files: schema validation and the canonical round-trip form."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from envlab.algebra.field import Field
from envlab.config.errors import ConfigError
from envlab.errors import BadInputError

if TYPE_CHECKING:
    from pathlib import Path

logger = logging.getLogger(__name__)

STRUCTURE_KINDS = ("split", "ambient", "generated")
CHECK_NAMES = (
    "embedding",
    "ext_coherence",
    "left_coherence",
    "dense",
    "universal",
    "left_abelian",
    "lex_def_closed",
    "split_identity",
    "oracle",
)
TASK_OPS = ("validate", "envelope", "compare", "dualize", *(f"check:{name}" for name in CHECK_NAMES))
TASK_PARAMS = ("depth", "seed", "with", "module", "samples", "functor")


def _require(data: dict[str, Any], key: str, kind: type, where: str) -> Any:  # noqa: ANN401
    if key not in data:
        msg = f"{where}: missing required key {key!r}"
        raise ConfigError(msg)
    value = data[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        msg = f"{where}.{key}: expected {kind.__name__}, got {type(value).__name__}"
        raise ConfigError(msg)
    return value


@dataclass(frozen=True)
class TaskSpec:
    """One task: an operation, the structure it runs on, and its parameters."""

    op: str
    structure: str | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Canonical form."""
        data: dict[str, Any] = {"op": self.op}
        if self.structure is not None:
            data["structure"] = self.structure
        if self.params:
            data["params"] = dict(sorted(self.params.items()))
        return data


@dataclass(frozen=True)
class WorkbenchInput:
    """A parsed workbench file: one field, one algebra, modules, a category, structures and tasks."""

    name: str
    field: dict[str, Any]
    algebra: dict[str, Any]
    modules: dict[str, dict[str, Any]]
    category: dict[str, Any]
    structures: dict[str, dict[str, Any]]
    tasks: tuple[TaskSpec, ...]

    @classmethod
    def load_from_file(cls, path: Path) -> WorkbenchInput:
        """parse_input: read and validate a workbench file."""
        if not path.exists():
            msg = f"Workbench input file not found at {path}"
            logger.error(msg)
            raise ConfigError(msg)
        try:
            with path.open() as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            msg = f"{path.name}: invalid JSON at line {e.lineno}, column {e.colno}"
            logger.exception(msg)
            raise ConfigError(msg) from e
        return cls.from_dict(data, default_name=path.stem)

    @classmethod
    def from_dict(cls, data: dict[str, Any], default_name: str = "input") -> WorkbenchInput:
        """Validate the schema and every cross-reference."""
        if not isinstance(data, dict):
            msg = "Workbench input must be a JSON object"
            raise ConfigError(msg)
        unknown = sorted(set(data) - {"name", "field", "algebra", "modules", "category", "structures", "tasks"})
        if unknown:
            msg = f"Unknown top-level keys: {', '.join(unknown)}"
            raise ConfigError(msg)
        field_spec = _require(data, "field", dict, "input")
        try:
            Field.from_dict(field_spec)
        except BadInputError as e:
            raise ConfigError(str(e)) from e
        algebra = cls._parse_algebra(_require(data, "algebra", dict, "input"))
        modules = cls._parse_modules(data.get("modules", {}), algebra)
        category = cls._parse_category(_require(data, "category", dict, "input"), modules, algebra)
        generators = cls._generator_names(category)
        structures = cls._parse_structures(data.get("structures", {}), generators, modules)
        tasks = cls._parse_tasks(data.get("tasks", []), structures)
        name = data.get("name", default_name)
        if not isinstance(name, str):
            msg = "input.name: expected str"
            raise ConfigError(msg)
        logger.info(
            "Parsed %s: %d modules, %d structures, %d tasks", name, len(modules), len(structures), len(tasks)
        )
        return cls(name, dict(field_spec), algebra, modules, category, structures, tasks)

    @staticmethod
    def _parse_algebra(spec: dict[str, Any]) -> dict[str, Any]:
        if "quiver" in spec:
            quiver = _require(spec, "quiver", dict, "algebra")
            vertices = _require(quiver, "vertices", list, "algebra.quiver")
            for k, arrow in enumerate(quiver.get("arrows", [])):
                where = f"algebra.quiver.arrows[{k}]"
                if not isinstance(arrow, dict):
                    msg = f"{where}: expected an object"
                    raise ConfigError(msg)
                for end in ("src", "tgt"):
                    if _require(arrow, end, str, where) not in vertices:
                        msg = f"{where}.{end}: unknown vertex {arrow[end]!r}"
                        raise ConfigError(msg)
                _require(arrow, "name", str, where)
            relations = spec.get("relations", [])
            if not isinstance(relations, list):
                msg = "algebra.relations: expected list"
                raise ConfigError(msg)
            bound = _require(spec, "path_bound", int, "algebra")
            if bound < 0:
                msg = "algebra.path_bound: must be non-negative"
                raise ConfigError(msg)
            return {"quiver": quiver, "relations": relations, "path_bound": bound}
        basis = _require(spec, "basis", list, "algebra")
        table = _require(spec, "table", dict, "algebra")
        idempotents = _require(spec, "idempotents", list, "algebra")
        return {"basis": basis, "table": table, "idempotents": idempotents}

    @staticmethod
    def _parse_modules(spec: Any, algebra: dict[str, Any]) -> dict[str, dict[str, Any]]:  # noqa: ANN401
        if not isinstance(spec, dict):
            msg = "modules: expected an object"
            raise ConfigError(msg)
        vertices = algebra["quiver"]["vertices"] if "quiver" in algebra else algebra["idempotents"]
        modules = {}
        for name, module in spec.items():
            where = f"modules.{name}"
            if not isinstance(module, dict):
                msg = f"{where}: expected an object"
                raise ConfigError(msg)
            dims = _require(module, "dims", dict, where)
            for vertex, dim in dims.items():
                if vertex not in vertices:
                    msg = f"{where}.dims: unknown vertex {vertex!r}"
                    raise ConfigError(msg)
                if not isinstance(dim, int) or dim < 0:
                    msg = f"{where}.dims.{vertex}: expected a non-negative integer"
                    raise ConfigError(msg)
            key = "arrows" if "quiver" in algebra else "actions"
            matrices = module.get(key, {})
            if not isinstance(matrices, dict):
                msg = f"{where}.{key}: expected an object"
                raise ConfigError(msg)
            modules[name] = {"dims": dict(dims), key: dict(matrices)}
        return modules

    @staticmethod
    def _parse_category(spec: dict[str, Any], modules: dict[str, Any], algebra: dict[str, Any]) -> dict[str, Any]:
        if "vertices" in spec:
            if "quiver" not in algebra:
                msg = "category.vertices: vertex objects need an algebra given by a quiver"
                raise ConfigError(msg)
            labels = _require(spec, "vertices", dict, "category")
            for label, vertex in labels.items():
                if vertex not in algebra["quiver"]["vertices"]:
                    msg = f"category.vertices.{label}: unknown vertex {vertex!r}"
                    raise ConfigError(msg)
            return {"vertices": dict(labels)}
        generators = _require(spec, "generators", list, "category")
        if not generators:
            msg = "category.generators: at least one generator is needed"
            raise ConfigError(msg)
        for name in generators:
            if name not in modules:
                msg = f"category.generators: unknown module {name!r}"
                raise ConfigError(msg)
        if len(set(generators)) != len(generators):
            msg = "category.generators: duplicate module names"
            raise ConfigError(msg)
        return {"generators": list(generators)}

    @staticmethod
    def _generator_names(category: dict[str, Any]) -> list[str]:
        if "vertices" in category:
            return list(category["vertices"])
        return list(category["generators"])

    @staticmethod
    def _parse_morphism(spec: Any, generators: list[str], where: str) -> dict[str, Any]:  # noqa: ANN401
        if not isinstance(spec, dict):
            msg = f"{where}: expected an object"
            raise ConfigError(msg)
        for end in ("src", "tgt"):
            objects = _require(spec, end, dict, where)
            for name, mult in objects.items():
                if name not in generators:
                    msg = f"{where}.{end}: unknown generator {name!r}"
                    raise ConfigError(msg)
                if not isinstance(mult, int) or mult < 0:
                    msg = f"{where}.{end}.{name}: expected a non-negative multiplicity"
                    raise ConfigError(msg)
        if ("entries" in spec) == ("maps" in spec):
            msg = f"{where}: give exactly one of 'entries' and 'maps'"
            raise ConfigError(msg)
        return dict(spec)

    @classmethod
    def _parse_structures(
        cls,
        spec: Any,  # noqa: ANN401
        generators: list[str],
        modules: dict[str, Any],
    ) -> dict[str, dict[str, Any]]:
        if not isinstance(spec, dict):
            msg = "structures: expected an object"
            raise ConfigError(msg)
        structures = {}
        for name, structure in spec.items():
            where = f"structures.{name}"
            kind = _require(structure, "kind", str, where)
            if kind not in STRUCTURE_KINDS:
                msg = f"{where}.kind: expected one of {', '.join(STRUCTURE_KINDS)}, got {kind!r}"
                raise ConfigError(msg)
            if kind == "ambient" and not modules:
                msg = f"{where}: an ambient structure needs a category of modules"
                raise ConfigError(msg)
            parsed: dict[str, Any] = {"kind": kind}
            if kind == "generated":
                conflations = _require(structure, "conflations", list, where)
                parsed["conflations"] = []
                for k, conflation in enumerate(conflations):
                    place = f"{where}.conflations[{k}]"
                    if not isinstance(conflation, dict):
                        msg = f"{place}: expected an object"
                        raise ConfigError(msg)
                    entry = {
                        "i": cls._parse_morphism(conflation.get("i"), generators, f"{place}.i"),
                        "d": cls._parse_morphism(conflation.get("d"), generators, f"{place}.d"),
                    }
                    if "label" in conflation:
                        entry["label"] = str(conflation["label"])
                    parsed["conflations"].append(entry)
            structures[name] = parsed
        return structures

    @staticmethod
    def _parse_tasks(spec: Any, structures: dict[str, Any]) -> tuple[TaskSpec, ...]:  # noqa: ANN401
        if not isinstance(spec, list):
            msg = "tasks: expected a list"
            raise ConfigError(msg)
        tasks = []
        for k, task in enumerate(spec):
            where = f"tasks[{k}]"
            if not isinstance(task, dict):
                msg = f"{where}: expected an object"
                raise ConfigError(msg)
            op = _require(task, "op", str, where)
            if op not in TASK_OPS:
                msg = f"{where}.op: unknown operation {op!r}"
                raise ConfigError(msg)
            structure = task.get("structure")
            if structure is None and op not in ("check:left_coherence", "check:split_identity"):
                msg = f"{where}.structure: required for {op}"
                raise ConfigError(msg)
            if structure is not None and structure not in structures:
                msg = f"{where}.structure: unknown structure {structure!r}"
                raise ConfigError(msg)
            params = task.get("params", {})
            if not isinstance(params, dict):
                msg = f"{where}.params: expected an object"
                raise ConfigError(msg)
            unknown = sorted(set(params) - set(TASK_PARAMS))
            if unknown:
                msg = f"{where}.params: unknown parameters {', '.join(unknown)}"
                raise ConfigError(msg)
            for key in ("depth", "seed", "samples"):
                if key in params and (not isinstance(params[key], int) or isinstance(params[key], bool)):
                    msg = f"{where}.params.{key}: expected int"
                    raise ConfigError(msg)
            for key in ("depth", "samples"):
                if params.get(key, 0) < 0:
                    msg = f"{where}.params.{key}: must be non-negative"
                    raise ConfigError(msg)
            if op == "compare" and params.get("with") not in structures:
                msg = f"{where}.params.with: unknown structure {params.get('with')!r}"
                raise ConfigError(msg)
            tasks.append(TaskSpec(op, structure, dict(params)))
        return tuple(tasks)

    def to_dict(self) -> dict[str, Any]:
        """Canonical JSON form; parsing it again gives an equal input."""
        return {
            "name": self.name,
            "field": self.field,
            "algebra": self.algebra,
            "modules": self.modules,
            "category": self.category,
            "structures": self.structures,
            "tasks": [task.to_dict() for task in self.tasks],
        }

    def canonical_json(self) -> str:
        """Sorted, compact-indented JSON used for digests and ``corpus show``."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @property
    def generator_names(self) -> list[str]:
        """Generators in file order."""
        return self._generator_names(self.category)
