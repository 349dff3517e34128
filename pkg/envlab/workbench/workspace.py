"""Builds algebras, modules, the category and its structures from a parsed input."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from envlab.algebra.fd_algebra import FDAlgebra
from envlab.algebra.field import Field
from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import ModMorphism, from_actions, from_representation
from envlab.algebra.quiver import Quiver, Relation, build_algebra
from envlab.category.add_category import AddCategory, EMorphism, EObject
from envlab.category.ambient import ambient_structure
from envlab.category.structures import Conflation, generated_structure, split_structure
from envlab.config.errors import ConfigError
from envlab.errors import EnvlabError

if TYPE_CHECKING:
    from envlab.algebra.modules import FDModule
    from envlab.category.structures import ExactStructure
    from envlab.config.workbench_input import WorkbenchInput

logger = logging.getLogger(__name__)


@dataclass
class Workspace:
    """Every object named in an input file."""

    source: WorkbenchInput
    base_field: Field
    algebra: FDAlgebra
    modules: dict[str, FDModule]
    category: AddCategory
    structures: dict[str, ExactStructure] = field(default_factory=dict)

    def structure(self, name: str) -> ExactStructure:
        """A structure by name."""
        if name not in self.structures:
            msg = f"Unknown structure {name!r}"
            raise ConfigError(msg)
        return self.structures[name]

    def module(self, name: str) -> FDModule:
        """A module by name."""
        if name not in self.modules:
            msg = f"Unknown module {name!r}"
            raise ConfigError(msg)
        return self.modules[name]


def _build_algebra(base_field: Field, spec: dict[str, Any]) -> FDAlgebra:
    if "quiver" in spec:
        quiver = Quiver.from_dict(spec["quiver"])
        relations = [
            Relation.parse(quiver, base_field, relation, f"algebra.relations[{k}]")
            for k, relation in enumerate(spec["relations"])
        ]
        return build_algebra(base_field, quiver, relations, spec["path_bound"])
    return FDAlgebra.from_structure_constants(base_field, spec["basis"], spec["table"], spec["idempotents"])


def _build_module(algebra: FDAlgebra, name: str, spec: dict[str, Any]) -> FDModule:
    if "arrows" in spec:
        return from_representation(algebra, spec["dims"], spec["arrows"], name)
    return from_actions(algebra, spec["dims"], spec["actions"], name)


def _build_category(algebra: FDAlgebra, modules: dict[str, FDModule], spec: dict[str, Any]) -> AddCategory:
    if "vertices" in spec:
        return AddCategory.from_path_algebra(algebra, spec["vertices"])
    names = spec["generators"]
    return AddCategory.from_modules(algebra, [modules[n] for n in names], names)


def _object(category: AddCategory, spec: dict[str, int]) -> EObject:
    return EObject.from_multiplicities([spec.get(name, 0) for name in category.generators])


def parse_morphism(category: AddCategory, spec: dict[str, Any], where: str) -> EMorphism:
    """A morphism of E from its input form: path entries or per-vertex module maps."""
    source, target = _object(category, spec["src"]), _object(category, spec["tgt"])
    if "entries" in spec:
        rows = spec["entries"]
        if len(rows) != target.size or any(len(row) != source.size for row in rows):
            msg = f"{where}.entries: expected a {target.size}x{source.size} grid"
            raise ConfigError(msg)
        entries = []
        for r, row in enumerate(rows):
            entry_row = []
            for c, terms in enumerate(row):
                try:
                    parsed = [(category.field(t["coeff"]), t["path"]) for t in terms]
                    entry_row.append(category.path_entry(parsed, source.summands[c], target.summands[r]))
                except (KeyError, TypeError) as e:
                    msg = f"{where}.entries[{r}][{c}]: malformed term ({e})"
                    raise ConfigError(msg) from e
                except EnvlabError as e:
                    msg = f"{where}.entries[{r}][{c}]: {e}"
                    raise ConfigError(msg) from e
            entries.append(tuple(entry_row))
        return EMorphism(category, source, target, tuple(entries))

    if category.ambient is None:
        msg = f"{where}.maps: module maps need a category of modules"
        raise ConfigError(msg)
    src_module, tgt_module = category.realize_object(source), category.realize_object(target)
    blocks = []
    for s, vertex in enumerate(category.ambient.slots):
        shape = (tgt_module.dims[s], src_module.dims[s])
        rows = spec["maps"].get(vertex)
        try:
            if rows is None:
                matrix = Matrix.zeros(category.field, *shape)
            else:
                matrix = Matrix.from_rows(category.field, rows, shape[1])
        except (EnvlabError, TypeError) as e:
            msg = f"{where}.maps.{vertex}: expected {shape[0]}x{shape[1]} matrix"
            raise ConfigError(msg) from e
        if matrix.shape != shape:
            msg = f"{where}.maps.{vertex}: expected {shape[0]}x{shape[1]} matrix"
            raise ConfigError(msg)
        blocks.append(matrix)
    phi = ModMorphism(src_module, tgt_module, tuple(blocks))
    try:
        phi.check()
        return category.lift_module_map(source, target, phi)
    except EnvlabError as e:
        msg = f"{where}.maps: {e}"
        raise ConfigError(msg) from e


def _build_structure(category: AddCategory, name: str, spec: dict[str, Any]) -> ExactStructure:
    kind = spec["kind"]
    if kind == "split":
        return split_structure(category, name)
    if kind == "ambient":
        return ambient_structure(category, name)
    conflations = []
    for k, conflation in enumerate(spec["conflations"]):
        where = f"structures.{name}.conflations[{k}]"
        i = parse_morphism(category, conflation["i"], f"{where}.i").renamed(f"i{k}")
        d = parse_morphism(category, conflation["d"], f"{where}.d").renamed(f"d{k}")
        conflations.append(Conflation(i, d, conflation.get("label", f"{name}#{k}")))
    return generated_structure(category, name, tuple(conflations))


def build_workspace(source: WorkbenchInput) -> Workspace:
    """Instantiate everything an input names; failures raise ConfigError naming the key."""
    try:
        base_field = Field.from_dict(source.field)
        algebra = _build_algebra(base_field, source.algebra)
        modules = {name: _build_module(algebra, name, spec) for name, spec in source.modules.items()}
        category = _build_category(algebra, modules, source.category)
    except ConfigError:
        raise
    except EnvlabError as e:
        msg = str(e)
        logger.error(msg)  # noqa: TRY400
        raise ConfigError(msg) from e
    workspace = Workspace(source, base_field, algebra, modules, category)
    for name, spec in source.structures.items():
        try:
            workspace.structures[name] = _build_structure(category, name, spec)
        except ConfigError:
            raise
        except EnvlabError as e:
            msg = f"structures.{name}: {e}"
            logger.error(msg)  # noqa: TRY400
            raise ConfigError(msg) from e
    logger.info(
        "Workspace %s: dim algebra %d, %d generators, structures %s",
        source.name,
        algebra.dim,
        category.num_generators,
        ", ".join(workspace.structures) or "none",
    )
    return workspace
