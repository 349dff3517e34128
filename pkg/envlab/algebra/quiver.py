"""Quivers and their bounded quotient path algebras."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from envlab.algebra.fd_algebra import FDAlgebra
from envlab.algebra.matrix import Matrix
from envlab.errors import BadInputError, NotFiniteDimensionalError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from envlab.algebra.field import Field

logger = logging.getLogger(__name__)

RESERVED_CHARACTERS = ".[]"


@dataclass(frozen=True)
class Arrow:
    """A named arrow between two vertices."""

    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path written in traversal order; the empty path sits at ``source``."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        """Number of arrows."""
        return len(self.arrows)

    @property
    def label(self) -> str:
        """Basis label: ``e[v]`` for trivial paths, dotted arrow names otherwise."""
        return f"e[{self.source}]" if not self.arrows else ".".join(self.arrows)

    def sort_key(self) -> tuple[int, tuple[str, ...], str]:
        """Length first, then lexicographic, then (for trivial paths) the vertex."""
        return self.length, self.arrows, self.source

    def then(self, other: Path) -> Path | None:
        """Concatenation (self first), or None when the endpoints do not meet."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)


@dataclass(frozen=True)
class Quiver:
    """Vertices and named arrows."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        """Check name uniqueness and arrow endpoints."""
        if len(set(self.vertices)) != len(self.vertices):
            msg = "quiver.vertices: names must be unique"
            raise BadInputError(msg)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            msg = "quiver.arrows: names must be unique"
            raise BadInputError(msg)
        for arrow in self.arrows:
            if arrow.source not in self.vertices or arrow.target not in self.vertices:
                msg = f"quiver.arrows.{arrow.name}: endpoint is not a vertex"
                raise BadInputError(msg)
            if not arrow.name or any(ch in arrow.name for ch in RESERVED_CHARACTERS):
                msg = f"quiver.arrows.{arrow.name}: names may not be empty or contain any of {RESERVED_CHARACTERS!r}"
                raise BadInputError(msg)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Quiver:
        """Parse ``{"vertices": [...], "arrows": [{"name", "src", "tgt"}]}``."""
        try:
            vertices = tuple(str(v) for v in data["vertices"])
            arrows = tuple(Arrow(str(a["name"]), str(a["src"]), str(a["tgt"])) for a in data.get("arrows", []))
        except (KeyError, TypeError) as e:
            msg = f"algebra.quiver: missing or malformed field {e}"
            raise BadInputError(msg) from e
        return cls(vertices, arrows)

    def to_dict(self) -> dict[str, Any]:
        """Inverse of :meth:`from_dict`."""
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.source, "tgt": a.target} for a in self.arrows],
        }

    def arrow(self, name: str) -> Arrow:
        """Look up an arrow by name."""
        for arrow in self.arrows:
            if arrow.name == name:
                return arrow
        msg = f"Unknown arrow {name!r}"
        raise BadInputError(msg)

    def check_path(self, arrows: Sequence[str]) -> Path:
        """Validate a nonempty traversal-order arrow sequence and return it as a path."""
        if not arrows:
            msg = "Empty arrow sequence; trivial paths need an explicit vertex"
            raise BadInputError(msg)
        steps = [self.arrow(name) for name in arrows]
        for first, second in zip(steps, steps[1:], strict=False):
            if first.target != second.source:
                msg = f"Arrows {first.name} and {second.name} do not compose"
                raise BadInputError(msg)
        return Path(steps[0].source, steps[-1].target, tuple(arrows))

    def paths_up_to(self, length: int) -> list[Path]:
        """All paths of length at most ``length``, sorted by (length, lex)."""
        layer = [Path(v, v) for v in self.vertices]
        paths = list(layer)
        for _ in range(length):
            layer = [
                Path(p.source, a.target, (*p.arrows, a.name))
                for p in layer
                for a in self.arrows
                if a.source == p.target
            ]
            paths.extend(layer)
        return sorted(paths, key=Path.sort_key)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths."""

    terms: tuple[tuple[Any, Path], ...]

    @classmethod
    def parse(cls, quiver: Quiver, base_field: Field, data: dict[str, Any], where: str) -> Relation:
        """Parse ``{"terms": [{"coeff", "path"}]}`` and check the terms are parallel."""
        try:
            raw_terms = data["terms"]
            terms = tuple((base_field(t["coeff"]), quiver.check_path(t["path"])) for t in raw_terms)
        except (KeyError, TypeError) as e:
            msg = f"{where}: malformed relation ({e})"
            raise BadInputError(msg) from e
        except BadInputError as e:
            msg = f"{where}: {e}"
            raise BadInputError(msg) from e
        if not terms:
            msg = f"{where}: a relation needs at least one term"
            raise BadInputError(msg)
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) != 1:
            msg = f"{where}: terms do not share source and target"
            raise BadInputError(msg)
        return cls(terms)

    def source(self) -> str:
        """Common source vertex."""
        return self.terms[0][1].source

    def target(self) -> str:
        """Common target vertex."""
        return self.terms[0][1].target


def build_algebra(base_field: Field, quiver: Quiver, relations: Sequence[Relation], path_bound: int) -> FDAlgebra:
    """The quotient of the path algebra by the ideal generated by ``relations``.

    Paths longer than ``path_bound`` must all lie in the ideal; this is
    certified on the paths of length ``path_bound + 1``, which then generate
    every longer path. Surviving basis paths are the smallest in (length, lex)
    order, so the basis is deterministic.
    """
    if path_bound < 0:
        msg = f"path_bound must be non-negative, got {path_bound}"
        raise BadInputError(msg)
    top = path_bound + 1
    paths = quiver.paths_up_to(top)
    # columns run from the largest path down so that row reduction eliminates large paths first
    columns = list(reversed(paths))
    column_of = {p: i for i, p in enumerate(columns)}
    zero = base_field.zero

    rows = []
    for relation in relations:
        prefixes = [p for p in paths if p.target == relation.source()]
        suffixes = [q for q in paths if q.source == relation.target()]
        for p in prefixes:
            for q in suffixes:
                row = [zero] * len(columns)
                for coeff, term in relation.terms:
                    word = p.then(term)
                    word = word.then(q) if word is not None else None
                    if word is not None and word.length <= top:
                        row[column_of[word]] += coeff
                if any(row):
                    rows.append(tuple(row))
    generators = Matrix(base_field, len(rows), len(columns), tuple(rows))

    longest = [p for p in paths if p.length == top]
    if longest:
        units = tuple(
            tuple(base_field.one if c == column_of[p] else zero for c in range(len(columns))) for p in longest
        )
        probe = generators.vstack(Matrix(base_field, len(units), len(columns), units))
        if probe.rank() != generators.rank():
            msg = f"Paths of length {top} survive the relations; the algebra is not bounded by path_bound={path_bound}"
            logger.error(msg)
            raise NotFiniteDimensionalError(msg)

    reduced, pivots = generators.rref()
    pivot_set = set(pivots)
    survivors = [p for p in paths if column_of[p] not in pivot_set]
    index = {p: i for i, p in enumerate(survivors)}

    def normal_form(word: Path) -> dict[int, Any]:
        if word.length > top:
            return {}
        col = column_of[word]
        if col not in pivot_set:
            return {index[word]: base_field.one}
        row = reduced.rows[pivots.index(col)]
        return {index[s]: -row[column_of[s]] for s in survivors if row[column_of[s]]}

    products: dict[tuple[int, int], dict[int, Any]] = {}
    for i, u in enumerate(survivors):
        for j, v in enumerate(survivors):
            word = u.then(v)
            if word is not None:
                form = normal_form(word)
                if form:
                    products[i, j] = form

    normal_forms = {}
    for p in paths:
        if p.arrows:
            vector = [zero] * len(survivors)
            for k, c in normal_form(p).items():
                vector[k] = c
            normal_forms[p.arrows] = tuple(vector)

    trivial = {p.source: index[p] for p in survivors if not p.arrows}
    algebra = FDAlgebra.from_products(
        base_field,
        [p.label for p in survivors],
        list(quiver.vertices),
        [trivial[v] for v in quiver.vertices],
        products,
        quiver=quiver,
        normal_forms=normal_forms,
    )
    logger.info("Built quiver algebra of dimension %d over %s", algebra.dim, base_field)
    return algebra


def basis_paths(algebra: FDAlgebra) -> list[tuple[str, ...]]:
    """Arrow sequences of the basis of a quiver algebra (empty for idempotents)."""
    if algebra.quiver is None:
        msg = "Algebra was not built from a quiver"
        raise BadInputError(msg)
    return [() if algebra.is_idempotent(b) else tuple(label.split(".")) for b, label in enumerate(algebra.labels)]
