"""The additive category add(G_1, ..., G_n) and its objects and morphisms.

Hom data is packaged as the algebra Gamma_0 = End(G_1 + ... + G_n), whose slots
are the generators: a basis element with left slot i and right slot j is a
morphism G_j -> G_i, and the product c * c' is the composite c o c'.
"""

from __future__ import annotations

import dataclasses
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Any

from envlab.algebra.fd_algebra import FDAlgebra
from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import FDModule, ModMorphism, direct_sum, morphism_matrix
from envlab.algebra.homological import hom_basis as module_hom_basis
from envlab.errors import BadInputError, DimensionMismatchError

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from envlab.algebra.field import Field

logger = logging.getLogger(__name__)

Vector = tuple[Any, ...]


@dataclass(frozen=True)
class EObject:
    """An object of E: an ordered list of generator summands.

    The multiplicity vector is derived; objects built from multiplicities list
    their summands in generator order.
    """

    summands: tuple[int, ...] = ()

    @classmethod
    def from_multiplicities(cls, multiplicities: Sequence[int]) -> EObject:
        """Canonical object with the given multiplicities."""
        if any(m < 0 for m in multiplicities):
            msg = "Multiplicities must be non-negative"
            raise BadInputError(msg)
        return cls(tuple(i for i, m in enumerate(multiplicities) for _ in range(m)))

    @classmethod
    def generator(cls, index: int) -> EObject:
        """A single generator."""
        return cls((index,))

    @property
    def size(self) -> int:
        """Number of summands."""
        return len(self.summands)

    def is_zero(self) -> bool:
        """True for the zero object."""
        return not self.summands

    def multiplicities(self, count: int) -> tuple[int, ...]:
        """Multiplicity of each of ``count`` generators."""
        tally = Counter(self.summands)
        return tuple(tally.get(i, 0) for i in range(count))

    def __add__(self, other: EObject) -> EObject:
        """Direct sum, summands concatenated."""
        return EObject(self.summands + other.summands)

    def label(self, generators: Sequence[str]) -> str:
        """Readable name such as ``P1 + P2^2``."""
        if not self.summands:
            return "0"
        parts = []
        for i, m in enumerate(self.multiplicities(len(generators))):
            if m:
                parts.append(generators[i] if m == 1 else f"{generators[i]}^{m}")
        return " + ".join(parts)

    def to_dict(self, generators: Sequence[str]) -> dict[str, int]:
        """Multiplicity form used in input files."""
        return {generators[i]: m for i, m in enumerate(self.multiplicities(len(generators))) if m}


@dataclass(frozen=True, eq=False)
class AddCategory:
    """E = add(G_1, ..., G_n) with hom data in Gamma_0.

    ``ambient`` and ``modules`` are present when E sits inside the module
    category of an algebra; ``realizations`` then holds the module map of
    every Gamma_0 basis element. ``path_algebra`` is present when E is the
    category of vertex objects of a quiver algebra.
    """

    generators: tuple[str, ...]
    gamma: FDAlgebra
    ambient: FDAlgebra | None = None
    modules: tuple[FDModule, ...] | None = None
    realizations: tuple[ModMorphism, ...] | None = None
    path_algebra: FDAlgebra | None = None
    path_embedding: tuple[int, ...] | None = None
    vertices: tuple[str, ...] | None = None

    @classmethod
    def from_modules(cls, ambient: FDAlgebra, modules: Sequence[FDModule], names: Sequence[str]) -> AddCategory:
        """The additive closure of modules over ``ambient``.

        Endomorphism blocks get the basis {id} + (radical part), so the
        generator idempotents are basis elements.
        """
        if not modules:
            msg = "category.generators: need at least one generator"
            raise BadInputError(msg)
        field_ = ambient.field
        n = len(modules)
        blocks: dict[tuple[int, int], list[ModMorphism]] = {}
        for i in range(n):
            for j in range(n):
                basis = module_hom_basis(modules[j], modules[i])
                blocks[i, j] = _adapted_endomorphisms(modules[i], basis, names[i]) if i == j else basis

        labels: list[str] = []
        realizations: list[ModMorphism] = []
        positions: dict[tuple[int, int], list[int]] = {}
        for i in range(n):
            positions[i, i] = [len(labels)]
            labels.append(f"id[{names[i]}]")
            realizations.append(blocks[i, i][0])
        for i in range(n):
            for j in range(n):
                extra = blocks[i, j][1:] if i == j else blocks[i, j]
                for k, morphism in enumerate(extra):
                    positions.setdefault((i, j), []).append(len(labels))
                    suffix = f"#{k}" if len(extra) > 1 else ""
                    labels.append(f"{names[j]}>{names[i]}{suffix}")
                    realizations.append(morphism)

        products: dict[tuple[int, int], dict[int, Any]] = {}
        index_block = {b: key for key, members in positions.items() for b in members}
        for b, (i, j) in index_block.items():
            for c, (j2, k) in index_block.items():
                if j != j2:
                    continue
                composite = realizations[b] @ realizations[c]
                coords = _coordinates(composite, [realizations[t] for t in positions.get((i, k), [])])
                if coords is None:
                    msg = f"Composite {labels[b]} o {labels[c]} is not in the span of the hom basis"
                    raise DimensionMismatchError(msg)
                terms = {positions[i, k][t]: v for t, v in enumerate(coords) if v}
                if terms:
                    products[b, c] = terms
        gamma = FDAlgebra.from_products(field_, labels, list(names), list(range(n)), products)
        logger.info("Built category add(%s) with dim Gamma = %d", ", ".join(names), gamma.dim)
        return cls(
            generators=tuple(names),
            gamma=gamma,
            ambient=ambient,
            modules=tuple(modules),
            realizations=tuple(realizations),
        )

    @classmethod
    def from_path_algebra(cls, path_algebra: FDAlgebra, labels: Mapping[str, str]) -> AddCategory:
        """Vertex objects of a quiver algebra B: Hom(G_u, G_v) is spanned by the paths u -> v.

        Composition concatenates paths, so Gamma_0 is the corner of B^op on the
        chosen vertices. Generators are ordered by vertex.
        """
        if path_algebra.quiver is None:
            msg = "category.generators: vertex labels need an algebra given by a quiver"
            raise BadInputError(msg)
        unknown = [v for v in labels.values() if v not in path_algebra.slots]
        if unknown:
            msg = f"category.generators: unknown vertices {unknown}"
            raise BadInputError(msg)
        if len(set(labels.values())) != len(labels):
            msg = "category.generators: two labels name the same vertex"
            raise BadInputError(msg)
        ordered = sorted(labels.items(), key=lambda item: path_algebra.slots.index(item[1]))
        kept = [path_algebra.slots.index(v) for _, v in ordered]
        corner, embedding = path_algebra.opposite().corner(kept)
        gamma = dataclasses.replace(corner, slots=tuple(name for name, _ in ordered))
        logger.info("Built path category on %s with dim Gamma = %d", ", ".join(gamma.slots), gamma.dim)
        return cls(
            generators=gamma.slots,
            gamma=gamma,
            path_algebra=path_algebra,
            path_embedding=embedding,
            vertices=tuple(v for _, v in ordered),
        )

    @property
    def field(self) -> Field:
        """Ground field."""
        return self.gamma.field

    @property
    def num_generators(self) -> int:
        """Number of generators."""
        return len(self.generators)

    def generator_object(self, name: str) -> EObject:
        """The object G_name."""
        if name not in self.generators:
            msg = f"Unknown generator {name!r}"
            raise BadInputError(msg)
        return EObject.generator(self.generators.index(name))

    def all_generator_objects(self) -> list[EObject]:
        """Every generator as an object."""
        return [EObject.generator(i) for i in range(self.num_generators)]

    def hom_dimension(self, x: EObject, y: EObject) -> int:
        """dim Hom_E(X, Y)."""
        return sum(self.gamma.block_dimension(t, s) for t in y.summands for s in x.summands)

    def hom_basis(self, x: EObject, y: EObject) -> list[EMorphism]:
        """Single-entry morphisms, one per Gamma_0 basis element of each block."""
        basis = []
        for r, t in enumerate(y.summands):
            for c, s in enumerate(x.summands):
                for b in self.gamma.basis_between(t, s):
                    entries = [[self.gamma.zero_vector() for _ in x.summands] for _ in y.summands]
                    entries[r][c] = self.gamma.unit_vector(b)
                    basis.append(EMorphism(self, x, y, _freeze(entries), name=self.gamma.labels[b]))
        return basis

    @cached_property
    def dual(self) -> AddCategory:
        """The opposite category (cached; the dual of the dual is this category)."""
        gamma = self.gamma.opposite()
        if self.ambient is not None and self.modules is not None and self.realizations is not None:
            ambient = self.ambient.opposite()
            modules = tuple(_dual_module(ambient, m) for m in self.modules)
            realizations = tuple(
                ModMorphism(modules[gamma.right[b]], modules[gamma.left[b]], tuple(x.transpose() for x in r.blocks))
                for b, r in enumerate(self.realizations)
            )
            opposite = AddCategory(self.generators, gamma, ambient, modules, realizations)
        else:
            opposite = AddCategory(self.generators, gamma)
        opposite.__dict__["dual"] = self
        return opposite

    def realize_object(self, x: EObject) -> FDModule:
        """The ambient module of an object."""
        modules = self._require_modules()
        return direct_sum(self.ambient, [modules[g] for g in x.summands])  # type: ignore[arg-type]

    def realize_morphism(self, f: EMorphism) -> ModMorphism:
        """The ambient module map of a morphism."""
        modules = self._require_modules()
        realizations = self.realizations or ()
        grid: list[list[ModMorphism | None]] = []
        for r, t in enumerate(f.target.summands):
            row: list[ModMorphism | None] = []
            for c, s in enumerate(f.source.summands):
                entry = f.entries[r][c]
                component = None
                for b, coeff in enumerate(entry):
                    if coeff:
                        term = realizations[b].scale(coeff)
                        component = term if component is None else component + term
                if component is not None:
                    component = ModMorphism(modules[s], modules[t], component.blocks)
                row.append(component)
            grid.append(row)
        return morphism_matrix(
            [modules[s] for s in f.source.summands], [modules[t] for t in f.target.summands], grid, self.ambient
        )

    def lift_module_map(self, x: EObject, y: EObject, phi: ModMorphism) -> EMorphism:
        """The morphism of E realized by an ambient module map between realizations."""
        modules = self._require_modules()
        realizations = self.realizations or ()
        slots = range(self.ambient.num_slots)  # type: ignore[union-attr]
        row_offsets = _offsets([modules[t] for t in y.summands], slots)
        col_offsets = _offsets([modules[s] for s in x.summands], slots)
        entries = []
        for r, t in enumerate(y.summands):
            row = []
            for c, s in enumerate(x.summands):
                piece = ModMorphism(
                    modules[s],
                    modules[t],
                    tuple(
                        phi.blocks[k].submatrix(
                            range(row_offsets[r][k], row_offsets[r][k] + modules[t].dims[k]),
                            range(col_offsets[c][k], col_offsets[c][k] + modules[s].dims[k]),
                        )
                        for k in slots
                    ),
                )
                members = self.gamma.basis_between(t, s)
                coords = _coordinates(piece, [realizations[b] for b in members])
                if coords is None:
                    msg = f"Module map component {c}->{r} is not a morphism between the generators"
                    raise BadInputError(msg)
                vector = list(self.gamma.zero_vector())
                for b, v in zip(members, coords, strict=True):
                    vector[b] = v
                row.append(tuple(vector))
            entries.append(row)
        return EMorphism(self, x, y, _freeze(entries))

    def path_entry(self, terms: Iterable[tuple[Any, Sequence[str]]], source: int, target: int) -> Vector:
        """The Gamma_0 element of a linear combination of paths from G_source to G_target."""
        if self.path_algebra is None or self.path_embedding is None or self.vertices is None:
            msg = "Path entries need a category built from a quiver algebra"
            raise BadInputError(msg)
        quiver = self.path_algebra.quiver
        out = list(self.gamma.zero_vector())
        for coeff, arrows in terms:
            if arrows:
                path = quiver.check_path(arrows)  # type: ignore[union-attr]
                if (path.source, path.target) != (self.vertices[source], self.vertices[target]):
                    msg = (
                        f"Path {'.'.join(arrows)} does not run from {self.vertices[source]} "
                        f"to {self.vertices[target]}"
                    )
                    raise BadInputError(msg)
            elif source != target:
                msg = "A trivial path only connects a generator to itself"
                raise BadInputError(msg)
            element = self.path_algebra.path_element(arrows, self.vertices[source])
            for k, b in enumerate(self.path_embedding):
                out[k] += coeff * element[b]
        return tuple(out)

    def _require_modules(self) -> tuple[FDModule, ...]:
        if self.ambient is None or self.modules is None:
            msg = "Category has no ambient module realization"
            raise BadInputError(msg)
        return self.modules

    def to_dict(self) -> dict[str, Any]:
        """Canonical serialization of the hom data (and realization, when present)."""
        data: dict[str, Any] = {"generators": list(self.generators), "gamma": self.gamma.to_dict()}
        if self.ambient is not None and self.modules is not None:
            data["ambient"] = self.ambient.to_dict()
            data["modules"] = {
                name: {
                    "dims": list(m.dims),
                    "actions": {self.ambient.labels[b]: m.actions[b].to_json() for b in self.ambient.radical_basis},
                }
                for name, m in zip(self.generators, self.modules, strict=True)
            }
        return data


@dataclass(frozen=True, eq=False)
class EMorphism:
    """A morphism of E as a matrix of Gamma_0 elements.

    ``entries[r][c]`` is the component from source summand c to target
    summand r, an element of e_t Gamma_0 e_s for t, s the generators of those
    summands.
    """

    category: AddCategory
    source: EObject
    target: EObject
    entries: tuple[tuple[Vector, ...], ...]
    name: str = field(default="", compare=False)

    @classmethod
    def identity(cls, category: AddCategory, x: EObject) -> EMorphism:
        """Identity of X."""
        gamma = category.gamma
        entries = [
            [gamma.unit_vector(gamma.idempotents[s]) if r == c else gamma.zero_vector() for c in range(x.size)]
            for r, s in enumerate(x.summands)
        ]
        return cls(category, x, x, _freeze(entries), name="id")

    @classmethod
    def zero(cls, category: AddCategory, x: EObject, y: EObject) -> EMorphism:
        """Zero morphism X -> Y."""
        zero = category.gamma.zero_vector()
        return cls(category, x, y, tuple(tuple(zero for _ in x.summands) for _ in y.summands), name="0")

    @classmethod
    def hstack(cls, morphisms: Sequence[EMorphism]) -> EMorphism:
        """[f_1, ..., f_k]: X_1 + ... + X_k -> Y."""
        first = morphisms[0]
        if any(m.target != first.target for m in morphisms):
            msg = "hstack needs a common target"
            raise DimensionMismatchError(msg)
        source = EObject(sum((m.source.summands for m in morphisms), ()))
        entries = tuple(sum((m.entries[r] for m in morphisms), ()) for r in range(first.target.size))
        return cls(first.category, source, first.target, entries)

    @classmethod
    def vstack(cls, morphisms: Sequence[EMorphism]) -> EMorphism:
        """(f_1; ...; f_k): X -> Y_1 + ... + Y_k."""
        first = morphisms[0]
        if any(m.source != first.source for m in morphisms):
            msg = "vstack needs a common source"
            raise DimensionMismatchError(msg)
        target = EObject(sum((m.target.summands for m in morphisms), ()))
        entries = sum((m.entries for m in morphisms), ())
        return cls(first.category, first.source, target, entries)

    @classmethod
    def direct_sum(cls, morphisms: Sequence[EMorphism]) -> EMorphism:
        """Block-diagonal sum f_1 + ... + f_k."""
        category = morphisms[0].category
        zero = category.gamma.zero_vector()
        source = EObject(sum((m.source.summands for m in morphisms), ()))
        target = EObject(sum((m.target.summands for m in morphisms), ()))
        rows = []
        for i, m in enumerate(morphisms):
            for r in range(m.target.size):
                row: list[Vector] = []
                for j, other in enumerate(morphisms):
                    row.extend(m.entries[r] if i == j else (zero,) * other.source.size)
                rows.append(row)
        names = [m.name for m in morphisms]
        return cls(category, source, target, _freeze(rows), name=" + ".join(names) if all(names) else "")

    @property
    def gamma(self) -> FDAlgebra:
        """Hom algebra of the category."""
        return self.category.gamma

    def renamed(self, name: str) -> EMorphism:
        """Same morphism, new display name."""
        return dataclasses.replace(self, name=name)

    def __matmul__(self, other: EMorphism) -> EMorphism:
        """Composite ``self`` after ``other``."""
        if other.target != self.source:
            msg = f"Cannot compose {self.describe()} after {other.describe()}"
            raise DimensionMismatchError(msg)
        gamma = self.gamma
        entries = []
        for r in range(self.target.size):
            row = []
            for c in range(other.source.size):
                acc = gamma.zero_vector()
                for s in range(self.source.size):
                    left, right = self.entries[r][s], other.entries[s][c]
                    if any(left) and any(right):
                        acc = gamma.add(acc, gamma.multiply(left, right))
                row.append(acc)
            entries.append(row)
        return EMorphism(self.category, other.source, self.target, _freeze(entries))

    def _combine(self, other: EMorphism, sign: int) -> EMorphism:
        if (self.source, self.target) != (other.source, other.target):
            msg = "Morphisms are not parallel"
            raise DimensionMismatchError(msg)
        gamma = self.gamma
        entries = [
            [gamma.add(a, gamma.scale(self.category.field(sign), b)) for a, b in zip(ra, rb, strict=True)]
            for ra, rb in zip(self.entries, other.entries, strict=True)
        ]
        return EMorphism(self.category, self.source, self.target, _freeze(entries))

    def __add__(self, other: EMorphism) -> EMorphism:
        """Sum of parallel morphisms."""
        return self._combine(other, 1)

    def __sub__(self, other: EMorphism) -> EMorphism:
        """Difference of parallel morphisms."""
        return self._combine(other, -1)

    def __neg__(self) -> EMorphism:
        """Negation."""
        return self.scale(self.category.field(-1))

    def scale(self, c: Any) -> EMorphism:  # noqa: ANN401
        """Scalar multiple."""
        entries = [[self.gamma.scale(c, a) for a in row] for row in self.entries]
        return EMorphism(self.category, self.source, self.target, _freeze(entries))

    def is_zero(self) -> bool:
        """True for the zero morphism."""
        return not any(any(a) for row in self.entries for a in row)

    def is_identity(self) -> bool:
        """True for the identity of its source."""
        return self.source == self.target and self.same_as(EMorphism.identity(self.category, self.source))

    def same_as(self, other: EMorphism) -> bool:
        """Equal source, target and entries."""
        return self.key() == other.key()

    def key(self) -> tuple[Any, ...]:
        """Hashable identity used for deduplication."""
        return self.source.summands, self.target.summands, self.entries

    def flatten(self) -> tuple[Any, ...]:
        """Block coordinates of all entries, row by row."""
        gamma = self.gamma
        return tuple(
            a
            for r, t in enumerate(self.target.summands)
            for c, s in enumerate(self.source.summands)
            for a in gamma.coordinates(self.entries[r][c], t, s)
        )

    def rows(self, indices: Iterable[int]) -> EMorphism:
        """Restrict to the given target summands."""
        picked = list(indices)
        target = EObject(tuple(self.target.summands[r] for r in picked))
        return EMorphism(self.category, self.source, target, tuple(self.entries[r] for r in picked))

    def columns(self, indices: Iterable[int]) -> EMorphism:
        """Restrict to the given source summands."""
        picked = list(indices)
        source = EObject(tuple(self.source.summands[c] for c in picked))
        entries = tuple(tuple(row[c] for c in picked) for row in self.entries)
        return EMorphism(self.category, source, self.target, entries)

    def opposite(self) -> EMorphism:
        """The same morphism read in the opposite category."""
        entries = tuple(tuple(self.entries[r][c] for r in range(self.target.size)) for c in range(self.source.size))
        return EMorphism(self.category.dual, self.target, self.source, entries, name=self.name)

    def describe(self) -> str:
        """Short human-readable description."""
        generators = self.category.generators
        arrow = f"{self.source.label(generators)} -> {self.target.label(generators)}"
        return f"{self.name}: {arrow}" if self.name else arrow

    def to_dict(self) -> dict[str, Any]:
        """Canonical serialization with Gamma_0 labels."""
        gamma = self.gamma
        generators = self.category.generators
        return {
            "src": [generators[s] for s in self.source.summands],
            "tgt": [generators[t] for t in self.target.summands],
            "entries": [
                [{gamma.labels[b]: self.category.field.to_json(v) for b, v in enumerate(entry) if v} for entry in row]
                for row in self.entries
            ],
        }


def combination(morphisms: Sequence[EMorphism], target: EMorphism) -> tuple[Any, ...] | None:
    """Coefficients expressing ``target`` in the span of parallel ``morphisms``, or None."""
    width = len(target.flatten())
    if width == 0:
        return tuple(target.category.field.zero for _ in morphisms)
    if not morphisms:
        return () if target.is_zero() else None
    field_ = target.category.field
    system = Matrix.from_columns(field_, [m.flatten() for m in morphisms], width)
    solution = system.solve(Matrix.from_columns(field_, [target.flatten()], width))
    return None if solution is None else solution.column(0)


def factor_through(d: EMorphism, f: EMorphism) -> EMorphism | None:
    """Some beta with ``f @ beta == d`` (d and f share a target), or None."""
    category = f.category
    basis = category.hom_basis(d.source, f.source)
    coeffs = combination([f @ b for b in basis], d)
    if coeffs is None:
        return None
    beta = EMorphism.zero(category, d.source, f.source)
    for b, coeff in zip(basis, coeffs, strict=True):
        if coeff:
            beta = beta + b.scale(coeff)
    return beta


def factor_after(h: EMorphism, g: EMorphism) -> EMorphism | None:
    """Some alpha with ``alpha @ g == h`` (g and h share a source), or None."""
    alpha = factor_through(h.opposite(), g.opposite())
    return None if alpha is None else _from_opposite(alpha, g.category)


def _from_opposite(f: EMorphism, category: AddCategory) -> EMorphism:
    back = f.opposite()
    return EMorphism(category, back.source, back.target, back.entries, name=f.name)


def _freeze(rows: Sequence[Sequence[Vector]]) -> tuple[tuple[Vector, ...], ...]:
    return tuple(tuple(row) for row in rows)


def _offsets(modules: Sequence[FDModule], slots: range) -> list[list[int]]:
    offsets = []
    running = [0 for _ in slots]
    for m in modules:
        offsets.append(list(running))
        running = [running[k] + m.dims[k] for k in slots]
    return offsets


def _coordinates(target: ModMorphism, basis: Sequence[ModMorphism]) -> tuple[Any, ...] | None:
    width = len(target.flatten())
    field_ = target.field
    if width == 0:
        return tuple(field_.zero for _ in basis)
    if not basis:
        return () if target.is_zero() else None
    system = Matrix.from_columns(field_, [b.flatten() for b in basis], width)
    solution = system.solve(Matrix.from_columns(field_, [target.flatten()], width))
    return None if solution is None else solution.column(0)


def _adapted_endomorphisms(module: FDModule, basis: Sequence[ModMorphism], name: str) -> list[ModMorphism]:
    """Rewrite an End basis as identity followed by trace-free (radical) elements."""
    identity = ModMorphism.identity(module)
    if len(basis) == 1:
        return [identity]
    field_ = module.field
    size = field_(module.dim)
    if not size:
        msg = f"category.generators.{name}: dim End > 1 needs dim {module.dim} invertible in {field_}"
        logger.error(msg)
        raise BadInputError(msg)
    trace_free = []
    for phi in basis:
        trace = field_.zero
        for block in phi.blocks:
            for i in range(block.nrows):
                trace += block.rows[i][i]
        trace_free.append(phi - identity.scale(trace / size))
    width = len(identity.flatten())
    _, pivots = Matrix.from_columns(field_, [p.flatten() for p in trace_free], width).rref()
    radical = [trace_free[p] for p in pivots]
    if len(radical) != len(basis) - 1:
        msg = f"category.generators.{name}: endomorphism ring is not local"
        logger.error(msg)
        raise BadInputError(msg)
    return [identity, *radical]


def _dual_module(algebra: FDAlgebra, module: FDModule) -> FDModule:
    return FDModule(algebra, module.dims, tuple(a.transpose() for a in module.actions), module.name)
