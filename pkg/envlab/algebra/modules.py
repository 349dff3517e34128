"""Finite-dimensional right modules and their morphisms.

A module stores one vector space per slot of its algebra. Basis element b
acts by a matrix from slot ``left(b)`` to slot ``right(b)`` on column
vectors, so ``m * (b c)`` corresponds to ``action(c) @ action(b)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from envlab.algebra.matrix import Matrix
from envlab.algebra.quiver import basis_paths
from envlab.errors import BadInputError, DimensionMismatchError

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from envlab.algebra.fd_algebra import FDAlgebra
    from envlab.algebra.field import Field

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FDModule:
    """A finite-dimensional right module, one block per slot."""

    algebra: FDAlgebra
    dims: tuple[int, ...]
    actions: tuple[Matrix, ...]
    name: str = ""

    @classmethod
    def build(
        cls,
        algebra: FDAlgebra,
        dims: Sequence[int],
        actions: Sequence[Matrix],
        name: str = "",
        *,
        check: bool = True,
    ) -> FDModule:
        """Assemble a module; with ``check`` the action is verified against the structure constants."""
        module = cls(algebra, tuple(dims), tuple(actions), name)
        if check:
            module.validate()
        return module

    @property
    def field(self) -> Field:
        """Ground field."""
        return self.algebra.field

    @property
    def dim(self) -> int:
        """Total dimension."""
        return sum(self.dims)

    def is_zero(self) -> bool:
        """True for the zero module."""
        return self.dim == 0

    def dimension_vector(self) -> dict[str, int]:
        """Slot name to dimension."""
        return dict(zip(self.algebra.slots, self.dims, strict=True))

    def action_of(self, element: Sequence[Any]) -> Matrix:
        """Matrix of an arbitrary homogeneous element of e_l A e_r acting from slot l to slot r."""
        support = [b for b, c in enumerate(element) if c]
        if not support:
            msg = "action_of needs a nonzero element"
            raise BadInputError(msg)
        left, right = self.algebra.left[support[0]], self.algebra.right[support[0]]
        out = Matrix.zeros(self.field, self.dims[right], self.dims[left])
        for b in support:
            if (self.algebra.left[b], self.algebra.right[b]) != (left, right):
                msg = "action_of needs a homogeneous element"
                raise BadInputError(msg)
            out = out + self.actions[b].scale(element[b])
        return out

    def validate(self) -> None:
        """Check shapes, idempotent projections and compatibility with products."""
        algebra = self.algebra
        if len(self.dims) != algebra.num_slots or len(self.actions) != algebra.dim:
            msg = f"Module {self.name or '<anonymous>'} does not match its algebra"
            raise DimensionMismatchError(msg)
        for b, matrix in enumerate(self.actions):
            expected = (self.dims[algebra.right[b]], self.dims[algebra.left[b]])
            if matrix.shape != expected:
                msg = f"Action of {algebra.labels[b]} has shape {matrix.shape}, expected {expected}"
                raise DimensionMismatchError(msg)
        for s, e in enumerate(algebra.idempotents):
            if self.actions[e] != Matrix.identity(self.field, self.dims[s]):
                msg = f"Idempotent {algebra.labels[e]} does not act as the identity of its slot"
                raise BadInputError(msg)
        for b in algebra.radical_basis:
            for c in algebra.radical_basis:
                if algebra.right[b] != algebra.left[c]:
                    continue
                target = Matrix.zeros(self.field, self.dims[algebra.right[c]], self.dims[algebra.left[b]])
                for k, coeff in algebra.multiply_basis(b, c):
                    target = target + self.actions[k].scale(coeff)
                if self.actions[c] @ self.actions[b] != target:
                    where = self.name or "<anonymous>"
                    msg = f"Module {where}: action does not respect {algebra.labels[b]} * {algebra.labels[c]}"
                    logger.error(msg)
                    raise BadInputError(msg)

    def to_dict(self) -> dict[str, Any]:
        """Input-schema form (arrow matrices for quiver algebras, every action otherwise)."""
        dims = {slot: d for slot, d in zip(self.algebra.slots, self.dims, strict=True)}
        if self.algebra.quiver is not None:
            paths = basis_paths(self.algebra)
            arrows = {
                self.algebra.labels[b]: self.actions[b].to_json()
                for b, path in enumerate(paths)
                if len(path) == 1
            }
            return {"dims": dims, "arrows": arrows}
        actions = {self.algebra.labels[b]: self.actions[b].to_json() for b in self.algebra.radical_basis}
        return {"dims": dims, "actions": actions}


@dataclass(frozen=True, eq=False)
class ModMorphism:
    """A module homomorphism given by one matrix per slot."""

    source: FDModule
    target: FDModule
    blocks: tuple[Matrix, ...]

    @classmethod
    def identity(cls, module: FDModule) -> ModMorphism:
        """Identity morphism."""
        return cls(module, module, tuple(Matrix.identity(module.field, d) for d in module.dims))

    @classmethod
    def zero(cls, source: FDModule, target: FDModule) -> ModMorphism:
        """Zero morphism."""
        blocks = tuple(Matrix.zeros(source.field, t, s) for s, t in zip(source.dims, target.dims, strict=True))
        return cls(source, target, blocks)

    @property
    def field(self) -> Field:
        """Ground field."""
        return self.source.field

    def check(self) -> None:
        """Verify block shapes and commutation with every radical generator."""
        algebra = self.source.algebra
        if algebra is not self.target.algebra:
            msg = "Morphism between modules over different algebras"
            raise DimensionMismatchError(msg)
        for s, block in enumerate(self.blocks):
            if block.shape != (self.target.dims[s], self.source.dims[s]):
                msg = f"Block {algebra.slots[s]} has shape {block.shape}"
                raise DimensionMismatchError(msg)
        for b in algebra.radical_generators:
            lhs = self.target.actions[b] @ self.blocks[algebra.left[b]]
            rhs = self.blocks[algebra.right[b]] @ self.source.actions[b]
            if lhs != rhs:
                msg = f"Morphism does not commute with {algebra.labels[b]}"
                raise BadInputError(msg)

    def __matmul__(self, other: ModMorphism) -> ModMorphism:
        """Composition ``self`` after ``other``."""
        if other.target.dims != self.source.dims:
            msg = "Morphisms are not composable"
            raise DimensionMismatchError(msg)
        blocks = tuple(a @ b for a, b in zip(self.blocks, other.blocks, strict=True))
        return ModMorphism(other.source, self.target, blocks)

    def __add__(self, other: ModMorphism) -> ModMorphism:
        """Sum of parallel morphisms."""
        blocks = tuple(a + b for a, b in zip(self.blocks, other.blocks, strict=True))
        return ModMorphism(self.source, self.target, blocks)

    def __sub__(self, other: ModMorphism) -> ModMorphism:
        """Difference of parallel morphisms."""
        blocks = tuple(a - b for a, b in zip(self.blocks, other.blocks, strict=True))
        return ModMorphism(self.source, self.target, blocks)

    def __neg__(self) -> ModMorphism:
        """Negation."""
        return ModMorphism(self.source, self.target, tuple(-a for a in self.blocks))

    def scale(self, c: Any) -> ModMorphism:  # noqa: ANN401
        """Scalar multiple."""
        return ModMorphism(self.source, self.target, tuple(a.scale(c) for a in self.blocks))

    def is_zero(self) -> bool:
        """True for the zero morphism."""
        return all(block.is_zero() for block in self.blocks)

    def ranks(self) -> tuple[int, ...]:
        """Rank per slot."""
        return tuple(block.rank() for block in self.blocks)

    def rank(self) -> int:
        """Total rank."""
        return sum(self.ranks())

    def is_injective(self) -> bool:
        """Injective on every slot."""
        return all(r == d for r, d in zip(self.ranks(), self.source.dims, strict=True))

    def is_surjective(self) -> bool:
        """Surjective on every slot."""
        return all(r == d for r, d in zip(self.ranks(), self.target.dims, strict=True))

    def flatten(self) -> tuple[Any, ...]:
        """All block entries, slot by slot."""
        return tuple(a for block in self.blocks for a in block.flatten())

    def same_as(self, other: ModMorphism) -> bool:
        """Entrywise equality of blocks."""
        return self.blocks == other.blocks

    def to_json(self) -> dict[str, Any]:
        """Per-slot matrices."""
        return {slot: block.to_json() for slot, block in zip(self.source.algebra.slots, self.blocks, strict=True)}


def from_representation(
    algebra: FDAlgebra,
    dims: Mapping[str, int],
    arrows: Mapping[str, Sequence[Sequence[Any]]],
    name: str = "",
) -> FDModule:
    """A module over a quiver algebra from vertex dimensions and arrow matrices.

    Each arrow matrix has ``dims[target]`` rows and ``dims[source]`` columns;
    missing arrows act by zero. The relations are checked through
    :meth:`FDModule.validate`.
    """
    if algebra.quiver is None:
        msg = f"modules.{name}: representations need an algebra given by a quiver"
        raise BadInputError(msg)
    quiver = algebra.quiver
    field = algebra.field
    unknown = set(dims) - set(quiver.vertices)
    if unknown:
        msg = f"modules.{name}.dims: unknown vertices {sorted(unknown)}"
        raise BadInputError(msg)
    vertex_dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
    if any(d < 0 for d in vertex_dims.values()):
        msg = f"modules.{name}.dims: dimensions must be non-negative"
        raise BadInputError(msg)
    matrices: dict[str, Matrix] = {}
    for arrow in quiver.arrows:
        shape = (vertex_dims[arrow.target], vertex_dims[arrow.source])
        if arrow.name not in arrows:
            matrices[arrow.name] = Matrix.zeros(field, *shape)
            continue
        try:
            matrix = Matrix.from_rows(field, arrows[arrow.name], ncols=shape[1])
        except (DimensionMismatchError, TypeError) as e:
            msg = f"modules.{name}.arrows.{arrow.name}: expected {shape[0]}x{shape[1]} matrix"
            raise BadInputError(msg) from e
        if matrix.shape != shape:
            msg = f"modules.{name}.arrows.{arrow.name}: expected {shape[0]}x{shape[1]} matrix"
            raise BadInputError(msg)
        matrices[arrow.name] = matrix
    extra = set(arrows) - set(matrices)
    if extra:
        msg = f"modules.{name}.arrows: unknown arrows {sorted(extra)}"
        raise BadInputError(msg)
    slot_dims = tuple(vertex_dims[v] for v in algebra.slots)
    actions = []
    for b, path in enumerate(basis_paths(algebra)):
        if not path:
            actions.append(Matrix.identity(field, slot_dims[algebra.left[b]]))
            continue
        matrix = matrices[path[0]]
        for arrow_name in path[1:]:
            matrix = matrices[arrow_name] @ matrix
        actions.append(matrix)
    return FDModule.build(algebra, slot_dims, actions, name)


def from_actions(
    algebra: FDAlgebra,
    dims: Mapping[str, int],
    actions: Mapping[str, Sequence[Sequence[Any]]],
    name: str = "",
) -> FDModule:
    """A module over a structure-constant algebra from the action of each radical basis element."""
    field = algebra.field
    slot_dims = tuple(int(dims.get(s, 0)) for s in algebra.slots)
    unknown = set(actions) - {algebra.labels[b] for b in algebra.radical_basis}
    if unknown:
        msg = f"modules.{name}.actions: unknown or idempotent basis labels {sorted(unknown)}"
        raise BadInputError(msg)
    matrices = [Matrix.identity(field, slot_dims[algebra.left[b]]) for b in range(algebra.dim)]
    for b in algebra.radical_basis:
        shape = (slot_dims[algebra.right[b]], slot_dims[algebra.left[b]])
        label = algebra.labels[b]
        matrices[b] = Matrix.from_rows(field, actions[label], ncols=shape[1]) if label in actions else Matrix.zeros(
            field, *shape
        )
        if matrices[b].shape != shape:
            msg = f"modules.{name}.actions.{label}: expected {shape[0]}x{shape[1]} matrix"
            raise BadInputError(msg)
    return FDModule.build(algebra, slot_dims, matrices, name)


def projective(algebra: FDAlgebra, slot: int) -> FDModule:
    """The indecomposable projective e_slot A."""
    field = algebra.field
    dims = tuple(algebra.block_dimension(slot, i) for i in range(algebra.num_slots))
    actions = []
    for c in range(algebra.dim):
        left, right = algebra.left[c], algebra.right[c]
        rows_basis = algebra.basis_between(slot, right)
        position = {k: r for r, k in enumerate(rows_basis)}
        columns = []
        for b in algebra.basis_between(slot, left):
            column = [field.zero] * len(rows_basis)
            for k, coeff in algebra.multiply_basis(b, c):
                column[position[k]] += coeff
            columns.append(column)
        actions.append(Matrix.from_columns(field, columns, len(rows_basis)))
    return FDModule(algebra, dims, tuple(actions), f"P[{algebra.slots[slot]}]")


def simple(algebra: FDAlgebra, slot: int) -> FDModule:
    """The one-dimensional simple module at ``slot``."""
    field = algebra.field
    dims = tuple(1 if i == slot else 0 for i in range(algebra.num_slots))
    actions = tuple(
        Matrix.identity(field, 1)
        if algebra.idempotents[slot] == b
        else Matrix.zeros(field, dims[algebra.right[b]], dims[algebra.left[b]])
        for b in range(algebra.dim)
    )
    return FDModule(algebra, dims, actions, f"S[{algebra.slots[slot]}]")


def zero_module(algebra: FDAlgebra) -> FDModule:
    """The zero module."""
    dims = (0,) * algebra.num_slots
    actions = tuple(Matrix.zeros(algebra.field, 0, 0) for _ in range(algebra.dim))
    return FDModule(algebra, dims, actions, "0")


def direct_sum(algebra: FDAlgebra, modules: Sequence[FDModule]) -> FDModule:
    """Direct sum, summands in the given order."""
    if not modules:
        return zero_module(algebra)
    if any(m.algebra is not algebra for m in modules):
        msg = "Direct sum of modules over different algebras"
        raise DimensionMismatchError(msg)
    dims = tuple(sum(m.dims[s] for m in modules) for s in range(algebra.num_slots))
    actions = tuple(
        Matrix.block_diagonal(algebra.field, [m.actions[b] for m in modules]) for b in range(algebra.dim)
    )
    return FDModule(algebra, dims, actions, " + ".join(m.name for m in modules if m.name))


def morphism_matrix(
    sources: Sequence[FDModule],
    targets: Sequence[FDModule],
    grid: Sequence[Sequence[ModMorphism | None]],
    algebra: FDAlgebra,
) -> ModMorphism:
    """The morphism ``direct_sum(sources) -> direct_sum(targets)`` with ``grid[t][s]`` as components.

    ``None`` entries stand for zero components.
    """
    source, target = direct_sum(algebra, sources), direct_sum(algebra, targets)
    field = algebra.field
    blocks = []
    for slot in range(algebra.num_slots):
        rows = []
        for t, tgt in enumerate(targets):
            pieces = []
            for s, src in enumerate(sources):
                component = grid[t][s]
                pieces.append(
                    component.blocks[slot]
                    if component is not None
                    else Matrix.zeros(field, tgt.dims[slot], src.dims[slot])
                )
            row = pieces[0].hstack(*pieces[1:]) if pieces else Matrix.zeros(field, tgt.dims[slot], 0)
            rows.append(row)
        block = rows[0].vstack(*rows[1:]) if rows else Matrix.zeros(field, 0, source.dims[slot])
        blocks.append(block)
    return ModMorphism(source, target, tuple(blocks))
