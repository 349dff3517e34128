"""Finitely presented functors on E as Gamma_0-modules.

A functor F is stored as the module with slot j equal to F(G_j); a basis
element c: G_j -> G_i of Gamma_0 acts from slot i to slot j by F(c). The
representable functor Hom(-, X) is then a sum of indecomposable projectives.
"""

from __future__ import annotations

import logging
import threading
import weakref
from typing import TYPE_CHECKING, Any

from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import FDModule, ModMorphism, direct_sum, projective
from envlab.category.add_category import AddCategory, EMorphism, EObject
from envlab.errors import DimensionMismatchError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from envlab.algebra.fd_algebra import FDAlgebra

logger = logging.getLogger(__name__)

_contexts: weakref.WeakKeyDictionary[AddCategory, GammaContext] = weakref.WeakKeyDictionary()
_contexts_lock = threading.Lock()


def projective_sum(algebra: FDAlgebra, summands: Sequence[int], cache: dict[int, FDModule] | None = None) -> FDModule:
    """Direct sum of e_s A over the listed slots."""
    pieces = []
    for s in summands:
        if cache is not None:
            if s not in cache:
                cache[s] = projective(algebra, s)
            pieces.append(cache[s])
        else:
            pieces.append(projective(algebra, s))
    return direct_sum(algebra, pieces)


def _summand_offsets(algebra: FDAlgebra, summands: Sequence[int], slot: int) -> list[int]:
    offsets, running = [], 0
    for s in summands:
        offsets.append(running)
        running += algebra.block_dimension(s, slot)
    return offsets


def projective_sum_map(
    algebra: FDAlgebra,
    source: Sequence[int],
    target: Sequence[int],
    entries: Sequence[Sequence[tuple[Any, ...]]],
    modules: tuple[FDModule, FDModule] | None = None,
) -> ModMorphism:
    """The map between projective sums given by left multiplication with ``entries[t][s]``."""
    src, tgt = modules if modules is not None else (projective_sum(algebra, source), projective_sum(algebra, target))
    field = algebra.field
    blocks = []
    for j in range(algebra.num_slots):
        rows_at = _summand_offsets(algebra, target, j)
        columns = []
        for r, s in enumerate(source):
            for b in algebra.basis_between(s, j):
                column = [field.zero] * tgt.dims[j]
                for t_index, t in enumerate(target):
                    entry = entries[t_index][r]
                    if not any(entry):
                        continue
                    product = algebra.multiply(entry, algebra.unit_vector(b))
                    for k, coeff in enumerate(algebra.coordinates(product, t, j)):
                        column[rows_at[t_index] + k] += coeff
                columns.append(column)
        blocks.append(Matrix.from_columns(field, columns, tgt.dims[j]))
    return ModMorphism(src, tgt, tuple(blocks))


def projective_preimage(
    algebra: FDAlgebra,
    phi: ModMorphism,
    source: Sequence[int],
    target: Sequence[int],
) -> list[list[tuple[Any, ...]]]:
    """Entries of the unique map between projective sums equal to ``phi``: evaluate at the idempotents."""
    entries = [[algebra.zero_vector() for _ in source] for _ in target]
    for r, s in enumerate(source):
        idempotent = algebra.idempotents[s]
        block = phi.blocks[s]
        column_index = _summand_offsets(algebra, source, s)[r] + algebra.basis_between(s, s).index(idempotent)
        column = block.column(column_index)
        rows_at = _summand_offsets(algebra, target, s)
        for t_index, t in enumerate(target):
            width = algebra.block_dimension(t, s)
            coords = column[rows_at[t_index] : rows_at[t_index] + width]
            entries[t_index][r] = algebra.from_coordinates(coords, t, s)
    return entries


class GammaContext:
    """Yoneda embedding of one category, with cached representables."""

    def __init__(self, category: AddCategory) -> None:
        """Bind to a category."""
        self.category = category
        self.gamma = category.gamma
        self._projectives: dict[int, FDModule] = {}
        self._objects: dict[tuple[int, ...], FDModule] = {}
        self._lock = threading.Lock()

    def yoneda(self, x: EObject) -> FDModule:
        """The representable functor Hom(-, X)."""
        with self._lock:
            if x.summands not in self._objects:
                self._objects[x.summands] = projective_sum(self.gamma, x.summands, self._projectives)
            return self._objects[x.summands]

    def yoneda_map(self, f: EMorphism) -> ModMorphism:
        """Hom(-, f): composition with f."""
        if f.category is not self.category:
            msg = "Morphism belongs to a different category"
            raise DimensionMismatchError(msg)
        modules = (self.yoneda(f.source), self.yoneda(f.target))
        return projective_sum_map(self.gamma, f.source.summands, f.target.summands, f.entries, modules)

    def yoneda_preimage(self, phi: ModMorphism, source: EObject, target: EObject) -> EMorphism:
        """The morphism f with Hom(-, f) = phi."""
        entries = projective_preimage(self.gamma, phi, source.summands, target.summands)
        return EMorphism(self.category, source, target, tuple(tuple(row) for row in entries))

    def evaluate(self, module: FDModule, x: EObject) -> int:
        """dim F(X)."""
        return sum(module.dims[g] for g in x.summands)

    def evaluate_map(self, module: FDModule, f: EMorphism) -> Matrix:
        """F(f): F(Y) -> F(X) for f: X -> Y, with block (r, s) the action of f[s][r]."""
        field = self.gamma.field
        rows = []
        for r, s_gen in enumerate(f.source.summands):
            pieces = []
            for s, t_gen in enumerate(f.target.summands):
                entry = f.entries[s][r]
                pieces.append(
                    module.action_of(entry)
                    if any(entry)
                    else Matrix.zeros(field, module.dims[s_gen], module.dims[t_gen])
                )
            if pieces:
                rows.append(pieces[0].hstack(*pieces[1:]))
            else:
                rows.append(Matrix.zeros(field, module.dims[s_gen], 0))
        total_cols = sum(module.dims[t] for t in f.target.summands)
        if not rows:
            return Matrix.zeros(field, 0, total_cols)
        return rows[0].vstack(*rows[1:])


def gamma_context(category: AddCategory) -> GammaContext:
    """The shared context of a category."""
    with _contexts_lock:
        context = _contexts.get(category)
        if context is None:
            context = GammaContext(category)
            _contexts[category] = context
        return context
