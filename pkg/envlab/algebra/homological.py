"""Hom spaces, kernels and cokernels, filtrations, projective covers and Ext^1."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import FDModule, ModMorphism, direct_sum, projective
from envlab.errors import DimensionMismatchError

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

SlotBases = list[Matrix]


@dataclass(frozen=True)
class ProjectiveCover:
    """A projective cover: the projective, the epimorphism, and the slot of each summand."""

    module: FDModule
    epi: ModMorphism
    summands: tuple[int, ...]


def _same_algebra(m: FDModule, n: FDModule) -> None:
    if m.algebra is not n.algebra:
        msg = "Modules live over different algebras"
        raise DimensionMismatchError(msg)


def hom_basis(m: FDModule, n: FDModule) -> list[ModMorphism]:
    """A basis of Hom(M, N), in the order produced by the nullspace of the commuting system."""
    _same_algebra(m, n)
    algebra = m.algebra
    field = algebra.field
    offsets = []
    total = 0
    for s in range(algebra.num_slots):
        offsets.append(total)
        total += n.dims[s] * m.dims[s]

    def var(slot: int, i: int, j: int) -> int:
        return offsets[slot] + i * m.dims[slot] + j

    rows = []
    zero = field.zero
    for b in algebra.radical_generators:
        left, right = algebra.left[b], algebra.right[b]
        nb, mb = n.actions[b], m.actions[b]
        # N_b F_left - F_right M_b = 0, one equation per entry
        for p in range(n.dims[right]):
            for q in range(m.dims[left]):
                row = [zero] * total
                for k in range(n.dims[left]):
                    coeff = nb.rows[p][k]
                    if coeff:
                        row[var(left, k, q)] += coeff
                for k in range(m.dims[right]):
                    coeff = mb.rows[k][q]
                    if coeff:
                        row[var(right, p, k)] -= coeff
                if any(row):
                    rows.append(tuple(row))
    system = Matrix(field, len(rows), total, tuple(rows))
    basis = []
    for vector in system.nullspace():
        blocks = []
        for s in range(algebra.num_slots):
            entries = vector[offsets[s] : offsets[s] + n.dims[s] * m.dims[s]]
            block_rows = tuple(tuple(entries[i * m.dims[s] : (i + 1) * m.dims[s]]) for i in range(n.dims[s]))
            blocks.append(Matrix(field, n.dims[s], m.dims[s], block_rows))
        basis.append(ModMorphism(m, n, tuple(blocks)))
    return basis


def _right_inverse(matrix: Matrix) -> Matrix:
    solution = matrix.solve(Matrix.identity(matrix.field, matrix.nrows))
    if solution is None:
        msg = "Matrix has no right inverse"
        raise DimensionMismatchError(msg)
    return solution


def submodule(module: FDModule, bases: Sequence[Matrix], name: str = "") -> tuple[FDModule, ModMorphism]:
    """The submodule spanned per slot by the columns of ``bases`` (assumed closed and independent)."""
    algebra = module.algebra
    actions = []
    for b in range(algebra.dim):
        left, right = algebra.left[b], algebra.right[b]
        image = module.actions[b] @ bases[left]
        restricted = bases[right].solve(image)
        if restricted is None:
            msg = f"Subspace is not closed under {algebra.labels[b]}"
            raise DimensionMismatchError(msg)
        actions.append(restricted)
    sub = FDModule(algebra, tuple(basis.ncols for basis in bases), tuple(actions), name)
    return sub, ModMorphism(sub, module, tuple(bases))


def quotient(module: FDModule, bases: Sequence[Matrix], name: str = "") -> tuple[FDModule, ModMorphism]:
    """The quotient by the submodule spanned per slot by ``bases``, with its projection."""
    algebra = module.algebra
    projections = [basis.left_kernel_matrix() for basis in bases]
    sections = [_right_inverse(q) for q in projections]
    actions = []
    for b in range(algebra.dim):
        left, right = algebra.left[b], algebra.right[b]
        actions.append(projections[right] @ module.actions[b] @ sections[left])
    quo = FDModule(algebra, tuple(q.nrows for q in projections), tuple(actions), name)
    return quo, ModMorphism(module, quo, tuple(projections))


def descend(projection: ModMorphism, h: ModMorphism) -> ModMorphism:
    """The map out of the target of an epimorphism ``projection`` through which ``h`` factors."""
    blocks = tuple(hb @ _right_inverse(pb) for hb, pb in zip(h.blocks, projection.blocks, strict=True))
    return ModMorphism(projection.target, h.target, blocks)


def kernel(f: ModMorphism) -> tuple[FDModule, ModMorphism]:
    """Kernel with its inclusion."""
    return submodule(f.source, [block.kernel_matrix() for block in f.blocks], "ker")


def image(f: ModMorphism) -> tuple[FDModule, ModMorphism]:
    """Image with its inclusion into the target."""
    return submodule(f.target, [block.column_space() for block in f.blocks], "im")


def cokernel(f: ModMorphism) -> tuple[FDModule, ModMorphism]:
    """Cokernel with its projection."""
    return quotient(f.target, [block.column_space() for block in f.blocks], "coker")


def kernel_cokernel(f: ModMorphism) -> tuple[tuple[FDModule, ModMorphism], tuple[FDModule, ModMorphism]]:
    """Kernel with inclusion and cokernel with projection.

    The rank identities dim K = dim M - rank f and dim C = dim N - rank f
    hold per slot by construction.
    """
    return kernel(f), cokernel(f)


def generated_submodule(module: FDModule, generators: Sequence[Matrix]) -> SlotBases:
    """Per-slot bases of the submodule generated by the given per-slot vectors."""
    algebra = module.algebra
    spans = [g.column_space() for g in generators]
    changed = True
    while changed:
        changed = False
        for b in algebra.radical_generators:
            left, right = algebra.left[b], algebra.right[b]
            moved = module.actions[b] @ spans[left]
            if moved.ncols == 0 or moved.is_zero():
                continue
            grown = spans[right].hstack(moved).column_space()
            if grown.ncols > spans[right].ncols:
                spans[right] = grown
                changed = True
    return spans


def largest_submodule_within(module: FDModule, subspaces: Sequence[Matrix]) -> SlotBases:
    """Per-slot bases of the largest submodule contained in the given per-slot subspaces."""
    algebra = module.algebra
    spans = [s.column_space() for s in subspaces]
    changed = True
    while changed:
        changed = False
        for b in algebra.radical_generators:
            left, right = algebra.left[b], algebra.right[b]
            if spans[left].ncols == 0:
                continue
            outside = spans[right].left_kernel_matrix() @ module.actions[b] @ spans[left]
            if outside.is_zero():
                continue
            spans[left] = spans[left] @ outside.kernel_matrix()
            changed = True
    return spans


def radical(module: FDModule) -> SlotBases:
    """Per-slot bases of M J."""
    algebra = module.algebra
    bases = []
    for slot in range(algebra.num_slots):
        images = [module.actions[b] for b in algebra.radical_basis if algebra.right[b] == slot]
        images = [m for m in images if m.ncols]
        if images:
            bases.append(images[0].hstack(*images[1:]).column_space())
        else:
            bases.append(Matrix.zeros(module.field, module.dims[slot], 0))
    return bases


def socle(module: FDModule) -> SlotBases:
    """Per-slot bases of {m : m J = 0}."""
    algebra = module.algebra
    bases = []
    for slot in range(algebra.num_slots):
        outgoing = [module.actions[b] for b in algebra.radical_generators if algebra.left[b] == slot]
        outgoing = [m for m in outgoing if m.nrows]
        if outgoing:
            bases.append(outgoing[0].vstack(*outgoing[1:]).kernel_matrix())
        else:
            bases.append(Matrix.identity(module.field, module.dims[slot]))
    return bases


def radical_series(module: FDModule) -> list[tuple[int, ...]]:
    """Dimension vectors of the layers M J^k / M J^(k+1)."""
    layers = []
    current = module
    while not current.is_zero():
        rad = radical(current)
        layers.append(tuple(d - r.ncols for d, r in zip(current.dims, rad, strict=True)))
        current, _ = submodule(current, rad)
    return layers


def socle_series(module: FDModule) -> list[tuple[int, ...]]:
    """Dimension vectors of the successive socle layers."""
    layers = []
    current = module
    while not current.is_zero():
        soc = socle(current)
        layers.append(tuple(s.ncols for s in soc))
        current, _ = quotient(current, soc)
    return layers


def simple_label(module: FDModule, slot: int) -> str:
    """Label of the simple module at ``slot``."""
    return f"S[{module.algebra.slots[slot]}]"


def composition_factors(module: FDModule) -> Counter[str]:
    """Composition factors with multiplicities, read off the radical series."""
    factors: Counter[str] = Counter()
    for layer in radical_series(module):
        for slot, count in enumerate(layer):
            if count:
                factors[simple_label(module, slot)] += count
    return factors


def top_generators(module: FDModule) -> SlotBases:
    """Per slot, standard basis vectors spanning a complement of the radical."""
    return [rad.complement_columns() if rad.nrows else rad for rad in radical(module)]


def projective_cover(module: FDModule) -> ProjectiveCover:
    """Projective cover: one copy of e_i A per top generator at slot i."""
    algebra = module.algebra
    field = algebra.field
    tops = top_generators(module)
    summands = tuple(slot for slot, top in enumerate(tops) for _ in range(top.ncols))
    cover = direct_sum(algebra, [projective(algebra, slot) for slot in summands])
    blocks = []
    for target_slot in range(algebra.num_slots):
        columns = []
        for slot, top in enumerate(tops):
            for j in range(top.ncols):
                generator = Matrix.from_columns(field, [top.column(j)], module.dims[slot])
                for b in algebra.basis_between(slot, target_slot):
                    columns.append((module.actions[b] @ generator).column(0))
        blocks.append(Matrix.from_columns(field, columns, module.dims[target_slot]))
    epi = ModMorphism(cover, module, tuple(blocks))
    return ProjectiveCover(cover, epi, summands)


def is_projective(module: FDModule) -> bool:
    """A module is projective exactly when its cover is an isomorphism."""
    return projective_cover(module).module.dim == module.dim


def _span_rank(morphisms: Sequence[ModMorphism], width: int, field: Any) -> int:  # noqa: ANN401
    if not morphisms or width == 0:
        return 0
    return Matrix.from_columns(field, [f.flatten() for f in morphisms], width).rank()


def ext1_from_presentation(epi: ModMorphism, n: FDModule) -> int:
    """dim Ext^1(M, N) from any epimorphism P -> M with P projective."""
    _, inclusion = kernel(epi)
    syzygy_homs = hom_basis(inclusion.source, n)
    restrictions = [phi @ inclusion for phi in hom_basis(epi.source, n)]
    width = sum(a * b for a, b in zip(inclusion.source.dims, n.dims, strict=True))
    return len(syzygy_homs) - _span_rank(restrictions, width, n.field)


def ext1(m: FDModule, n: FDModule) -> int:
    """dim Ext^1(M, N) through the projective cover of M."""
    _same_algebra(m, n)
    return ext1_from_presentation(projective_cover(m).epi, n)


def ext1_classes(m: FDModule, n: FDModule) -> tuple[ModMorphism, ModMorphism, list[ModMorphism]]:
    """Representatives of a basis of Ext^1(M, N).

    Returns the cover epimorphism P -> M, the syzygy inclusion and maps
    syzygy -> N whose classes modulo restrictions from P form a basis.
    """
    _same_algebra(m, n)
    epi = projective_cover(m).epi
    _, inclusion = kernel(epi)
    width = sum(a * b for a, b in zip(inclusion.source.dims, n.dims, strict=True))
    chosen: list[ModMorphism] = [phi @ inclusion for phi in hom_basis(epi.source, n)]
    rank = _span_rank(chosen, width, n.field)
    representatives = []
    for phi in hom_basis(inclusion.source, n):
        new_rank = _span_rank([*chosen, phi], width, n.field)
        if new_rank > rank:
            chosen.append(phi)
            representatives.append(phi)
            rank = new_rank
    return epi, inclusion, representatives


def pullback(f: ModMorphism, g: ModMorphism) -> tuple[FDModule, ModMorphism, ModMorphism]:
    """Pullback of f: X -> Z and g: Y -> Z, with projections to X and Y."""
    x, y = f.source, g.source
    blocks = tuple(fb.hstack(-gb) for fb, gb in zip(f.blocks, g.blocks, strict=True))
    joint = ModMorphism(direct_sum(x.algebra, [x, y]), f.target, blocks)
    pb, inclusion = kernel(joint)
    to_x = tuple(inc.submatrix(range(x.dims[s]), range(inc.ncols)) for s, inc in enumerate(inclusion.blocks))
    to_y = tuple(
        inc.submatrix(range(x.dims[s], x.dims[s] + y.dims[s]), range(inc.ncols))
        for s, inc in enumerate(inclusion.blocks)
    )
    return pb, ModMorphism(pb, x, to_x), ModMorphism(pb, y, to_y)


def pushout(f: ModMorphism, g: ModMorphism) -> tuple[FDModule, ModMorphism, ModMorphism]:
    """Pushout of f: X -> Y and g: X -> Z, with the maps from Y and Z."""
    y, z = f.target, g.target
    blocks = tuple(fb.vstack(-gb) for fb, gb in zip(f.blocks, g.blocks, strict=True))
    joint = ModMorphism(f.source, direct_sum(y.algebra, [y, z]), blocks)
    po, projection = cokernel(joint)
    from_y = tuple(p.submatrix(range(p.nrows), range(y.dims[s])) for s, p in enumerate(projection.blocks))
    from_z = tuple(
        p.submatrix(range(p.nrows), range(y.dims[s], y.dims[s] + z.dims[s])) for s, p in enumerate(projection.blocks)
    )
    return po, ModMorphism(y, po, from_y), ModMorphism(z, po, from_z)


def is_isomorphism(f: ModMorphism) -> bool:
    """Bijective on every slot."""
    return f.source.dims == f.target.dims and f.is_injective()


def inverse(f: ModMorphism) -> ModMorphism:
    """Inverse of an isomorphism."""
    if not is_isomorphism(f):
        msg = "Only isomorphisms can be inverted"
        raise DimensionMismatchError(msg)
    return ModMorphism(f.target, f.source, tuple(_right_inverse(block) for block in f.blocks))


def lift_through(phi: ModMorphism, psi: ModMorphism) -> ModMorphism | None:
    """Some u with ``psi @ u == phi``, or None when phi does not factor through psi."""
    candidates = hom_basis(phi.source, psi.source)
    width = len(phi.flatten())
    if width == 0:
        return ModMorphism.zero(phi.source, psi.source)
    if not candidates:
        return ModMorphism.zero(phi.source, psi.source) if phi.is_zero() else None
    field = phi.field
    system = Matrix.from_columns(field, [(psi @ h).flatten() for h in candidates], width)
    rhs = Matrix.from_columns(field, [phi.flatten()], width)
    solution = system.solve(rhs)
    if solution is None:
        return None
    result = ModMorphism.zero(phi.source, psi.source)
    for h, coeff in zip(candidates, solution.column(0), strict=True):
        if coeff:
            result = result + h.scale(coeff)
    return result
