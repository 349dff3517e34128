"""def(E) and the Serre quotient mod(E)/def(E) as an idempotent truncation."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from envlab.algebra.homological import (
    cokernel,
    composition_factors,
    ext1,
    generated_submodule,
    hom_basis,
    largest_submodule_within,
    quotient,
    simple_label,
    submodule,
)
from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import FDModule, ModMorphism, simple
from envlab.functors.gamma import gamma_context, projective_sum

if TYPE_CHECKING:
    import random

    from envlab.algebra.fd_algebra import FDAlgebra
    from envlab.category.add_category import AddCategory
    from envlab.category.structures import ExactStructure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DefData:
    """The simples generating def(E), with the conflation that produced each."""

    structure: ExactStructure
    simples: tuple[int, ...]
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def category(self) -> AddCategory:
        """Underlying category."""
        return self.structure.category

    @property
    def labels(self) -> list[str]:
        """Simple labels such as ``S[P1]``."""
        return [f"S[{self.category.generators[s]}]" for s in self.simples]


@dataclass(frozen=True, eq=False)
class QuotientCtx:
    """e Gamma e for e the sum of the idempotents outside D, with the truncation functor."""

    def_data: DefData
    kept: tuple[int, ...]
    algebra: FDAlgebra
    embedding: tuple[int, ...]

    @property
    def category(self) -> AddCategory:
        """Underlying category."""
        return self.def_data.category

    def embed_vector(self, vector: tuple[Any, ...]) -> tuple[Any, ...]:
        """An element of e Gamma e as an element of Gamma."""
        gamma = self.category.gamma
        out = list(gamma.zero_vector())
        for k, b in enumerate(self.embedding):
            out[b] = vector[k]
        return tuple(out)

    def restrict_vector(self, vector: tuple[Any, ...]) -> tuple[Any, ...]:
        """Coordinates of an element of Gamma on the e Gamma e basis."""
        return tuple(vector[b] for b in self.embedding)

    def position(self, generator: int) -> int:
        """Slot of e Gamma e for a kept generator."""
        return self.kept.index(generator)


def def_simples(structure: ExactStructure) -> DefData:
    """Union of composition factors of coker Hom(-, d) over the generating deflations."""
    context = gamma_context(structure.category)
    generators = structure.category.generators
    found: set[int] = set()
    witnesses: dict[str, str] = {}
    for k, conflation in enumerate(structure.conflations):
        module, _ = cokernel(context.yoneda_map(conflation.deflation))
        for slot, dim in enumerate(module.dims):
            if dim and slot not in found:
                found.add(slot)
                witnesses[f"S[{generators[slot]}]"] = conflation.label or f"#{k}"
    data = DefData(structure, tuple(sorted(found)), witnesses)
    logger.info("def(E) for %s is generated by %s", structure.name, data.labels or "nothing")
    return data


def serre_quotient(def_data: DefData) -> QuotientCtx:
    """Truncation to the generators outside D."""
    gamma = def_data.category.gamma
    kept = tuple(s for s in range(gamma.num_slots) if s not in def_data.simples)
    algebra, embedding = gamma.corner(kept)
    logger.info("Quotient algebra e Gamma e has dimension %d on %d slots", algebra.dim, algebra.num_slots)
    return QuotientCtx(def_data, kept, algebra, embedding)


def quotient_apply(ctx: QuotientCtx, module: FDModule) -> FDModule:
    """M e with the restricted action."""
    dims = tuple(module.dims[s] for s in ctx.kept)
    actions = tuple(module.actions[b] for b in ctx.embedding)
    return FDModule(ctx.algebra, dims, actions, module.name)


def quotient_apply_map(
    ctx: QuotientCtx,
    f: ModMorphism,
    source: FDModule | None = None,
    target: FDModule | None = None,
) -> ModMorphism:
    """f e between the truncated modules."""
    src = source if source is not None else quotient_apply(ctx, f.source)
    tgt = target if target is not None else quotient_apply(ctx, f.target)
    return ModMorphism(src, tgt, tuple(f.blocks[s] for s in ctx.kept))


def _slot_subspaces(module: FDModule, slots: set[int]) -> list[Matrix]:
    field_ = module.field
    return [
        Matrix.identity(field_, d) if s in slots else Matrix.zeros(field_, d, 0) for s, d in enumerate(module.dims)
    ]


def reject(def_data: DefData, module: FDModule) -> tuple[FDModule, ModMorphism]:
    """Smallest submodule whose quotient has all composition factors in D."""
    outside = {s for s in range(len(module.dims)) if s not in def_data.simples}
    return submodule(module, generated_submodule(module, _slot_subspaces(module, outside)), "reject")


def trace(def_data: DefData, module: FDModule) -> tuple[FDModule, ModMorphism]:
    """Largest submodule with all composition factors in D."""
    return submodule(module, largest_submodule_within(module, _slot_subspaces(module, set(def_data.simples))), "trace")


def gabriel_hom(def_data: DefData, m: FDModule, n: FDModule) -> int:
    """dim Hom(reject_D M, N / trace_D N), the hom dimension of the Serre quotient."""
    rejected, _ = reject(def_data, m)
    _, inclusion = trace(def_data, n)
    reduced, _ = quotient(n, list(inclusion.blocks))
    return len(hom_basis(rejected, reduced))


def quotient_hom_dimension(ctx: QuotientCtx, m: FDModule, n: FDModule) -> int:
    """dim Hom(M e, N e) over e Gamma e."""
    return len(hom_basis(quotient_apply(ctx, m), quotient_apply(ctx, n)))


def is_lex(module: FDModule, structure: ExactStructure) -> bool:
    """0 -> M(C) -> M(B) -> M(A) is exact for every generating conflation."""
    context = gamma_context(structure.category)
    for conflation in structure.conflations:
        on_d = context.evaluate_map(module, conflation.deflation)
        on_i = context.evaluate_map(module, conflation.inflation)
        dim_c = context.evaluate(module, conflation.deflation.target)
        dim_b = context.evaluate(module, conflation.deflation.source)
        if on_d.rank() != dim_c or dim_b - on_i.rank() != dim_c:
            return False
    return True


def is_def_closed(def_data: DefData, module: FDModule) -> bool:
    """Hom(S, M) = 0 and Ext^1(S, M) = 0 for every S in D."""
    for slot in def_data.simples:
        s = simple(module.algebra, slot)
        if hom_basis(s, module) or ext1(s, module):
            return False
    return True


def is_effaceable_shadow(def_data: DefData, module: FDModule) -> bool:
    """All composition factors of M lie in D."""
    allowed = {simple_label(module, s) for s in def_data.simples}
    return set(composition_factors(module)) <= allowed


def random_module(
    algebra: FDAlgebra,
    rng: random.Random,
    max_summands: int = 3,
    max_relations: int = 2,
) -> FDModule:
    """A seeded random quotient of a random sum of indecomposable projectives."""
    field_ = algebra.field
    summands = [rng.randrange(algebra.num_slots) for _ in range(rng.randint(1, max_summands))]
    free = projective_sum(algebra, summands)
    vectors: list[list[tuple[Any, ...]]] = [[] for _ in range(algebra.num_slots)]
    for _ in range(rng.randint(0, max_relations)):
        slot = rng.randrange(algebra.num_slots)
        if free.dims[slot]:
            vectors[slot].append(tuple(field_.random_element(rng) for _ in range(free.dims[slot])))
    generators = [Matrix.from_columns(field_, vectors[s], free.dims[s]) for s in range(algebra.num_slots)]
    relations = generated_submodule(free, generators)
    module, _ = quotient(free, relations, "random")
    return module
