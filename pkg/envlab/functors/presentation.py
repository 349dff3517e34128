"""Presentations of e Gamma e-modules by morphisms of E."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from envlab.algebra.homological import cokernel, descend, is_isomorphism, kernel, projective_cover
from envlab.algebra.modules import FDModule, ModMorphism
from envlab.category.add_category import EMorphism, EObject
from envlab.errors import DimensionMismatchError
from envlab.functors.gamma import gamma_context, projective_preimage
from envlab.functors.quotient import QuotientCtx, quotient_apply, quotient_apply_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Presentation:
    """E_1 --a--> E_0 with i_R(E_0) --cover--> M and coker i_R(a) isomorphic to M."""

    first: EObject
    zeroth: EObject
    a: EMorphism
    cover: ModMorphism
    iso: ModMorphism


def envelope_object(ctx: QuotientCtx, x: EObject) -> FDModule:
    """i_R(X)."""
    return quotient_apply(ctx, gamma_context(ctx.category).yoneda(x))


def envelope_map(ctx: QuotientCtx, f: EMorphism) -> ModMorphism:
    """i_R(f)."""
    context = gamma_context(ctx.category)
    source, target = envelope_object(ctx, f.source), envelope_object(ctx, f.target)
    return quotient_apply_map(ctx, context.yoneda_map(f), source, target)


def envelope_preimage(ctx: QuotientCtx, phi: ModMorphism, source: EObject, target: EObject) -> EMorphism:
    """The morphism f of E between objects supported outside D with i_R(f) = phi."""
    slots_source = [ctx.position(g) for g in source.summands]
    slots_target = [ctx.position(g) for g in target.summands]
    entries = projective_preimage(ctx.algebra, phi, slots_source, slots_target)
    embedded = tuple(tuple(ctx.embed_vector(v) for v in row) for row in entries)
    return EMorphism(ctx.category, source, target, embedded)


def compute_presentation(ctx: QuotientCtx, module: FDModule) -> Presentation:
    """Minimal projective presentation over e Gamma e, lifted to E."""
    cover = projective_cover(module)
    zeroth = EObject(tuple(ctx.kept[s] for s in cover.summands))
    syzygy, inclusion = kernel(cover.epi)
    second = projective_cover(syzygy)
    first = EObject(tuple(ctx.kept[s] for s in second.summands))
    a = envelope_preimage(ctx, inclusion @ second.epi, first, zeroth).renamed("a")

    image_a = envelope_map(ctx, a)
    presented, projection = cokernel(image_a)
    p = ModMorphism(image_a.target, module, cover.epi.blocks)
    iso = descend(projection, p)
    if not is_isomorphism(iso):
        msg = "Presentation cokernel is not isomorphic to the module"
        logger.error(msg)
        raise DimensionMismatchError(msg)
    logger.debug("Presented module of dimension %d by %d -> %d summands", module.dim, first.size, zeroth.size)
    return Presentation(first, zeroth, a, p, ModMorphism(presented, module, iso.blocks))
