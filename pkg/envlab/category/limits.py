"""Kernels, pullbacks and conflation tests inside E.

E need not have kernels. A kernel of f exists in E exactly when the kernel of
Hom(-, f) is a projective Gamma_0-module, and it is then read off a projective
cover. Dual statements are computed in the opposite category.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from envlab.algebra.homological import kernel, projective_cover
from envlab.category.add_category import EMorphism, EObject, factor_through
from envlab.errors import DimensionMismatchError
from envlab.functors.gamma import gamma_context

if TYPE_CHECKING:
    from envlab.category.add_category import AddCategory

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pullback:
    """A pullback square of d: B -> C along g: Z -> C.

    ``to_base`` is the pulled back map P -> Z (the base change of d) and
    ``to_top`` is P -> B, so ``d @ to_top == g @ to_base``.
    """

    obj: EObject
    to_base: EMorphism
    to_top: EMorphism


def kernel_in_category(f: EMorphism) -> EMorphism | None:
    """A kernel w: W -> X of f in E, or None when f has no kernel in E."""
    context = gamma_context(f.category)
    module, inclusion = kernel(context.yoneda_map(f))
    cover = projective_cover(module)
    if cover.module.dim != module.dim:
        return None
    w_obj = EObject(cover.summands)
    return context.yoneda_preimage(inclusion @ cover.epi, w_obj, f.source)


def cokernel_in_category(f: EMorphism) -> EMorphism | None:
    """A cokernel of f in E, or None."""
    dual = kernel_in_category(f.opposite())
    return None if dual is None else _back(dual, f.category)


def pullback_in_category(d: EMorphism, g: EMorphism) -> Pullback | None:
    """Pullback of d along g with a common target, or None when it does not exist in E."""
    if d.target != g.target:
        msg = f"Cannot pull back {d.describe()} along {g.describe()}"
        raise DimensionMismatchError(msg)
    joint = EMorphism.hstack([d, -g])
    w = kernel_in_category(joint)
    if w is None:
        return None
    top = range(d.source.size)
    base = range(d.source.size, d.source.size + g.source.size)
    return Pullback(w.source, w.rows(base), w.rows(top))


def pushout_in_category(i: EMorphism, g: EMorphism) -> Pullback | None:
    """Pushout of i along g with a common source, read as a pullback in the opposite category.

    The returned maps run out of the pushout object's opposite; use
    :func:`pushout_maps` for maps in E.
    """
    return pullback_in_category(i.opposite(), g.opposite())


def pushout_maps(i: EMorphism, g: EMorphism) -> tuple[EMorphism, EMorphism] | None:
    """(i', g') with i' the pushout of i along g and ``i' @ g == g' @ i``, or None."""
    square = pushout_in_category(i, g)
    if square is None:
        return None
    return _back(square.to_base, i.category), _back(square.to_top, i.category)


def _back(f: EMorphism, category: AddCategory) -> EMorphism:
    back = f.opposite()
    return EMorphism(category, back.source, back.target, back.entries, name=f.name)


def _is_kernel_pair(i: EMorphism, d: EMorphism) -> bool:
    """True when Hom(-, i) is a kernel of Hom(-, d) on every generator."""
    context = gamma_context(i.category)
    yi, yd = context.yoneda_map(i), context.yoneda_map(d)
    a_dims = context.yoneda(i.source).dims
    b_dims = context.yoneda(i.target).dims
    return all(
        yi.blocks[s].rank() == a_dims[s] and b_dims[s] - yd.blocks[s].rank() == a_dims[s]
        for s in range(len(a_dims))
    )


def is_kernel_cokernel_pair(i: EMorphism, d: EMorphism) -> bool:
    """True when i is a kernel of d and d is a cokernel of i in E."""
    if i.target != d.source:
        return False
    if not (d @ i).is_zero():
        return False
    return _is_kernel_pair(i, d) and _is_kernel_pair(d.opposite(), i.opposite())


def is_generator_epi(f: EMorphism) -> bool:
    """True when every map from the target to a generator that kills f is zero."""
    context = gamma_context(f.category.dual)
    return context.yoneda_map(f.opposite()).is_injective()


def is_generator_mono(f: EMorphism) -> bool:
    """True when Hom(-, f) is injective."""
    return gamma_context(f.category).yoneda_map(f).is_injective()


def right_inverse(f: EMorphism) -> EMorphism | None:
    """Some s with f @ s = id, or None."""
    return factor_through(EMorphism.identity(f.category, f.target), f)


def left_inverse(f: EMorphism) -> EMorphism | None:
    """Some r with r @ f = id, or None."""
    dual = right_inverse(f.opposite())
    return None if dual is None else _back(dual, f.category)
