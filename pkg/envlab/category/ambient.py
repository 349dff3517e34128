"""Exact structures inherited from an ambient module category.

A sequence of E is a conflation when it is short exact in mod(Lambda). This
is decidable: f is a deflation when its module map is onto and its kernel
is again in add(G).
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from envlab.algebra.homological import (
    cokernel,
    descend,
    ext1_classes,
    hom_basis,
    inverse,
    is_isomorphism,
    kernel,
    projective_cover,
    top_generators,
)
from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import FDModule, ModMorphism, morphism_matrix
from envlab.category.add_category import EObject
from envlab.category.structures import Conflation, Decision, ExactStructure, StructureKind
from envlab.errors import BadInputError, DimensionMismatchError

if TYPE_CHECKING:
    from envlab.category.add_category import AddCategory, EMorphism

logger = logging.getLogger(__name__)


def hom_module(category: AddCategory, module: FDModule) -> tuple[FDModule, list[list[ModMorphism]]]:
    """The Gamma_0-module Hom_Lambda(G, M) with the hom basis used at each generator."""
    gamma = category.gamma
    generators = category.modules or ()
    realizations = category.realizations or ()
    bases = [hom_basis(g, module) for g in generators]
    field = gamma.field
    actions = []
    for c in range(gamma.dim):
        i, j = gamma.left[c], gamma.right[c]
        target_basis = bases[j]
        width = len(ModMorphism.zero(generators[j], module).flatten())
        columns = []
        for phi in bases[i]:
            composite = ModMorphism(generators[j], module, (phi @ realizations[c]).blocks)
            if not target_basis or width == 0:
                columns.append([])
                continue
            system = Matrix.from_columns(field, [b.flatten() for b in target_basis], width)
            solution = system.solve(Matrix.from_columns(field, [composite.flatten()], width))
            if solution is None:
                msg = f"Hom(G, {module.name}) is not closed under {gamma.labels[c]}"
                raise DimensionMismatchError(msg)
            columns.append(list(solution.column(0)))
        actions.append(Matrix.from_columns(field, columns, len(target_basis)))
    dims = tuple(len(b) for b in bases)
    return FDModule.build(gamma, dims, actions, f"Hom(G, {module.name})" if module.name else "Hom(G, -)"), bases


def realize_in_category(category: AddCategory, module: FDModule) -> tuple[EObject, ModMorphism] | None:
    """An object X of E with an isomorphism realize(X) -> module, or None when module is not in add(G)."""
    generators = category.modules or ()
    hom, bases = hom_module(category, module)
    cover = projective_cover(hom)
    tops = top_generators(hom)
    obj = EObject(cover.summands)
    grid_row = []
    for slot in range(len(generators)):
        for k in range(tops[slot].ncols):
            vector = tops[slot].column(k)
            component = ModMorphism.zero(generators[slot], module)
            for coeff, phi in zip(vector, bases[slot], strict=True):
                if coeff:
                    component = component + ModMorphism(generators[slot], module, phi.blocks).scale(coeff)
            grid_row.append(component)
    candidate = morphism_matrix(
        [generators[g] for g in obj.summands], [module], [grid_row], category.ambient  # type: ignore[arg-type]
    )
    if not is_isomorphism(candidate):
        return None
    return obj, candidate


def ambient_deflation_decision(f: EMorphism) -> Decision:
    """YES when f is onto in mod(Lambda) with kernel in add(G), NO otherwise."""
    category = f.category
    realized = category.realize_morphism(f)
    if not realized.is_surjective():
        return Decision.NO
    module, _ = kernel(realized)
    return Decision.YES if realize_in_category(category, module) is not None else Decision.NO


def ambient_structure(category: AddCategory, name: str = "ambient") -> ExactStructure:
    """Generating conflations 0 -> G_a -> B -> G_c -> 0, one per class of a basis of Ext^1(G_c, G_a)."""
    generators = category.modules
    algebra = category.ambient
    if generators is None or algebra is None:
        msg = "An ambient structure needs a category of modules"
        raise BadInputError(msg)
    conflations = []
    failures = []
    for c, end in enumerate(generators):
        for a, start in enumerate(generators):
            epi, inclusion, classes = ext1_classes(end, start)
            for k, phi in enumerate(classes):
                label = f"ext[{category.generators[c]}->{category.generators[a]}]#{k}"
                pair = [start, epi.source]
                joint = morphism_matrix([inclusion.source], pair, [[phi], [-inclusion]], algebra)
                middle, projection = cokernel(joint)
                grid = [[ModMorphism.identity(start)], [None]]
                from_start = projection @ morphism_matrix([start], pair, grid, algebra)
                onto = morphism_matrix(pair, [end], [[None, epi]], algebra)
                to_end = descend(projection, onto)
                realized = realize_in_category(category, middle)
                if realized is None:
                    logger.warning("Middle term of %s is not in add(G)", label)
                    failures.append({"class": label, "middle_dims": list(middle.dims), "code": "E_AXIOM_FAIL"})
                    continue
                obj, iso = realized
                back = inverse(iso)
                i_morph = category.lift_module_map(EObject.generator(a), obj, back @ _retag(from_start, start))
                d_morph = category.lift_module_map(obj, EObject.generator(c), _retag(to_end, None, end) @ iso)
                conflations.append(Conflation(i_morph.renamed(f"i:{label}"), d_morph.renamed(f"d:{label}"), label))
    logger.info("Ambient structure %s has %d generating conflations", name, len(conflations))
    return ExactStructure(category, name, StructureKind.AMBIENT, tuple(conflations), tuple(failures))


def _retag(phi: ModMorphism, source: FDModule | None = None, target: FDModule | None = None) -> ModMorphism:
    return ModMorphism(source or phi.source, target or phi.target, phi.blocks)
