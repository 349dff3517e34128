"""Dense-extension conditions, epimorphism refinement and the left abelian factorization."""

from __future__ import annotations

import logging
import time
from typing import TYPE_CHECKING, Any

from envlab.algebra.homological import (
    cokernel,
    hom_basis,
    image,
    inverse,
    is_isomorphism,
    lift_through,
    projective_cover,
    pullback,
)
from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import ModMorphism
from envlab.category.add_category import EMorphism, EObject, factor_through
from envlab.category.deflations import DEFAULT_MAX_CANDIDATES, enumerator_for
from envlab.category.exact_structure import DEFAULT_DEPTH, is_deflation
from envlab.category.structures import Decision
from envlab.errors import BadInputError, DimensionMismatchError, SearchExhaustedError
from envlab.functors.presentation import compute_presentation
from envlab.functors.quotient import random_module
from envlab.verdicts import CheckInstance, CheckReport, Verdict

if TYPE_CHECKING:
    import random
    from collections.abc import Callable, Iterator

    from envlab.algebra.modules import FDModule
    from envlab.envelope.envelope import Envelope

logger = logging.getLogger(__name__)


def refine_epi(env: Envelope, p: ModMorphism, x: EObject) -> tuple[EObject, ModMorphism]:
    """X' and g: i_R(X') -> M with p g an epimorphism, for an epimorphism p: M -> i_R(X)."""
    if not p.is_surjective():
        msg = "refine_epi needs an epimorphism onto i_R(X)"
        logger.error(msg)
        raise BadInputError(msg)
    if is_isomorphism(p):
        return x, inverse(p)
    cover = projective_cover(p.source)
    refined = EObject(tuple(env.quotient.kept[s] for s in cover.summands))
    g = ModMorphism(env.obj(refined), p.source, cover.epi.blocks)
    if not (p @ g).is_surjective():
        msg = "Refined map is not an epimorphism"
        logger.error(msg)
        raise DimensionMismatchError(msg)
    return refined, g


def _refined_deflation(env: Envelope, phi: ModMorphism, psi: ModMorphism, x: EObject, depth: int) -> EMorphism | None:
    """A certified deflation d onto X with phi i_R(d) factoring through psi, from the pullback of psi along phi."""
    _, to_x, _ = pullback(phi, psi)
    if not to_x.is_surjective():
        return None
    refined, g = refine_epi(env, to_x, x)
    d = env.preimage(to_x @ g, refined, x)
    if d is None or is_deflation(d, env.structure, depth) is not Decision.YES:
        return None
    return d.renamed("refined")


def _candidates(env: Envelope, first: EMorphism | None, x: EObject, depth: int) -> Iterator[EMorphism]:
    if first is not None:
        yield first
    yield EMorphism.identity(env.category, x)
    yield from enumerator_for(env.structure, depth, DEFAULT_MAX_CANDIDATES).onto(x)


def _search(
    env: Envelope,
    name: str,
    first: EMorphism | None,
    x: EObject,
    depth: int,
    factors: Callable[[EMorphism], Any],
    witness: dict[str, Any],
) -> CheckInstance:
    for d in _candidates(env, first, x, depth):
        factor = factors(d)
        if factor is not None:
            witness = {**witness, "d": d.to_dict()}
            return CheckInstance(name, Verdict.PASS, witness)
    witness = {**witness, "code": SearchExhaustedError.code, "depth": depth}
    return CheckInstance(name, Verdict.INCONCLUSIVE, witness)


def dense_extension_check(env: Envelope, module: FDModule, depth: int = DEFAULT_DEPTH) -> CheckReport:
    """Both factorization conditions for the minimal presentation of a module of the envelope.

    (1) every f: i_R(X) -> M composed with some deflation d factors through
    the cover p; (2) every f: X -> E_0 with p i_R(f) = 0 composed with some
    deflation d factors through a. X runs over the generators.
    """
    started = time.perf_counter()
    category = env.category
    presentation = compute_presentation(env.quotient, module)
    p, a = presentation.cover, presentation.a
    instances = []
    for x in category.all_generator_objects():
        label = x.label(category.generators)
        source = env.obj(x)
        for k, f in enumerate(hom_basis(source, module)):

            def through_cover(d: EMorphism, f: ModMorphism = f) -> Any:  # noqa: ANN401
                return lift_through(f @ env.map(d), p)

            first = _refined_deflation(env, f, p, x, depth)
            witness = {"f": f.to_json()}
            instances.append(_search(env, f"dense_cover[{label}#{k}]", first, x, depth, through_cover, witness))

        image_a = env.map(a)
        for k, f in enumerate(_killed_by_cover(env, x, presentation.zeroth, p)):

            def through_a(d: EMorphism, f: EMorphism = f) -> Any:  # noqa: ANN401
                return factor_through(f @ d, a)

            first = _refined_deflation(env, env.map(f), image_a, x, depth)
            witness = {"f": f.to_dict()}
            instances.append(_search(env, f"dense_relation[{label}#{k}]", first, x, depth, through_a, witness))
    report = CheckReport.from_instances("dense", instances, depth, summary={"module": module.dimension_vector()})
    return report.with_elapsed(time.perf_counter() - started)


def _killed_by_cover(env: Envelope, x: EObject, zeroth: EObject, p: ModMorphism) -> list[EMorphism]:
    basis = env.category.hom_basis(x, zeroth)
    if not basis:
        return []
    width = len(ModMorphism.zero(env.obj(x), p.target).flatten())
    if width == 0:
        return basis
    system = Matrix.from_columns(env.category.field, [(p @ env.map(b)).flatten() for b in basis], width)
    out = []
    for vector in system.nullspace():
        f = EMorphism.zero(env.category, x, zeroth)
        for b, coeff in zip(basis, vector, strict=True):
            if coeff:
                f = f + b.scale(coeff)
        out.append(f)
    return out


def left_abelian_witness(env: Envelope, f: ModMorphism, g: ModMorphism) -> tuple[ModMorphism, ModMorphism]:
    """(d, h) with d an epimorphism and f h = g d, by pulling back A -> im f along g."""
    _, projection = cokernel(f)
    if not (projection @ g).is_zero():
        msg = "coker(f) o g is not zero"
        logger.error(msg)
        raise BadInputError(msg)
    if g.is_zero():
        return ModMorphism.identity(g.source), ModMorphism.zero(g.source, f.source)
    _, inclusion = image(f)
    onto_image = lift_through(f, inclusion)
    g_image = lift_through(g, inclusion)
    if onto_image is None or g_image is None:
        msg = "Image factorization failed"
        logger.error(msg)
        raise DimensionMismatchError(msg)
    _, h, d = pullback(onto_image, g_image)
    logger.debug("Left abelian witness through a pullback of dimension %d", d.source.dim)
    return d, h


def _random_hom(m: FDModule, n: FDModule, rng: random.Random) -> ModMorphism:
    result = ModMorphism.zero(m, n)
    for h in hom_basis(m, n):
        result = result + h.scale(m.field.random_element(rng))
    return result


def left_abelian_report(env: Envelope, rng: random.Random, samples: int = 20) -> CheckReport:
    """Random instances of the left abelian factorization in the envelope."""
    started = time.perf_counter()
    algebra = env.algebra
    instances = []
    for k in range(samples):
        a, b, c = (random_module(algebra, rng) for _ in range(3))
        f = _random_hom(a, b, rng)
        _, inclusion = image(f)
        g = inclusion @ _random_hom(c, inclusion.source, rng)
        witness = {"a": a.dimension_vector(), "b": b.dimension_vector(), "d": c.dimension_vector()}
        d, h = left_abelian_witness(env, f, g)
        ok = d.is_surjective() and (f @ h).same_as(g @ d)
        instances.append(CheckInstance(f"left_abelian[{k:03d}]", Verdict.PASS if ok else Verdict.FAIL, witness))
    return CheckReport.from_instances("left_abelian", instances).with_elapsed(time.perf_counter() - started)
