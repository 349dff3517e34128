"""Right exact functors out of E and their extension to the envelope."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

from envlab.algebra.homological import cokernel, descend, is_isomorphism, lift_through
from envlab.algebra.modules import FDModule, ModMorphism, direct_sum, morphism_matrix, projective, simple, zero_module
from envlab.category.add_category import EMorphism, EObject
from envlab.errors import BadInputError, DimensionMismatchError, EnvlabError
from envlab.functors.presentation import Presentation, compute_presentation
from envlab.verdicts import CheckInstance, CheckReport, Verdict

if TYPE_CHECKING:
    from collections.abc import Sequence

    from envlab.algebra.fd_algebra import FDAlgebra
    from envlab.category.add_category import AddCategory, Vector
    from envlab.category.structures import ExactStructure
    from envlab.envelope.envelope import Envelope

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RightExactFunctor:
    """F: E -> mod(target) given on generators and on the Gamma_0 basis.

    ``maps[b]`` is F of the basis element b, a map F(G_right(b)) -> F(G_left(b)).
    """

    name: str
    category: AddCategory
    target: FDAlgebra
    images: tuple[FDModule, ...]
    maps: tuple[ModMorphism, ...]

    def on_vector(self, vector: Vector, source: int, target: int) -> ModMorphism:
        """F of an element of e_target Gamma_0 e_source."""
        result = ModMorphism.zero(self.images[source], self.images[target])
        for b, coeff in enumerate(vector):
            if coeff:
                term = ModMorphism(self.images[source], self.images[target], self.maps[b].blocks)
                result = result + term.scale(coeff)
        return result

    def apply_object(self, x: EObject) -> FDModule:
        """F(X)."""
        return direct_sum(self.target, [self.images[g] for g in x.summands])

    def apply_map(self, f: EMorphism) -> ModMorphism:
        """F(f)."""
        grid: list[list[ModMorphism | None]] = [
            [self.on_vector(f.entries[r][c], s, t) for c, s in enumerate(f.source.summands)]
            for r, t in enumerate(f.target.summands)
        ]
        return morphism_matrix(
            [self.images[s] for s in f.source.summands],
            [self.images[t] for t in f.target.summands],
            grid,
            self.target,
        )


def _basis_morphism(category: AddCategory, b: int) -> EMorphism:
    gamma = category.gamma
    source, target = EObject.generator(gamma.right[b]), EObject.generator(gamma.left[b])
    return EMorphism(category, source, target, ((gamma.unit_vector(b),),), name=gamma.labels[b])


def validate_functor(functor: RightExactFunctor, structure: ExactStructure) -> None:
    """Raise BadInputError unless F is a functor and right exact on the generating conflations."""
    gamma = functor.category.gamma
    if len(functor.images) != functor.category.num_generators or len(functor.maps) != gamma.dim:
        msg = f"Functor {functor.name} needs one image per generator and one map per basis element"
        raise BadInputError(msg)
    for b, image in enumerate(functor.maps):
        try:
            ModMorphism(functor.images[gamma.right[b]], functor.images[gamma.left[b]], image.blocks).check()
        except EnvlabError as e:
            msg = f"Functor {functor.name}: map of {gamma.labels[b]} is not a module map"
            logger.error(msg)
            raise BadInputError(msg) from e
    for slot, idempotent in enumerate(gamma.idempotents):
        if not functor.maps[idempotent].same_as(ModMorphism.identity(functor.images[slot])):
            msg = f"Functor {functor.name} does not preserve the identity of {functor.category.generators[slot]}"
            logger.error(msg)
            raise BadInputError(msg)
    for b in range(gamma.dim):
        for c in range(gamma.dim):
            if gamma.right[b] != gamma.left[c]:
                continue
            product = gamma.multiply(gamma.unit_vector(b), gamma.unit_vector(c))
            lhs = functor.on_vector(product, gamma.right[c], gamma.left[b])
            rhs = functor.on_vector(gamma.unit_vector(b), gamma.right[b], gamma.left[b]) @ functor.on_vector(
                gamma.unit_vector(c), gamma.right[c], gamma.left[c]
            )
            if not lhs.same_as(rhs):
                msg = f"Functor {functor.name} does not preserve {gamma.labels[b]} o {gamma.labels[c]}"
                logger.error(msg)
                raise BadInputError(msg)
    for conflation in structure.conflations:
        on_i, on_d = functor.apply_map(conflation.inflation), functor.apply_map(conflation.deflation)
        middle = on_d.source.dims
        if not on_d.is_surjective() or any(
            dim - rank_d != rank_i for dim, rank_d, rank_i in zip(middle, on_d.ranks(), on_i.ranks(), strict=True)
        ):
            msg = f"Functor {functor.name} is not right exact on {conflation.label}"
            logger.error(msg)
            raise BadInputError(msg)


@dataclass(frozen=True, eq=False)
class InducedFunctor:
    """F~ on modules over e Gamma e: F~(M) = coker F(a) for a presentation a of M."""

    functor: RightExactFunctor
    env: Envelope

    def from_presentation(self, presentation: Presentation) -> tuple[FDModule, ModMorphism]:
        """coker F(a) with its projection from F(E_0)."""
        return cokernel(self.functor.apply_map(presentation.a))

    def apply_object(self, module: FDModule) -> FDModule:
        """F~(M)."""
        value, _ = self.from_presentation(compute_presentation(self.env.quotient, module))
        return value

    def apply_map(self, phi: ModMorphism) -> ModMorphism:
        """F~(phi), through a lift of phi to the zeroth terms of the presentations."""
        ctx = self.env.quotient
        source, target = compute_presentation(ctx, phi.source), compute_presentation(ctx, phi.target)
        lifted = lift_through(phi @ source.cover, target.cover)
        if lifted is None:
            msg = "Cover of the source does not lift through the cover of the target"
            raise DimensionMismatchError(msg)
        u = self.env.preimage(lifted, source.zeroth, target.zeroth)
        if u is None:
            msg = "Lifted map has no preimage in E"
            raise DimensionMismatchError(msg)
        _, from_source = self.from_presentation(source)
        _, from_target = self.from_presentation(target)
        return descend(from_source, from_target @ self.functor.apply_map(u))


def _contract_instance(induced: InducedFunctor, x: EObject) -> CheckInstance:
    env, functor = induced.env, induced.functor
    label = x.label(env.category.generators)
    name = f"contract[{label}]"
    presentation = compute_presentation(env.quotient, env.obj(x))
    value, projection = induced.from_presentation(presentation)
    u = env.preimage(presentation.cover, presentation.zeroth, x)
    witness = {"induced": value.dimension_vector(), "direct": functor.images[x.summands[0]].dimension_vector()}
    if u is None:
        witness["reason"] = "cover has no preimage in E"
        return CheckInstance(name, Verdict.FAIL, witness)
    on_u = functor.apply_map(u)
    comparison = descend(projection, on_u)
    if not (comparison @ projection).same_as(on_u) or not is_isomorphism(comparison):
        witness["reason"] = "F(u) does not induce an isomorphism coker F(a) -> F(X)"
        return CheckInstance(name, Verdict.FAIL, witness)
    return CheckInstance(name, Verdict.PASS, witness)


def _redundant_presentation(env: Envelope, presentation: Presentation) -> tuple[EMorphism, EMorphism]:
    """A second presentation of the same module and the comparison E_0 -> E_0 + X.

    The relation object E_1 + E_1 + X carries a repeated copy of a, and the
    extra cover summand X maps into E_0 through g. The relation (g, -1) kills
    that summand again.
    """
    category, zeroth = env.category, presentation.zeroth
    pad = EObject.generator(env.quotient.kept[0])
    g: EMorphism | None = None
    for slot in env.quotient.kept:
        basis = category.hom_basis(EObject.generator(slot), zeroth)
        if basis:
            pad, g = EObject.generator(slot), basis[0]
            break
    if g is None:
        g = EMorphism.zero(category, pad, zeroth)
    first = presentation.first
    top = EMorphism.hstack([presentation.a, presentation.a, g])
    bottom = EMorphism.hstack(
        [EMorphism.zero(category, first, pad), EMorphism.zero(category, first, pad), -EMorphism.identity(category, pad)]
    )
    second = EMorphism.vstack([top, bottom]).renamed("a'")
    inclusion = EMorphism.vstack([EMorphism.identity(category, zeroth), EMorphism.zero(category, zeroth, pad)])
    return second, inclusion


def _independence_instance(induced: InducedFunctor, module: FDModule, label: str) -> CheckInstance:
    env, functor = induced.env, induced.functor
    name = f"independent[{label}]"
    if not env.quotient.kept:
        return CheckInstance(name, Verdict.PASS, {"reason": "the envelope is zero"})
    presentation = compute_presentation(env.quotient, module)
    second, inclusion = _redundant_presentation(env, presentation)
    value, projection = induced.from_presentation(presentation)
    second_value, second_projection = cokernel(functor.apply_map(second))
    through_second = second_projection @ functor.apply_map(inclusion)
    comparison = descend(projection, through_second)
    witness = {
        "first": value.dimension_vector(),
        "second": second_value.dimension_vector(),
        "a'": second.to_dict(),
    }
    factors = (comparison @ projection).same_as(through_second)
    verdict = Verdict.PASS if factors and is_isomorphism(comparison) else Verdict.FAIL
    return CheckInstance(name, verdict, witness)


def default_test_modules(algebra: FDAlgebra) -> list[tuple[str, FDModule]]:
    """The simples and the indecomposable projectives of e Gamma e."""
    return [
        *((f"S[{slot}]", simple(algebra, s)) for s, slot in enumerate(algebra.slots)),
        *((f"P[{slot}]", projective(algebra, s)) for s, slot in enumerate(algebra.slots)),
    ]


def induce_functor(
    env: Envelope,
    functor: RightExactFunctor,
    modules: Sequence[tuple[str, FDModule]] | None = None,
) -> tuple[InducedFunctor, CheckReport]:
    """Extend F along i_R and verify F~ o i_R = F and presentation independence."""
    started = time.perf_counter()
    validate_functor(functor, env.structure)
    induced = InducedFunctor(functor, env)
    instances = [_contract_instance(induced, x) for x in env.category.all_generator_objects()]
    values = {}
    for label, module in modules if modules is not None else default_test_modules(env.algebra):
        instances.append(_independence_instance(induced, module, label))
        values[label] = induced.apply_object(module).dimension_vector()
    report = CheckReport.from_instances(f"universal[{functor.name}]", instances, summary={"values": values})
    logger.info("Induced functor %s: %s (%s)", functor.name, report.verdict.value, report.fraction())
    return induced, report.with_elapsed(time.perf_counter() - started)


def envelope_functor(env: Envelope) -> RightExactFunctor:
    """i_R itself."""
    category = env.category
    images = tuple(env.obj(x) for x in category.all_generator_objects())
    maps = tuple(env.map(_basis_morphism(category, b)) for b in range(category.gamma.dim))
    return RightExactFunctor("i_R", category, env.algebra, images, maps)


def ambient_functor(category: AddCategory) -> RightExactFunctor:
    """The inclusion of E into the ambient module category."""
    if category.ambient is None or category.modules is None:
        msg = "The ambient functor needs a category of modules"
        raise BadInputError(msg)
    maps = tuple(category.realize_morphism(_basis_morphism(category, b)) for b in range(category.gamma.dim))
    return RightExactFunctor("inclusion", category, category.ambient, category.modules, maps)


def zero_functor(category: AddCategory, target: FDAlgebra) -> RightExactFunctor:
    """The zero functor into mod(target)."""
    zero = zero_module(target)
    images = tuple(zero for _ in range(category.num_generators))
    maps = tuple(ModMorphism.zero(zero, zero) for _ in range(category.gamma.dim))
    return RightExactFunctor("zero", category, target, images, maps)
