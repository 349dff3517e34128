"""Full faithfulness, exactness and reflection of i_R; weak kernels in E."""

from __future__ import annotations

import logging
import time
from typing import TYPE_CHECKING, Any

from envlab.algebra.homological import hom_basis, kernel, projective_cover
from envlab.algebra.matrix import Matrix
from envlab.category.add_category import EMorphism, EObject, factor_through
from envlab.category.exact_structure import DEFAULT_DEPTH, is_deflation
from envlab.category.limits import is_kernel_cokernel_pair, kernel_in_category, right_inverse
from envlab.category.structures import Decision, StructureKind
from envlab.functors.gamma import gamma_context
from envlab.verdicts import CheckInstance, CheckReport, Verdict

if TYPE_CHECKING:
    from envlab.algebra.modules import ModMorphism
    from envlab.category.add_category import AddCategory
    from envlab.envelope.envelope import Envelope

logger = logging.getLogger(__name__)

_DECISION_VERDICT = {Decision.YES: Verdict.PASS, Decision.NO: Verdict.FAIL, Decision.INCONCLUSIVE: Verdict.INCONCLUSIVE}


def is_short_exact(i: ModMorphism, d: ModMorphism) -> bool:
    """0 -> A -> B -> C -> 0 exact on every slot."""
    if not (d @ i).is_zero():
        return False
    return i.is_injective() and d.is_surjective() and all(
        b - rd == ri for b, ri, rd in zip(i.target.dims, i.ranks(), d.ranks(), strict=True)
    )


def _rank_of(morphisms: list[ModMorphism]) -> int:
    if not morphisms:
        return 0
    width = len(morphisms[0].flatten())
    if width == 0:
        return 0
    return Matrix.from_columns(morphisms[0].field, [m.flatten() for m in morphisms], width).rank()


def _full_faithfulness(env: Envelope) -> list[CheckInstance]:
    category = env.category
    instances = []
    for x in category.all_generator_objects():
        for y in category.all_generator_objects():
            basis = category.hom_basis(x, y)
            images = [env.map(b) for b in basis]
            target_dim = len(hom_basis(env.obj(x), env.obj(y)))
            rank = _rank_of(images)
            witness = {"hom_E": len(basis), "hom_envelope": target_dim, "rank": rank}
            verdict = Verdict.PASS if rank == len(basis) == target_dim else Verdict.FAIL
            name = f"ff[{x.label(category.generators)}->{y.label(category.generators)}]"
            instances.append(CheckInstance(name, verdict, witness))
    return instances


def _exactness(env: Envelope) -> list[CheckInstance]:
    instances = []
    for k, conflation in enumerate(env.structure.conflations):
        image_i, image_d = env.map(conflation.inflation), env.map(conflation.deflation)
        verdict = Verdict.PASS if is_short_exact(image_i, image_d) else Verdict.FAIL
        witness = {"i": conflation.inflation.to_dict(), "d": conflation.deflation.to_dict()}
        instances.append(CheckInstance(f"exact[{conflation.label or k}]", verdict, witness))
    return instances


def _reflection(env: Envelope, depth: int) -> list[CheckInstance]:
    category = env.category
    structure = env.structure
    candidates: list[EMorphism] = list(structure.deflations)
    for x in category.all_generator_objects():
        for y in category.all_generator_objects():
            candidates.extend(category.hom_basis(x, y))
    instances = []
    for f in candidates:
        w = kernel_in_category(f)
        if w is None or not is_kernel_cokernel_pair(w, f):
            continue
        name = f"reflects[{f.describe()}]"
        witness: dict[str, Any] = {"i": w.to_dict(), "d": f.to_dict()}
        exact = is_short_exact(env.map(w), env.map(f))
        witness["image_short_exact"] = exact
        if exact:
            decision = is_deflation(f, structure, depth)
            witness["is_deflation"] = decision.value
            verdict = _DECISION_VERDICT[decision]
        else:
            verdict = Verdict.PASS
            if structure.kind is StructureKind.SPLIT:
                witness["non_split"] = right_inverse(f) is None
        instances.append(CheckInstance(name, verdict, witness))
    return instances


def check_embedding(env: Envelope, depth: int = DEFAULT_DEPTH) -> CheckReport:
    """Full faithfulness on generators, exactness on conflations, and reflection of conflations."""
    started = time.perf_counter()
    instances = [*_full_faithfulness(env), *_exactness(env), *_reflection(env, depth)]
    report = CheckReport.from_instances("embedding", instances, depth)
    return report.with_elapsed(time.perf_counter() - started)


def weak_kernel(f: EMorphism) -> EMorphism:
    """w: W -> X with f w = 0 through which every g' killed by f factors."""
    context = gamma_context(f.category)
    module, inclusion = kernel(context.yoneda_map(f))
    cover = projective_cover(module)
    w = context.yoneda_preimage(inclusion @ cover.epi, EObject(cover.summands), f.source)
    return w.renamed(f"wk({f.name})" if f.name else "wk")


def annihilated_basis(f: EMorphism, source: EObject) -> list[EMorphism]:
    """A basis of {g': source -> X : f g' = 0}."""
    category = f.category
    basis = category.hom_basis(source, f.source)
    if not basis:
        return []
    composites = [f @ b for b in basis]
    width = len(composites[0].flatten())
    if width == 0:
        return basis
    system = Matrix.from_columns(category.field, [c.flatten() for c in composites], width)
    out = []
    for vector in system.nullspace():
        g = EMorphism.zero(category, source, f.source)
        for b, coeff in zip(basis, vector, strict=True):
            if coeff:
                g = g + b.scale(coeff)
        out.append(g)
    return out


def verify_weak_kernel(f: EMorphism, w: EMorphism) -> list[CheckInstance]:
    """For every generator C' and basis g' with f g' = 0, solve g' = w h."""
    category = f.category
    instances = []
    if not (f @ w).is_zero():
        return [CheckInstance("weak_kernel[composite]", Verdict.FAIL, {"f": f.to_dict(), "w": w.to_dict()})]
    for c in category.all_generator_objects():
        for k, g in enumerate(annihilated_basis(f, c)):
            h = factor_through(g, w)
            name = f"weak_kernel[{c.label(category.generators)}#{k}]"
            verdict = Verdict.PASS if h is not None else Verdict.FAIL
            instances.append(CheckInstance(name, verdict, {"g": g.to_dict()}))
    return instances


def hom_basis_morphisms(category: AddCategory) -> list[EMorphism]:
    """Every hom-basis morphism between generators."""
    return [
        b
        for x in category.all_generator_objects()
        for y in category.all_generator_objects()
        for b in category.hom_basis(x, y)
    ]


def left_coherence_report(category: AddCategory) -> CheckReport:
    """Every hom-basis morphism between generators has a verified weak kernel."""
    started = time.perf_counter()
    instances = []
    for f in hom_basis_morphisms(category):
        w = weak_kernel(f)
        checks = verify_weak_kernel(f, w)
        verdict = Verdict.PASS if all(c.verdict is Verdict.PASS for c in checks) else Verdict.FAIL
        witness = {"f": f.to_dict(), "w": w.to_dict(), "instances": len(checks)}
        if verdict is Verdict.FAIL:
            witness["failed"] = [c.name for c in checks if c.verdict is Verdict.FAIL]
        instances.append(CheckInstance(f"left_coherent[{f.describe()}]", verdict, witness))
    report = CheckReport.from_instances("left_coherence", instances)
    return report.with_elapsed(time.perf_counter() - started)

