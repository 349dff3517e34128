"""Ext-kernels and left Ext-coherence."""

from __future__ import annotations

import logging
import time
from typing import TYPE_CHECKING

from envlab.algebra.homological import cokernel
from envlab.category.add_category import factor_through
from envlab.category.deflations import DEFAULT_MAX_CANDIDATES, enumerator_for
from envlab.category.exact_structure import DEFAULT_DEPTH
from envlab.envelope.embedding import annihilated_basis, hom_basis_morphisms, weak_kernel
from envlab.errors import SearchExhaustedError
from envlab.functors.gamma import gamma_context
from envlab.functors.quotient import DefData, def_simples
from envlab.verdicts import CheckInstance, CheckReport, Verdict

if TYPE_CHECKING:
    from envlab.category.add_category import EMorphism
    from envlab.category.structures import ExactStructure

logger = logging.getLogger(__name__)


def def_data_for(structure: ExactStructure) -> DefData:
    """def(E) of a structure, computed once."""
    with structure.lock:
        if "def_data" not in structure.cache:
            structure.cache["def_data"] = def_simples(structure)
        return structure.cache["def_data"]


def _obstructed(g: EMorphism, g_prime: EMorphism, simples: tuple[int, ...]) -> bool:
    # g' d factors through g iff Y(d) lands in ker(q Y(g')); coker Y(d) only has factors in D
    context = gamma_context(g.category)
    _, q = cokernel(context.yoneda_map(g))
    composite = q @ context.yoneda_map(g_prime)
    return any(rank for slot, rank in enumerate(composite.ranks()) if slot not in simples)


def ext_kernel_verify(
    g: EMorphism,
    f: EMorphism,
    structure: ExactStructure,
    depth: int = DEFAULT_DEPTH,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> CheckReport:
    """Whether g is an Ext-kernel of f: every g' killed by f satisfies g' d = g h for some deflation d."""
    category = structure.category
    name = f"ext_kernel[{g.describe()} of {f.describe()}]"
    if not (f @ g).is_zero():
        witness = {"reason": "f o g is not zero", "f": f.to_dict(), "g": g.to_dict()}
        instance = CheckInstance(name, Verdict.FAIL, witness)
        return CheckReport.from_instances(name, [instance], depth)

    simples = def_data_for(structure).simples
    enumerator = enumerator_for(structure, depth, max_candidates)
    instances = []
    for c in category.all_generator_objects():
        label = c.label(category.generators)
        for k, g_prime in enumerate(annihilated_basis(f, c)):
            instance_name = f"{name}[{label}#{k}]"
            witness = {"g_prime": g_prime.to_dict()}
            found = None
            for d in enumerator.onto(c):
                h = factor_through(g_prime @ d, g)
                if h is not None:
                    found = (d, h)
                    break
            if found is not None:
                witness.update({"d": found[0].to_dict(), "h": found[1].to_dict()})
                instances.append(CheckInstance(instance_name, Verdict.PASS, witness))
            elif _obstructed(g, g_prime, simples):
                witness["reason"] = "image of g' in coker Y(g) has a factor outside def(E)"
                instances.append(CheckInstance(instance_name, Verdict.FAIL, witness))
            else:
                witness.update({"code": SearchExhaustedError.code, "depth": depth})
                instances.append(CheckInstance(instance_name, Verdict.INCONCLUSIVE, witness))
    return CheckReport.from_instances(name, instances, depth)


def ext_coherence_report(
    structure: ExactStructure,
    depth: int = DEFAULT_DEPTH,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> CheckReport:
    """Every hom-basis morphism between generators has its weak kernel verified as an Ext-kernel."""
    started = time.perf_counter()
    instances = []
    for f in hom_basis_morphisms(structure.category):
        w = weak_kernel(f)
        report = ext_kernel_verify(w, f, structure, depth, max_candidates)
        witness = {"f": f.to_dict(), "w": w.to_dict(), "checked": report.fraction()}
        if report.counterexamples:
            witness["counterexample"] = report.counterexamples[0].to_dict()
        instances.append(CheckInstance(f"ext_coherent[{f.describe()}]", report.verdict, witness))
    report = CheckReport.from_instances("ext_coherence", instances, depth)
    logger.info("Ext-coherence of %s: %s (%s)", structure.name, report.verdict.value, report.fraction())
    return report.with_elapsed(time.perf_counter() - started)
