"""Membership tests for deflations and inflations, and the axiom validator."""

from __future__ import annotations

import itertools
import logging
from typing import TYPE_CHECKING, Any

from envlab.category.add_category import EMorphism, EObject, factor_through
from envlab.category.ambient import ambient_deflation_decision
from envlab.category.deflations import DEFAULT_MAX_CANDIDATES, enumerator_for
from envlab.category.limits import (
    is_generator_epi,
    is_kernel_cokernel_pair,
    pullback_in_category,
    right_inverse,
)
from envlab.category.structures import Decision, ExactStructure, StructureKind
from envlab.errors import AxiomFailureError, DimensionMismatchError, SearchExhaustedError
from envlab.verdicts import CheckInstance, CheckReport, Verdict

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 2

_DECISION_VERDICT = {Decision.YES: Verdict.PASS, Decision.NO: Verdict.FAIL, Decision.INCONCLUSIVE: Verdict.INCONCLUSIVE}


def is_conflation(i: EMorphism, d: EMorphism) -> bool:
    """True when (i, d) is a kernel-cokernel pair of E."""
    if i.category is not d.category or i.target != d.source:
        msg = f"Conflation maps are not composable: {i.describe()} then {d.describe()}"
        raise DimensionMismatchError(msg)
    return is_kernel_cokernel_pair(i, d)


def deflation_certificate(
    f: EMorphism,
    structure: ExactStructure,
    depth: int = DEFAULT_DEPTH,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> EMorphism | None:
    """An enumerated deflation d onto the target of f with d = f o beta, or None."""
    for d in enumerator_for(structure, depth, max_candidates).onto(f.target):
        if factor_through(d, f) is not None:
            return d
    return None


def is_deflation(
    f: EMorphism,
    structure: ExactStructure,
    depth: int = DEFAULT_DEPTH,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> Decision:
    """Three-valued deflation membership.

    Split and ambient structures are decided exactly. For generated
    structures a certificate from the bounded enumeration gives YES, and
    NO is only returned for maps that are not epimorphisms of E.
    """
    if f.category is not structure.category:
        msg = "Morphism and structure live on different categories"
        raise DimensionMismatchError(msg)
    if not is_generator_epi(f):
        return Decision.NO
    if structure.kind is StructureKind.SPLIT:
        return Decision.YES if right_inverse(f) is not None else Decision.NO
    if structure.kind is StructureKind.AMBIENT:
        return ambient_deflation_decision(f)
    if right_inverse(f) is not None:
        return Decision.YES
    if deflation_certificate(f, structure, depth, max_candidates) is not None:
        return Decision.YES
    return Decision.INCONCLUSIVE


def is_inflation(
    f: EMorphism,
    structure: ExactStructure,
    depth: int = DEFAULT_DEPTH,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> Decision:
    """Dual of :func:`is_deflation`."""
    return is_deflation(f.opposite(), structure.opposite(), depth, max_candidates)


def require_deflation(
    f: EMorphism,
    structure: ExactStructure,
    depth: int = DEFAULT_DEPTH,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> None:
    """Raise unless f is certified as a deflation."""
    decision = is_deflation(f, structure, depth, max_candidates)
    if decision is Decision.NO:
        msg = f"{f.describe()} is not a deflation of {structure.name}"
        raise AxiomFailureError(msg, {"morphism": f.to_dict()})
    if decision is Decision.INCONCLUSIVE:
        msg = f"No deflation certificate for {f.describe()} at depth {depth}"
        raise SearchExhaustedError(msg)


def checked_deflations(structure: ExactStructure) -> list[EMorphism]:
    """Deflations the validator probes: generating ones, or generator projections for split structures."""
    category = structure.category
    if structure.kind is not StructureKind.SPLIT:
        return structure.deflations
    out = []
    for c, z in itertools.product(range(category.num_generators), repeat=2):
        target, extra = EObject.generator(c), EObject.generator(z)
        projection = EMorphism.hstack([EMorphism.identity(category, target), EMorphism.zero(category, extra, target)])
        out.append(projection.renamed(f"split[{category.generators[c]}+{category.generators[z]}]"))
    return out


def _membership_instance(name: str, decision: Decision, witness: dict[str, Any], depth: int) -> CheckInstance:
    witness = dict(witness)
    if decision is Decision.INCONCLUSIVE:
        witness.update({"code": SearchExhaustedError.code, "depth": depth})
    elif decision is Decision.NO:
        witness["code"] = AxiomFailureError.code
    return CheckInstance(name, _DECISION_VERDICT[decision], witness)


def _axiom_instances(
    structure: ExactStructure,
    depth: int,
    max_candidates: int,
    prefix: str = "",
) -> Iterator[CheckInstance]:
    category = structure.category
    for generator in category.all_generator_objects():
        identity = EMorphism.identity(category, generator)
        decision = is_deflation(identity, structure, depth, max_candidates)
        label = generator.label(category.generators)
        yield _membership_instance(f"{prefix}identity[{label}]", decision, {"object": label}, depth)

    enumerator = enumerator_for(structure, 1, max_candidates)
    for d in checked_deflations(structure):
        for e in enumerator.onto(d.source):
            if e.is_identity():
                continue
            composite = d @ e
            decision = is_deflation(composite, structure, depth, max_candidates)
            name = f"{prefix}composite[{d.name} o {e.name}]"
            yield _membership_instance(name, decision, {"outer": d.to_dict(), "inner": e.to_dict()}, depth)

        for z in category.all_generator_objects():
            basis = category.hom_basis(z, d.target)
            along = list(basis)
            if len(basis) > 1:
                total = basis[0]
                for b in basis[1:]:
                    total = total + b
                along.append(total.renamed("sum"))
            for g in along:
                name = f"{prefix}pullback[{d.name} along {g.name}]"
                witness = {"deflation": d.to_dict(), "along": g.to_dict()}
                square = pullback_in_category(d, g)
                if square is None:
                    witness.update({"code": AxiomFailureError.code, "reason": "pullback does not exist in E"})
                    yield CheckInstance(name, Verdict.FAIL, witness)
                    continue
                decision = is_deflation(square.to_base, structure, depth, max_candidates)
                witness["pulled_back"] = square.to_base.to_dict()
                yield _membership_instance(name, decision, witness, depth)


def validate_structure(
    structure: ExactStructure,
    depth: int = DEFAULT_DEPTH,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    *,
    raise_on_failure: bool = False,
) -> CheckReport:
    """Check the exact-category axioms and their duals on generator-level instances.

    Declared pairs must be kernel-cokernel pairs; identities, composites with
    depth-one deflations and pullbacks along hom-basis morphisms (and their
    sum) must stay deflations. The same checks run on the opposite structure.
    """
    instances: list[CheckInstance] = []
    for k, conflation in enumerate(structure.conflations):
        name = f"conflation[{conflation.label or k}]"
        witness = {"i": conflation.inflation.to_dict(), "d": conflation.deflation.to_dict()}
        if is_conflation(conflation.inflation, conflation.deflation):
            instances.append(CheckInstance(name, Verdict.PASS, witness))
        else:
            witness["code"] = AxiomFailureError.code
            instances.append(CheckInstance(name, Verdict.FAIL, witness))

    if all(i.verdict is Verdict.PASS for i in instances):
        instances.extend(_axiom_instances(structure, depth, max_candidates))
        instances.extend(_axiom_instances(structure.opposite(), depth, max_candidates, prefix="dual:"))

    summary: dict[str, Any] = {}
    if structure.kind is StructureKind.AMBIENT:
        summary["extension_closed"] = [c.label for c in structure.conflations]
        for failure in structure.closure_failures:
            instances.append(CheckInstance(f"extension_closure[{failure['class']}]", Verdict.FAIL, dict(failure)))

    report = CheckReport.from_instances(f"validate[{structure.name}]", instances, depth, summary=summary)
    logger.info("Structure %s validated: %s (%s)", structure.name, report.verdict.value, report.fraction())
    if raise_on_failure and report.verdict is Verdict.FAIL:
        first = report.counterexamples[0]
        msg = f"Structure {structure.name} violates an axiom at {first.name}"
        logger.error(msg)
        raise AxiomFailureError(msg, {"name": first.name, **first.witness})
    return report
