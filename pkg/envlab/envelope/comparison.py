"""Comparison of structures, the split identity, and cross-checks of the quotient."""

from __future__ import annotations

import logging
import time
from typing import TYPE_CHECKING, Any

from envlab.algebra.modules import projective, simple
from envlab.category.exact_structure import DEFAULT_DEPTH, is_deflation
from envlab.category.structures import Decision, split_structure
from envlab.envelope.envelope import construct_envelope
from envlab.errors import BadInputError, SearchExhaustedError
from envlab.functors.quotient import (
    gabriel_hom,
    is_def_closed,
    is_effaceable_shadow,
    is_lex,
    quotient_apply,
    quotient_hom_dimension,
    random_module,
)
from envlab.verdicts import CheckInstance, CheckReport, Verdict

if TYPE_CHECKING:
    import random
    from collections.abc import Sequence

    from envlab.algebra.modules import FDModule, ModMorphism
    from envlab.category.add_category import AddCategory
    from envlab.category.structures import ExactStructure
    from envlab.envelope.envelope import Envelope

logger = logging.getLogger(__name__)


def _truncate(small: Envelope, large: Envelope, module: FDModule) -> tuple[tuple[int, ...], list[Any]]:
    """Dimensions and actions of M e' for M over e Gamma e of ``small``, in the basis of ``large``."""
    positions = [small.quotient.kept.index(g) for g in large.quotient.kept]
    dims = tuple(module.dims[p] for p in positions)
    actions = [module.actions[small.quotient.embedding.index(b)] for b in large.quotient.embedding]
    return dims, actions


def _truncate_map(small: Envelope, large: Envelope, f: ModMorphism) -> tuple[int, ...]:
    positions = [small.quotient.kept.index(g) for g in large.quotient.kept]
    return tuple(f.ranks()[p] for p in positions)


def compare_structures(small: ExactStructure, large: ExactStructure, depth: int = DEFAULT_DEPTH) -> CheckReport:
    """Verify s <= s': D(s) <= D(s'), and truncation from A_r(s) to A_r(s') commutes with i_R."""
    started = time.perf_counter()
    if small.category is not large.category:
        msg = f"Structures {small.name} and {large.name} live on different categories"
        raise BadInputError(msg)
    instances = []
    for conflation in small.conflations:
        decision = is_deflation(conflation.deflation, large, depth)
        name = f"contained[{conflation.label}]"
        if decision is Decision.NO:
            msg = f"Conflation {conflation.label} of {small.name} is not a conflation of {large.name}"
            logger.error(msg)
            raise BadInputError(msg)
        witness = {"d": conflation.deflation.to_dict()}
        if decision is Decision.INCONCLUSIVE:
            witness.update({"code": SearchExhaustedError.code, "depth": depth})
            instances.append(CheckInstance(name, Verdict.INCONCLUSIVE, witness))
        else:
            instances.append(CheckInstance(name, Verdict.PASS, witness))

    env_small, env_large = construct_envelope(small), construct_envelope(large)
    d_small, d_large = set(env_small.def_data.simples), set(env_large.def_data.simples)
    containment = {"small": env_small.def_data.labels, "large": env_large.def_data.labels}
    verdict = Verdict.PASS if d_small <= d_large else Verdict.FAIL
    instances.append(CheckInstance("def_containment", verdict, containment))

    if d_small <= d_large:
        category = small.category
        for x in category.all_generator_objects():
            dims, actions = _truncate(env_small, env_large, env_small.obj(x))
            direct = env_large.obj(x)
            ok = dims == direct.dims and all(a == b for a, b in zip(actions, direct.actions, strict=True))
            label = x.label(category.generators)
            witness = {"truncated": list(dims), "direct": list(direct.dims)}
            instances.append(CheckInstance(f"commutes[{label}]", Verdict.PASS if ok else Verdict.FAIL, witness))
        for conflation in large.conflations:
            image_i, image_d = env_small.map(conflation.inflation), env_small.map(conflation.deflation)
            ranks_i = _truncate_map(env_small, env_large, image_i)
            ranks_d = _truncate_map(env_small, env_large, image_d)
            middle, _ = _truncate(env_small, env_large, image_d.source)
            target, _ = _truncate(env_small, env_large, image_d.target)
            ok = all(
                rd == t and m - rd == ri for m, t, ri, rd in zip(middle, target, ranks_i, ranks_d, strict=True)
            )
            witness = {"i": conflation.inflation.to_dict(), "d": conflation.deflation.to_dict()}
            verdict = Verdict.PASS if ok else Verdict.FAIL
            instances.append(CheckInstance(f"exact_image[{conflation.label}]", verdict, witness))

    summary = {
        "dim_small": env_small.algebra.dim,
        "dim_large": env_large.algebra.dim,
        "def_small": env_small.def_data.labels,
        "def_large": env_large.def_data.labels,
    }
    report = CheckReport.from_instances(f"compare[{small.name}<={large.name}]", instances, depth, summary=summary)
    logger.info("Comparison %s: %s", report.name, report.verdict.value)
    return report.with_elapsed(time.perf_counter() - started)


def split_identity_check(category: AddCategory) -> CheckReport:
    """The split structure has no def simples and its envelope is mod Gamma."""
    started = time.perf_counter()
    env = construct_envelope(split_structure(category))
    gamma = category.gamma
    witness = {"dim_gamma": gamma.dim, "dim_envelope_algebra": env.algebra.dim, "def_simples": env.def_data.labels}
    checks = [
        ("e_is_one", not env.def_data.simples and env.quotient.kept == tuple(range(gamma.num_slots))),
        ("same_dimension", env.algebra.dim == gamma.dim),
        ("same_simples", env.algebra.num_slots == gamma.num_slots),
        ("same_algebra", env.algebra.isomorphism_to(gamma) is not None),
    ]
    instances = [CheckInstance(name, Verdict.PASS if ok else Verdict.FAIL, witness) for name, ok in checks]
    return CheckReport.from_instances("split_identity", instances).with_elapsed(time.perf_counter() - started)


def _gamma_test_modules(env: Envelope, rng: random.Random, count: int) -> list[tuple[str, FDModule]]:
    gamma = env.category.gamma
    modules = [(f"S[{slot}]", simple(gamma, s)) for s, slot in enumerate(gamma.slots)]
    modules += [(f"P[{slot}]", projective(gamma, s)) for s, slot in enumerate(gamma.slots)]
    modules += [(f"random#{k}", random_module(gamma, rng)) for k in range(count)]
    return modules


def lex_def_closed_check(
    env: Envelope,
    modules: Sequence[tuple[str, FDModule]] | None = None,
    rng: random.Random | None = None,
    count: int = 10,
) -> CheckReport:
    """Left exact modules are the def-closed ones, and the modules killed by truncation are those built from D."""
    started = time.perf_counter()
    if modules is None:
        if rng is None:
            msg = "lex_def_closed_check needs modules or a random generator"
            raise BadInputError(msg)
        modules = _gamma_test_modules(env, rng, count)
    instances = []
    for label, module in modules:
        lex, closed = is_lex(module, env.structure), is_def_closed(env.def_data, module)
        witness = {"dims": module.dimension_vector(), "lex": lex, "def_closed": closed}
        instances.append(CheckInstance(f"lex[{label}]", Verdict.PASS if lex == closed else Verdict.FAIL, witness))
        shadow, killed = is_effaceable_shadow(env.def_data, module), quotient_apply(env.quotient, module).is_zero()
        witness = {"dims": module.dimension_vector(), "shadow": shadow, "killed": killed}
        verdict = Verdict.PASS if shadow == killed else Verdict.FAIL
        instances.append(CheckInstance(f"shadow[{label}]", verdict, witness))
    return CheckReport.from_instances("lex_def_closed", instances).with_elapsed(time.perf_counter() - started)


def oracle_check(env: Envelope, rng: random.Random, instances: int = 100) -> CheckReport:
    """gabriel_hom against hom dimensions over e Gamma e on seeded random module pairs."""
    started = time.perf_counter()
    gamma = env.category.gamma
    checked = []
    mismatches = 0
    for k in range(instances):
        m, n = random_module(gamma, rng), random_module(gamma, rng)
        by_gabriel = gabriel_hom(env.def_data, m, n)
        by_truncation = quotient_hom_dimension(env.quotient, m, n)
        witness = {"m": m.to_dict(), "n": n.to_dict(), "gabriel": by_gabriel, "truncated": by_truncation}
        verdict = Verdict.PASS if by_gabriel == by_truncation else Verdict.FAIL
        mismatches += verdict is Verdict.FAIL
        checked.append(CheckInstance(f"oracle[{k:03d}]", verdict, witness if verdict is Verdict.FAIL else {}))
    summary = {"pairs": instances, "mismatches": mismatches}
    report = CheckReport.from_instances("oracle", checked, summary=summary)
    return report.with_elapsed(time.perf_counter() - started)
