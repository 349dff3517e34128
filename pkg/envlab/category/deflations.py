"""Bounded enumeration of deflations of a generated exact structure.

Every deflation onto C arises from generating deflations by direct sums,
base changes, composites and split epimorphisms. The enumeration builds
these up to a depth and a candidate cap, so it yields certificates but
never a proof of absence.
"""

from __future__ import annotations

import itertools
import logging
from typing import TYPE_CHECKING

from envlab.category.add_category import EMorphism, EObject
from envlab.category.limits import pullback_in_category

if TYPE_CHECKING:
    from envlab.category.structures import ExactStructure

logger = logging.getLogger(__name__)

DEFAULT_MAX_CANDIDATES = 256


class DeflationEnumerator:
    """Memoised enumeration for one structure, depth and cap."""

    def __init__(self, structure: ExactStructure, depth: int, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> None:
        """Bind to a structure; nothing is computed until :meth:`onto` is called."""
        self.structure = structure
        self.category = structure.category
        self.depth = depth
        self.max_candidates = max_candidates
        self.truncated: set[tuple[int, ...]] = set()
        self._atoms: dict[int, list[EMorphism]] = {}
        self._memo: dict[tuple[tuple[int, ...], int], list[EMorphism]] = {}

    def atoms(self, generator: int) -> list[EMorphism]:
        """Deflations onto a single generator: identity, generating ones and their base changes."""
        if generator in self._atoms:
            return self._atoms[generator]
        category = self.category
        target = EObject.generator(generator)
        found = [EMorphism.identity(category, target)]
        for conflation in self.structure.conflations:
            d = conflation.deflation
            if d.target == target:
                found.append(d.renamed(conflation.label or d.name))
            basis = category.hom_basis(target, d.target)
            along = list(basis)
            if len(basis) > 1:
                total = basis[0]
                for b in basis[1:]:
                    total = total + b
                along.append(total.renamed("sum"))
            for g in along:
                square = pullback_in_category(d, g)
                if square is not None:
                    found.append(square.to_base.renamed(f"pb({conflation.label}, {g.name})"))
        self._atoms[generator] = _dedupe(found)
        return self._atoms[generator]

    def onto(self, target: EObject) -> list[EMorphism]:
        """Deflations onto ``target`` up to the enumerator depth."""
        with self.structure.lock:
            return self._onto(target, self.depth)

    def _onto(self, target: EObject, depth: int) -> list[EMorphism]:
        key = (target.summands, depth)
        if key in self._memo:
            return self._memo[key]
        category = self.category
        if target.is_zero():
            result = [EMorphism.identity(category, target)]
            self._memo[key] = result
            return result

        found: list[EMorphism] = [EMorphism.identity(category, target)]
        found.extend(c.deflation.renamed(c.label) for c in self.structure.conflations if c.deflation.target == target)
        choices = [self.atoms(g) for g in target.summands]
        for combo in itertools.product(*(range(len(c)) for c in choices)):
            if sum(1 for k in combo if k) > depth:
                continue
            if not any(combo):
                continue
            found.append(EMorphism.direct_sum([choices[r][k] for r, k in enumerate(combo)]))
        found.extend(self._split_epis(target, depth))
        found = _dedupe(found)

        if depth >= 2:  # noqa: PLR2004
            base = [f for f in found if not f.is_identity()]
            composites = [
                (d @ e).renamed(f"{d.name} o {e.name}" if d.name and e.name else "composite")
                for d in base
                for e in self._onto(d.source, depth - 1)
                if not e.is_identity()
            ]
            found.extend(composites)
            found = _dedupe(found)

        if len(found) > self.max_candidates:
            logger.debug("Deflation search onto %s truncated at %d", target.summands, self.max_candidates)
            self.truncated.add(target.summands)
            found = found[: self.max_candidates]
        self._memo[key] = found
        return found

    def _split_epis(self, target: EObject, depth: int) -> list[EMorphism]:
        category = self.category
        out = []
        for size in range(1, depth + 1):
            for extra in itertools.combinations_with_replacement(range(category.num_generators), size):
                z = EObject(extra)
                projection = EMorphism.hstack(
                    [EMorphism.identity(category, target), EMorphism.zero(category, z, target)]
                )
                out.append(projection.renamed(f"split[+{z.label(category.generators)}]"))
        return out


def enumerate_deflations(
    target: EObject,
    structure: ExactStructure,
    depth: int,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> list[EMorphism]:
    """Deflations of ``structure`` onto ``target`` reachable within ``depth``."""
    return enumerator_for(structure, depth, max_candidates).onto(target)


def enumerator_for(
    structure: ExactStructure,
    depth: int,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> DeflationEnumerator:
    """The cached enumerator of a structure for a depth and cap."""
    key = ("enumerator", depth, max_candidates)
    with structure.lock:
        if key not in structure.cache:
            structure.cache[key] = DeflationEnumerator(structure, depth, max_candidates)
        return structure.cache[key]


def _dedupe(morphisms: list[EMorphism]) -> list[EMorphism]:
    seen = set()
    out = []
    for f in morphisms:
        key = f.key()
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out
