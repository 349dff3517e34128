"""The right abelian envelope mod(e Gamma e) and the embedding i_R.

i_R is the Yoneda embedding followed by the truncation M -> M e that kills
def(E). The checkers in this package verify its properties instead of
assuming them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from envlab.algebra.matrix import Matrix
from envlab.category.add_category import AddCategory, EMorphism, EObject
from envlab.category.exact_structure import DEFAULT_DEPTH, validate_structure
from envlab.errors import DimensionMismatchError
from envlab.functors.presentation import envelope_map, envelope_object
from envlab.functors.quotient import def_simples, serre_quotient

if TYPE_CHECKING:
    from envlab.algebra.fd_algebra import FDAlgebra
    from envlab.algebra.modules import FDModule, ModMorphism
    from envlab.category.structures import ExactStructure
    from envlab.functors.quotient import DefData, QuotientCtx

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Envelope:
    """A_r(E) = mod(e Gamma e) with i_R."""

    structure: ExactStructure
    def_data: DefData
    quotient: QuotientCtx

    @property
    def category(self) -> AddCategory:
        """The category E."""
        return self.structure.category

    @property
    def algebra(self) -> FDAlgebra:
        """e Gamma e."""
        return self.quotient.algebra

    def obj(self, x: EObject) -> FDModule:
        """i_R(X)."""
        return envelope_object(self.quotient, x)

    def map(self, f: EMorphism) -> ModMorphism:
        """i_R(f)."""
        return envelope_map(self.quotient, f)

    def preimage(self, phi: ModMorphism, source: EObject, target: EObject) -> EMorphism | None:
        """Some f: source -> target of E with i_R(f) = phi, or None."""
        basis = self.category.hom_basis(source, target)
        width = len(phi.flatten())
        field = self.category.field
        if width == 0:
            return EMorphism.zero(self.category, source, target)
        if not basis:
            return EMorphism.zero(self.category, source, target) if phi.is_zero() else None
        system = Matrix.from_columns(field, [self.map(b).flatten() for b in basis], width)
        solution = system.solve(Matrix.from_columns(field, [phi.flatten()], width))
        if solution is None:
            return None
        result = EMorphism.zero(self.category, source, target)
        for b, coeff in zip(basis, solution.column(0), strict=True):
            if coeff:
                result = result + b.scale(coeff)
        return result

    def summary(self) -> dict[str, Any]:
        """Dimensions and the i_R table for reports."""
        generators = self.category.generators
        return {
            "structure": self.structure.name,
            "kind": self.structure.kind.value,
            "dim_gamma": self.category.gamma.dim,
            "dim_envelope_algebra": self.algebra.dim,
            "simples": self.category.gamma.num_slots,
            "envelope_simples": self.algebra.num_slots,
            "def_simples": self.def_data.labels,
            "i_R": {
                name: dict(zip(self.algebra.slots, self.obj(EObject.generator(k)).dims, strict=True))
                for k, name in enumerate(generators)
            },
        }


def construct_envelope(
    structure: ExactStructure,
    *,
    validate: bool = False,
    depth: int = DEFAULT_DEPTH,
) -> Envelope:
    """Build A_r(E) from def(E); with ``validate`` the structure is checked first and failures raise."""
    if validate:
        validate_structure(structure, depth, raise_on_failure=True)
    def_data = def_simples(structure)
    envelope = Envelope(structure, def_data, serre_quotient(def_data))
    logger.info(
        "Envelope of %s: dim Gamma = %d, dim e Gamma e = %d",
        structure.name,
        structure.category.gamma.dim,
        envelope.algebra.dim,
    )
    return envelope


def dualize(category: AddCategory, structure: ExactStructure) -> tuple[AddCategory, ExactStructure]:
    """The opposite category with the opposite structure."""
    if structure.category is not category:
        msg = "Structure does not live on the given category"
        raise DimensionMismatchError(msg)
    return category.dual, structure.opposite()


def left_envelope(structure: ExactStructure) -> Envelope:
    """A_l(E), presented as the right envelope of the opposite structure."""
    return construct_envelope(structure.opposite())
