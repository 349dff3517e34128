"""Exact linear algebra, finite-dimensional algebras and their modules."""

from envlab.algebra.fd_algebra import FDAlgebra
from envlab.algebra.field import Field, FieldKind
from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import FDModule, ModMorphism, direct_sum, projective, simple, zero_module
from envlab.algebra.quiver import Quiver, Relation, build_algebra

__all__ = [
    "FDAlgebra",
    "FDModule",
    "Field",
    "FieldKind",
    "Matrix",
    "ModMorphism",
    "Quiver",
    "Relation",
    "build_algebra",
    "direct_sum",
    "projective",
    "simple",
    "zero_module",
]
