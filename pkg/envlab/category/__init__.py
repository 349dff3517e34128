"""Additive categories add(G) and their exact structures."""

from envlab.category.add_category import AddCategory, EMorphism, EObject
from envlab.category.structures import (
    Conflation,
    Decision,
    ExactStructure,
    StructureKind,
    generated_structure,
    split_structure,
)

__all__ = [
    "AddCategory",
    "Conflation",
    "Decision",
    "EMorphism",
    "EObject",
    "ExactStructure",
    "StructureKind",
    "generated_structure",
    "split_structure",
]
