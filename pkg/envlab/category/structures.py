"""Exact structures on E and the three-valued answer of a membership test."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from envlab.category.add_category import AddCategory, EMorphism


class Decision(Enum):
    """Answer of a bounded membership test."""

    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


class StructureKind(Enum):
    """How the conflations of a structure are given."""

    SPLIT = "split"
    AMBIENT = "ambient"
    GENERATED = "generated"


@dataclass(frozen=True, eq=False)
class Conflation:
    """A kernel-cokernel pair A -> B -> C."""

    inflation: EMorphism
    deflation: EMorphism
    label: str = ""

    def opposite(self) -> Conflation:
        """The pair read in the opposite category."""
        return Conflation(self.deflation.opposite(), self.inflation.opposite(), self.label)

    def to_dict(self) -> dict[str, Any]:
        """Serialization with both maps."""
        return {"label": self.label, "i": self.inflation.to_dict(), "d": self.deflation.to_dict()}


@dataclass(frozen=True, eq=False)
class ExactStructure:
    """An exact structure on a category.

    Split structures hold no conflations. Ambient structures list one
    generating conflation per class in Ext^1 between generators, plus the
    classes whose middle term fell outside E. Generated structures are the
    closure of the listed conflations.
    """

    category: AddCategory
    name: str
    kind: StructureKind
    conflations: tuple[Conflation, ...] = ()
    closure_failures: tuple[dict[str, Any], ...] = ()
    cache: dict[Any, Any] = field(default_factory=dict, repr=False)
    lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    @property
    def deflations(self) -> list[EMorphism]:
        """Deflations of the generating conflations."""
        return [c.deflation for c in self.conflations]

    def opposite(self) -> ExactStructure:
        """The structure with conflations (d^op, i^op) on the opposite category."""
        with self.lock:
            if "opposite" not in self.cache:
                dual = ExactStructure(
                    self.category.dual,
                    self.name,
                    self.kind,
                    tuple(c.opposite() for c in self.conflations),
                    self.closure_failures,
                )
                dual.cache["opposite"] = self
                self.cache["opposite"] = dual
            return self.cache["opposite"]

    def to_dict(self) -> dict[str, Any]:
        """Canonical serialization."""
        data: dict[str, Any] = {
            "name": self.name,
            "kind": self.kind.value,
            "conflations": [c.to_dict() for c in self.conflations],
        }
        if self.closure_failures:
            data["closure_failures"] = list(self.closure_failures)
        return data


def split_structure(category: AddCategory, name: str = "split") -> ExactStructure:
    """The split exact structure."""
    return ExactStructure(category, name, StructureKind.SPLIT)


def generated_structure(category: AddCategory, name: str, conflations: tuple[Conflation, ...]) -> ExactStructure:
    """The structure generated by explicit conflations."""
    return ExactStructure(category, name, StructureKind.GENERATED, conflations)
