"""Exact ground fields: the rationals and prime fields."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING, Any

from sympy import GF, QQ, Float, Rational, isprime

from envlab.errors import BadInputError

if TYPE_CHECKING:
    import random

logger = logging.getLogger(__name__)


class FieldKind(Enum):
    """Supported ground fields."""

    RATIONALS = "rationals"
    PRIME = "prime"


@dataclass(frozen=True)
class Field:
    """An exact field, backed by a sympy ground domain.

    Elements are the domain's own element type (``QQ`` rationals or
    ``GF(p)`` residues). No floating point value is ever produced.
    """

    kind: FieldKind
    characteristic: int = 0

    def __post_init__(self) -> None:
        """Reject characteristics that do not describe a field."""
        if self.kind is FieldKind.RATIONALS and self.characteristic != 0:
            msg = f"The rationals have characteristic 0, got {self.characteristic}"
            logger.error(msg)
            raise BadInputError(msg)
        if self.kind is FieldKind.PRIME and not (self.characteristic > 1 and isprime(self.characteristic)):
            msg = f"field.p must be prime, got {self.characteristic}"
            logger.error(msg)
            raise BadInputError(msg)

    @classmethod
    def rationals(cls) -> Field:
        """The field of rational numbers."""
        return cls(FieldKind.RATIONALS, 0)

    @classmethod
    def prime(cls, p: int) -> Field:
        """The prime field with ``p`` elements."""
        return cls(FieldKind.PRIME, p)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Field:
        """Build a field from its ``{"kind": ..., "p": ...}`` description."""
        kind = data.get("kind")
        if kind == FieldKind.RATIONALS.value:
            return cls.rationals()
        if kind == FieldKind.PRIME.value:
            p = data.get("p")
            if not isinstance(p, int) or isinstance(p, bool):
                msg = "field.p: expected an integer"
                raise BadInputError(msg)
            return cls.prime(p)
        msg = f"field.kind: expected 'rationals' or 'prime', got {kind!r}"
        raise BadInputError(msg)

    def to_dict(self) -> dict[str, Any]:
        """Serialize to the input-file form."""
        if self.kind is FieldKind.RATIONALS:
            return {"kind": FieldKind.RATIONALS.value}
        return {"kind": FieldKind.PRIME.value, "p": self.characteristic}

    @cached_property
    def domain(self) -> Any:  # noqa: ANN401
        """The sympy ground domain."""
        if self.kind is FieldKind.RATIONALS:
            return QQ
        return GF(self.characteristic, symmetric=False)

    @property
    def zero(self) -> Any:  # noqa: ANN401
        """Additive identity."""
        return self.domain.zero

    @property
    def one(self) -> Any:  # noqa: ANN401
        """Multiplicative identity."""
        return self.domain.one

    def __call__(self, value: Any) -> Any:  # noqa: ANN401
        """Convert an int, a ``"a/b"`` string or a domain element into the field."""
        if isinstance(value, bool):
            msg = f"Cannot use boolean {value!r} as a field element"
            raise BadInputError(msg)
        if isinstance(value, (float, Float)):
            msg = f"Cannot use inexact value {value!r} as a field element"
            raise BadInputError(msg)
        if isinstance(value, int):
            return self.domain(value)
        if isinstance(value, (str, Rational)):
            try:
                rational = Rational(value)
            except (TypeError, ValueError, SyntaxError) as e:
                msg = f"Cannot parse {value!r} as an exact scalar"
                raise BadInputError(msg) from e
            numerator = self.domain(int(rational.p))
            denominator = self.domain(int(rational.q))
            if not denominator:
                msg = f"Denominator of {value!r} vanishes in characteristic {self.characteristic}"
                raise BadInputError(msg)
            return numerator / denominator
        return self.domain.convert(value)

    def to_json(self, value: Any) -> int | str:  # noqa: ANN401
        """Render an element as an int, or as ``"a/b"`` for non-integral rationals."""
        if self.kind is FieldKind.PRIME:
            return int(self.domain.to_int(value))
        rational = self.domain.to_sympy(value)
        if rational.q == 1:
            return int(rational.p)
        return f"{rational.p}/{rational.q}"

    def random_element(self, rng: random.Random, bound: int = 3) -> Any:  # noqa: ANN401
        """A small seeded random element, used by the fuzz suites."""
        return self.domain(rng.randint(-bound, bound))

    def __str__(self) -> str:
        """Human-readable name."""
        if self.kind is FieldKind.RATIONALS:
            return "QQ"
        return f"GF({self.characteristic})"
