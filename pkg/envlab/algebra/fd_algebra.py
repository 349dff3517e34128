"""Finite-dimensional split basic algebras given by structure constants."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Any

from envlab.algebra.matrix import Matrix
from envlab.errors import BadInputError

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from envlab.algebra.field import Field
    from envlab.algebra.quiver import Quiver

logger = logging.getLogger(__name__)

Vector = tuple[Any, ...]
Product = tuple[tuple[int, Any], ...]


@dataclass(frozen=True, eq=False)
class FDAlgebra:
    """A split basic algebra with a homogeneous basis.

    Every basis element b satisfies e_left(b) * b * e_right(b) = b for exactly one
    pair of slots; the slot idempotents are themselves basis elements, and the
    remaining basis elements span the radical. A right module sends slot
    left(b) to slot right(b) under b.
    """

    field: Field
    labels: tuple[str, ...]
    slots: tuple[str, ...]
    idempotents: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    table: tuple[tuple[Product, ...], ...]
    quiver: Quiver | None = None
    normal_forms: Mapping[tuple[str, ...], Vector] | None = field(default=None, repr=False)

    @classmethod
    def from_products(
        cls,
        base_field: Field,
        labels: Sequence[str],
        slots: Sequence[str],
        idempotents: Sequence[int],
        products: Mapping[tuple[int, int], Mapping[int, Any]],
        quiver: Quiver | None = None,
        normal_forms: Mapping[tuple[str, ...], Vector] | None = None,
    ) -> FDAlgebra:
        """Assemble an algebra from sparse products and validate every axiom."""
        n = len(labels)
        if len(set(labels)) != n:
            msg = "algebra.basis: labels must be unique"
            raise BadInputError(msg)
        if len(set(idempotents)) != len(idempotents) or len(idempotents) != len(slots):
            msg = "algebra.idempotents: need one distinct basis element per slot"
            raise BadInputError(msg)
        table = tuple(
            tuple(
                tuple((k, c) for k, c in sorted(products.get((i, j), {}).items()) if c)
                for j in range(n)
            )
            for i in range(n)
        )
        left, right = cls._homogeneity(labels, idempotents, table)
        algebra = cls(
            field=base_field,
            labels=tuple(labels),
            slots=tuple(slots),
            idempotents=tuple(idempotents),
            left=left,
            right=right,
            table=table,
            quiver=quiver,
            normal_forms=normal_forms,
        )
        algebra.validate()
        return algebra

    @classmethod
    def from_structure_constants(
        cls,
        base_field: Field,
        labels: Sequence[str],
        table: Mapping[str, Mapping[str, Mapping[str, Any]]],
        idempotents: Sequence[str],
    ) -> FDAlgebra:
        """Raw constructor: ``table[a][b]`` maps basis labels to coefficients of a*b."""
        index = {label: i for i, label in enumerate(labels)}
        products: dict[tuple[int, int], dict[int, Any]] = {}
        for a, row in table.items():
            for b, terms in row.items():
                for c, coeff in terms.items():
                    if a not in index or b not in index or c not in index:
                        msg = f"algebra.table.{a}.{b}: unknown basis label {c if c not in index else a}"
                        raise BadInputError(msg)
                    value = base_field(coeff)
                    if value:
                        products.setdefault((index[a], index[b]), {})[index[c]] = value
        missing = [e for e in idempotents if e not in index]
        if missing:
            msg = f"algebra.idempotents: unknown labels {', '.join(missing)}"
            raise BadInputError(msg)
        return cls.from_products(base_field, labels, list(idempotents), [index[e] for e in idempotents], products)

    @staticmethod
    def _homogeneity(
        labels: Sequence[str],
        idempotents: Sequence[int],
        table: tuple[tuple[Product, ...], ...],
    ) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Find the slot pair of each basis element, rejecting inhomogeneous bases."""
        left: list[int] = []
        right: list[int] = []
        for b in range(len(labels)):
            lefts = [s for s, e in enumerate(idempotents) if table[e][b]]
            rights = [s for s, e in enumerate(idempotents) if table[b][e]]
            if len(lefts) != 1 or len(rights) != 1:
                msg = f"Basis element {labels[b]} is not homogeneous for the idempotent decomposition"
                logger.error(msg)
                raise BadInputError(msg)
            if table[idempotents[lefts[0]]][b] != ((b, table[idempotents[lefts[0]]][b][0][1]),) or table[b][
                idempotents[rights[0]]
            ] != ((b, table[b][idempotents[rights[0]]][0][1]),):
                msg = f"Idempotents do not act as projections on {labels[b]}"
                raise BadInputError(msg)
            left.append(lefts[0])
            right.append(rights[0])
        return tuple(left), tuple(right)

    @property
    def dim(self) -> int:
        """Dimension over the ground field."""
        return len(self.labels)

    @property
    def num_slots(self) -> int:
        """Number of primitive idempotents."""
        return len(self.slots)

    @cached_property
    def _blocks(self) -> dict[tuple[int, int], tuple[int, ...]]:
        blocks: dict[tuple[int, int], list[int]] = {}
        for b in range(self.dim):
            blocks.setdefault((self.left[b], self.right[b]), []).append(b)
        return {key: tuple(value) for key, value in blocks.items()}

    def basis_between(self, left: int, right: int) -> tuple[int, ...]:
        """Basis elements of e_left A e_right, in basis order."""
        return self._blocks.get((left, right), ())

    def block_dimension(self, left: int, right: int) -> int:
        """dim e_left A e_right."""
        return len(self.basis_between(left, right))

    def is_idempotent(self, b: int) -> bool:
        """True for the slot idempotents."""
        return b in self.idempotents

    @cached_property
    def radical_basis(self) -> tuple[int, ...]:
        """Basis elements spanning the radical (all non-idempotents)."""
        return tuple(b for b in range(self.dim) if b not in self.idempotents)

    @cached_property
    def radical_generators(self) -> tuple[int, ...]:
        """Radical basis elements whose classes span J/J^2; they generate J."""
        squares = [
            self.multiply(self.unit_vector(b), self.unit_vector(c))
            for b in self.radical_basis
            for c in self.radical_basis
        ]
        current = Matrix.from_columns(self.field, [p for p in squares if any(p)], self.dim)
        rank = current.rank()
        chosen = []
        for b in self.radical_basis:
            candidate = current.hstack(Matrix.from_columns(self.field, [self.unit_vector(b)], self.dim))
            new_rank = candidate.rank()
            if new_rank > rank:
                chosen.append(b)
                current, rank = candidate, new_rank
        return tuple(chosen)

    def zero_vector(self) -> Vector:
        """The zero element."""
        return tuple(self.field.zero for _ in range(self.dim))

    def unit_vector(self, b: int) -> Vector:
        """The basis element b as a coefficient vector."""
        zero, one = self.field.zero, self.field.one
        return tuple(one if k == b else zero for k in range(self.dim))

    def element(self, terms: Mapping[str, Any]) -> Vector:
        """Coefficient vector from a ``{label: coeff}`` mapping."""
        index = {label: i for i, label in enumerate(self.labels)}
        out = list(self.zero_vector())
        for label, coeff in terms.items():
            if label not in index:
                msg = f"Unknown basis label {label!r}"
                raise BadInputError(msg)
            out[index[label]] += self.field(coeff)
        return tuple(out)

    def multiply_basis(self, i: int, j: int) -> Product:
        """Sparse product of two basis elements."""
        return self.table[i][j]

    def multiply(self, x: Vector, y: Vector) -> Vector:
        """Product of two elements."""
        out = list(self.zero_vector())
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj or self.right[i] != self.left[j]:
                    continue
                coeff = xi * yj
                for k, c in self.table[i][j]:
                    out[k] += coeff * c
        return tuple(out)

    def add(self, x: Vector, y: Vector) -> Vector:
        """Sum of two elements."""
        return tuple(a + b for a, b in zip(x, y, strict=True))

    def scale(self, c: Any, x: Vector) -> Vector:  # noqa: ANN401
        """Scalar multiple."""
        return tuple(c * a for a in x)

    def is_zero(self, x: Vector) -> bool:
        """True for the zero element."""
        return not any(x)

    def coordinates(self, x: Vector, left: int, right: int) -> Vector:
        """Coefficients of x on the basis of e_left A e_right."""
        return tuple(x[b] for b in self.basis_between(left, right))

    def from_coordinates(self, coords: Sequence[Any], left: int, right: int) -> Vector:
        """Inverse of :meth:`coordinates`."""
        out = list(self.zero_vector())
        for b, c in zip(self.basis_between(left, right), coords, strict=True):
            out[b] = c
        return tuple(out)

    def path_element(self, arrows: Sequence[str], vertex: str | None = None) -> Vector:
        """The class of a quiver path (traversal order) in this algebra."""
        if self.quiver is None or self.normal_forms is None:
            msg = "Paths can only be evaluated in algebras built from a quiver"
            raise BadInputError(msg)
        if not arrows:
            if vertex not in self.slots:
                msg = f"Trivial path needs a known vertex, got {vertex!r}"
                raise BadInputError(msg)
            return self.unit_vector(self.idempotents[self.slots.index(vertex)])
        self.quiver.check_path(arrows)
        return self.normal_forms.get(tuple(arrows), self.zero_vector())

    def validate(self) -> None:
        """Check idempotent relations, associativity and radical nilpotency."""
        one = self.field.one
        for s, e in enumerate(self.idempotents):
            for t, f in enumerate(self.idempotents):
                expected = ((e, one),) if s == t else ()
                if self.table[e][f] != expected:
                    msg = f"Idempotents {self.labels[e]}, {self.labels[f]} are not orthogonal idempotents"
                    logger.error(msg)
                    raise BadInputError(msg)
        for a, b, c in self.non_associative_triples(limit=1):
            msg = f"Multiplication is not associative on ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
            logger.error(msg)
            raise BadInputError(msg)
        if self.nilpotency_index() is None:
            msg = "The non-idempotent basis elements do not span a nilpotent ideal"
            logger.error(msg)
            raise BadInputError(msg)

    def non_associative_triples(self, limit: int | None = None) -> list[tuple[int, int, int]]:
        """Basis triples with (ab)c != a(bc)."""
        bad = []
        for a, b, c in itertools.product(range(self.dim), repeat=3):
            if self.right[a] != self.left[b] or self.right[b] != self.left[c]:
                continue
            ua, ub, uc = self.unit_vector(a), self.unit_vector(b), self.unit_vector(c)
            if self.multiply(self.multiply(ua, ub), uc) != self.multiply(ua, self.multiply(ub, uc)):
                bad.append((a, b, c))
                if limit is not None and len(bad) >= limit:
                    break
        return bad

    def nilpotency_index(self) -> int | None:
        """Smallest k with J^k = 0 for J the span of non-idempotents, or None if J is not a nilpotent ideal."""
        for b in self.radical_basis:
            for c in self.radical_basis:
                if any(k in self.idempotents for k, _ in self.table[b][c]):
                    return None
        current = [self.unit_vector(b) for b in self.radical_basis]
        for k in range(1, self.dim + 2):
            if not current:
                return k
            products = [
                self.multiply(x, self.unit_vector(b)) for x in current for b in self.radical_basis
            ]
            products = [p for p in products if any(p)]
            if not products:
                return k + 1
            span = Matrix.from_columns(self.field, products, self.dim).column_space()
            current = span.columns()
        return None

    def opposite(self) -> FDAlgebra:
        """The opposite algebra: same basis, products reversed."""
        products = {
            (j, i): dict(self.table[i][j]) for i in range(self.dim) for j in range(self.dim) if self.table[i][j]
        }
        return FDAlgebra.from_products(self.field, self.labels, self.slots, self.idempotents, products)

    def corner(self, keep: Sequence[int]) -> tuple[FDAlgebra, tuple[int, ...]]:
        """The idempotent subalgebra eAe for e the sum of the kept slot idempotents.

        Returns the algebra and, for each of its basis elements, the index of
        the corresponding basis element of self.
        """
        kept_slots = sorted(set(keep))
        embedding = tuple(b for b in range(self.dim) if self.left[b] in kept_slots and self.right[b] in kept_slots)
        position = {b: i for i, b in enumerate(embedding)}
        products = {
            (position[i], position[j]): {position[k]: c for k, c in self.table[i][j]}
            for i in embedding
            for j in embedding
            if self.table[i][j]
        }
        algebra = FDAlgebra.from_products(
            self.field,
            [self.labels[b] for b in embedding],
            [self.slots[s] for s in kept_slots],
            [position[self.idempotents[s]] for s in kept_slots],
            products,
        )
        return algebra, embedding

    def isomorphism_to(self, other: FDAlgebra) -> tuple[int, ...] | None:
        """A basis bijection onto ``other`` that carries structure constants to structure constants.

        Slots are matched by a permutation, idempotents go to idempotents and
        each block e_a A e_b goes onto the matching block of ``other``. Returns
        the image index of each basis element, or None when no such bijection
        exists. Only bijections of the given bases are tried, so None does not
        rule out an isomorphism that mixes basis elements.
        """
        if self.field != other.field or self.dim != other.dim or self.num_slots != other.num_slots:
            return None
        for perm in itertools.permutations(range(self.num_slots)):
            choices = self._block_bijections(other, perm)
            if choices is None:
                continue
            for combo in itertools.product(*choices):
                mapping = [0] * self.dim
                for pairs in combo:
                    for mine, theirs in pairs:
                        mapping[mine] = theirs
                if self._carries_products(other, mapping):
                    return tuple(mapping)
        return None

    def _block_bijections(self, other: FDAlgebra, perm: Sequence[int]) -> list[list[list[tuple[int, int]]]] | None:
        choices = []
        for (a, b), block in self._blocks.items():
            theirs = other.basis_between(perm[a], perm[b])
            if len(block) != len(theirs):
                return None
            fixed: list[tuple[int, int]] = []
            mine = block
            if a == b:
                fixed = [(self.idempotents[a], other.idempotents[perm[a]])]
                mine = tuple(x for x in block if x != self.idempotents[a])
                theirs = tuple(y for y in theirs if y != other.idempotents[perm[a]])
            choices.append([fixed + list(zip(mine, image, strict=True)) for image in itertools.permutations(theirs)])
        return choices

    def _carries_products(self, other: FDAlgebra, mapping: Sequence[int]) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                image = {mapping[k]: c for k, c in self.table[i][j]}
                if image != dict(other.table[mapping[i]][mapping[j]]):
                    return False
        return True

    def to_dict(self) -> dict[str, Any]:
        """Raw structure-constant form of the input schema."""
        table: dict[str, dict[str, dict[str, Any]]] = {}
        for i in range(self.dim):
            for j in range(self.dim):
                if self.table[i][j]:
                    table.setdefault(self.labels[i], {})[self.labels[j]] = {
                        self.labels[k]: self.field.to_json(c) for k, c in self.table[i][j]
                    }
        return {
            "basis": list(self.labels),
            "table": table,
            "idempotents": [self.labels[e] for e in self.idempotents],
        }

    def summary(self) -> dict[str, Any]:
        """Dimension data for reports."""
        return {
            "dim": self.dim,
            "slots": list(self.slots),
            "block_dimensions": [
                [self.block_dimension(a, b) for b in range(self.num_slots)] for a in range(self.num_slots)
            ],
        }
