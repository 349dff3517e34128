"""Tests for fields, matrices, algebras and modules."""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

import pytest

from envlab.algebra.fd_algebra import FDAlgebra
from envlab.algebra.field import Field
from envlab.algebra.homological import (
    composition_factors,
    ext1,
    ext1_from_presentation,
    hom_basis,
    is_projective,
    kernel,
    projective_cover,
    radical_series,
    socle_series,
)
from envlab.algebra.matrix import Matrix
from envlab.algebra.modules import FDModule, ModMorphism, direct_sum, from_representation, projective, simple
from envlab.algebra.quiver import Quiver, Relation, build_algebra
from envlab.errors import BadInputError, DimensionMismatchError

if TYPE_CHECKING:
    from envlab.workbench import Workspace

TEST_P = 101
TEST_KRON_DIM = 10
TEST_A2_DIM = 3
TEST_A2_TABLE = {
    "e1": {"e1": {"e1": 1}, "a": {"a": 1}},
    "e2": {"e2": {"e2": 1}},
    "a": {"e2": {"a": 1}},
}


def test_prime_field_reduces_modulo_p() -> None:
    """Elements of F_p are reduced and serialize as integers."""
    field = Field.prime(TEST_P)
    assert field(TEST_P + 1) == field(1)  # noqa: S101
    assert field.to_json(field(-1)) == TEST_P - 1  # noqa: S101
    assert Field.from_dict({"kind": "prime", "p": TEST_P}) == field  # noqa: S101


@pytest.mark.parametrize("p", [0, 1, 4, 100])
def test_non_prime_characteristic_rejected(p: int) -> None:
    """A non-prime p is bad input."""
    with pytest.raises(BadInputError):
        Field.from_dict({"kind": "prime", "p": p})


def test_unknown_field_kind_rejected() -> None:
    """Only rationals and prime fields exist."""
    with pytest.raises(BadInputError):
        Field.from_dict({"kind": "reals"})


def test_matrix_rank_nullspace_and_solve() -> None:
    """Exact elimination over the rationals."""
    field = Field.rationals()
    m = Matrix.from_rows(field, [[1, 2], [2, 4]])
    assert m.rank() == 1  # noqa: S101
    assert len(m.nullspace()) == 1  # noqa: S101
    rhs = Matrix.from_rows(field, [[3], [6]])
    x = m.solve(rhs)
    assert x is not None  # noqa: S101
    assert m @ x == rhs  # noqa: S101
    assert m.solve(Matrix.from_rows(field, [[1], [0]])) is None  # noqa: S101


def test_matrix_empty_shapes() -> None:
    """0 x n and n x 0 matrices compose and have rank zero."""
    field = Field.rationals()
    wide = Matrix.zeros(field, 0, 3)
    tall = Matrix.zeros(field, 3, 0)
    assert wide.rank() == 0  # noqa: S101
    assert (tall @ wide).shape == (3, 3)  # noqa: S101
    assert (wide @ tall).shape == (0, 0)  # noqa: S101
    assert len(wide.nullspace()) == 3  # noqa: S101


def test_matrix_shape_mismatch() -> None:
    """Incompatible products raise."""
    field = Field.rationals()
    with pytest.raises(DimensionMismatchError):
        Matrix.identity(field, 2) @ Matrix.identity(field, 3)


def test_structure_constants_a2() -> None:
    """kA2 from its multiplication table."""
    algebra = FDAlgebra.from_structure_constants(Field.prime(TEST_P), ["e1", "e2", "a"], TEST_A2_TABLE, ["e1", "e2"])
    assert algebra.dim == TEST_A2_DIM  # noqa: S101
    assert algebra.num_slots == 2  # noqa: S101
    assert algebra.radical_basis == (2,)  # noqa: S101
    assert algebra.nilpotency_index() == 2  # noqa: S101
    assert algebra.opposite().dim == TEST_A2_DIM  # noqa: S101


def test_inhomogeneous_basis_rejected() -> None:
    """A basis element without a right idempotent is rejected."""
    table = {"e1": {"e1": {"e1": 1}, "a": {"a": 1}}, "e2": {"e2": {"e2": 1}}}
    with pytest.raises(BadInputError):
        FDAlgebra.from_structure_constants(Field.prime(TEST_P), ["e1", "e2", "a"], table, ["e1", "e2"])


def test_kron_path_algebra_dimension() -> None:
    """Three vertices, four arrows, one commutativity relation."""
    field = Field.rationals()
    quiver = Quiver.from_dict(
        {
            "vertices": ["v0", "v1", "v2"],
            "arrows": [
                {"name": "x0", "src": "v0", "tgt": "v1"},
                {"name": "x1", "src": "v0", "tgt": "v1"},
                {"name": "y0", "src": "v1", "tgt": "v2"},
                {"name": "y1", "src": "v1", "tgt": "v2"},
            ],
        },
    )
    relation = Relation.parse(
        quiver,
        field,
        {"terms": [{"coeff": 1, "path": ["x1", "y0"]}, {"coeff": -1, "path": ["x0", "y1"]}]},
        "relations[0]",
    )
    algebra = build_algebra(field, quiver, [relation], 2)
    assert algebra.dim == TEST_KRON_DIM  # noqa: S101
    assert algebra.block_dimension(0, 2) == 3  # noqa: S101


def test_relation_terms_must_be_parallel() -> None:
    """Terms with different ends are rejected."""
    field = Field.rationals()
    quiver = Quiver.from_dict(
        {
            "vertices": ["1", "2", "3"],
            "arrows": [{"name": "a", "src": "1", "tgt": "2"}, {"name": "b", "src": "2", "tgt": "3"}],
        },
    )
    with pytest.raises(BadInputError):
        Relation.parse(quiver, field, {"terms": [{"coeff": 1, "path": ["a"]}, {"coeff": 1, "path": ["b"]}]}, "r")


def test_representation_checks_shapes(a2_all: Workspace) -> None:
    """Arrow matrices must match the vertex dimensions."""
    with pytest.raises(BadInputError):
        from_representation(a2_all.algebra, {"1": 1, "2": 1}, {"a": [[1, 0]]}, "bad")


def test_a2_module_homs_and_ext(a2_all: Workspace) -> None:
    """P2 embeds in P1 with quotient S1, the only non-split extension."""
    p1, p2, s1 = (a2_all.modules[name] for name in ("P1", "P2", "S1"))
    assert len(hom_basis(p2, p1)) == 1  # noqa: S101
    assert hom_basis(p1, p2) == []  # noqa: S101
    assert ext1(s1, p2) == 1  # noqa: S101
    assert ext1(p2, s1) == 0  # noqa: S101
    assert is_projective(p1)  # noqa: S101
    assert not is_projective(s1)  # noqa: S101


def test_gamma_projective_series(a2_all: Workspace) -> None:
    """The projective at [P1] over the Auslander algebra has top S[P1] and socle S[P2]."""
    gamma = a2_all.category.gamma
    module = projective(gamma, 0)
    assert module.dims == (1, 1, 0)  # noqa: S101
    assert radical_series(module) == [(1, 0, 0), (0, 1, 0)]  # noqa: S101
    assert socle_series(module) == [(0, 1, 0), (1, 0, 0)]  # noqa: S101
    assert composition_factors(module) == Counter({"S[P1]": 1, "S[P2]": 1})  # noqa: S101


def test_projective_cover_of_simple(a2_all: Workspace) -> None:
    """S[S1] is covered by the projective at its own slot."""
    gamma = a2_all.category.gamma
    cover = projective_cover(simple(gamma, 2))
    assert cover.summands == (2,)  # noqa: S101
    assert cover.module.dims == (1, 0, 1)  # noqa: S101
    assert cover.epi.is_surjective()  # noqa: S101


def test_direct_sum_and_identity(a2_all: Workspace) -> None:
    """Direct sums add dimensions; identities are isomorphisms."""
    gamma = a2_all.category.gamma
    total = direct_sum(gamma, [projective(gamma, s) for s in range(gamma.num_slots)])
    assert total.dim == gamma.dim  # noqa: S101
    identity = ModMorphism.identity(total)
    assert identity.is_injective()  # noqa: S101
    assert identity.is_surjective()  # noqa: S101
    assert (identity @ identity).same_as(identity)  # noqa: S101


def _beilinson_algebra(field: Field) -> FDAlgebra:
    quiver = Quiver.from_dict(
        {
            "vertices": ["v0", "v1", "v2"],
            "arrows": [
                {"name": "x0", "src": "v0", "tgt": "v1"},
                {"name": "x1", "src": "v0", "tgt": "v1"},
                {"name": "y0", "src": "v1", "tgt": "v2"},
                {"name": "y1", "src": "v1", "tgt": "v2"},
            ],
        },
    )
    # y0 x1 - y1 x0, paths listed in traversal order
    relation = Relation.parse(
        quiver,
        field,
        {"terms": [{"coeff": 1, "path": ["x1", "y0"]}, {"coeff": -1, "path": ["x0", "y1"]}]},
        "relations[0]",
    )
    return build_algebra(field, quiver, [relation], 2)


def test_beilinson_relation_identifies_paths() -> None:
    """x1 then y0 equals x0 then y1; the other two length-two paths stay independent."""
    algebra = _beilinson_algebra(Field.rationals())
    unit = {label: algebra.unit_vector(b) for b, label in enumerate(algebra.labels)}
    first = algebra.multiply(unit["x1"], unit["y0"])
    second = algebra.multiply(unit["x0"], unit["y1"])
    assert any(first)  # noqa: S101
    assert first == second  # noqa: S101
    words = [algebra.multiply(unit[x], unit[y]) for x, y in (("x0", "y0"), ("x1", "y1"), ("x1", "y0"))]
    assert Matrix.from_columns(algebra.field, words, algebra.dim).rank() == 3  # noqa: S101
    assert algebra.dim == TEST_KRON_DIM  # noqa: S101


def _built_algebras(a2_all: Workspace, kron: Workspace) -> list[FDAlgebra]:
    field = Field.prime(TEST_P)
    return [
        FDAlgebra.from_structure_constants(field, ["e1", "e2", "a"], TEST_A2_TABLE, ["e1", "e2"]),
        _beilinson_algebra(Field.rationals()),
        _beilinson_algebra(field),
        a2_all.algebra,
        a2_all.category.gamma,
        a2_all.category.gamma.opposite(),
        kron.category.gamma,
    ]


def test_built_algebras_are_associative(a2_all: Workspace, kron: Workspace) -> None:
    """(ab)c = a(bc) on every basis triple; the slot idempotents are orthogonal and sum to 1."""
    for algebra in _built_algebras(a2_all, kron):
        units = [algebra.unit_vector(b) for b in range(algebra.dim)]
        for a in units:
            for b in units:
                ab = algebra.multiply(a, b)
                for c in units:
                    assert algebra.multiply(ab, c) == algebra.multiply(a, algebra.multiply(b, c))  # noqa: S101
        one = algebra.zero_vector()
        for s, e in enumerate(algebra.idempotents):
            one = algebra.add(one, units[e])
            for t, f in enumerate(algebra.idempotents):
                expected = units[e] if s == t else algebra.zero_vector()
                assert algebra.multiply(units[e], units[f]) == expected  # noqa: S101
        for a in units:
            assert algebra.multiply(one, a) == a  # noqa: S101
            assert algebra.multiply(a, one) == a  # noqa: S101


def _fixture_modules(workspace: Workspace) -> list[FDModule]:
    gamma = workspace.category.gamma
    modules = [*(projective(gamma, s) for s in range(gamma.num_slots))]
    modules += [simple(gamma, s) for s in range(gamma.num_slots)]
    return modules


def test_rank_nullity_per_slot(a2_all: Workspace, kron: Workspace) -> None:
    """dim ker + rank = dim source in every slot, for every hom-basis morphism."""
    pairs = [(m, n) for m in a2_all.modules.values() for n in a2_all.modules.values()]
    for workspace in (a2_all, kron):
        modules = _fixture_modules(workspace)
        pairs += [(m, n) for m in modules for n in modules]
    for m, n in pairs:
        for f in hom_basis(m, n):
            ker, _ = kernel(f)
            for s, rank in enumerate(f.ranks()):
                assert ker.dims[s] + rank == m.dims[s]  # noqa: S101
            assert ker.dim + f.rank() == m.dim  # noqa: S101


def _commuting_system_nullity(m: FDModule, n: FDModule) -> int:
    algebra = m.algebra
    field = algebra.field
    offsets, total = [], 0
    for s in range(algebra.num_slots):
        offsets.append(total)
        total += n.dims[s] * m.dims[s]
    rows = []
    for b in range(algebra.dim):
        left, right = algebra.left[b], algebra.right[b]
        for p in range(n.dims[right]):
            for q in range(m.dims[left]):
                row = [field.zero] * total
                for k in range(n.dims[left]):
                    row[offsets[left] + k * m.dims[left] + q] += n.actions[b].entry(p, k)
                for k in range(m.dims[right]):
                    row[offsets[right] + p * m.dims[right] + k] -= m.actions[b].entry(k, q)
                rows.append(row)
    if not rows:
        return total
    return total - Matrix.from_rows(field, rows, total).rank()


def test_hom_basis_matches_full_commuting_system(a2_all: Workspace, kron: Workspace) -> None:
    """Solving only over radical generators gives the nullity of the system over every basis element."""
    for workspace in (a2_all, kron):
        modules = _fixture_modules(workspace)
        for m in modules:
            for n in modules:
                assert len(hom_basis(m, n)) == _commuting_system_nullity(m, n)  # noqa: S101
    for m in a2_all.modules.values():
        for n in a2_all.modules.values():
            assert len(hom_basis(m, n)) == _commuting_system_nullity(m, n)  # noqa: S101


def _unipotent(field: Field, n: int) -> Matrix:
    rows = [[field(1) if i == j else field(i + 2 * j + 1) if j > i else field.zero for j in range(n)] for i in range(n)]
    return Matrix.from_rows(field, rows, n)


def _change_basis(module: FDModule) -> FDModule:
    algebra, field = module.algebra, module.field
    forward = [_unipotent(field, d) for d in module.dims]
    backward = [t.solve(Matrix.identity(field, t.nrows)) for t in forward]
    actions = [
        backward[algebra.right[b]] @ action @ forward[algebra.left[b]] for b, action in enumerate(module.actions)
    ]
    return FDModule.build(algebra, module.dims, actions, f"{module.name}'")


def test_composition_factors_additive_and_basis_free(kron: Workspace) -> None:
    """Factors of a sum are the sum of the factors; a change of basis changes nothing."""
    gamma = kron.category.gamma
    modules = _fixture_modules(kron)
    for m in modules:
        changed = _change_basis(m)
        assert composition_factors(changed) == composition_factors(m)  # noqa: S101
        assert radical_series(changed) == radical_series(m)  # noqa: S101
        for n in modules:
            total = composition_factors(m) + composition_factors(n)
            assert composition_factors(direct_sum(gamma, [m, n])) == total  # noqa: S101


def _padded_cover(m: FDModule, slot: int) -> ModMorphism:
    algebra = m.algebra
    cover = projective_cover(m)
    extra = projective(algebra, slot)
    maps = hom_basis(extra, cover.module)
    through = cover.epi @ maps[0] if maps else ModMorphism.zero(extra, m)
    source = direct_sum(algebra, [cover.module, extra])
    blocks = tuple(e.hstack(t) for e, t in zip(cover.epi.blocks, through.blocks, strict=True))
    return ModMorphism(source, m, blocks)


def test_ext1_independent_of_presentation(a2_all: Workspace, kron: Workspace) -> None:
    """The projective cover and a padded cover with a nonzero extra component give the same Ext^1."""
    cases = [list(a2_all.modules.values()), _fixture_modules(a2_all), _fixture_modules(kron)]
    for modules in cases:
        algebra = modules[0].algebra
        for m in modules:
            for slot in range(algebra.num_slots):
                padded = _padded_cover(m, slot)
                assert padded.is_surjective()  # noqa: S101
                for n in modules:
                    assert ext1_from_presentation(padded, n) == ext1(m, n)  # noqa: S101


def test_ext1_over_a2(a2_all: Workspace) -> None:
    """Ext^1(S1, P2) is one-dimensional and Ext^1(S1, S1) vanishes."""
    s1, p2 = a2_all.modules["S1"], a2_all.modules["P2"]
    assert ext1(s1, p2) == 1  # noqa: S101
    assert ext1(s1, s1) == 0  # noqa: S101
    assert all(ext1(a2_all.modules["P1"], n) == 0 for n in a2_all.modules.values())  # noqa: S101


@pytest.mark.parametrize("value", [0.5, 1.0])
def test_field_rejects_floats(value: float) -> None:
    """Inexact scalars are bad input over Q and over F_p."""
    for field in (Field.rationals(), Field.prime(TEST_P)):
        with pytest.raises(BadInputError):
            field(value)
