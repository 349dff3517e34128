"""Tests for additive categories, exact structures and deflation search."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from envlab.algebra.homological import hom_basis
from envlab.category.add_category import EMorphism, EObject, factor_through
from envlab.category.ambient import hom_module
from envlab.category.deflations import enumerate_deflations
from envlab.category.exact_structure import is_conflation, is_deflation, is_inflation, validate_structure
from envlab.category.limits import is_kernel_cokernel_pair, kernel_in_category, pullback_in_category
from envlab.category.structures import Conflation, Decision, StructureKind, generated_structure
from envlab.envelope import construct_envelope
from envlab.errors import AxiomFailureError
from envlab.verdicts import Verdict

if TYPE_CHECKING:
    from envlab.category.structures import ExactStructure
    from envlab.workbench import Workspace

TEST_A2_GAMMA_DIM = 5
TEST_KRON_GAMMA_DIM = 10
TEST_KRON_GLOBAL_SECTIONS = 3

P1, P2, S1 = (EObject.generator(k) for k in range(3))


def test_a2_category_hom_dimensions(a2_all: Workspace) -> None:
    """Hom dimensions between P1, P2 and S1."""
    category = a2_all.category
    assert category.generators == ("P1", "P2", "S1")  # noqa: S101
    assert category.gamma.dim == TEST_A2_GAMMA_DIM  # noqa: S101
    table = [[category.hom_dimension(x, y) for y in (P1, P2, S1)] for x in (P1, P2, S1)]
    assert table == [[1, 0, 1], [1, 1, 0], [0, 0, 1]]  # noqa: S101


def test_kron_category_hom_dimensions(kron: Workspace) -> None:
    """Hom(O(i), O(j)) has dimension j - i + 1 for i <= j, and 0 otherwise."""
    category = kron.category
    objects = category.all_generator_objects()
    assert category.generators == ("O(0)", "O(1)", "O(2)")  # noqa: S101
    assert category.gamma.dim == TEST_KRON_GAMMA_DIM  # noqa: S101
    assert category.hom_dimension(objects[0], objects[2]) == TEST_KRON_GLOBAL_SECTIONS  # noqa: S101
    assert category.hom_dimension(objects[0], objects[1]) == 2  # noqa: S101
    assert category.hom_dimension(objects[2], objects[0]) == 0  # noqa: S101


def test_dual_category_is_involutive(a2_all: Workspace) -> None:
    """The dual of the dual is the category itself, with transposed homs in between."""
    category = a2_all.category
    assert category.dual.dual is category  # noqa: S101
    assert category.dual.hom_dimension(P1, P2) == category.hom_dimension(P2, P1)  # noqa: S101


def test_ambient_structure_generating_conflation(a2_all_structure: ExactStructure) -> None:
    """The only extension between generators is P2 -> P1 -> S1."""
    assert a2_all_structure.kind is StructureKind.AMBIENT  # noqa: S101
    assert len(a2_all_structure.conflations) == 1  # noqa: S101
    assert not a2_all_structure.closure_failures  # noqa: S101
    conflation = a2_all_structure.conflations[0]
    assert conflation.inflation.source == P2  # noqa: S101
    assert conflation.deflation.target == S1  # noqa: S101


def test_is_conflation(a2_inclusion: EMorphism, a2_projection: EMorphism) -> None:
    """(P2 -> P1, P1 -> S1) is a kernel-cokernel pair."""
    assert is_conflation(a2_inclusion, a2_projection)  # noqa: S101
    assert is_kernel_cokernel_pair(a2_inclusion, a2_projection)  # noqa: S101


def test_deflation_membership(
    a2_all_structure: ExactStructure,
    a2_inclusion: EMorphism,
    a2_projection: EMorphism,
) -> None:
    """P1 -> S1 is a deflation of the ambient structure; the inclusion is an inflation."""
    assert is_deflation(a2_projection, a2_all_structure, 1) is Decision.YES  # noqa: S101
    assert is_deflation(a2_inclusion, a2_all_structure, 1) is Decision.NO  # noqa: S101
    assert is_inflation(a2_inclusion, a2_all_structure, 1) is Decision.YES  # noqa: S101


def test_split_structure_rejects_non_split_epi(a2_split: Workspace, split_projection: EMorphism) -> None:
    """P1 -> S1 has no section, so it is not a split deflation."""
    assert is_deflation(split_projection, a2_split.structure("split")) is Decision.NO  # noqa: S101


def test_enumerated_deflations_are_deflations(a2_all_structure: ExactStructure) -> None:
    """Depth-one candidates onto S1 exist and every one of them is a deflation."""
    found = enumerate_deflations(S1, a2_all_structure, 1)
    assert found  # noqa: S101
    for d in found:
        assert d.target == S1  # noqa: S101
        assert is_deflation(d, a2_all_structure, 1) is Decision.YES  # noqa: S101


def test_kernel_in_category(a2_projection: EMorphism) -> None:
    """The kernel of P1 -> S1 in E is P2 -> P1."""
    w = kernel_in_category(a2_projection)
    assert w is not None  # noqa: S101
    assert (a2_projection @ w).is_zero()  # noqa: S101
    assert is_kernel_cokernel_pair(w, a2_projection)  # noqa: S101


def test_pullback_along_identity(a2_all: Workspace, a2_projection: EMorphism) -> None:
    """Pulling a deflation back along an identity gives a deflation onto the same object."""
    identity = EMorphism.identity(a2_all.category, S1)
    pullback = pullback_in_category(a2_projection, identity)
    assert pullback is not None  # noqa: S101


def test_factor_through(a2_all: Workspace, a2_projection: EMorphism) -> None:
    """Every map factors through an identity."""
    identity = EMorphism.identity(a2_all.category, S1)
    h = factor_through(a2_projection, identity)
    assert h is not None  # noqa: S101
    assert (identity @ h).same_as(a2_projection)  # noqa: S101


@pytest.mark.parametrize(("corpus", "structure"), [("a2_all", "all"), ("a2_split", "split"), ("kron", "euler")])
def test_validate_bundled_structures(corpus: str, structure: str, request: pytest.FixtureRequest) -> None:
    """Every bundled structure satisfies the axioms on its generator-level instances."""
    workspace = request.getfixturevalue(corpus)
    report = validate_structure(workspace.structure(structure))
    assert report.verdict is Verdict.PASS, report.counterexamples  # noqa: S101


def test_kron_euler_conflation(kron: Workspace) -> None:
    """The Euler sequence O(0) -> O(1)^2 -> O(2) is a conflation."""
    conflation = kron.structure("euler").conflations[0]
    assert is_conflation(conflation.inflation, conflation.deflation)  # noqa: S101


def test_non_kernel_pair_fails_validation(a2_all: Workspace, a2_projection: EMorphism) -> None:
    """A zero map is not the kernel of P1 -> S1."""
    zero = EMorphism.zero(a2_all.category, P2, P1)
    structure = generated_structure(a2_all.category, "bad", (Conflation(zero, a2_projection, "bad"),))
    report = validate_structure(structure)
    assert report.verdict is Verdict.FAIL  # noqa: S101
    assert report.counterexamples[0].name == "conflation[bad]"  # noqa: S101
    with pytest.raises(AxiomFailureError):
        construct_envelope(structure, validate=True)


def test_dual_realizations_are_module_maps(a2_all: Workspace) -> None:
    """The transpose of a realization runs from the dual of its target to the dual of its source."""
    dual = a2_all.category.dual
    gamma = dual.gamma
    assert dual.modules is not None  # noqa: S101
    assert dual.realizations is not None  # noqa: S101
    for b, realization in enumerate(dual.realizations):
        assert realization.source is dual.modules[gamma.right[b]]  # noqa: S101
        assert realization.target is dual.modules[gamma.left[b]]  # noqa: S101
        realization.check()


def test_hom_module_over_dual_category(a2_all: Workspace) -> None:
    """Hom(G, M) over the dual category is a module with the expected dimension vector."""
    dual = a2_all.category.dual
    assert dual.modules is not None  # noqa: S101
    for module in dual.modules:
        hom, bases = hom_module(dual, module)
        hom.validate()
        assert hom.dims == tuple(len(basis) for basis in bases)  # noqa: S101
        assert hom.dims == tuple(len(hom_basis(g, module)) for g in dual.modules)  # noqa: S101


def test_validate_ambient_includes_dual_pass(a2_all_structure: ExactStructure) -> None:
    """Axioms and their duals both hold; extension closure is summary data, not a passing instance."""
    report = validate_structure(a2_all_structure)
    assert report.verdict is Verdict.PASS, report.counterexamples  # noqa: S101
    names = [i.name for i in report.instances]
    assert any(name.startswith("dual:") for name in names)  # noqa: S101
    assert not any(name.startswith("extension_closure[") for name in names)  # noqa: S101
    assert report.summary["extension_closed"] == [c.label for c in a2_all_structure.conflations]  # noqa: S101
