"""Tests for the Yoneda embedding, def(E) and the Serre quotient."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from envlab.algebra.homological import cokernel, composition_factors, image, kernel
from envlab.algebra.modules import simple
from envlab.category.add_category import EObject
from envlab.category.deflations import enumerate_deflations
from envlab.functors.gamma import gamma_context
from envlab.functors.presentation import compute_presentation
from envlab.functors.quotient import (
    def_simples,
    gabriel_hom,
    is_def_closed,
    is_effaceable_shadow,
    is_lex,
    quotient_apply,
    quotient_apply_map,
    quotient_hom_dimension,
    reject,
    serre_quotient,
    trace,
)

if TYPE_CHECKING:
    from envlab.category.add_category import EMorphism
    from envlab.category.structures import ExactStructure
    from envlab.envelope import Envelope
    from envlab.workbench import Workspace

TEST_A2_QUOTIENT_DIM = 3
TEST_KRON_QUOTIENT_DIM = 4
TEST_MAX_CANDIDATES = 32

P1, P2, S1 = (EObject.generator(k) for k in range(3))


def test_yoneda_dimension_vectors(a2_all: Workspace) -> None:
    """Hom(-, X) evaluated on P1, P2, S1."""
    context = gamma_context(a2_all.category)
    assert context.yoneda(P1).dims == (1, 1, 0)  # noqa: S101
    assert context.yoneda(P2).dims == (0, 1, 0)  # noqa: S101
    assert context.yoneda(S1).dims == (1, 0, 1)  # noqa: S101


def test_cokernel_of_yoneda_deflation(a2_all: Workspace, a2_projection: EMorphism) -> None:
    """coker Hom(-, P1 -> S1) is the simple at S1."""
    module, _ = cokernel(gamma_context(a2_all.category).yoneda_map(a2_projection))
    assert module.dims == (0, 0, 1)  # noqa: S101


def test_def_simples_a2(a2_all_structure: ExactStructure, a2_split: Workspace) -> None:
    """The ambient structure kills S[S1]; the split one kills nothing."""
    assert def_simples(a2_all_structure).labels == ["S[S1]"]  # noqa: S101
    assert def_simples(a2_split.structure("split")).simples == ()  # noqa: S101


def test_def_simples_kron(kron: Workspace) -> None:
    """The Euler structure kills S[O(2)]."""
    data = def_simples(kron.structure("euler"))
    assert data.labels == ["S[O(2)]"]  # noqa: S101
    assert data.witnesses == {"S[O(2)]": "euler"}  # noqa: S101


def test_serre_quotient_dimensions(a2_all_structure: ExactStructure, kron: Workspace) -> None:
    """e Gamma e is kA2 for the A2 ambient structure and the Kronecker algebra for the Euler structure."""
    a2 = serre_quotient(def_simples(a2_all_structure))
    assert a2.algebra.dim == TEST_A2_QUOTIENT_DIM  # noqa: S101
    assert a2.kept == (0, 1)  # noqa: S101
    kronecker = serre_quotient(def_simples(kron.structure("euler")))
    assert kronecker.algebra.dim == TEST_KRON_QUOTIENT_DIM  # noqa: S101
    assert kronecker.algebra.block_dimension(1, 0) == 2  # noqa: S101


def test_quotient_apply(a2_all_envelope: Envelope, a2_all: Workspace) -> None:
    """The killed simple vanishes; Hom(-, P1) truncates to (1, 1)."""
    ctx = a2_all_envelope.quotient
    gamma = a2_all.category.gamma
    assert quotient_apply(ctx, simple(gamma, 2)).is_zero()  # noqa: S101
    assert quotient_apply(ctx, gamma_context(a2_all.category).yoneda(P1)).dims == (1, 1)  # noqa: S101


def test_gabriel_hom_matches_truncation(a2_all_envelope: Envelope, a2_all: Workspace) -> None:
    """Hom in the quotient between Hom(-, P1) and Hom(-, S1) is one-dimensional."""
    context = gamma_context(a2_all.category)
    m, n = context.yoneda(P1), context.yoneda(S1)
    assert gabriel_hom(a2_all_envelope.def_data, m, n) == 1  # noqa: S101
    assert quotient_hom_dimension(a2_all_envelope.quotient, m, n) == 1  # noqa: S101


def test_reject_and_trace(a2_all_envelope: Envelope, a2_all: Workspace) -> None:
    """The simple at S1 is its own trace and has zero reject."""
    module = simple(a2_all.category.gamma, 2)
    rejected, _ = reject(a2_all_envelope.def_data, module)
    traced, _ = trace(a2_all_envelope.def_data, module)
    assert rejected.is_zero()  # noqa: S101
    assert traced.dims == module.dims  # noqa: S101


@pytest.mark.parametrize("generator", [0, 1, 2])
def test_representables_are_lex_and_def_closed(a2_all_envelope: Envelope, a2_all: Workspace, generator: int) -> None:
    """Hom(-, X) is left exact on conflations and has no Hom or Ext from S[S1]."""
    module = gamma_context(a2_all.category).yoneda(EObject.generator(generator))
    structure = a2_all_envelope.structure
    assert is_lex(module, structure)  # noqa: S101
    assert is_def_closed(a2_all_envelope.def_data, module)  # noqa: S101


def test_killed_simple_is_neither_lex_nor_def_closed(a2_all_envelope: Envelope, a2_all: Workspace) -> None:
    """S[S1] vanishes on P1 but not on S1."""
    module = simple(a2_all.category.gamma, 2)
    assert not is_lex(module, a2_all_envelope.structure)  # noqa: S101
    assert not is_def_closed(a2_all_envelope.def_data, module)  # noqa: S101


def test_effaceable_shadow(a2_all_envelope: Envelope, a2_all: Workspace) -> None:
    """Only modules built from S[S1] are killed."""
    gamma = a2_all.category.gamma
    assert is_effaceable_shadow(a2_all_envelope.def_data, simple(gamma, 2))  # noqa: S101
    assert not is_effaceable_shadow(a2_all_envelope.def_data, simple(gamma, 0))  # noqa: S101


def test_split_presentation_of_simple(a2_split_envelope: Envelope) -> None:
    """S[S1] over mod Gamma is presented by P1 -> S1."""
    ctx = a2_split_envelope.quotient
    presentation = compute_presentation(ctx, simple(ctx.algebra, 2))
    assert presentation.zeroth == S1  # noqa: S101
    assert presentation.first == P1  # noqa: S101
    assert presentation.cover.is_surjective()  # noqa: S101
    assert not presentation.a.is_zero()  # noqa: S101


@pytest.mark.parametrize(("corpus", "structure"), [("a2_all", "all"), ("a2_compare", "all"), ("kron", "euler")])
def test_def_simples_sound_on_enumerated_deflations(
    corpus: str,
    structure: str,
    request: pytest.FixtureRequest,
) -> None:
    """coker Hom(-, d) has all composition factors in D for every deflation found up to depth 3."""
    workspace = request.getfixturevalue(corpus)
    exact = workspace.structure(structure)
    context = gamma_context(workspace.category)
    allowed = set(def_simples(exact).labels)
    for target in workspace.category.all_generator_objects():
        for depth in (1, 2, 3):
            for d in enumerate_deflations(target, exact, depth, TEST_MAX_CANDIDATES):
                module, _ = cokernel(context.yoneda_map(d))
                assert set(composition_factors(module)) <= allowed, d.describe()  # noqa: S101


@pytest.mark.parametrize("envelope", ["a2_all_envelope", "kron_envelope"])
def test_quotient_is_exact_on_hom_basis(envelope: str, request: pytest.FixtureRequest) -> None:
    """Truncation commutes with kernels, images and cokernels of Hom(-, f)."""
    env = request.getfixturevalue(envelope)
    ctx, context = env.quotient, gamma_context(env.category)
    objects = env.category.all_generator_objects()
    for x in objects:
        for y in objects:
            for f in env.category.hom_basis(x, y):
                phi = context.yoneda_map(f)
                truncated = quotient_apply_map(ctx, phi)
                for construction in (kernel, image, cokernel):
                    expected, _ = construction(phi)
                    actual, _ = construction(truncated)
                    assert quotient_apply(ctx, expected).dims == actual.dims, f.describe()  # noqa: S101
