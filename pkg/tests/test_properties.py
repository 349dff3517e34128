"""Property tests on seeded random modules over Gamma."""

from __future__ import annotations

import random
from typing import TYPE_CHECKING

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envlab.algebra.homological import radical_series, socle_series
from envlab.functors.quotient import (
    gabriel_hom,
    is_def_closed,
    is_effaceable_shadow,
    is_lex,
    quotient_apply,
    quotient_hom_dimension,
    random_module,
)

if TYPE_CHECKING:
    from envlab.envelope import Envelope

TEST_EXAMPLES = 125

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _layer_total(layers: list[tuple[int, ...]], slots: int) -> tuple[int, ...]:
    return tuple(sum(layer[s] for layer in layers) for s in range(slots))


@settings(max_examples=TEST_EXAMPLES, deadline=None)
@given(seed=seeds)
def test_hom_in_quotient_two_ways(a2_all_envelope: Envelope, seed: int) -> None:
    """Hom in mod Gamma / def(E) equals hom between truncations."""
    rng = random.Random(seed)
    gamma = a2_all_envelope.category.gamma
    m, n = random_module(gamma, rng), random_module(gamma, rng)
    by_gabriel = gabriel_hom(a2_all_envelope.def_data, m, n)
    assert by_gabriel == quotient_hom_dimension(a2_all_envelope.quotient, m, n)  # noqa: S101


@settings(max_examples=TEST_EXAMPLES, deadline=None)
@given(seed=seeds)
def test_lex_iff_def_closed(kron_envelope: Envelope, seed: int) -> None:
    """Left exact on conflations exactly when Hom and Ext from def(E) vanish."""
    module = random_module(kron_envelope.category.gamma, random.Random(seed))
    assert is_lex(module, kron_envelope.structure) == is_def_closed(kron_envelope.def_data, module)  # noqa: S101


@settings(max_examples=TEST_EXAMPLES, deadline=None)
@given(seed=seeds)
def test_killed_iff_built_from_def(a2_all_envelope: Envelope, seed: int) -> None:
    """Truncation kills a module exactly when all its composition factors lie in D."""
    module = random_module(a2_all_envelope.category.gamma, random.Random(seed))
    killed = quotient_apply(a2_all_envelope.quotient, module).is_zero()
    assert is_effaceable_shadow(a2_all_envelope.def_data, module) == killed  # noqa: S101


@settings(max_examples=TEST_EXAMPLES, deadline=None)
@given(seed=seeds)
def test_radical_and_socle_series_agree(kron_envelope: Envelope, seed: int) -> None:
    """Both Loewy series exhaust the module with the same length."""
    gamma = kron_envelope.category.gamma
    module = random_module(gamma, random.Random(seed))
    radical, socle = radical_series(module), socle_series(module)
    pytest.assume(_layer_total(radical, gamma.num_slots) == module.dims)
    pytest.assume(_layer_total(socle, gamma.num_slots) == module.dims)
    pytest.assume(len(radical) == len(socle))
