"""Test fixtures for the envlab package."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import pytest

from envlab.algebra.field import Field
from envlab.envelope import construct_envelope
from envlab.state import RunStateManager
from envlab.workbench import build_workspace, load_corpus, parse_morphism

if TYPE_CHECKING:
    from envlab.category.add_category import EMorphism
    from envlab.category.structures import ExactStructure
    from envlab.envelope import Envelope
    from envlab.workbench import Workspace


@pytest.fixture(scope="session")
def f101() -> Field:
    """The prime field with 101 elements."""
    return Field.prime(101)


@pytest.fixture(scope="session")
def a2_all() -> Workspace:
    """A2 triangle: add(P1, P2, S1) over kA2 with the ambient structure."""
    return build_workspace(load_corpus("a2_all"))


@pytest.fixture(scope="session")
def a2_split() -> Workspace:
    """A2 triangle: the same category with the split structure."""
    return build_workspace(load_corpus("a2_split"))


@pytest.fixture(scope="session")
def a2_compare() -> Workspace:
    """The split and the generated structure side by side on add(P1, P2, S1)."""
    return build_workspace(load_corpus("a2_compare"))


@pytest.fixture(scope="session")
def kron() -> Workspace:
    """Kronecker input: O(0), O(1), O(2) with the split and the Euler structure."""
    return build_workspace(load_corpus("kron"))


@pytest.fixture(scope="session")
def a2_all_structure(a2_all: Workspace) -> ExactStructure:
    """The ambient structure of the A2 triangle."""
    return a2_all.structure("all")


@pytest.fixture(scope="session")
def a2_all_envelope(a2_all_structure: ExactStructure) -> Envelope:
    """A_r of the A2 triangle."""
    return construct_envelope(a2_all_structure)


@pytest.fixture(scope="session")
def a2_split_envelope(a2_split: Workspace) -> Envelope:
    """A_r of the split A2 triangle."""
    return construct_envelope(a2_split.structure("split"))


@pytest.fixture(scope="session")
def kron_envelope(kron: Workspace) -> Envelope:
    """A_r of the Kronecker input with the Euler structure."""
    return construct_envelope(kron.structure("euler"))


def _a2_map(workspace: Workspace, src: str, tgt: str, maps: dict[str, Any]) -> EMorphism:
    spec = {"src": {src: 1}, "tgt": {tgt: 1}, "maps": maps}
    return parse_morphism(workspace.category, spec, "test")


@pytest.fixture(scope="session")
def a2_inclusion(a2_all: Workspace) -> EMorphism:
    """P2 -> P1 in the A2 triangle."""
    return _a2_map(a2_all, "P2", "P1", {"2": [[1]]}).renamed("i")


@pytest.fixture(scope="session")
def a2_projection(a2_all: Workspace) -> EMorphism:
    """P1 -> S1 in the A2 triangle."""
    return _a2_map(a2_all, "P1", "S1", {"1": [[1]]}).renamed("d")


@pytest.fixture(scope="session")
def split_projection(a2_split: Workspace) -> EMorphism:
    """P1 -> S1 in the split A2 triangle."""
    return _a2_map(a2_split, "P1", "S1", {"1": [[1]]}).renamed("d")


@pytest.fixture(scope="session")
def split_inclusion(a2_split: Workspace) -> EMorphism:
    """P2 -> P1 in the split A2 triangle."""
    return _a2_map(a2_split, "P2", "P1", {"2": [[1]]}).renamed("i")


@pytest.fixture
def run_state_manager() -> RunStateManager:
    """A fresh RunStateManager for three tasks."""
    return RunStateManager(3)


@pytest.fixture
def a2_input_data() -> dict[str, Any]:
    """A minimal A2 input in dictionary form."""
    return {
        "name": "a2_minimal",
        "field": {"kind": "prime", "p": 101},
        "algebra": {
            "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "src": "1", "tgt": "2"}]},
            "relations": [],
            "path_bound": 1,
        },
        "modules": {
            "P1": {"dims": {"1": 1, "2": 1}, "arrows": {"a": [[1]]}},
            "P2": {"dims": {"1": 0, "2": 1}, "arrows": {}},
            "S1": {"dims": {"1": 1, "2": 0}, "arrows": {}},
        },
        "category": {"generators": ["P1", "P2", "S1"]},
        "structures": {"all": {"kind": "ambient"}},
        "tasks": [{"op": "envelope", "structure": "all"}],
    }
