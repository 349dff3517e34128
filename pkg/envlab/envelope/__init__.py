"""The right abelian envelope and the checks of its defining properties."""

from envlab.envelope.coherence import ext_coherence_report, ext_kernel_verify
from envlab.envelope.comparison import compare_structures, lex_def_closed_check, oracle_check, split_identity_check
from envlab.envelope.density import dense_extension_check, left_abelian_report, left_abelian_witness, refine_epi
from envlab.envelope.embedding import check_embedding, left_coherence_report, verify_weak_kernel, weak_kernel
from envlab.envelope.envelope import Envelope, construct_envelope, dualize, left_envelope
from envlab.envelope.universal import (
    InducedFunctor,
    RightExactFunctor,
    ambient_functor,
    envelope_functor,
    induce_functor,
    validate_functor,
    zero_functor,
)
from envlab.verdicts import CheckReport

__all__ = [
    "CheckReport",
    "Envelope",
    "InducedFunctor",
    "RightExactFunctor",
    "ambient_functor",
    "check_embedding",
    "compare_structures",
    "construct_envelope",
    "dense_extension_check",
    "dualize",
    "envelope_functor",
    "ext_coherence_report",
    "ext_kernel_verify",
    "induce_functor",
    "left_abelian_report",
    "left_abelian_witness",
    "left_coherence_report",
    "left_envelope",
    "lex_def_closed_check",
    "oracle_check",
    "refine_epi",
    "split_identity_check",
    "validate_functor",
    "verify_weak_kernel",
    "weak_kernel",
    "zero_functor",
]
