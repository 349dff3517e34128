"""Finitely presented functors on E, def(E) and the quotient mod(E)/def(E)."""

from envlab.functors.gamma import GammaContext, gamma_context
from envlab.functors.presentation import Presentation, compute_presentation
from envlab.functors.quotient import (
    DefData,
    QuotientCtx,
    def_simples,
    gabriel_hom,
    is_def_closed,
    is_effaceable_shadow,
    is_lex,
    quotient_apply,
    quotient_hom_dimension,
    random_module,
    serre_quotient,
)

__all__ = [
    "DefData",
    "GammaContext",
    "Presentation",
    "QuotientCtx",
    "compute_presentation",
    "def_simples",
    "gabriel_hom",
    "gamma_context",
    "is_def_closed",
    "is_effaceable_shadow",
    "is_lex",
    "quotient_apply",
    "quotient_hom_dimension",
    "random_module",
    "serre_quotient",
]
