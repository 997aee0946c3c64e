"""Sharing, freeness and linearity analysis of substitutions."""

from .asub import AsubElement, alpha_asub, amgu_asub, chi_binding, chi_term, compose_asub, leq_asub, soln
from .concrete import alpha_sfl, fvars, gamma_member, gvars, lvars, occ, profile, ssets
from .errors import (
    BottomQuery,
    CapExceeded,
    CircularComposition,
    ContextMismatch,
    NotAFunction,
    OutOfContext,
    ParseError,
    SharelatError,
    UnsatisfiableInput,
    UnsatisfiableSubstitution,
)
from .sfl import (
    ALL_GROUPS,
    Observable,
    SflElement,
    Variant,
    amgu,
    aproj,
    aunify,
    equiv_psd,
    leq,
    lub,
    observables,
)
from .solver import equivalent, solve
from .terms import (
    AnalysisContext,
    Binding,
    Fun,
    Substitution,
    Theory,
    Var,
    apply_power,
    compose,
    format_term,
    is_rsubst,
    parse_binding,
    parse_substitution,
    parse_term,
)

__version__ = "0.1.0"

__all__ = [
    "BottomQuery",
    "CapExceeded",
    "CircularComposition",
    "ContextMismatch",
    "NotAFunction",
    "OutOfContext",
    "ParseError",
    "SharelatError",
    "UnsatisfiableInput",
    "UnsatisfiableSubstitution",
    "ALL_GROUPS",
    "Observable",
    "SflElement",
    "Variant",
    "amgu",
    "aproj",
    "aunify",
    "equiv_psd",
    "leq",
    "lub",
    "observables",
    "AnalysisContext",
    "Binding",
    "Fun",
    "Substitution",
    "Theory",
    "Var",
    "apply_power",
    "compose",
    "format_term",
    "is_rsubst",
    "parse_binding",
    "parse_substitution",
    "parse_term",
    "AsubElement",
    "alpha_asub",
    "amgu_asub",
    "chi_binding",
    "chi_term",
    "compose_asub",
    "leq_asub",
    "soln",
    "alpha_sfl",
    "fvars",
    "gamma_member",
    "gvars",
    "lvars",
    "occ",
    "profile",
    "ssets",
    "equivalent",
    "solve",
]
