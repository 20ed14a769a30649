"""Kernel, normalizer and tools for Catt and strictly unital Catt (Catt_su)."""

from .errors import (
    ArityMismatch,
    BaseTypeCoherence,
    BoundaryMismatch,
    CattError,
    DimensionLimit,
    ElaborationError,
    FuelExhausted,
    NotPasting,
    ParseError,
    RehydrationError,
    SupportViolation,
    TypeMismatch,
    TypingError,
    UnboundVariable,
)
from .syntax import STAR, Arrow, Coh, Context, Var, count_coherences, dimension, free_vars, infer_type, struct_eq, support
from .subst import apply_term, apply_type, compose, identity_sub
from .pasting import (
    boundary,
    canonical_identity,
    check_pasting,
    disc_context,
    disc_sub,
    excise,
    is_identity,
    locally_maximal,
    project,
    remove,
    sphere_type,
)
from .reduction import decide_eq, general_reducts, normal_form, normalize, standard_step
from .typecheck import Checker, Mode, check_sub, check_term, check_type, def_eq, src_k, tgt_k
from .builders import comp_n_head, comp_nk_head, elaborate_substitution
from .rehydrate import rehydrate, rehydrated_normal_form
from .elaborate import Environment, load_environment
from .parser import parse
from .pretty import pretty

__all__ = [
    "ArityMismatch",
    "BaseTypeCoherence",
    "BoundaryMismatch",
    "CattError",
    "DimensionLimit",
    "ElaborationError",
    "FuelExhausted",
    "NotPasting",
    "ParseError",
    "RehydrationError",
    "SupportViolation",
    "TypeMismatch",
    "TypingError",
    "UnboundVariable",
    "STAR",
    "Arrow",
    "Coh",
    "Context",
    "Var",
    "count_coherences",
    "dimension",
    "free_vars",
    "infer_type",
    "struct_eq",
    "support",
    "apply_term",
    "apply_type",
    "compose",
    "identity_sub",
    "boundary",
    "canonical_identity",
    "check_pasting",
    "disc_context",
    "disc_sub",
    "excise",
    "is_identity",
    "locally_maximal",
    "project",
    "remove",
    "sphere_type",
    "decide_eq",
    "general_reducts",
    "normal_form",
    "normalize",
    "standard_step",
    "Checker",
    "Mode",
    "check_sub",
    "check_term",
    "check_type",
    "def_eq",
    "src_k",
    "tgt_k",
    "comp_n_head",
    "comp_nk_head",
    "elaborate_substitution",
    "rehydrate",
    "rehydrated_normal_form",
    "Environment",
    "load_environment",
    "parse",
    "pretty",
]
