"""Typing judgements for Catt and Catt_su.

Checking is inferred-type driven: a term's type is computed from its
syntax, and expected and inferred types are only compared at the entries
of a substitution. In Catt that comparison is syntactic equality; in
Catt_su it is equality of normal forms.
"""

from __future__ import annotations

from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

from .errors import (
    ArityMismatch,
    BaseTypeCoherence,
    DimensionLimit,
    SupportViolation,
    TypeMismatch,
    TypingError,
    UnboundVariable,
)
from .pasting import boundary, check_pasting
from .reduction import DEFAULT_FUEL, Normalizer
from .subst import apply_type
from .syntax import STAR, Arrow, Coh, Context, Sub, Term, Type, Var, context_dim, infer_type, support, term_dim

DEFAULT_MAX_DIM = 16


class Mode(Enum):
    CATT = "catt"
    SU = "su"

    @classmethod
    def parse(cls, s: "str | Mode") -> "Mode":
        if isinstance(s, Mode):
            return s
        return cls(s.lower())


def _at(err: TypingError, where: str) -> TypingError:
    err.location = where if err.location is None else f"{where}/{err.location}"
    return err


class Checker:
    """A checking session: fixed mode, fuel and dimension guard, with caches."""

    def __init__(self, mode: "Mode | str" = Mode.SU, fuel: int = DEFAULT_FUEL, max_dim: int = DEFAULT_MAX_DIM) -> None:
        self.mode = Mode.parse(mode)
        self.max_dim = max_dim
        self.normalizer = Normalizer(fuel)
        self._heads: Dict[Tuple[Context, Type], bool] = {}
        self._contexts: Dict[Context, bool] = {}
        self._terms: Dict[Tuple[Context, Term], Type] = {}

    # -- equality ----------------------------------------------------------

    def nf(self, x):
        return self.normalizer._norm(x)[0]

    def equal(self, a, b) -> bool:
        """Definitional equality of the mode, assuming both sides are valid."""
        if a == b:
            return True
        if self.mode is Mode.CATT:
            return False
        return self.nf(a) == self.nf(b)

    # -- judgements --------------------------------------------------------

    def check_context(self, ctx: Context) -> None:
        if ctx in self._contexts:
            return
        for i, ty in enumerate(ctx.types):
            if ty.dim + 1 > self.max_dim:
                raise DimensionLimit(f"context entry {ctx.names[i]} has dimension {ty.dim + 1} above the limit {self.max_dim}", ctx.names[i])
            try:
                self.check_type(ctx.prefix(i), ty)
            except TypingError as e:
                raise _at(e, ctx.names[i])
        self._contexts[ctx] = True

    def check_type(self, ctx: Context, ty: Type) -> None:
        if ty is STAR or ty.__class__ is not Arrow:
            return
        if ty.dim > self.max_dim:
            raise DimensionLimit(f"type of dimension {ty.dim} above the limit {self.max_dim}")
        self.check_type(ctx, ty.base)
        for part, end in (("src", ty.src), ("tgt", ty.tgt)):
            try:
                got = self.check_term(ctx, end)
            except TypingError as e:
                raise _at(e, part)
            if not self.equal(got, ty.base):
                raise TypeMismatch(ty.base, got, f"the {part} of an arrow does not have the arrow's base type", part)

    def check_term(self, ctx: Context, t: Term) -> Type:
        """Validate ``t`` in ``ctx`` and return its canonical type."""
        if t.__class__ is Var:
            if not 0 <= t.index < len(ctx):
                raise UnboundVariable(t.index, len(ctx))
            return ctx.types[t.index]
        if t.__class__ is not Coh:
            raise TypingError(f"not a term: {t!r}")
        key = (ctx, t)
        hit = self._terms.get(key)
        if hit is not None:
            return hit
        self.check_head(t.ctx, t.ty)
        self.check_sub(ctx, t.sub, t.ctx)
        out = apply_type(t.ty, t.sub)
        self._terms[key] = out
        return out

    def check_sub(self, ctx: Context, sub: Sequence[Term], delta: Context) -> None:
        """``ctx |- sub : delta``; entry types are compared up to the mode's equality."""
        sub = tuple(sub)
        if len(sub) != len(delta):
            raise ArityMismatch(f"substitution has {len(sub)} entries, its domain has {len(delta)} variables")
        for i, s in enumerate(sub):
            try:
                got = self.check_term(ctx, s)
            except TypingError as e:
                raise _at(e, f"arg[{i}]")
            want = apply_type(delta.types[i], sub)
            if not self.equal(got, want):
                raise TypeMismatch(want, got, f"argument for {delta.names[i]} has the wrong type", f"arg[{i}]")

    def check_head(self, delta: Context, ty: Type) -> None:
        """Validity of the coherence head ``coh(delta : ty)``."""
        key = (delta, ty)
        if key in self._heads:
            return
        if ty.__class__ is not Arrow:
            raise BaseTypeCoherence("a coherence cannot have the base type")
        if context_dim(delta) > self.max_dim or ty.dim > self.max_dim:
            raise DimensionLimit(f"coherence above the dimension limit {self.max_dim}")
        check_pasting(delta)
        self.check_type(delta, ty)
        s_supp = support(ty.src, delta)
        t_supp = support(ty.tgt, delta)
        full = frozenset(delta.vars())
        ok = (s_supp == full and t_supp == full) or (
            s_supp == boundary(delta, "-") and t_supp == boundary(delta, "+")
        )
        if not ok:
            raise SupportViolation(
                "source and target must cover the source and target boundaries, or both cover the whole context"
            )
        self._heads[key] = True

    def def_eq(self, ctx: Context, a, b) -> bool:
        """Validate both sides in ``ctx`` then decide equality in the session's mode."""
        for x in (a, b):
            self.check_any(ctx, x)
        return self.equal(a, b)

    def check_any(self, ctx: Context, x) -> Optional[Type]:
        if x.__class__ in (Var, Coh):
            return self.check_term(ctx, x)
        if x.__class__ is Arrow or x is STAR:
            self.check_type(ctx, x)
            return None
        raise TypeError("def_eq compares terms or types; use check_sub for substitutions")


# ---------------------------------------------------------------------------
# iterated sources and targets

def src(t: Term, ctx: Context) -> Term:
    ty = infer_type(t, ctx)
    if ty.__class__ is not Arrow:
        raise TypingError("a 0-dimensional term has no source")
    return ty.src


def tgt(t: Term, ctx: Context) -> Term:
    ty = infer_type(t, ctx)
    if ty.__class__ is not Arrow:
        raise TypingError("a 0-dimensional term has no target")
    return ty.tgt


def src_k(t: Term, ctx: Context, k: int) -> Term:
    """The ``k``-dimensional iterated source of ``t``."""
    return _iterate(t, ctx, k, "src")


def tgt_k(t: Term, ctx: Context, k: int) -> Term:
    return _iterate(t, ctx, k, "tgt")


def _iterate(t: Term, ctx: Context, k: int, side: str) -> Term:
    n = term_dim(t, ctx)
    if k > n or k < 0:
        raise TypingError(f"no {k}-dimensional {side} of a {n}-dimensional term")
    ty = infer_type(t, ctx)
    for _ in range(n - k):
        t = ty.src if side == "src" else ty.tgt
        ty = ty.base
    return t


_sessions: Dict[Mode, Checker] = {}


def session(mode: "Mode | str" = Mode.SU) -> Checker:
    """A shared checking session per mode, with default fuel and dimension limit."""
    mode = Mode.parse(mode)
    if mode not in _sessions:
        _sessions[mode] = Checker(mode)
    return _sessions[mode]


def check_term(ctx: Context, t: Term, mode: "Mode | str" = Mode.SU) -> Type:
    return session(mode).check_term(ctx, t)


def check_type(ctx: Context, ty: Type, mode: "Mode | str" = Mode.SU) -> None:
    session(mode).check_type(ctx, ty)


def check_context(ctx: Context, mode: "Mode | str" = Mode.SU) -> None:
    session(mode).check_context(ctx)


def check_sub(ctx: Context, sub: Sub, delta: Context, mode: "Mode | str" = Mode.SU) -> None:
    session(mode).check_sub(ctx, sub, delta)


def def_eq(ctx: Context, a, b, mode: "Mode | str" = Mode.SU) -> bool:
    return session(mode).def_eq(ctx, a, b)
