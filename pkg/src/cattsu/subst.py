"""Semantic substitution: eager application and composition."""

from __future__ import annotations

from typing import Sequence

from .errors import UnboundVariable
from .syntax import STAR, Arrow, Coh, Context, Sub, Term, Type, Var


def apply_term(t: Term, sub: Sequence[Term]) -> Term:
    if t.__class__ is Var:
        try:
            return sub[t.index]
        except IndexError:
            raise UnboundVariable(t.index, len(sub)) from None
    # the bound pasting context and cell type are never touched
    return Coh(t.ctx, t.ty, [apply_term(u, sub) for u in t.sub])


def apply_type(ty: Type, sub: Sequence[Term]) -> Type:
    if ty is STAR or ty.__class__ is not Arrow:
        return STAR
    return Arrow(apply_type(ty.base, sub), apply_term(ty.src, sub), apply_term(ty.tgt, sub))


def compose(sigma: Sequence[Term], tau: Sequence[Term]) -> Sub:
    """``sigma o tau``: apply ``tau`` to every entry of ``sigma``."""
    return tuple(apply_term(t, tau) for t in sigma)


def identity_sub(ctx: Context) -> Sub:
    return ctx.vars()

