"""Rehydration: turning a Catt_su term into an equal, valid Catt term.

``R`` rehydrates subterms and pads the result; padding ``P`` composes a
term with normalizer cells along each boundary dimension in turn so all
of its lower boundaries end up in rehydrated normal form. A normalizer
``phi(u)`` is the coherence from ``R(N(u))`` to ``u``; it is built over
the sub-context spanned by the support of ``u``, which is where both of
its ends have full support.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .builders import comp_nk_head, elaborate_substitution
from .errors import BoundaryMismatch, RehydrationError, SupportViolation, TypingError
from .pasting import check_pasting, is_pasting, restrict
from .reduction import DEFAULT_FUEL, Normalizer
from .subst import apply_term
from .syntax import STAR, Arrow, Coh, Context, Term, Type, Var, infer_type, support, term_dim
from .typecheck import Checker, Mode, src_k, tgt_k


class Rehydrator:
    """Session object holding memo tables for ``N`` and ``R``."""

    def __init__(self, fuel: int = DEFAULT_FUEL, max_depth: int = 64) -> None:
        self.normalizer = Normalizer(fuel)
        self.max_depth = max_depth
        self._memo: Dict[Tuple[Context, Term], Term] = {}

    def nf(self, x):
        return self.normalizer._norm(x)[0]

    # -- R -----------------------------------------------------------------

    def rehydrate(self, t: Term, ctx: Context, depth: int = 0) -> Term:
        """``R(t)`` for a term valid in ``ctx``."""
        if t.__class__ is Var:
            return t
        if depth > self.max_depth:
            raise RehydrationError("rehydration recursed deeper than the dimension bound allows")
        key = (ctx, t)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        ty = self.rehydrate_type(t.ty, t.ctx, depth + 1)
        sub = tuple(self.rehydrate(s, ctx, depth + 1) for s in t.sub)
        out = self.pad(Coh(t.ctx, ty, sub), ctx, depth + 1)
        self._memo[key] = out
        return out

    def rehydrate_type(self, ty: Type, ctx: Context, depth: int = 0) -> Type:
        if ty.__class__ is not Arrow:
            return STAR
        return Arrow(
            self.rehydrate_type(ty.base, ctx, depth),
            self.rehydrate(ty.src, ctx, depth),
            self.rehydrate(ty.tgt, ctx, depth),
        )

    def rehydrated_nf(self, t: Term, ctx: Context, depth: int = 0) -> Term:
        return self.rehydrate(self.nf(t), ctx, depth)

    # -- P -----------------------------------------------------------------

    def pad(self, t: Term, ctx: Context, depth: int = 0) -> Term:
        """``P(t) = P_n(t)`` with ``n = dim t``."""
        n = term_dim(t, ctx)
        for k in range(n):
            t = self.pad_step(t, ctx, n, k, depth)
        return t

    def pad_step(self, t: Term, ctx: Context, n: int, k: int, depth: int = 0) -> Term:
        """``P_{k+1}`` from ``P_k``: glue normalizers at the ``k``-source and ``k``-target."""
        s = self.normalizer_cell(src_k(t, ctx, k), ctx, inverse=False, depth=depth)
        e = self.normalizer_cell(tgt_k(t, ctx, k), ctx, inverse=True, depth=depth)
        head_ctx, head_ty = comp_nk_head(n, k)
        try:
            sub = elaborate_substitution(head_ctx, (s, t, e), ctx, equal=lambda a, b: a == b)
        except (BoundaryMismatch, TypingError) as err:
            raise RehydrationError(f"padding at dimension {k} does not glue: {err}") from err
        return Coh(head_ctx, head_ty, sub)

    # -- phi ---------------------------------------------------------------

    def normalizer_cell(self, u: Term, ctx: Context, inverse: bool = False, depth: int = 0) -> Term:
        """``phi(u) : R(N(u)) -> u``, or ``phi^-1(u)`` with the ends swapped."""
        sub_ctx, incl, table = restrict(ctx, support(u, ctx))
        if not is_pasting(sub_ctx):
            raise RehydrationError("the support of a boundary is not a pasting context")
        local = apply_term(u, table)
        target = self.rehydrated_nf(local, sub_ctx, depth + 1)
        ty = infer_type(local, sub_ctx)
        if infer_type(target, sub_ctx) != ty:
            raise RehydrationError("a boundary's type is not in rehydrated normal form")
        cell = Arrow(ty, local, target) if inverse else Arrow(ty, target, local)
        return Coh(sub_ctx, cell, incl)


def rehydrated_normal_form(
    t: Term,
    ctx: Context,
    fuel: int = DEFAULT_FUEL,
    verify: bool = True,
) -> Term:
    """``R(N(t))`` for a term over a pasting context with full support.

    With ``verify`` the result is checked in Catt and compared with ``t``
    in Catt_su; a failure of either is reported as RehydrationError.
    """
    check_pasting(ctx)
    su = Checker(Mode.SU, fuel)
    su.check_context(ctx)
    su.check_term(ctx, t)
    if support(t, ctx) != frozenset(ctx.vars()):
        raise SupportViolation("rehydration needs a term using every variable of its context")
    r = Rehydrator(fuel)
    out = r.rehydrated_nf(t, ctx)
    if verify:
        try:
            Checker(Mode.CATT, fuel).check_term(ctx, out)
        except TypingError as err:
            raise RehydrationError(f"rehydrated term is not valid in Catt: {err}") from err
        if su.nf(out) != su.nf(t):
            raise RehydrationError("rehydrated term is not equal to the input in Catt_su")
    return out


def rehydrate(t: Term, ctx: Context, fuel: int = DEFAULT_FUEL) -> Term:
    """``R(t)`` without normalizing first."""
    return Rehydrator(fuel).rehydrate(t, ctx)


def pad(t: Term, ctx: Context, fuel: int = DEFAULT_FUEL) -> Term:
    return Rehydrator(fuel).pad(t, ctx)


def normalizer(u: Term, ctx: Context, fuel: int = DEFAULT_FUEL) -> Term:
    return Rehydrator(fuel).normalizer_cell(u, ctx)


def inverse_normalizer(u: Term, ctx: Context, fuel: int = DEFAULT_FUEL) -> Term:
    return Rehydrator(fuel).normalizer_cell(u, ctx, inverse=True)
