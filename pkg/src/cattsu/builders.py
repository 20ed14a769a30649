"""Constructions of standard coherences and argument elaboration.

Unbiased composites take each boundary of a pasting context to its own
unbiased composite, except that a boundary which is already a disc is
represented by its top variable. With this convention the 1-dimensional
chains give ``comp_n`` and the glued discs give ``comp_{n,k}``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import ArityMismatch, BoundaryMismatch
from .pasting import boundary_vars, check_pasting, disc_dim_of, lm_positions, restrict
from .subst import apply_term
from .syntax import STAR, Arrow, Coh, Context, Sub, Term, Type, Var, context_dim, infer_type


def pasting_from_moves(moves: Sequence[tuple]) -> Context:
    """Build a context from ``("star", x)``, ``("up", y, f)`` and ``("down",)`` moves."""
    types: List[Type] = []
    names: List[str] = []
    if not moves or moves[0][0] != "star":
        raise ValueError("a pasting context starts with a star move")
    types.append(STAR)
    names.append(moves[0][1])
    stack: List[Tuple[Term, Type]] = [(Var(0, moves[0][1]), STAR)]
    for mv in moves[1:]:
        if mv[0] == "up":
            tm, ty = stack[-1]
            y = Var(len(types), mv[1])
            types.append(ty)
            names.append(mv[1])
            arrow = Arrow(ty, tm, y)
            f = Var(len(types), mv[2])
            types.append(arrow)
            names.append(mv[2])
            stack[-1] = (y, ty)
            stack.append((f, arrow))
        elif mv[0] == "down":
            if len(stack) < 2:
                raise ValueError("down move at excess 0")
            stack.pop()
        else:
            raise ValueError(f"unknown move {mv[0]!r}")
    return Context(types, names)


@lru_cache(maxsize=None)
def chain_context(n: int) -> Context:
    """``(x0)(x1)(f1 : x0 -> x1) ... (xn)(fn : x(n-1) -> xn)``."""
    if n < 1:
        raise ValueError("a chain needs at least one arrow")
    moves: List[tuple] = [("star", "x0")]
    for i in range(1, n + 1):
        moves += [("up", f"x{i}", f"f{i}"), ("down",)]
    return pasting_from_moves(moves)


@lru_cache(maxsize=4096)
def composite_type(ctx: Context) -> Arrow:
    """Cell type of the unbiased composite of a pasting context of positive dimension."""
    m = context_dim(ctx)
    if m < 1:
        raise ValueError("a 0-dimensional pasting context has no composite")
    ends = []
    for sign in "-+":
        sub_ctx, incl, _ = restrict(ctx, boundary_vars(ctx, m - 1, sign))
        ends.append(apply_term(boundary_composite(sub_ctx), incl))
    return Arrow(infer_type(ends[0], ctx), ends[0], ends[1])


def boundary_composite(ctx: Context) -> Term:
    """The top variable of a disc, otherwise the unbiased composite over ``ctx``."""
    check_pasting(ctx)
    if disc_dim_of(ctx) is not None:
        return Var(len(ctx) - 1, ctx.names[-1])
    return Coh(ctx, composite_type(ctx), ctx.vars())


def comp_n_head(n: int) -> Tuple[Context, Type]:
    ctx = chain_context(n)
    return ctx, composite_type(ctx)


@lru_cache(maxsize=None)
def comp_nk_context(n: int, k: int) -> Context:
    """An ``n``-disc with ``(k+1)``-discs glued at its ``k``-source and ``k``-target."""
    if not 0 <= k < n:
        raise ValueError(f"comp_{{n,k}} needs 0 <= k < n, got n={n}, k={k}")
    moves: List[tuple] = [("star", "c0" if k else "s0")]
    for j in range(k):
        top = f"c{j + 1}" if j + 1 < k else f"s{k}"
        moves.append(("up", f"c'{j}", top))
    moves += [("up", f"d{k}", "S"), ("down",)]
    for j in range(k, n):
        moves.append(("up", f"d'{j}", f"d{j + 1}"))
    moves += [("down",)] * (n - k)
    moves += [("up", f"t{k}", "T"), ("down",)]
    moves += [("down",)] * k
    return pasting_from_moves(moves)


def comp_nk_head(n: int, k: int) -> Tuple[Context, Type]:
    ctx = comp_nk_context(n, k)
    return ctx, composite_type(ctx)


# ---------------------------------------------------------------------------
# elaborating locally maximal arguments

Equal = Callable[[object, object], bool]


def elaborate_substitution(
    delta: Context,
    args: Sequence[Term],
    ambient: Context,
    equal: Optional[Equal] = None,
) -> Sub:
    """Complete arguments given for the locally maximal variables of ``delta``.

    Every other variable of a pasting context is an iterated source or
    target of a locally maximal one, so its image is read off from the
    inferred types of the supplied arguments. The first determination of
    each variable wins; later ones are compared with ``equal`` (skipped
    when ``equal`` is None) and a disagreement raises BoundaryMismatch.
    """
    lms = [idx for idx, _ in lm_positions(delta)]
    args = tuple(args)
    if len(args) != len(lms):
        raise ArityMismatch(f"expected {len(lms)} locally maximal arguments, got {len(args)}")
    out: List[Optional[Term]] = [None] * len(delta)
    for idx, a in zip(lms, args):
        stack = [(idx, a)]
        while stack:
            v, t = stack.pop()
            prev = out[v]
            if prev is not None:
                if equal is not None and not equal(prev, t):
                    raise BoundaryMismatch(
                        f"{delta.names[v]} is determined as two different terms", delta.names[v]
                    )
                continue
            out[v] = t
            vty = delta.types[v]
            if vty.__class__ is Arrow:
                tty = infer_type(t, ambient)
                if tty.__class__ is not Arrow:
                    raise BoundaryMismatch(
                        f"argument for {delta.names[v]} should have positive dimension", delta.names[v]
                    )
                if tty.dim != vty.dim:
                    raise BoundaryMismatch(
                        f"argument for {delta.names[v]} has dimension {tty.dim + 1}, expected {vty.dim + 1}",
                        delta.names[v],
                    )
                # target pushed first so sources are determined first
                stack.append((vty.tgt.index, tty.tgt))
                stack.append((vty.src.index, tty.src))
    if any(t is None for t in out):
        missing = [delta.names[i] for i, t in enumerate(out) if t is None]
        raise ArityMismatch(f"cannot infer arguments for {', '.join(missing)}; give all arguments explicitly")
    return tuple(out)  # type: ignore[arg-type]


def lm_arguments(delta: Context, sub: Sequence[Term]) -> Sub:
    """The entries of ``sub`` at locally maximal positions, in order."""
    return tuple(sub[idx] for idx, _ in lm_positions(delta))
