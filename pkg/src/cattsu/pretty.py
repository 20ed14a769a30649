"""Printing kernel syntax back to the ``.catt`` surface language.

By default every argument is printed, so output re-parses to a
structurally equal term. ``lm_only`` prints only the locally maximal
arguments of each application, which is shorter but re-elaborates
implicit positions from boundaries.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING, List, Optional, Sequence

from .builders import comp_n_head
from .pasting import disc_dim_of, is_identity, is_pasting, lm_positions
from .syntax import STAR, Arrow, Coh, Context, Term, Type, Var, infer_type

if TYPE_CHECKING:
    from .elaborate import Entry, Environment

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_RESERVED = {"coh", "let", "star"}
_BUILTIN = re.compile(r"comp[1-9]|id\d+")


def display_names(ctx: Context, env: "Optional[Environment]" = None) -> List[str]:
    """Unique, parseable names for the variables of ``ctx``.

    Names that would read as a global (a declaration or a built-in) are
    avoided, since a bound variable never takes arguments.
    """
    out: List[str] = []
    seen = set()
    for i, n in enumerate(ctx.names):
        if not _IDENT.fullmatch(n) or n in _RESERVED:
            n = f"v{i}"
        if _BUILTIN.fullmatch(n) or (env is not None and n in env):
            n = f"{n}_"
        while n in seen:
            n += "'"
        seen.add(n)
        out.append(n)
    return out


class Printer:
    def __init__(self, env: "Optional[Environment]" = None, lm_only: bool = False) -> None:
        self.env = env
        self.lm_only = lm_only

    def head_name(self, t: Coh) -> Optional[str]:
        env = self.env
        if is_identity(t):
            name = f"id{disc_dim_of(t.ctx)}"
            if env is None or env.resolve_head(name) == (t.ctx, t.ty):
                return name
        if env is not None:
            name = env.name_of_head(t.ctx, t.ty)
            if name is not None:
                return name
        k = len(t.ctx)
        if k % 2 == 1 and 3 <= k <= 19:
            n = (k - 1) // 2
            name = f"comp{n}"
            if comp_n_head(n) == (t.ctx, t.ty) and (env is None or env.resolve_head(name) == (t.ctx, t.ty)):
                return name
        return None

    def term(self, t: Term, ctx: Context, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            names = display_names(ctx, self.env)
        if t.__class__ is Var:
            return names[t.index]
        args = self.args(t, ctx, names)
        name = self.head_name(t)
        if name is not None:
            return f"{name}[{args}]"
        hnames = display_names(t.ctx, self.env)
        return f"coh {self.binders(t.ctx, hnames)} : {self.type(t.ty, t.ctx, hnames)} [{args}]"

    def args(self, t: Coh, ctx: Context, names: Sequence[str]) -> str:
        sub: Sequence[Term] = t.sub
        if self.lm_only and is_pasting(t.ctx):
            lms = [i for i, _ in lm_positions(t.ctx)]
            if lms and len(lms) != len(t.ctx):
                sub = [t.sub[i] for i in lms]
        return ", ".join(self.term(s, ctx, names) for s in sub)

    def type(self, ty: Type, ctx: Context, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            names = display_names(ctx, self.env)
        if ty.__class__ is not Arrow:
            return "*"
        s = self.term(ty.src, ctx, names)
        t = self.term(ty.tgt, ctx, names)
        try:
            inferred = infer_type(ty.src, ctx)
        except Exception:
            inferred = None
        if inferred == ty.base:
            return f"{s} -> {t}"
        return f"{s} ->[{self.type(ty.base, ctx, names)}] {t}"

    def binders(self, ctx: Context, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            names = display_names(ctx, self.env)
        parts = []
        for i, ty in enumerate(ctx.types):
            parts.append(f"({names[i]} : {self.type(ty, ctx.prefix(i), names[:i])})")
        return "".join(parts)

    def entry(self, e: "Entry") -> str:
        names = display_names(e.ctx, self.env)
        binders = self.binders(e.ctx, names)
        ty = self.type(e.ty, e.ctx, names)
        if e.kind == "coh":
            return f"coh {e.name} {binders} : {ty}"
        sep = " " if binders else ""
        return f"let {e.name}{sep}{binders} : {ty} = {self.term(e.body, e.ctx, names)}"


def pretty(x, ctx: Optional[Context] = None, env: "Optional[Environment]" = None, lm_only: bool = False) -> str:
    """Render a term, type, context or entry as surface syntax."""
    p = Printer(env, lm_only)
    if isinstance(x, Context):
        return p.binders(x)
    if hasattr(x, "kind") and hasattr(x, "ctx") and hasattr(x, "name"):
        return p.entry(x)
    if x is STAR or x.__class__ is Arrow:
        return p.type(x, ctx if ctx is not None else Context([]))
    if ctx is None:
        raise TypeError("printing a term needs its context")
    return p.term(x, ctx)
