"""Elaboration of surface declarations into checked kernel entries.

Names resolve, in order, to bound variables, earlier declarations, and
the built-in families ``compN`` (unbiased composite of ``N`` arrows) and
``idK`` (identity on a ``K``-cell). An application may list every
argument of the schema or only its locally maximal ones; the arity
decides which.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .builders import comp_n_head, elaborate_substitution
from .errors import ArityMismatch, ElaborationError, ParseError, TypeMismatch, TypingError
from .parser import Binder, Declaration, SCoh, SStar, STerm, SType, SVar, Span, line_col, parse
from .pasting import identity_head, is_pasting, lm_positions
from .reduction import DEFAULT_FUEL
from .subst import apply_term
from .syntax import STAR, Arrow, Coh, Context, Term, Type, Var, infer_type
from .typecheck import DEFAULT_MAX_DIM, Checker, Mode

_COMP = re.compile(r"comp([1-9])")
_ID = re.compile(r"id(\d+)")

DEFAULT_PRELUDE = Path(__file__).with_name("prelude.catt")


@dataclass(frozen=True)
class Entry:
    kind: str  # "coh" or "let"
    name: str
    ctx: Context
    ty: Type
    body: Optional[Term] = None
    span: Span = (0, 0)
    source: str = ""

    @property
    def term(self) -> Term:
        """The declared term over its own context (a coherence applied to the identity)."""
        if self.body is not None:
            return self.body
        return Coh(self.ctx, self.ty, self.ctx.vars())

    @property
    def head(self) -> Tuple[Context, Type]:
        return self.ctx, self.ty


def builtin_head(name: str) -> Optional[Tuple[Context, Type]]:
    m = _COMP.fullmatch(name)
    if m:
        return comp_n_head(int(m.group(1)))
    m = _ID.fullmatch(name)
    if m:
        return identity_head(int(m.group(1)))
    return None


class Environment:
    """Ordered, checked declarations in one theory mode."""

    def __init__(self, mode: "Mode | str" = Mode.SU, fuel: int = DEFAULT_FUEL, max_dim: int = DEFAULT_MAX_DIM) -> None:
        self.checker = Checker(mode, fuel, max_dim)
        self.entries: Dict[str, Entry] = {}
        self._head_names: Dict[Tuple[Context, Type], str] = {}

    @property
    def mode(self) -> Mode:
        return self.checker.mode

    # -- loading -----------------------------------------------------------

    @classmethod
    def with_prelude(cls, mode: "Mode | str" = Mode.SU, prelude: "str | Path | None" = None, **kw) -> "Environment":
        env = cls(mode, **kw)
        path = Path(prelude) if prelude is not None else DEFAULT_PRELUDE
        env.load_file(path)
        return env

    def load_file(self, path: "str | Path") -> List[Entry]:
        path = Path(path)
        return self.load(path.read_text(encoding="utf-8"), str(path))

    def load(self, source: str, filename: str = "<input>") -> List[Entry]:
        try:
            decls = parse(source)
        except ParseError as e:
            e.where = filename  # type: ignore[attr-defined]
            raise
        out = []
        for d in decls:
            try:
                out.append(self.declare(d, source))
            except (TypingError, ElaborationError) as e:
                line, col = line_col(source, d.span[0])
                e.where = f"{filename}:{line}:{col}: in {d.name}"  # type: ignore[attr-defined]
                raise
        return out

    def declare(self, d: Declaration, source: str = "") -> Entry:
        if d.name in self.entries:
            raise ElaborationError(f"{d.name} is already declared")
        ctx = self.elab_context(d.binders)
        if d.kind == "coh":
            ty = self.elab_type(d.ty, ctx, _scope(ctx))
            self.checker.check_head(ctx, ty)
            entry = Entry("coh", d.name, ctx, ty, None, d.span, source)
            self._head_names.setdefault((ctx, ty), d.name)
        else:
            body = self.elab_term(d.body, ctx, _scope(ctx))
            inferred = self.checker.check_term(ctx, body)
            ty = inferred
            if d.ty is not None:
                ty = self.elab_type(d.ty, ctx, _scope(ctx))
                self.checker.check_type(ctx, ty)
                if not self.checker.equal(ty, inferred):
                    raise TypeMismatch(ty, inferred, "the body does not have the declared type")
            entry = Entry("let", d.name, ctx, ty, body, d.span, source)
        self.entries[d.name] = entry
        return entry

    def __getitem__(self, name: str) -> Entry:
        try:
            return self.entries[name]
        except KeyError:
            raise ElaborationError(f"unknown name {name}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def name_of_head(self, ctx: Context, ty: Type) -> Optional[str]:
        return self._head_names.get((ctx, ty))

    def resolve_head(self, name: str) -> Optional[Tuple[Context, Type]]:
        """The coherence head a name stands for, if it names one."""
        e = self.entries.get(name)
        if e is not None:
            return e.head if e.kind == "coh" else None
        return builtin_head(name)

    # -- elaboration -------------------------------------------------------

    def elab_context(self, binders: Sequence[Binder]) -> Context:
        types: List[Type] = []
        names: List[str] = []
        scope: Dict[str, int] = {}
        for b in binders:
            if b.name in scope:
                raise ElaborationError(f"variable {b.name} is bound twice")
            prefix = Context(types, names)
            ty = self.elab_type(b.ty, prefix, scope)
            try:
                self.checker.check_type(prefix, ty)
            except TypingError as e:
                e.location = b.name if e.location is None else f"{b.name}/{e.location}"
                raise
            scope[b.name] = len(types)
            types.append(ty)
            names.append(b.name)
        return Context(types, names)

    def elab_type(self, st: SType, ctx: Context, scope: Dict[str, int]) -> Type:
        if isinstance(st, SStar):
            return STAR
        s = self.elab_term(st.src, ctx, scope)
        t = self.elab_term(st.tgt, ctx, scope)
        if st.base is not None:
            base = self.elab_type(st.base, ctx, scope)
        else:
            base = infer_type(s, ctx)
        return Arrow(base, s, t)

    def elab_term(self, st: STerm, ctx: Context, scope: Dict[str, int]) -> Term:
        if isinstance(st, SVar):
            if st.name in scope:
                return Var(scope[st.name], st.name)
            raise ElaborationError(f"unknown variable {st.name}")
        if isinstance(st, SCoh):
            hctx = self.elab_context(st.binders)
            hty = self.elab_type(st.ty, hctx, _scope(hctx))
            args = [self.elab_term(a, ctx, scope) for a in st.args]
            return Coh(hctx, hty, self.complete_args(hctx, args, ctx, "coh"))
        args = [self.elab_term(a, ctx, scope) for a in st.args]
        e = self.entries.get(st.name)
        if e is not None and e.kind == "let":
            sub = self.complete_args(e.ctx, args, ctx, st.name)
            return apply_term(e.body, sub)
        head = self.resolve_head(st.name)
        if head is None:
            raise ElaborationError(f"unknown name {st.name}")
        return Coh(head[0], head[1], self.complete_args(head[0], args, ctx, st.name))

    def complete_args(self, delta: Context, args: Sequence[Term], ctx: Context, what: str):
        if len(args) == len(delta):
            return tuple(args)
        if is_pasting(delta):
            n_lm = len(lm_positions(delta))
            if len(args) == n_lm:
                return elaborate_substitution(delta, args, ctx, self.checker.equal)
            raise ArityMismatch(
                f"{what} takes {len(delta)} arguments, or {n_lm} locally maximal ones; got {len(args)}"
            )
        raise ArityMismatch(f"{what} takes {len(delta)} arguments, got {len(args)}")


def _scope(ctx: Context) -> Dict[str, int]:
    return {n: i for i, n in enumerate(ctx.names)}


def load_environment(
    paths: Sequence["str | Path"] = (),
    mode: "Mode | str" = Mode.SU,
    prelude: "str | Path | None" = None,
    fuel: int = DEFAULT_FUEL,
    max_dim: int = DEFAULT_MAX_DIM,
) -> Environment:
    env = Environment.with_prelude(mode, prelude, fuel=fuel, max_dim=max_dim)
    for p in paths:
        env.load_file(p)
    return env
