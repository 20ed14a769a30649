"""Raw syntax of Catt: variables, types, terms, contexts and substitutions.

Variables are context positions (levels). A variable's display name is
metadata only, so structural equality of any two syntactic objects is
equality up to alpha-renaming.

Substitutions are plain tuples of terms; entry ``i`` is the image of the
variable at position ``i`` of the context the substitution comes from.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Tuple, Union

from .errors import UnboundVariable


class Var:
    __slots__ = ("index", "name")

    def __init__(self, index: int, name: str = "") -> None:
        self.index = index
        self.name = name or f"v{index}"

    def __eq__(self, other: object) -> bool:
        return other.__class__ is Var and other.index == self.index  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash(("var", self.index))

    def __repr__(self) -> str:
        return f"Var({self.index}, {self.name!r})"


class StarType:
    """The base type ``*``. There is exactly one instance, :data:`STAR`."""

    __slots__ = ()

    def __eq__(self, other: object) -> bool:
        return other.__class__ is StarType

    def __hash__(self) -> int:
        return 0x5A5A

    def __repr__(self) -> str:
        return "STAR"

    @property
    def dim(self) -> int:
        return -1


STAR = StarType()


class Arrow:
    """The arrow type ``src ->_base tgt``."""

    __slots__ = ("base", "src", "tgt", "_hash", "_dim")

    def __init__(self, base: "Type", src: "Term", tgt: "Term") -> None:
        self.base = base
        self.src = src
        self.tgt = tgt
        self._hash = hash(("arr", base, src, tgt))
        self._dim = base.dim + 1

    @property
    def dim(self) -> int:
        return self._dim

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            other.__class__ is Arrow
            and self._hash == other._hash  # type: ignore[attr-defined]
            and self.src == other.src  # type: ignore[attr-defined]
            and self.tgt == other.tgt  # type: ignore[attr-defined]
            and self.base == other.base  # type: ignore[attr-defined]
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Arrow({self.base!r}, {self.src!r}, {self.tgt!r})"


class Context:
    """An ordered list of typed variables; names never affect equality."""

    __slots__ = ("types", "names", "_hash")

    def __init__(self, types: Iterable["Type"], names: Iterable[str] | None = None) -> None:
        self.types: Tuple[Type, ...] = tuple(types)
        if names is None:
            names = [f"v{i}" for i in range(len(self.types))]
        self.names: Tuple[str, ...] = tuple(names)
        if len(self.names) != len(self.types):
            raise ValueError("context names and types differ in length")
        self._hash = hash(("ctx", self.types))

    def __len__(self) -> int:
        return len(self.types)

    def __iter__(self) -> Iterator[Tuple[str, "Type"]]:
        return iter(zip(self.names, self.types))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            other.__class__ is Context
            and self._hash == other._hash  # type: ignore[attr-defined]
            and self.types == other.types  # type: ignore[attr-defined]
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}: {t!r}" for n, t in self)
        return f"Context([{inner}])"

    def var(self, index: int) -> Var:
        return Var(index, self.names[index])

    def vars(self) -> Tuple[Var, ...]:
        return tuple(Var(i, n) for i, n in enumerate(self.names))

    def extend(self, name: str, ty: "Type") -> "Context":
        return Context(self.types + (ty,), self.names + (name,))

    def prefix(self, n: int) -> "Context":
        return Context(self.types[:n], self.names[:n])


class Coh:
    """A coherence ``coh(ctx : ty)[sub]``; ``sub`` has one entry per ``ctx`` variable."""

    __slots__ = ("ctx", "ty", "sub", "_hash")

    def __init__(self, ctx: Context, ty: "Type", sub: Sequence["Term"]) -> None:
        self.ctx = ctx
        self.ty = ty
        self.sub: Tuple[Term, ...] = tuple(sub)
        self._hash = hash(("coh", ctx, ty, self.sub))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            other.__class__ is Coh
            and self._hash == other._hash  # type: ignore[attr-defined]
            and self.sub == other.sub  # type: ignore[attr-defined]
            and self.ty == other.ty  # type: ignore[attr-defined]
            and self.ctx == other.ctx  # type: ignore[attr-defined]
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Coh({self.ctx!r}, {self.ty!r}, {list(self.sub)!r})"

    def with_sub(self, sub: Sequence["Term"]) -> "Coh":
        return Coh(self.ctx, self.ty, sub)


Term = Union[Var, Coh]
Type = Union[StarType, Arrow]
Sub = Tuple[Term, ...]


def struct_eq(a: object, b: object) -> bool:
    """Alpha-equivalence; with positional variables this is plain equality."""
    return a == b


# ---------------------------------------------------------------------------
# free variables

def free_vars(x: Union[Term, Type, Sequence[Term], Context]) -> frozenset[Var]:
    if isinstance(x, Context):
        return frozenset(x.vars())
    acc: set[Var] = set()
    _fv(x, acc)
    return frozenset(acc)


def _fv(x, acc: set) -> None:
    cls = x.__class__
    if cls is Var:
        acc.add(x)
    elif cls is Coh:
        for t in x.sub:
            _fv(t, acc)
    elif cls is Arrow:
        _fv(x.base, acc)
        _fv(x.src, acc)
        _fv(x.tgt, acc)
    elif cls is StarType:
        pass
    else:
        for t in x:
            _fv(t, acc)


# ---------------------------------------------------------------------------
# dimension

def type_dim(ty: Type) -> int:
    return ty.dim


def context_dim(ctx: Context) -> int:
    d = -1
    for ty in ctx.types:
        d = max(d, ty.dim + 1)
    return d


def infer_type(t: Term, ctx: Context) -> Type:
    """The canonical type of a well-scoped term; performs no validity check."""
    if t.__class__ is Var:
        if t.index >= len(ctx) or t.index < 0:
            raise UnboundVariable(t.index, len(ctx))
        return ctx.types[t.index]
    # local import: subst depends on this module
    from .subst import apply_type

    return apply_type(t.ty, t.sub)


def term_dim(t: Term, ctx: Context) -> int:
    if t.__class__ is Coh:
        return t.ty.dim + 1
    return infer_type(t, ctx).dim + 1


def dimension(x: Union[Type, Context, Term], ctx: Context | None = None) -> int:
    if isinstance(x, Context):
        return context_dim(x)
    if isinstance(x, (StarType, Arrow)):
        return x.dim
    if ctx is None:
        raise TypeError("the dimension of a term needs its context")
    return term_dim(x, ctx)


# ---------------------------------------------------------------------------
# support

def downward_closure(vs: Iterable[Var], ctx: Context) -> frozenset[Var]:
    seen: set[int] = set()
    stack = [v.index for v in vs]
    while stack:
        i = stack.pop()
        if i in seen:
            continue
        if i >= len(ctx) or i < 0:
            raise UnboundVariable(i, len(ctx))
        seen.add(i)
        stack.extend(v.index for v in free_vars(ctx.types[i]) if v.index not in seen)
    return frozenset(ctx.var(i) for i in seen)


def support(t: Union[Term, Type, Sequence[Term]], ctx: Context) -> frozenset[Var]:
    """Downward closure of the free variables of ``t`` in ``ctx``."""
    return downward_closure(free_vars(t), ctx)


# ---------------------------------------------------------------------------
# size metrics

def count_coherences(x) -> int:
    """Number of ``Coh`` nodes in the fully explicit syntax tree (cell types included)."""
    cls = x.__class__
    if cls is Var or cls is StarType:
        return 0
    if cls is Arrow:
        return count_coherences(x.base) + count_coherences(x.src) + count_coherences(x.tgt)
    if cls is Coh:
        n = 1 + count_coherences(x.ty)
        for ty in x.ctx.types:
            n += count_coherences(ty)
        for t in x.sub:
            n += count_coherences(t)
        return n
    return sum(count_coherences(t) for t in x)


def term_size(x) -> int:
    """Node count: variables and coherences in terms, cell types and arguments."""
    cls = x.__class__
    if cls is Var:
        return 1
    if cls is StarType:
        return 0
    if cls is Arrow:
        return term_size(x.base) + term_size(x.src) + term_size(x.tgt)
    if cls is Coh:
        return 1 + term_size(x.ty) + sum(term_size(t) for t in x.sub)
    return sum(term_size(t) for t in x)
