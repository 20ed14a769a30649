"""Pasting contexts as Dyck words, peaks, and the disc/sphere/identity family.

A certified Dyck word is labelled by the variables of its context, so the
labels of a word built by :func:`check_pasting` are ``0 .. n-1`` in order.
The peak operations (excise, project, remove) relabel their output the
same way, which keeps the word and its realised context in step.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import NotPasting
from .subst import apply_term, apply_type
from .syntax import STAR, Arrow, Coh, Context, Sub, Term, Type, Var, context_dim, free_vars, infer_type


# ---------------------------------------------------------------------------
# Dyck words

@dataclass(frozen=True)
class StarLeaf:
    v: Var

    @property
    def excess(self) -> int:
        return 0


@dataclass(frozen=True)
class Up:
    rest: "DyckWord"
    y: Var
    f: Var

    @property
    def excess(self) -> int:
        return self.rest.excess + 1


@dataclass(frozen=True)
class Down:
    rest: "DyckWord"

    def __post_init__(self) -> None:
        if self.rest.excess < 1:
            raise ValueError("cannot step down from excess 0")

    @property
    def excess(self) -> int:
        return self.rest.excess - 1


DyckWord = Union[StarLeaf, Up, Down]


def word_term(d: DyckWord) -> Var:
    """``tm(d)``, in the word's own labels."""
    return _tm_ty(d)[0]


def word_type(d: DyckWord) -> Type:
    """``ty(d)``, in the word's own labels."""
    return _tm_ty(d)[1]


def _tm_ty(d: DyckWord) -> Tuple[Var, Type]:
    if isinstance(d, StarLeaf):
        return d.v, STAR
    if isinstance(d, Up):
        tm, ty = _tm_ty(d.rest)
        return d.f, Arrow(ty, tm, d.y)
    _, ty = _tm_ty(d.rest)
    return ty.tgt, ty.base


def word_labels(d: DyckWord) -> List[Var]:
    out: List[Var] = []
    stack = []
    while not isinstance(d, StarLeaf):
        stack.append(d)
        d = d.rest
    out.append(d.v)
    for w in reversed(stack):
        if isinstance(w, Up):
            out.append(w.y)
            out.append(w.f)
    return out


def realize(d: DyckWord) -> Context:
    """``⌈d⌉``: the context of a Dyck word, variables numbered in order of appearance."""
    labels = word_labels(d)
    renum = {v.index: Var(i, v.name) for i, v in enumerate(labels)}
    word = _relabel(d, renum)
    types: List[Type] = []
    names: List[str] = []
    _collect(word, types, names)
    return Context(types, names)


def _collect(d: DyckWord, types: List[Type], names: List[str]) -> None:
    if isinstance(d, StarLeaf):
        types.append(STAR)
        names.append(d.v.name)
    elif isinstance(d, Up):
        _collect(d.rest, types, names)
        tm, ty = _tm_ty(d.rest)
        types.append(ty)
        names.append(d.y.name)
        types.append(Arrow(ty, tm, d.y))
        names.append(d.f.name)
    else:
        _collect(d.rest, types, names)


def _relabel(d: DyckWord, renum: Dict[int, Var]) -> DyckWord:
    if isinstance(d, StarLeaf):
        return StarLeaf(renum[d.v.index])
    if isinstance(d, Up):
        return Up(_relabel(d.rest, renum), renum[d.y.index], renum[d.f.index])
    return Down(_relabel(d.rest, renum))


def normalize_labels(d: DyckWord) -> Tuple[DyckWord, Dict[int, Var]]:
    labels = word_labels(d)
    renum = {v.index: Var(i, v.name) for i, v in enumerate(labels)}
    return _relabel(d, renum), renum


@lru_cache(maxsize=4096)
def check_pasting(ctx: Context) -> DyckWord:
    """Certify ``ctx`` as a pasting context, returning its Dyck word of excess 0.

    Each rule is forced by the declared types, so the parse is a single
    left-to-right pass; raises :class:`NotPasting` at the first entry that
    does not have the forced shape.
    """
    n = len(ctx)
    if n == 0:
        raise NotPasting(0, "the empty context is not a pasting context")
    if ctx.types[0] != STAR:
        raise NotPasting(0, "a pasting context starts with an object")
    d: DyckWord = StarLeaf(ctx.var(0))
    tm: Term = ctx.var(0)
    ty: Type = STAR
    i = 1
    while i < n:
        want = ctx.types[i]
        while ty.dim > want.dim:
            d = Down(d)
            tm, ty = ty.tgt, ty.base
        if ty != want:
            raise NotPasting(i, f"entry {i} ({ctx.names[i]}) has the wrong type for a pasting context")
        if i + 1 >= n:
            raise NotPasting(i, f"entry {i} ({ctx.names[i]}) is not followed by an arrow into it")
        y = ctx.var(i)
        arrow = Arrow(ty, tm, y)
        if ctx.types[i + 1] != arrow:
            raise NotPasting(i + 1, f"entry {i + 1} ({ctx.names[i + 1]}) should be an arrow from the current cell")
        d = Up(d, y, ctx.var(i + 1))
        tm, ty = ctx.var(i + 1), arrow
        i += 2
    while d.excess > 0:
        d = Down(d)
    return d


def is_pasting(ctx: Context) -> bool:
    try:
        check_pasting(ctx)
    except NotPasting:
        return False
    return True


# ---------------------------------------------------------------------------
# peaks

@dataclass(frozen=True)
class TopPeak:
    """The turning point of ``Down(Up(rest, y, f))``."""

    rest: DyckWord
    y: Var
    f: Var

    @property
    def label(self) -> Var:
        return self.f


@dataclass(frozen=True)
class UpPeak:
    rest: DyckWord
    y: Var
    f: Var
    inner: "Peak"

    @property
    def label(self) -> Var:
        return self.inner.label


@dataclass(frozen=True)
class DownPeak:
    rest: DyckWord
    inner: "Peak"

    @property
    def label(self) -> Var:
        return self.inner.label


Peak = Union[TopPeak, UpPeak, DownPeak]


def peaks(d: DyckWord) -> List[Peak]:
    """All peaks of ``d``, left to right."""
    if isinstance(d, StarLeaf):
        return []
    if isinstance(d, Up):
        return [UpPeak(d.rest, d.y, d.f, p) for p in peaks(d.rest)]
    out: List[Peak] = [DownPeak(d.rest, p) for p in peaks(d.rest)]
    if isinstance(d.rest, Up):
        out.append(TopPeak(d.rest.rest, d.rest.y, d.rest.f))
    return out


def locally_maximal(d: DyckWord) -> List[Tuple[Var, Peak]]:
    return [(p.label, p) for p in peaks(d)]


@lru_cache(maxsize=4096)
def lm_positions(ctx: Context) -> Tuple[Tuple[int, Peak], ...]:
    """Indices of the locally maximal variables of a pasting context, in order, with their peaks."""
    return tuple((v.index, p) for v, p in locally_maximal(check_pasting(ctx)))


def _excise_raw(p: Peak) -> DyckWord:
    if isinstance(p, TopPeak):
        return p.rest
    if isinstance(p, UpPeak):
        return Up(_excise_raw(p.inner), p.y, p.f)
    return Down(_excise_raw(p.inner))


def excise(p: Peak) -> DyckWord:
    """Remove the peak, i.e. the locally maximal variable and its target."""
    return normalize_labels(_excise_raw(p))[0]


def _project_raw(p: Peak) -> List[Term]:
    if isinstance(p, TopPeak):
        tm, ty = _tm_ty(p.rest)
        return list(word_labels(p.rest)) + [tm, canonical_identity_of(ty, tm)]
    if isinstance(p, UpPeak):
        return _project_raw(p.inner) + [p.y, p.f]
    return _project_raw(p.inner)


def project(p: Peak) -> Sub:
    """The substitution ``pi`` from the word's context into the excised context."""
    raw = _project_raw(p)
    _, renum = normalize_labels(_excise_raw(p))
    remap = [None] * (max(renum) + 1)
    for old, new in renum.items():
        remap[old] = new
    return tuple(apply_term(t, remap) for t in raw)


def remove(p: Peak, sub: Sequence[Term]) -> Sub:
    """Drop the two entries of ``sub`` for the peak's variable and its target."""
    sub = tuple(sub)
    if isinstance(p, TopPeak):
        if len(sub) < 2:
            raise ValueError("substitution too short for this peak")
        return sub[:-2]
    if isinstance(p, UpPeak):
        if len(sub) < 2:
            raise ValueError("substitution too short for this peak")
        return remove(p.inner, sub[:-2]) + sub[-2:]
    return remove(p.inner, sub)


@lru_cache(maxsize=8192)
def prune_head(ctx: Context, ty: Type, position: int) -> Tuple[Context, Type]:
    """Excise the locally maximal variable at ``position`` from a coherence head."""
    for idx, p in lm_positions(ctx):
        if idx == position:
            new_ctx = realize(excise(p))
            return new_ctx, apply_type(ty, project(p))
    raise ValueError(f"variable {position} is not locally maximal")


def peak_at(ctx: Context, position: int) -> Peak:
    for idx, p in lm_positions(ctx):
        if idx == position:
            return p
    raise ValueError(f"variable {position} is not locally maximal")


# ---------------------------------------------------------------------------
# boundaries

def var_dim(ctx: Context, i: int) -> int:
    return ctx.types[i].dim + 1


def boundary_vars(ctx: Context, k: int, sign: str) -> frozenset[Var]:
    """Variables of the ``k``-dimensional source (``-``) or target (``+``) boundary."""
    if sign not in "+-" or len(sign) != 1:
        raise ValueError("sign must be '-' or '+'")
    hit: set[int] = set()
    for ty in ctx.types:
        if ty.__class__ is Arrow:
            end = ty.tgt if sign == "-" else ty.src
            if end.__class__ is Var:
                hit.add(end.index)
    out = set()
    for i in range(len(ctx)):
        d = var_dim(ctx, i)
        if d < k or (d == k and i not in hit):
            out.add(ctx.var(i))
    return frozenset(out)


def boundary(ctx: Context, sign: str) -> frozenset[Var]:
    """The boundary variables of a pasting context in dimension ``dim ctx - 1``."""
    return boundary_vars(ctx, context_dim(ctx) - 1, sign)


def restrict(ctx: Context, keep: Iterable[Var]) -> Tuple[Context, Sub, List[Optional[Var]]]:
    """Sub-context on a downward closed set of variables.

    Returns the sub-context, the inclusion (a substitution from the
    sub-context into ``ctx``) and the reindexing table taking a term of
    ``ctx`` supported in ``keep`` to the sub-context.
    """
    idx = sorted({v.index for v in keep})
    table: List[Optional[Var]] = [None] * len(ctx)
    for new, old in enumerate(idx):
        table[old] = Var(new, ctx.names[old])
    types = [apply_type(ctx.types[old], table) for old in idx]
    sub_ctx = Context(types, [ctx.names[old] for old in idx])
    incl = tuple(ctx.var(old) for old in idx)
    return sub_ctx, incl, table


# ---------------------------------------------------------------------------
# discs, spheres and identities

def disc_name(k: int, primed: bool = False) -> str:
    return f"d'{k}" if primed else f"d{k}"


@lru_cache(maxsize=None)
def disc_context(k: int) -> Context:
    if k < 0:
        raise ValueError("disc dimension must be non-negative")
    types: List[Type] = [STAR]
    names = [disc_name(0)]
    for j in range(k):
        types.append(sphere_type(j - 1))
        names.append(disc_name(j, True))
        types.append(sphere_type(j))
        names.append(disc_name(j + 1))
    return Context(types, names)


@lru_cache(maxsize=None)
def sphere_type(k: int) -> Type:
    if k < -1:
        raise ValueError("sphere dimension must be at least -1")
    if k == -1:
        return STAR
    return Arrow(sphere_type(k - 1), Var(2 * k, disc_name(k)), Var(2 * k + 1, disc_name(k, True)))


def disc_top(k: int) -> Var:
    return Var(2 * k, disc_name(k))


def disc_sub(ty: Type, t: Term) -> Sub:
    """``{A, t}``: the substitution out of a disc picking out ``t : A``."""
    tail: List[Term] = [t]
    while ty.__class__ is Arrow:
        tail.append(ty.tgt)
        t = ty.src
        ty = ty.base
        tail.append(t)
    tail.reverse()
    return tuple(tail)


@lru_cache(maxsize=None)
def identity_head(n: int) -> Tuple[Context, Type]:
    top = disc_top(n)
    return disc_context(n), Arrow(sphere_type(n - 1), top, top)


def identity_term(n: int, sub: Sequence[Term]) -> Coh:
    ctx, ty = identity_head(n)
    if len(sub) != len(ctx):
        raise ValueError(f"i_{n} takes {len(ctx)} arguments, got {len(sub)}")
    return Coh(ctx, ty, sub)


def canonical_identity_of(ty: Type, t: Term) -> Coh:
    """``i_{dim A + 1}[{A, t}]`` for ``t : A``."""
    return identity_term(ty.dim + 1, disc_sub(ty, t))


def canonical_identity(t: Term, ctx: Context) -> Coh:
    return canonical_identity_of(infer_type(t, ctx), t)


def disc_dim_of(ctx: Context) -> Optional[int]:
    """``n`` if ``ctx`` is structurally ``D^n``."""
    n = len(ctx)
    if n % 2 == 0:
        return None
    k = (n - 1) // 2
    return k if ctx == disc_context(k) else None


def is_identity(t: object) -> bool:
    if t.__class__ is not Coh:
        return False
    k = disc_dim_of(t.ctx)
    return k is not None and t.ty == identity_head(k)[1]


def is_disc_coherence(t: object) -> bool:
    """Head is ``coh(D^{n+1} : S^n)``, i.e. a disc-removal redex."""
    if t.__class__ is not Coh:
        return False
    k = disc_dim_of(t.ctx)
    return k is not None and k >= 1 and t.ty == sphere_type(k - 1)


def full_vars(ctx: Context) -> frozenset[Var]:
    return free_vars(ctx)
