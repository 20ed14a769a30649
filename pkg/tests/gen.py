"""Random valid Catt_su syntax for property tests.

Substitutions out of a pasting context are filled along its Dyck word:
at each up-step the image of the new arrow is a pool term whose normal
source is the current image, and the identity on the current image is
always available, so filling never gets stuck. Reaching for identities
is also what plants pruning redexes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from cattsu.builders import boundary_composite, chain_context, comp_nk_head, composite_type, pasting_from_moves
from cattsu.pasting import StarLeaf, Up, check_pasting, canonical_identity_of, disc_context, identity_head
from cattsu.reduction import normal_form
from cattsu.syntax import STAR, Arrow, Coh, Context, Term, Type, Var, context_dim, infer_type
from cattsu.typecheck import Checker, Mode


def random_moves(rng: random.Random, n_up: int, max_dim: int) -> list:
    moves: list = [("star", "x0")]
    excess = 0
    ups = 0
    while ups < n_up or excess > 0:
        can_up = ups < n_up and excess < max_dim
        if can_up and (excess == 0 or rng.random() < 0.55):
            ups += 1
            moves.append(("up", f"y{ups}", f"f{ups}"))
            excess += 1
        else:
            moves.append(("down",))
            excess -= 1
    return moves


def random_pasting(rng: random.Random, max_up: int = 3, max_dim: int = 2) -> Context:
    return pasting_from_moves(random_moves(rng, rng.randint(0, max_up), max_dim))


def walk(ctx: Context):
    """Yield the Dyck steps of a pasting context as ('star', i) / ('up', y, f) / ('down',)."""
    d = check_pasting(ctx)
    steps = []
    while not isinstance(d, StarLeaf):
        steps.append(d)
        d = d.rest
    out = [("star", d.v.index)]
    for w in reversed(steps):
        if isinstance(w, Up):
            out.append(("up", w.y.index, w.f.index))
        else:
            out.append(("down",))
    return out


class Pool:
    """Valid terms over one ambient context, grouped by dimension and normal source."""

    def __init__(self, ctx: Context) -> None:
        self.ctx = ctx
        self.by_dim: Dict[int, List[Term]] = {}
        self.by_src: Dict[Tuple[int, Term], List[Term]] = {}
        self.seen = set()
        for v in ctx.vars():
            self.add(v)

    def add(self, t: Term) -> None:
        if t in self.seen:
            return
        self.seen.add(t)
        ty = infer_type(t, self.ctx)
        d = ty.dim + 1
        self.by_dim.setdefault(d, []).append(t)
        if ty.__class__ is Arrow:
            self.by_src.setdefault((d, normal_form(ty.src)), []).append(t)

    def zero_cells(self) -> List[Term]:
        return self.by_dim.get(0, [])

    def starting_at(self, d: int, src: Term) -> List[Term]:
        return self.by_src.get((d, normal_form(src)), [])


def fill(
    rng: random.Random,
    delta: Context,
    pool: Pool,
    p_identity: float = 0.3,
    force_identity: Optional[int] = None,
) -> Tuple[Term, ...]:
    """A random valid substitution from pasting ``delta`` into the pool's context."""
    out: List[Optional[Term]] = [None] * len(delta)
    stack: List[Tuple[Term, Type]] = []
    for st in walk(delta):
        if st[0] == "star":
            x = rng.choice(pool.zero_cells())
            out[st[1]] = x
            stack.append((x, STAR))
        elif st[0] == "up":
            cur, cur_ty = stack[-1]
            d = cur_ty.dim + 2
            cands = pool.starting_at(d, cur)
            if st[2] == force_identity or not cands or rng.random() < p_identity:
                u = canonical_identity_of(cur_ty, cur)
            else:
                u = rng.choice(cands)
            uty = infer_type(u, pool.ctx)
            out[st[1]] = uty.tgt
            out[st[2]] = u
            stack[-1] = (uty.tgt, cur_ty)
            stack.append((u, uty))
        else:
            stack.pop()
    return tuple(out)  # type: ignore[return-value]


@dataclass
class HeadLibrary:
    """Valid coherence heads of several kinds, with full-support terms to pair up."""

    heads: List[Tuple[Context, Type]] = field(default_factory=list)

    def add(self, ctx: Context, ty: Type) -> None:
        self.heads.append((ctx, ty))


def make_heads(rng: random.Random, checker: Checker, extra: Sequence[Tuple[Context, Type]] = ()) -> HeadLibrary:
    lib = HeadLibrary()
    for n in range(0, 3):
        lib.add(*identity_head(n))
    for n in range(1, 4):
        lib.add(chain_context(n), composite_type(chain_context(n)))
    for n in range(1, 3):
        d = disc_context(n)
        lib.add(d, composite_type(d))
    for n, k in [(1, 0), (2, 0), (2, 1)]:
        lib.add(*comp_nk_head(n, k))
    for _ in range(12):
        ctx = random_pasting(rng, 3, 2)
        if context_dim(ctx) < 1:
            continue
        comp = boundary_composite(ctx)
        cty = composite_type(ctx)
        lib.add(ctx, cty)
        if comp.__class__ is Coh:
            # an endo-coherence on the composite
            lib.add(ctx, Arrow(cty, comp, comp))
    for h in extra:
        lib.add(*h)
    for h in lib.heads:
        checker.check_head(*h)
    return lib


def random_term(
    rng: random.Random,
    pool: Pool,
    lib: HeadLibrary,
    p_identity: float = 0.3,
) -> Term:
    ctx, ty = rng.choice(lib.heads)
    sub = fill(rng, ctx, pool, p_identity)
    return Coh(ctx, ty, sub)


def ambient_contexts() -> List[Context]:
    x = Var(0, "x")
    i0 = canonical_identity_of(STAR, x)
    loops = Context([STAR, Arrow(Arrow(STAR, x, x), i0, i0), Arrow(Arrow(STAR, x, x), i0, i0)], ["x", "a", "b"])
    return [
        disc_context(0),
        disc_context(1),
        disc_context(2),
        chain_context(2),
        chain_context(3),
        pasting_from_moves([("star", "x"), ("up", "y", "f"), ("up", "g", "a"), ("down",), ("down",),
                            ("up", "z", "h"), ("down",)]),
        Context([STAR, Arrow(STAR, x, x)], ["x", "f"]),
        loops,
    ]


def prelude_heads() -> List[Tuple[Context, Type]]:
    from cattsu.elaborate import Environment

    env = Environment.with_prelude(Mode.SU)
    return [e.head for e in env.entries.values() if e.kind == "coh"]


def population(seed: int, count: int, extra_heads: Optional[Sequence[Tuple[Context, Type]]] = None, rounds: int = 3):
    """``count`` random valid terms (with their contexts), grown over a few rounds of nesting."""
    rng = random.Random(seed)
    checker = Checker(Mode.SU)
    if extra_heads is None:
        extra_heads = prelude_heads()
    lib = make_heads(rng, checker, extra_heads)
    out: List[Tuple[Context, Term]] = []
    ctxs = ambient_contexts()
    per_ctx = max(1, count // len(ctxs))
    for ctx in ctxs:
        pool = Pool(ctx)
        made: List[Term] = []
        for r in range(rounds):
            batch = [random_term(rng, pool, lib) for _ in range(max(1, per_ctx // rounds))]
            for t in batch:
                pool.add(t)
            made.extend(batch)
        out.extend((ctx, t) for t in made)
    while len(out) < count:
        ctx = rng.choice(ctxs)
        out.append((ctx, random_term(rng, Pool(ctx), lib)))
    return out
