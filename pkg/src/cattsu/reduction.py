"""General and standard reduction, normal forms and the phase discipline.

Reduction is purely syntactic and needs no ambient context: every redex
is recognised from the shape of the head coherence and its arguments.
Labels follow the usual lettering: A (argument), B (pruning), C (cell
type), D (disc removal), E (endo-coherence removal); type steps are T1
(source), T2 (target) and T3 (base) for general reduction, and T0 (base),
T1, T2 for the standard strategy; S is a step inside a substitution.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import FuelExhausted
from .pasting import (
    canonical_identity_of,
    is_disc_coherence,
    is_identity,
    lm_positions,
    prune_head,
    remove,
)
from .subst import apply_term, apply_type
from .syntax import Arrow, Coh, StarType, Sub, Term, Type, Var

DEFAULT_FUEL = 1_000_000

Entity = Union[Term, Type, Sub]


@dataclass(frozen=True)
class ReductionStep:
    """One rewrite. ``chain`` lists (label, position) pairs from the outside in.

    The last label of the chain is the contraction rule that fired at
    ``locus``; ``redex`` and ``contractum`` are the entity at ``locus``
    before and after, and ``result`` is the whole entity after the step.
    """

    chain: Tuple[Tuple[str, str], ...]
    redex: Entity
    contractum: Entity
    result: Entity

    @property
    def rule(self) -> str:
        return self.chain[0][0]

    @property
    def contraction(self) -> str:
        return self.chain[-1][0]

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.chain)

    @property
    def locus(self) -> str:
        return "/".join(pos for _, pos in self.chain if pos) or "."


# ---------------------------------------------------------------------------
# contractions

def prune(t: Coh, position: int) -> Coh:
    """Contract a B-redex at the locally maximal variable ``position``."""
    new_ctx, new_ty = prune_head(t.ctx, t.ty, position)
    for idx, p in lm_positions(t.ctx):
        if idx == position:
            return Coh(new_ctx, new_ty, remove(p, t.sub))
    raise ValueError(f"variable {position} is not locally maximal")


def endo_contract(t: Coh) -> Coh:
    """``coh(G : u ->_T u)[s]`` to ``i_{dim T + 1}[{T, u} o s]``."""
    ty = t.ty
    return canonical_identity_of(apply_type(ty.base, t.sub), apply_term(ty.src, t.sub))


def is_endo(t: Coh) -> bool:
    return t.ty.__class__ is Arrow and t.ty.src == t.ty.tgt


def b_positions(t: Coh) -> List[int]:
    """Locally maximal positions sent to identities (empty when ``t`` is itself an identity)."""
    if is_identity(t):
        return []
    try:
        lms = lm_positions(t.ctx)
    except Exception:
        return []
    return [idx for idx, _ in lms if is_identity(t.sub[idx])]


# ---------------------------------------------------------------------------
# general reduction

def general_reducts(x: Entity) -> List[ReductionStep]:
    """Every one-step general reduct of a term, type or substitution."""
    cls = x.__class__
    if cls is Var or cls is StarType:
        return []
    if cls is Arrow:
        return list(_general_type(x))
    if cls is Coh:
        return list(_general_term(x))
    return list(_general_sub(tuple(x)))


def _wrap(step: ReductionStep, label: str, pos: str, result: Entity) -> ReductionStep:
    return ReductionStep(((label, pos),) + step.chain, step.redex, step.contractum, result)


def _general_sub(sub: Sub) -> Iterator[ReductionStep]:
    for i, s in enumerate(sub):
        for st in _general_term(s) if s.__class__ is Coh else ():
            yield _wrap(st, "S", f"[{i}]", sub[:i] + (st.result,) + sub[i + 1:])


def _general_type(ty: Arrow) -> Iterator[ReductionStep]:
    if ty.src.__class__ is Coh:
        for st in _general_term(ty.src):
            yield _wrap(st, "T1", "src", Arrow(ty.base, st.result, ty.tgt))
    if ty.tgt.__class__ is Coh:
        for st in _general_term(ty.tgt):
            yield _wrap(st, "T2", "tgt", Arrow(ty.base, ty.src, st.result))
    if ty.base.__class__ is Arrow:
        for st in _general_type(ty.base):
            yield _wrap(st, "T3", "base", Arrow(st.result, ty.src, ty.tgt))


def _general_term(t: Coh) -> Iterator[ReductionStep]:
    for i, s in enumerate(t.sub):
        if s.__class__ is Coh:
            for st in _general_term(s):
                yield _wrap(st, "A", f"arg[{i}]", t.with_sub(t.sub[:i] + (st.result,) + t.sub[i + 1:]))
    for idx in b_positions(t):
        out = prune(t, idx)
        yield ReductionStep((("B", ""),), t, out, out)
    if t.ty.__class__ is Arrow:
        for st in _general_type(t.ty):
            yield _wrap(st, "C", "ty", Coh(t.ctx, st.result, t.sub))
    if is_disc_coherence(t):
        out = t.sub[-1]
        yield ReductionStep((("D", ""),), t, out, out)
    if is_endo(t) and not is_identity(t):
        out = endo_contract(t)
        yield ReductionStep((("E", ""),), t, out, out)


# ---------------------------------------------------------------------------
# normal forms

class Normalizer:
    """Memoising normaliser following the standard strategy phase by phase.

    ``steps`` counts the standard steps the strategy would take; the
    count is checked against ``fuel`` as normalisation proceeds.
    """

    def __init__(self, fuel: int = DEFAULT_FUEL) -> None:
        self.fuel = fuel
        self._memo: Dict[object, Tuple[object, int]] = {}
        self.steps = 0

    def _spend(self, n: int) -> None:
        self.steps += n
        if self.steps > self.fuel:
            raise FuelExhausted(self.fuel)

    def count(self, x: Entity) -> int:
        """Number of standard steps from ``x`` to its normal form."""
        return self._norm(x)[1]

    def __call__(self, x: Entity) -> Entity:
        return self.normalize(x)

    def normalize(self, x: Entity) -> Entity:
        self.steps = 0
        nf, n = self._norm(x)
        self._spend(n)
        return nf

    def _norm(self, x) -> Tuple[object, int]:
        cls = x.__class__
        if cls is Var or cls is StarType:
            return x, 0
        hit = self._memo.get(x)
        if hit is not None:
            return hit
        if cls is Coh:
            res = self._norm_term(x)
        elif cls is Arrow:
            res = self._norm_type(x)
        else:
            parts = [self._norm(s) for s in x]
            res = (tuple(p[0] for p in parts), sum(p[1] for p in parts))
        self._memo[x] = res
        return res

    def _norm_type(self, ty: Arrow) -> Tuple[Arrow, int]:
        base, n0 = self._norm(ty.base)
        src, n1 = self._norm(ty.src)
        tgt, n2 = self._norm(ty.tgt)
        if n0 + n1 + n2 == 0:
            return ty, 0
        return Arrow(base, src, tgt), n0 + n1 + n2

    def _norm_term(self, t: Coh) -> Tuple[Term, int]:
        n = 0
        sub = []
        for s in t.sub:
            s2, k = self._norm(s)
            sub.append(s2)
            n += k
        if n:
            t = t.with_sub(sub)
        while True:
            pos = b_positions(t)
            if not pos:
                break
            t = prune(t, pos[0])
            n += 1
            if n > self.fuel:
                raise FuelExhausted(self.fuel)
        ty, k = self._norm(t.ty)
        if k:
            t = Coh(t.ctx, ty, t.sub)
            n += k
        if is_disc_coherence(t):
            return t.sub[-1], n + 1
        if is_endo(t) and not is_identity(t):
            out, k = self._norm(endo_contract(t))
            return out, n + 1 + k
        return t, n

    def is_normal(self, x: Entity) -> bool:
        return self._norm(x)[1] == 0


_default = Normalizer()


def normal_form(x: Entity, fuel: int = DEFAULT_FUEL) -> Entity:
    """``N(x)`` using the shared memo table."""
    if fuel == _default.fuel:
        return _default.normalize(x)
    return Normalizer(fuel).normalize(x)


def is_normal(x: Entity) -> bool:
    return _default.is_normal(x)


def reset_memo() -> None:
    _default._memo.clear()


# ---------------------------------------------------------------------------
# standard reduction

def standard_step(x: Entity) -> Optional[ReductionStep]:
    """The unique standard reduct of ``x``, or ``None`` at a normal form."""
    cls = x.__class__
    if cls is Var or cls is StarType:
        return None
    if cls is Coh:
        return _std_term(x)
    if cls is Arrow:
        return _std_type(x)
    return _std_sub(tuple(x))


def _std_sub(sub: Sub) -> Optional[ReductionStep]:
    for i, s in enumerate(sub):
        if s.__class__ is Coh and not is_normal(s):
            st = _std_term(s)
            return _wrap(st, "S", f"[{i}]", sub[:i] + (st.result,) + sub[i + 1:])
    return None


def _std_type(ty: Arrow) -> Optional[ReductionStep]:
    if ty.base.__class__ is Arrow and not is_normal(ty.base):
        st = _std_type(ty.base)
        return _wrap(st, "T0", "base", Arrow(st.result, ty.src, ty.tgt))
    if ty.src.__class__ is Coh and not is_normal(ty.src):
        st = _std_term(ty.src)
        return _wrap(st, "T1", "src", Arrow(ty.base, st.result, ty.tgt))
    if ty.tgt.__class__ is Coh and not is_normal(ty.tgt):
        st = _std_term(ty.tgt)
        return _wrap(st, "T2", "tgt", Arrow(ty.base, ty.src, st.result))
    return None


def _std_term(t: Coh) -> Optional[ReductionStep]:
    for i, s in enumerate(t.sub):
        if s.__class__ is Coh and not is_normal(s):
            st = _std_term(s)
            return _wrap(st, "A", f"arg[{i}]", t.with_sub(t.sub[:i] + (st.result,) + t.sub[i + 1:]))
    pos = b_positions(t)
    if pos:
        out = prune(t, pos[0])
        return ReductionStep((("B", ""),), t, out, out)
    if t.ty.__class__ is Arrow and not is_normal(t.ty):
        st = _std_type(t.ty)
        return _wrap(st, "C", "ty", Coh(t.ctx, st.result, t.sub))
    if is_disc_coherence(t):
        out = t.sub[-1]
        return ReductionStep((("D", ""),), t, out, out)
    if is_endo(t) and not is_identity(t):
        out = endo_contract(t)
        return ReductionStep((("E", ""),), t, out, out)
    return None


def normalize(x: Entity, fuel: int = DEFAULT_FUEL) -> Tuple[Entity, List[ReductionStep]]:
    """Iterate standard steps to the normal form, recording the trace."""
    trace: List[ReductionStep] = []
    while True:
        st = standard_step(x)
        if st is None:
            return x, trace
        if len(trace) >= fuel:
            raise FuelExhausted(fuel)
        trace.append(st)
        x = st.result


def decide_eq(a: Entity, b: Entity, fuel: int = DEFAULT_FUEL) -> bool:
    """Definitional equality of valid entities: compare normal forms."""
    return normal_form(a, fuel) == normal_form(b, fuel)


# ---------------------------------------------------------------------------
# phase discipline

_TERM_PHASES = re.compile(r"A*B*C*(D|EA*)?")
_TYPE_PHASES = re.compile(r"(T0)*(T1)*(T2)*")
_SUB_PHASES = re.compile(r"S*")


def phase_violations(trace: Sequence[ReductionStep], kind: str = "term") -> List[str]:
    """Check a standard trace against the per-site phase grammar.

    At the head site the outermost labels must read ``A*B*C*(D|EA*)?``;
    every maximal run of steps into one argument or into the cell type is
    itself a trace of the sub-entity and is checked recursively. Returns
    a list of human-readable violations (empty when the trace conforms).
    """
    chains = [st.chain for st in trace]
    out: List[str] = []
    _check_chains(chains, kind, "", out)
    return out


def _check_chains(chains: List[Tuple[Tuple[str, str], ...]], kind: str, where: str, out: List[str]) -> None:
    word = "".join(c[0][0] for c in chains)
    pattern = {"term": _TERM_PHASES, "type": _TYPE_PHASES, "sub": _SUB_PHASES}[kind]
    if not pattern.fullmatch(word):
        out.append(f"{where or '.'}: label sequence {word} is out of phase")
    # group maximal runs that descend into the same position
    i = 0
    while i < len(chains):
        lbl, pos = chains[i][0]
        j = i
        while j < len(chains) and chains[j][0] == (lbl, pos):
            j += 1
        if pos:
            inner = [c[1:] for c in chains[i:j]]
            sub_kind = "type" if lbl in ("C", "T0") else "term"
            _check_chains(inner, sub_kind, f"{where}/{pos}", out)
        i = j
    if kind in ("term",):
        _check_arg_order(chains, where, out)


def _check_arg_order(chains, where: str, out: List[str]) -> None:
    # within one head site, A-steps move left to right
    last = -1
    for c in chains:
        lbl, pos = c[0]
        if lbl == "E":
            last = -1
            continue
        if lbl != "A":
            continue
        idx = int(pos[4:-1])
        if idx < last:
            out.append(f"{where or '.'}: argument {idx} reduced after argument {last}")
        last = idx
