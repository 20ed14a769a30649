import pytest
from hypothesis import given, settings

from strategies import terms
from cattsu.builders import chain_context, comp_n_head
from cattsu.elaborate import Environment
from cattsu.errors import (
    BaseTypeCoherence,
    BoundaryMismatch,
    DimensionLimit,
    NotPasting,
    SupportViolation,
    TypeMismatch,
    UnboundVariable,
)
from cattsu.pasting import canonical_identity, disc_context
from cattsu.reduction import general_reducts, normal_form
from cattsu.syntax import STAR, Arrow, Coh, Context, Var, infer_type, support
from cattsu.typecheck import Checker, Mode, src, src_k, tgt, tgt_k

C2 = chain_context(2)
X, Y, F = Var(0, "x"), Var(1, "y"), Var(2, "f")
XYF = Context([STAR, STAR, Arrow(STAR, X, Y)], ["x", "y", "f"])


@pytest.fixture(params=[Mode.SU, Mode.CATT], ids=["su", "catt"])
def checker(request):
    return Checker(request.param)


def test_comp2_type(checker):
    ctx, ty = comp_n_head(2)
    assert ctx == C2
    assert ty == Arrow(STAR, Var(0), Var(3))
    checker.check_head(ctx, ty)
    assert checker.check_term(C2, Coh(ctx, ty, C2.vars())) == ty


def test_mode_parse():
    assert Mode.parse("su") is Mode.SU
    assert Mode.parse("catt") is Mode.CATT
    assert Mode.parse(Mode.SU) is Mode.SU


def test_base_type_coherence_rejected(checker):
    with pytest.raises(BaseTypeCoherence):
        checker.check_head(disc_context(0), STAR)


def test_support_violation(checker):
    with pytest.raises(SupportViolation):
        checker.check_head(XYF, Arrow(STAR, Y, X))
    with pytest.raises(SupportViolation):
        checker.check_head(XYF, Arrow(STAR, X, X))


def test_non_pasting_head(checker):
    with pytest.raises(NotPasting):
        checker.check_head(Context([STAR, STAR], ["x", "y"]), Arrow(STAR, X, Y))


def test_unbound_variable(checker):
    with pytest.raises(UnboundVariable):
        checker.check_term(XYF, Var(7))


def test_ill_typed_argument(checker):
    ctx, ty = comp_n_head(2)
    # g is expected to start at y but f ends at y while the argument starts at x
    gamma = Context([STAR, STAR, Arrow(STAR, X, Y), STAR, Arrow(STAR, X, Var(3))], ["x", "y", "f", "z", "g"])
    with pytest.raises(TypeMismatch):
        checker.check_term(gamma, Coh(ctx, ty, gamma.vars()))


def test_dimension_guard():
    with pytest.raises(DimensionLimit):
        Checker(Mode.SU, max_dim=2).check_context(disc_context(4))


CONV = "let conv (x : *)(y : *)(f : x -> y)(g : x -> y)(a : comp2[f, id0[y]] -> g) = id2[x, y, f, g, a]"


def test_conversion_needs_strict_units():
    Environment.with_prelude(Mode.SU).load(CONV)
    with pytest.raises(TypeMismatch):
        Environment.with_prelude(Mode.CATT).load(CONV)


def test_boundary_mismatch_in_elaboration():
    src_text = "let bad (x : *)(y : *)(f : x -> y)(z : *)(g : x -> z) = comp2[f, g]"
    with pytest.raises(BoundaryMismatch):
        Environment.with_prelude(Mode.SU).load(src_text)


def test_def_eq_examples():
    checker = Checker(Mode.SU)
    idy = canonical_identity(Y, XYF)
    ctx, ty = comp_n_head(2)
    t = Coh(ctx, ty, [X, Y, F, Y, idy])
    assert checker.def_eq(XYF, t, F)
    assert not Checker(Mode.CATT).def_eq(XYF, t, F)
    assert not checker.def_eq(XYF, X, Y)


def test_iterated_boundaries():
    d3 = disc_context(3)
    top = d3.var(6)
    assert src(top, d3) == d3.var(4)
    assert tgt(top, d3) == d3.var(5)
    assert src_k(top, d3, 0) == d3.var(0)
    assert tgt_k(top, d3, 0) == d3.var(1)
    assert src_k(top, d3, 1) == d3.var(2)
    assert tgt_k(top, d3, 1) == d3.var(3)


@settings(max_examples=150, deadline=None)
@given(terms())
def test_subject_reduction(sample):
    ctx, t = sample
    checker = Checker(Mode.SU)
    ty = checker.check_term(ctx, t)
    for st in general_reducts(t):
        ty2 = checker.check_term(ctx, st.result)
        assert normal_form(ty2) == normal_form(ty)


@settings(max_examples=150, deadline=None)
@given(terms())
def test_normal_form_is_valid_with_same_support(sample):
    ctx, t = sample
    checker = Checker(Mode.SU)
    nf = normal_form(t)
    checker.check_term(ctx, nf)
    assert support(nf, ctx) == support(t, ctx)


@settings(max_examples=100, deadline=None)
@given(terms())
def test_weakening(sample):
    ctx, t = sample
    bigger = ctx.extend("extra", STAR)
    assert Checker(Mode.SU).check_term(bigger, t) == infer_type(t, ctx)
