from hypothesis import given, settings

from strategies import composable, substitutions
from cattsu.pasting import canonical_identity, disc_context, disc_sub, disc_top, sphere_type
from cattsu.subst import apply_term, apply_type, compose, identity_sub
from cattsu.syntax import STAR, Arrow, Context, Var, infer_type
from cattsu.typecheck import Checker, Mode

X, Y, F = Var(0, "x"), Var(1, "y"), Var(2, "f")
XYF = Context([STAR, STAR, Arrow(STAR, X, Y)], ["x", "y", "f"])


def test_apply_examples():
    sub = (Y, Y, canonical_identity(Y, XYF))
    assert apply_term(F, sub) == canonical_identity(Y, XYF)
    assert apply_type(Arrow(STAR, X, Y), sub) == Arrow(STAR, Y, Y)
    assert apply_type(STAR, sub) == STAR


def test_identity_and_composition_examples():
    assert identity_sub(XYF) == (X, Y, F)
    swap = (Y, X)
    assert compose(swap, swap) == (X, Y)


def test_disc_sub_example():
    # the image of the top cell of D^2 under {A, t} for t : A is t itself
    ty = Arrow(Arrow(STAR, X, Y), F, F)
    t = Var(3, "a")
    assert disc_sub(ty, t) == (X, Y, F, F, t)
    assert disc_sub(STAR, X) == (X,)


def test_disc_sub_of_top_is_identity():
    for k in range(5):
        assert disc_sub(sphere_type(k - 1), disc_top(k)) == identity_sub(disc_context(k))


@settings(max_examples=150, deadline=None)
@given(substitutions())
def test_disc_sub_commutes_with_substitution(sample):
    # {A, t} o sigma == {A[sigma], t[sigma]}
    gamma, sigma, delta = sample
    for v in delta.vars():
        ty = delta.types[v.index]
        assert compose(disc_sub(ty, v), sigma) == disc_sub(apply_type(ty, sigma), apply_term(v, sigma))


@settings(max_examples=150, deadline=None)
@given(substitutions())
def test_disc_sub_is_well_typed(sample):
    gamma, sigma, _ = sample
    checker = Checker(Mode.SU)
    for t in sigma:
        ty = infer_type(t, gamma)
        checker.check_sub(gamma, disc_sub(ty, t), disc_context(ty.dim + 1))


@settings(max_examples=150, deadline=None)
@given(composable())
def test_category_laws(sample):
    theta, delta, gamma, xi, mu, sigma, tau, s = sample
    a = infer_type(s, theta)
    assert compose(mu, identity_sub(delta)) == mu
    assert compose(identity_sub(theta), mu) == mu
    assert compose(compose(mu, sigma), tau) == compose(mu, compose(sigma, tau))
    assert apply_type(a, identity_sub(theta)) == a
    assert apply_term(s, identity_sub(theta)) == s
    assert apply_type(a, compose(mu, sigma)) == apply_type(apply_type(a, mu), sigma)
    assert apply_term(s, compose(mu, sigma)) == apply_term(apply_term(s, mu), sigma)


@settings(max_examples=100, deadline=None)
@given(composable())
def test_composites_are_well_typed(sample):
    theta, delta, gamma, xi, mu, sigma, tau, s = sample
    checker = Checker(Mode.SU)
    checker.check_sub(gamma, compose(mu, sigma), theta)
    checker.check_sub(xi, compose(sigma, tau), delta)
    assert checker.check_term(delta, apply_term(s, mu)) == apply_type(infer_type(s, theta), mu)
