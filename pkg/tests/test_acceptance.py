"""The twelve acceptance criteria, one test each.

Each test records a one-line verdict that is printed in the terminal
summary (see conftest.py), so ``pytest tests/test_acceptance.py`` shows a
pass/fail line per criterion even when output is captured.
"""

import random
import re
import time

import pytest

from conftest import ACCEPTANCE, corpus_env
from enum_terms import Enumerator
from gen import Pool, fill, make_heads, population, random_pasting, random_term
from cattsu.errors import FuelExhausted
from cattsu.pasting import (
    canonical_identity,
    disc_context,
    excise,
    is_identity,
    lm_positions,
    project,
    realize,
    remove,
)
from cattsu.reduction import DEFAULT_FUEL, decide_eq, general_reducts, normal_form, normalize, phase_violations, standard_step
from cattsu.rehydrate import rehydrated_normal_form
from cattsu.subst import apply_term, apply_type, compose, identity_sub
from cattsu.syntax import Var, count_coherences, infer_type, support
from cattsu.typecheck import Checker, Mode

POPULATION_SIZE = 600


def record(n, ok, detail):
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def pop():
    return population(seed=2024, count=POPULATION_SIZE)


@pytest.fixture(scope="module")
def su_env():
    return corpus_env(Mode.SU)


def test_criterion_01_pruning_golden(su_env):
    e = su_env["pruned"]
    t0 = time.perf_counter()
    nf, trace = normalize(e.term)
    dt = time.perf_counter() - t0
    f = e.ctx.var(2)
    rules = [st.rule for st in trace]
    ok = nf == f and isinstance(nf, Var) and rules == ["B", "D"] and dt < 1
    record(1, ok, f"nf={nf!r} trace={rules} {dt:.3f}s")


def test_criterion_02_left_unitor(su_env):
    e = su_env["unitor"]
    t0 = time.perf_counter()
    nf = normal_form(e.term)
    dt = time.perf_counter() - t0
    expected = canonical_identity(e.ctx.var(2), e.ctx)
    ok = nf == expected and nf == su_env["unitor_expected"].term and dt < 1
    record(2, ok, f"N(unitor) = i1[x,y,f]: {nf == expected} {dt:.3f}s")


def test_criterion_03_associator_on_unit(su_env):
    e = su_env["assoc_unit"]
    t0 = time.perf_counter()
    nf, trace = normalize(e.term)
    dt = time.perf_counter() - t0
    labels = ["/".join(st.labels) for st in trace]
    expected_labels = ["B", "C/T1/A/B", "C/T1/A/D", "C/T2/A/B", "C/T2/A/D", "E"]
    heads = "".join(st.rule for st in trace)
    ok = (
        nf == su_env["assoc_unit_expected"].term
        and labels == expected_labels
        and re.fullmatch(r"BC+E", heads) is not None
        and dt < 1
    )
    record(3, ok, f"trace={labels} {dt:.3f}s")


def test_criterion_04_eckmann_hilton(su_env):
    t0 = time.perf_counter()
    e = su_env["eh_term"]
    ty = Checker(Mode.SU).check_term(e.ctx, e.term)
    fixpoint = standard_step(e.term) is None
    n = count_coherences(e.term)
    dt = time.perf_counter() - t0
    names = [name for name, _ in e.ctx]
    ok = fixpoint and n == 27 and names == ["x", "a", "b"] and ty is not None and dt < 5
    record(4, ok, f"coherences={n} fixpoint={fixpoint} {dt:.3f}s")


@pytest.fixture(scope="module")
def equal_pairs(pop):
    """Every (t, t') with t' a one-step general reduct of a population term."""
    pairs = []
    for ctx, t in pop:
        for st in general_reducts(t):
            pairs.append((ctx, t, st.result))
    return pairs


def test_criterion_05_decidability(pop, equal_pairs):
    t0 = time.perf_counter()
    bad = 0
    for ctx, t, t2 in equal_pairs:
        if normal_form(t) != normal_form(t2) or not decide_eq(t, t2):
            bad += 1
    dt = time.perf_counter() - t0
    ok = len(pop) >= 500 and bad == 0 and dt < 60
    record(5, ok, f"{len(pop)} terms, {len(equal_pairs)} reducts, {bad} failures, {dt:.2f}s")


def test_criterion_06_termination(pop):
    worst, exhausted = 0, 0
    for _, t in pop:
        try:
            _, trace = normalize(t, fuel=DEFAULT_FUEL)
        except FuelExhausted:
            exhausted += 1
            continue
        worst = max(worst, len(trace))
    record(6, exhausted == 0, f"max steps={worst}, FuelExhausted={exhausted}")


def test_criterion_07_phases(pop):
    subjects = [e.term for e in corpus_env().entries.values()] + [t for _, t in pop]
    bad = []
    for t in subjects:
        _, trace = normalize(t)
        v = phase_violations(trace)
        if v:
            bad.append(v)
    record(7, not bad, f"{len(subjects)} traces, {len(bad)} violations")


def _category_tuples(n, seed=8):
    rng = random.Random(seed)
    lib = make_heads(rng, Checker(Mode.SU))
    out = []
    while len(out) < n:
        theta, delta, gamma, xi = (random_pasting(rng, 3, 2) for _ in range(4))
        mu = fill(rng, theta, Pool(delta))
        sigma = fill(rng, delta, Pool(gamma))
        tau = fill(rng, gamma, Pool(xi))
        theta_pool = Pool(theta)
        s = random_term(rng, theta_pool, lib) if rng.random() < 0.7 else rng.choice(theta.vars())
        a = infer_type(s, theta)
        out.append((theta, delta, gamma, mu, sigma, tau, a, s))
    return out


def test_criterion_08_category_laws():
    tuples = _category_tuples(520)
    checker = Checker(Mode.SU)
    bad = 0
    for theta, delta, gamma, mu, sigma, tau, a, s in tuples:
        checker.check_sub(delta, mu, theta)
        laws = [
            compose(mu, identity_sub(delta)) == mu,
            compose(identity_sub(theta), mu) == mu,
            compose(compose(mu, sigma), tau) == compose(mu, compose(sigma, tau)),
            apply_type(a, identity_sub(theta)) == a,
            apply_term(s, identity_sub(theta)) == s,
            apply_type(a, compose(mu, sigma)) == apply_type(apply_type(a, mu), sigma),
            apply_term(s, compose(mu, sigma)) == apply_term(apply_term(s, mu), sigma),
        ]
        bad += not all(laws)
    record(8, len(tuples) >= 500 and bad == 0, f"{len(tuples)} tuples, {bad} failures")


def test_criterion_09_support_preservation(equal_pairs):
    bad = sum(support(t, ctx) != support(t2, ctx) for ctx, t, t2 in equal_pairs)
    record(9, bad == 0, f"{len(equal_pairs)} pairs, {bad} violations")


def _iterated_identity_on_var(t, ctx):
    while not isinstance(t, Var):
        if not is_identity(t):
            return False
        inner = t.sub[-1]
        if t != canonical_identity(inner, ctx):
            return False
        t = inner
    return True


def test_criterion_10_disc_trivialization():
    t0 = time.perf_counter()
    en = Enumerator(12)
    total, bad = 0, []
    for k in range(3):
        ctx = disc_context(k)
        for t, _ in en.all_terms(ctx):
            total += 1
            if not _iterated_identity_on_var(normal_form(t), ctx):
                bad.append(t)
    dt = time.perf_counter() - t0
    record(10, not bad and total > 0 and dt < 120, f"{total} terms over D0-D2, {len(bad)} violations, {dt:.2f}s")


REHYDRATION_CORPUS = ["unitor", "right_unitor", "assoc_unit", "pruned", "pruned_left", "fg_padded",
                      "whiskered_unit", "eh_open"]


def test_criterion_11_rehydration(su_env):
    t0 = time.perf_counter()
    catt = Checker(Mode.CATT)
    failures = []
    for name in REHYDRATION_CORPUS:
        e = su_env[name]
        r = rehydrated_normal_form(e.term, e.ctx)
        try:
            catt.check_term(e.ctx, r)
        except Exception as err:  # noqa: BLE001
            failures.append(f"{name}: {err}")
            continue
        if not decide_eq(e.term, r) or normal_form(r) != normal_form(e.term):
            failures.append(f"{name}: not equal")
    dt = time.perf_counter() - t0
    ok = not failures and dt < 30
    record(11, ok, f"{len(REHYDRATION_CORPUS)} terms, failures={failures} {dt:.2f}s")


def test_criterion_12_pruning_well_typed():
    rng = random.Random(12)
    checker = Checker(Mode.SU)
    done, bad = 0, 0
    while done < 220:
        delta = random_pasting(rng, 4, 3)
        lms = lm_positions(delta)
        if not lms:
            continue
        gamma = random_pasting(rng, 3, 2)
        idx, peak = rng.choice(lms)
        sigma = fill(rng, delta, Pool(gamma), force_identity=idx)
        checker.check_sub(gamma, sigma, delta)
        if not is_identity(sigma[idx]):
            continue
        pruned_ctx = realize(excise(peak))
        pi = project(peak)
        rest = remove(peak, sigma)
        try:
            checker.check_sub(pruned_ctx, pi, delta)
            checker.check_sub(gamma, rest, pruned_ctx)
            ok = decide_eq(sigma, compose(pi, rest))
        except Exception:  # noqa: BLE001
            ok = False
        bad += not ok
        done += 1
    record(12, bad == 0, f"{done} (delta, sigma, alpha) triples, {bad} failures")
