import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from algcomb.errors import GuardExceeded, PreconditionError, TheoremViolation
from algcomb.ffpoly import (
    MultiPoly,
    PointSetFq,
    chevalley_warning_count,
    count_roots_brute,
    fermat_check,
    is_kakeya,
    kakeya_min_brute,
    lucas_binom,
    monomial_count,
    monomials_upto,
    multilinear_reduce,
    poly_eval,
    power_sum,
    random_poly,
    root_count_report,
    vanishing_poly,
)
from oracles import eval_poly_terms, literal_is_kakeya


def P(p, n, terms):
    return MultiPoly(p, n, terms)


def test_poly_eval_examples():
    assert poly_eval(P(3, 2, {(1, 0): 1, (0, 1): 1}), (1, 2)) == 0
    assert poly_eval(MultiPoly.const(5, 3, 4), (1, 2, 3)) == 4
    assert poly_eval(P(5, 2, {(2, 1): 1}), (2, 3)) == 2
    with pytest.raises(PreconditionError):
        poly_eval(P(5, 2, {(2, 1): 1}), (2,))


def test_json_roundtrip_and_order():
    f = P(3, 2, {(0, 1): 2, (2, 0): 1, (1, 1): 1, (0, 0): 3})
    js = f.to_json()
    assert [t["e"] for t in js["terms"]] == [[2, 0], [1, 1], [0, 1]]
    assert MultiPoly.from_json(js) == f
    assert f.degree() == 2 and MultiPoly(3, 2).degree() == float("-inf")


def test_arithmetic_matches_evaluation():
    rng = random.Random(4)
    for _ in range(50):
        f, g = random_poly(5, 2, 3, rng), random_poly(5, 2, 3, rng)
        for x in itertools.product(range(5), repeat=2):
            assert poly_eval(f * g, x) == poly_eval(f, x) * poly_eval(g, x) % 5
            assert poly_eval(f - g, x) == (poly_eval(f, x) - poly_eval(g, x)) % 5
            assert poly_eval(f, x) == eval_poly_terms(f.terms, 5, x)


def test_multilinear_reduce():
    x1 = MultiPoly.var(3, 1, 0)
    assert multilinear_reduce(x1**2 + x1) == 2 * x1
    assert multilinear_reduce(P(5, 2, {(1, 3): 1})) == P(5, 2, {(1, 1): 1})


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.sampled_from([2, 3, 5]))
def test_multilinear_agrees_on_cube(seed, n, p):
    f = random_poly(p, n, 5, random.Random(seed), nterms=6)
    g = multilinear_reduce(f)
    for x in itertools.product((0, 1), repeat=n):
        assert poly_eval(f, x) == poly_eval(g, x)


def test_count_roots_examples():
    assert count_roots_brute(P(3, 2, {(1, 1): 1})) == 5
    assert root_count_report(P(3, 2, {(1, 1): 1})).bound == 6
    assert count_roots_brute(MultiPoly.const(5, 2, 3)) == 0
    rep = root_count_report(P(2, 1, {(2,): 1, (1,): -1}))
    assert rep.count == 2 and rep.zero_function
    with pytest.raises(GuardExceeded):
        count_roots_brute(MultiPoly.const(5, 11, 1))


def test_root_bound_random():
    rng = random.Random(9)
    for p, n in [(2, 5), (3, 4), (5, 3), (7, 2), (11, 2)]:
        for _ in range(30):
            f = random_poly(p, n, 4, rng, nterms=5)
            if f.is_zero():
                continue
            brute = sum(1 for x in itertools.product(range(p), repeat=n) if eval_poly_terms(f.terms, p, x) == 0)
            assert count_roots_brute(f) == brute <= f.degree() * p ** (n - 1)


def test_monomial_count():
    assert monomial_count(2, 2) == 6 == len(monomials_upto(2, 2))
    assert monomial_count(0, 4) == 1
    assert monomial_count(3, 3) == 20 == sum(1 for e in itertools.product(range(4), repeat=3) if sum(e) <= 3)


def test_vanishing_poly():
    pts = PointSetFq.of(3, 2, [(0, 0), (1, 0), (2, 1), (1, 2), (0, 1)])
    f = vanishing_poly(pts, 2)
    assert f is not None and not f.is_zero() and f.degree() <= 2
    assert all(poly_eval(f, x) == 0 for x in pts.points)
    assert vanishing_poly(PointSetFq.of(3, 2, []), 0) == MultiPoly.const(3, 2, 1)
    assert vanishing_poly(PointSetFq.of(3, 2, itertools.product(range(3), repeat=2)), 2) is None


def test_is_kakeya_examples():
    full = PointSetFq.of(3, 2, itertools.product(range(3), repeat=2))
    assert is_kakeya(full) == (True, None)
    assert is_kakeya(PointSetFq.of(3, 2, [(0, l) for l in range(3)])) == (False, (1, 0))
    minus = PointSetFq.of(3, 2, [x for x in itertools.product(range(3), repeat=2) if x != (0, 0)])
    assert is_kakeya(minus)[0]


def test_is_kakeya_vs_literal_oracle():
    rng = random.Random(17)
    for p, n in [(2, 2), (3, 2), (2, 3), (5, 2), (3, 3), (2, 4), (7, 2), (3, 4), (2, 6)]:
        if p**n > 81:
            continue
        universe = list(itertools.product(range(p), repeat=n))
        for _ in range(25):
            k = rng.randint(0, len(universe))
            pts = rng.sample(universe, k)
            assert is_kakeya(PointSetFq.of(p, n, pts))[0] == literal_is_kakeya(p, n, pts)


def test_kakeya_min():
    assert kakeya_min_brute(2, 1) == 2
    assert kakeya_min_brute(2, 2) >= 3
    assert kakeya_min_brute(3, 2) >= 6
    with pytest.raises(GuardExceeded):
        kakeya_min_brute(2, 4)


def test_power_sum():
    assert power_sum(5, 2) == 0 and power_sum(3, 2) == 2 and power_sum(7, 3) == 0
    for p in [q for q in range(2, 32) if all(q % d for d in range(2, q))]:
        for r in range(1, p - 1):
            assert power_sum(p, r) == sum(x**r for x in range(p)) % p == 0


def test_chevalley_warning():
    x = [MultiPoly.var(3, 3, i) for i in range(3)]
    assert chevalley_warning_count([x[0] + x[1] + x[2]]) == 9
    assert chevalley_warning_count([], p=3, n=2) == 9
    # x1*x2 = 1 has the two solutions (1,1), (2,2); times 3 choices of x3
    assert chevalley_warning_count([x[0] * x[1] - 1]) == 6
    with pytest.raises(PreconditionError):
        chevalley_warning_count([x[0], MultiPoly.var(5, 3, 0)])


def test_lucas_and_fermat():
    assert lucas_binom(5, 2, 3) == 1 == math.comb(5, 2) % 3
    assert lucas_binom(9, 0, 7) == 1
    assert lucas_binom(4, 2, 2) == 0
    for p in (2, 3, 5, 7):
        for a in range(40):
            for b in range(a + 3):
                assert lucas_binom(a, b, p) == math.comb(a, b) % p
    assert fermat_check(2, 5) and fermat_check(0, 7) and fermat_check(6, 7)
