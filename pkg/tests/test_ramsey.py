import itertools
import math
import random
from fractions import Fraction

import pytest

from algcomb.errors import GuardExceeded, PreconditionError
from algcomb.ramsey import (
    BLUE,
    KNOWN_RAMSEY,
    RED,
    TwoColoring,
    check_construction,
    colex_subsets,
    construct,
    is_ramsey_coloring,
    pentagon_coloring,
    probabilistic_bound,
    probabilistic_lower_sample,
    ramsey_recurrence_bound,
    verify_r33,
)
from oracles import literal_mono_clique, literal_r33_count


def test_pentagon_and_trivial():
    assert is_ramsey_coloring(pentagon_coloring(), 3, 3).ok
    red = TwoColoring(3, (RED,) * 3)
    res = is_ramsey_coloring(red, 3, 3)
    assert not res.ok and res.witness == {"color": "red", "clique": [0, 1, 2]}
    for bits in itertools.product((0, 1), repeat=1):
        assert is_ramsey_coloring(TwoColoring(2, bits), 3, 3).ok
    with pytest.raises(PreconditionError):
        TwoColoring(3, (0, 1))


def test_serialisation():
    c = pentagon_coloring()
    assert TwoColoring.from_text(c.to_text()) == c == TwoColoring.from_json(c.to_json())
    assert c.to_text() == "5 0110011010"
    assert TwoColoring.from_json({"N": 3, "blue": [[0, 2]]}).bits == (0, 1, 0)


def test_checker_matches_literal_search():
    rng = random.Random(9)
    for _ in range(300):
        N = rng.randint(1, 8)
        c = TwoColoring(N, tuple(rng.randint(0, 1) for _ in range(N * (N - 1) // 2)))
        m, n = rng.randint(2, 4), rng.randint(2, 4)
        res = is_ramsey_coloring(c, m, n)
        literal = literal_mono_clique(N, c.color, m, RED) is None and literal_mono_clique(N, c.color, n, BLUE) is None
        assert res.ok == literal
        if not res.ok:
            colour = RED if res.witness["color"] == "red" else BLUE
            S = res.witness["clique"]
            assert len(S) == (m if colour == RED else n)
            assert all(c.color(a, b) == colour for a, b in itertools.combinations(S, 2))
        assert is_ramsey_coloring(c.swapped(), n, m).ok == res.ok


def test_guard():
    c = TwoColoring(30, (0,) * 435)
    with pytest.raises(GuardExceeded):
        is_ramsey_coloring(c, 10, 10, max_subsets=1000)


def test_verify_r33():
    r = verify_r33()
    assert r["ok"] and r["k6_all_fail"] and r["k6_colourings"] == 32768 and r["R33"] == 6
    assert literal_r33_count() == r["k6_ramsey_colourings"] == 0


def test_constructions():
    naive3 = construct("naive", n=3)
    assert naive3.coloring.N == 4 and naive3.coloring.to_text() == "4 011110"
    for n in range(2, 7):
        check_construction(construct("naive", n=n))
    for n in range(4, 8):
        con = construct("nagy", n=n)
        assert con.coloring.N == math.comb(n - 1, 3)
        check_construction(con)
    assert construct("nagy", n=6).coloring.N == 10
    for n in (4, 5, 6):
        con = construct("frankl_wilson", p=2, n=n)
        assert con.coloring.N == math.comb(n, 3) and con.clique_bound == n + 1
        check_construction(con)
    with pytest.raises(GuardExceeded):
        construct("nagy", n=26)
    with pytest.raises(PreconditionError):
        construct("frankl_wilson", p=4, n=20)
    with pytest.raises(PreconditionError):
        construct("other", n=3)


def test_constructions_are_tight_examples():
    # the naive guarantee cannot be lowered: each red block is a K_{n-1}
    for n in range(3, 6):
        c = construct("naive", n=n).coloring
        res = is_ramsey_coloring(c, n - 1, n - 1)
        assert not res.ok and res.witness["color"] == "red"


def test_colex():
    assert colex_subsets(4, 2) == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]


def test_sampler():
    r = probabilistic_lower_sample(4, 1000, 0)
    # 1 - 2 * C(4, 4) * 2^-6 = 62/64
    assert r["N"] == 4 and r["analytic_bound"] == "31/32"
    assert r == probabilistic_lower_sample(4, 1000, 0)
    assert r["ramsey_count"] == 968  # golden value for seed 0
    r2 = probabilistic_lower_sample(2, 50, 1)
    assert r2["fraction"] == "0" and r2["analytic_bound"] == "0"
    r6 = probabilistic_lower_sample(6, 200, 0)
    assert r6["N"] == 8 and r6 == probabilistic_lower_sample(6, 200, 0)
    assert r6["ramsey_count"] == 200 and r6["analytic_bound"] == "4089/4096"
    N, b = probabilistic_bound(6)
    assert b == 1 - Fraction(2 * math.comb(8, 6), 2**15)
    with pytest.raises(GuardExceeded):
        probabilistic_lower_sample(13, 1)


def test_recurrence():
    assert ramsey_recurrence_bound(3, 3) == 6
    assert ramsey_recurrence_bound(3, 4) == 10
    assert all(ramsey_recurrence_bound(2, k) == k for k in range(1, 10))
    checked = 0
    for (m, n), value in KNOWN_RAMSEY.items():
        assert ramsey_recurrence_bound(m, n) >= value and ramsey_recurrence_bound(n, m) >= value
        checked += m >= 2
    assert checked >= 9
    with pytest.raises(PreconditionError):
        ramsey_recurrence_bound(0, 3)
