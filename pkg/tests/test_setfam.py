import itertools
import random

import pytest

from algcomb.errors import GuardExceeded, PreconditionError
from algcomb.exactla import linear_independent
from algcomb.setfam import (
    FamilyKind,
    SetFamily,
    check_family,
    incidence_matrix,
    max_family_brute,
    theorem_bound,
)
from oracles import literal_family_ok, random_valid_family

KINDS = [
    FamilyKind("oddtown"),
    FamilyKind("separated"),
    FamilyKind("weakly_separated"),
    FamilyKind("lambda_fischer", lam=1),
    FamilyKind("lambda_fischer", lam=2),
    FamilyKind("L_fischer_modp", L=(0,), p=2),
    FamilyKind("L_fischer_modp", L=(0, 1), p=3),
    FamilyKind("L_fischer_modp", L=(1,), p=3, size=3),
    FamilyKind("L_fischer_int", L=(0, 1)),
    FamilyKind("L_fischer_int", L=(1,), size=3),
    FamilyKind("uniform_intersecting", lam=2),
    FamilyKind("uniform_intersecting", lam=3),
]


def fam(m, sets):
    return SetFamily.from_sets(m, sets)


def test_check_examples():
    assert check_family(fam(3, [[1], [2], [3]]), FamilyKind("oddtown")).ok
    r = check_family(fam(3, [[1, 2]]), FamilyKind("oddtown"))
    assert not r.ok and r.witness["type"] == "member"
    assert check_family(fam(3, [[1, 2], [1, 3], [2, 3]]), FamilyKind("lambda_fischer", lam=1)).ok


def test_witnesses():
    r = check_family(fam(3, [[1], [2], [1, 2]]), FamilyKind("separated"))
    assert not r.ok and r.witness == {
        "type": "subfamilies", "I": [[1], [2]], "J": [[1, 2]], "reason": "equal unions"
    }
    r = check_family(fam(4, [[1], [1, 2], [3]]), FamilyKind("oddtown"))
    assert r.witness["type"] == "member" and r.witness["index"] == 1
    r = check_family(fam(4, [[1], [1, 2, 3], [1, 4, 2]]), FamilyKind("oddtown"))
    assert r.witness["type"] == "pair" and r.witness["indices"] == [0, 1]


def test_separated_empty_member_rejected():
    # {emptyset, {1}} on [1] would beat the bound m = 1
    assert not check_family(fam(1, [[], [1]]), FamilyKind("separated")).ok
    assert check_family(fam(1, [[], [1]]), FamilyKind("weakly_separated")).ok


def test_guard():
    big = fam(6, [[i] for i in range(1, 7)] + [[1, 2], [3, 4]] + [[a, b, c] for a, b, c in itertools.combinations(range(1, 7), 3)][:10])
    with pytest.raises(GuardExceeded):
        check_family(big, FamilyKind("separated"))


def test_check_agrees_with_literal_oracle():
    rng = random.Random(23)
    for kind in KINDS:
        for _ in range(60):
            m = rng.randint(1, 5)
            universe = [list(c) for r in range(m + 1) for c in itertools.combinations(range(1, m + 1), r)]
            sets = rng.sample(universe, rng.randint(0, min(7, len(universe))))
            assert check_family(fam(m, sets), kind).ok == literal_family_ok(kind.describe(), sets), (kind, sets)


def test_bounds_examples():
    assert theorem_bound(FamilyKind("oddtown"), 5) == 5
    assert theorem_bound(FamilyKind("L_fischer_int", L=(0, 1)), 4) == 11
    assert theorem_bound(FamilyKind("uniform_intersecting", lam=2), 5) == 4
    assert theorem_bound(FamilyKind("weakly_separated"), 4) == 5
    with pytest.raises(PreconditionError):
        theorem_bound(FamilyKind("lambda_fischer", lam=0), 4)
    # fixed-size mod-p form: |L| <= lambda < p gives C(m, |L|)
    assert theorem_bound(FamilyKind("L_fischer_modp", L=(1,), p=3, size=2), 6) == 6
    # size 3 = 0 mod 3, |L| = 1: the i = 0 term is added back
    assert theorem_bound(FamilyKind("L_fischer_modp", L=(1,), p=3, size=3), 6) == 7


def test_random_valid_families_respect_bounds_and_mechanisms():
    rng = random.Random(41)
    for kind in KINDS:
        for _ in range(30):
            m = rng.randint(kind.member_size or 1, 6) if kind.tag == "uniform_intersecting" else rng.randint(1, 6)
            if kind.tag == "uniform_intersecting" and 2 * kind.lam > m:
                m = 2 * kind.lam
            sets = random_valid_family(kind.describe(), m, rng)
            F = fam(m, sets)
            assert check_family(F, kind).ok
            assert len(F) <= theorem_bound(kind, m)
            cols = [[(mk >> e) & 1 for e in range(m)] for mk in F.masks]
            if kind.tag == "oddtown":
                assert linear_independent(cols, 2)
            if kind.tag == "separated":
                assert linear_independent(cols, "Q")


def test_incidence_matrix():
    assert incidence_matrix(fam(2, [[1, 2]])).tolist() == [[1], [1]]
    M = incidence_matrix(fam(2, []))
    assert (M.rows, M.cols) == (2, 0)
    assert incidence_matrix(fam(2, [[1], [1, 2]])).tolist() == [[1, 1], [0, 1]]
    assert incidence_matrix(fam(2, [[1], [1, 2]]), 2).p == 2


def test_max_family_brute():
    size, F = max_family_brute(3, FamilyKind("oddtown"))
    assert size == 3 and F.sets() == [[1], [2], [3]]
    size, F = max_family_brute(3, FamilyKind("separated"))
    assert size == 3 and F.sets() == [[1], [2], [3]]
    assert max_family_brute(5, FamilyKind("uniform_intersecting", lam=2))[0] == 4
    for m in range(1, 6):
        assert max_family_brute(m, FamilyKind("oddtown"))[0] == m
    assert max_family_brute(4, FamilyKind("weakly_separated"))[0] == 5
    assert max_family_brute(3, FamilyKind("lambda_fischer", lam=1))[0] == 3
    assert max_family_brute(4, FamilyKind("L_fischer_int", L=(0, 1)))[0] <= 11
    with pytest.raises(GuardExceeded):
        max_family_brute(6, FamilyKind("oddtown"))
