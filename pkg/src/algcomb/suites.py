"""Per-module verification batteries behind ``algcomb suite``.

Each battery is a list of named checks. A check returns a JSON-ready detail
dict with an ``ok`` flag; raising TheoremViolation also counts as a failure.
Everything is seeded, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Callable

from . import ffpoly, geomx, nullsatz, ramsey, setfam, specgraph
from .errors import TheoremViolation
from .exactla import format_rational, rank_rational


# ---------------------------------------------------------------- setfam

SUITE_KINDS = [
    setfam.FamilyKind("oddtown"),
    setfam.FamilyKind("separated"),
    setfam.FamilyKind("weakly_separated"),
    setfam.FamilyKind("lambda_fischer", lam=1),
    setfam.FamilyKind("L_fischer_modp", L=(0, 1), p=3),
    setfam.FamilyKind("L_fischer_int", L=(0, 1)),
    setfam.FamilyKind("uniform_intersecting", lam=2),
]


def greedy_family(kind: setfam.FamilyKind, m: int, rng: random.Random) -> setfam.SetFamily:
    """Random valid family: offer subsets in random order, keep those that
    preserve the property."""
    cands = list(range(1, 1 << m))
    rng.shuffle(cands)
    kept: list[list[int]] = []
    for mask in cands:
        trial = kept + [setfam.mask_to_set(mask)]
        if len(trial) > setfam.SEPARATED_MAX_MEMBERS:
            break
        if setfam.check_family(setfam.SetFamily.from_sets(m, trial), kind).ok:
            kept = trial
    return setfam.SetFamily.from_sets(m, kept)


def _setfam_random_bounds(seed: int) -> dict:
    rng = random.Random(seed)
    worst = None
    for kind in SUITE_KINDS:
        for _ in range(20):
            m = rng.randint(2 * (kind.lam or 1), 5) if kind.tag == "uniform_intersecting" else rng.randint(2, 5)
            F = greedy_family(kind, m, rng)
            bound = setfam.theorem_bound(kind, m)
            if len(F.masks) > bound:
                return {"ok": False, "kind": kind.describe(), "family": F.to_json(), "bound": bound}
            slack = bound - len(F.masks)
            worst = slack if worst is None else min(worst, slack)
    return {"families": 20 * len(SUITE_KINDS), "min_slack": worst, "ok": True}


def _setfam_oddtown_brute(seed: int) -> dict:
    sizes = {m: setfam.max_family_brute(m, setfam.FamilyKind("oddtown"))[0] for m in range(1, 6)}
    return {"max_sizes": {str(m): s for m, s in sizes.items()}, "ok": all(s == m for m, s in sizes.items())}


def _setfam_fischer_brute(seed: int) -> dict:
    kind = setfam.FamilyKind("lambda_fischer", lam=1)
    rows = {}
    for m in range(1, 5):
        size, _ = setfam.max_family_brute(m, kind)
        rows[str(m)] = {"max": size, "bound": setfam.theorem_bound(kind, m)}
    return {"rows": rows, "ok": all(r["max"] <= r["bound"] for r in rows.values())}


# ---------------------------------------------------------------- ffpoly

def _ffpoly_kakeya(seed: int) -> dict:
    k = ffpoly.kakeya_min_brute(3, 2)
    return {"kakeya_min_brute_3_2": k, "lower_bound": math.comb(4, 2), "ok": k >= 6}


def _ffpoly_chevalley_warning(seed: int) -> dict:
    rng = random.Random(seed)
    systems = 0
    for p, n in ((2, 4), (3, 3), (5, 2)):
        for _ in range(50):
            budget = n - 1
            polys = []
            while budget > 0 and (not polys or rng.random() < 0.6):
                d = rng.randint(1, budget)
                f = ffpoly.random_poly(p, n, d, rng)
                if f.is_zero():
                    continue
                polys.append(f)
                budget -= f.degree()
            count = ffpoly.chevalley_warning_count(polys, p, n)
            if count % p:
                return {"ok": False, "p": p, "n": n, "count": count}
            systems += 1
    return {"systems": systems, "ok": True}


def _ffpoly_lucas_fermat(seed: int) -> dict:
    bad = [
        (a, b, p)
        for p in (2, 3, 5, 7)
        for a in range(40)
        for b in range(a + 1)
        if ffpoly.lucas_binom(a, b, p) != math.comb(a, b) % p
    ]
    fermat = all(ffpoly.fermat_check(a, p) for p in (2, 3, 5, 7, 11) for a in range(p))
    return {"lucas_mismatches": len(bad), "fermat_ok": fermat, "ok": not bad and fermat}


def _ffpoly_vanishing(seed: int) -> dict:
    rng = random.Random(seed)
    for _ in range(20):
        p, n = rng.choice([(3, 2), (5, 2), (3, 3)])
        k = rng.randint(1, 6)
        pts = ffpoly.PointSetFq.of(p, n, {tuple(rng.randrange(p) for _ in range(n)) for _ in range(k)})
        d = 0
        while ffpoly.monomial_count(d, n) <= len(pts.points):
            d += 1
        f = ffpoly.vanishing_poly(pts, d)
        if f is None or f.is_zero() or any(ffpoly.poly_eval(f, x) for x in pts.points):
            return {"ok": False, "points": [list(x) for x in pts.points]}
    return {"instances": 20, "ok": True}


# ---------------------------------------------------------------- nullsatz

def _nullsatz_cn(seed: int) -> dict:
    rng = random.Random(seed)
    p = 5
    for _ in range(100):
        n = rng.randint(1, 3)
        S = nullsatz.GridSets.of(p, [rng.sample(range(p), rng.randint(1, 4)) for _ in range(n)])
        f = ffpoly.MultiPoly(p, n)
        for i in range(n):
            f = f + ffpoly.random_poly(p, n, 2, rng) * S.divisor(i)
        cert = nullsatz.cn_certificate(f, S)
        total = ffpoly.MultiPoly(p, n)
        for h, g in zip(cert.quotients, cert.divisors):
            total = total + h * g
            if not h.is_zero() and h.degree() > f.degree() - g.degree():
                return {"ok": False, "reason": "degree", "f": f.to_json()}
        if total != f:
            return {"ok": False, "reason": "residual", "f": f.to_json()}
    return {"certificates": 100, "ok": True}


def _nullsatz_sumsets(seed: int) -> dict:
    rows = {str(p): nullsatz.sumset_bound_check(p) for p in (3, 5, 7)}
    return {
        "cd_pairs": {p: r["cd_pairs"] for p, r in rows.items()},
        "ok": all(r["ok"] for r in rows.values()),
    }


def _nullsatz_zero_sum(seed: int) -> dict:
    f_vals = {str(n): nullsatz.f_const_brute((n,), n) for n in (2, 3, 4)}
    f_z22 = nullsatz.f_const_brute((2, 2), 2)
    g_vals = {f"{p}^{k}": nullsatz.davenport_g((p,) * k) for p, k in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2))}
    ok = (
        all(v == 2 * int(n) - 1 for n, v in f_vals.items())
        and f_z22 == 5
        and all(v == int(pk[2]) * (int(pk[0]) - 1) + 1 for pk, v in g_vals.items())
    )
    return {"f_Zn_n": f_vals, "f_Z2xZ2_2": f_z22, "davenport": g_vals, "ok": ok}


def _nullsatz_egz(seed: int) -> dict:
    rng = random.Random(seed)
    for _ in range(300):
        n = rng.randint(2, 16)
        a = [rng.randrange(n) for _ in range(2 * n - 1)]
        I = nullsatz.egz_find(a)
        if len(set(I)) != n or sum(a[i] for i in I) % n:
            return {"ok": False, "elements": a, "found": I}
    return {"instances": 300, "ok": True}


def _nullsatz_berge_sauer(seed: int) -> dict:
    rng = random.Random(seed)
    k5 = [(i, j) for i in range(5) for j in range(i + 1, 5)] + [(0, 1)]
    found = [nullsatz.berge_sauer_find(5, k5)]
    for i in range(5):
        n = 5 + i % 2
        found.append(nullsatz.berge_sauer_find(n, nullsatz.random_four_regular_plus_edge(n, rng)))
    return {"instances": len(found), "subgraph_sizes": [len(r["edges"]) for r in found], "ok": True}


def _nullsatz_kemnitz(seed: int) -> dict:
    rng = random.Random(seed)
    rows = 0
    for p in (2, 3):
        for size in (3 * p - 3, 3 * p - 2, 3 * p - 1, 4 * p - 3):
            for _ in range(30):
                J = [(rng.randrange(p), rng.randrange(p)) for _ in range(size)]
                for row in nullsatz.kemnitz_congruences(J, p):
                    if row["holds"] is False:
                        return {"ok": False, "p": p, "J": J, "row": row}
                    rows += 1
    return {"clauses_checked": rows, "ok": True}


# ---------------------------------------------------------------- specgraph

def _spec_petersen(seed: int) -> dict:
    P = specgraph.petersen()
    spec = specgraph.spectrum(P)
    iso = specgraph.find_isomorphism(P, specgraph.kneser(5, 2))
    ok = spec.matches([3, 1, 1, 1, 1, 1, -2, -2, -2, -2]) and iso is not None
    return {"eigenvalues": [round(float(x), 9) + 0.0 for x in spec.eigenvalues], "kneser_5_2_isomorphism": iso, "ok": ok}


def _spec_kneser_formula(seed: int) -> dict:
    pairs = [(m, r) for m in range(2, 9) for r in range(1, m // 2 + 1)]
    for m, r in pairs:
        specgraph.kneser_spectrum_formula(m, r, check=True)
    return {"pairs": len(pairs), "ok": True}


def _spec_hoffman_ekr(seed: int) -> dict:
    rep = specgraph.hoffman_report(specgraph.petersen())
    ekr = {f"{m},{r}": format_rational(specgraph.ekr_via_kneser(m, r)) for m, r in ((5, 2), (6, 3))}
    ok = rep["alpha"] == 4 and abs(rep["hoffman_bound"] - 4) < 1e-6 and ekr == {"5,2": 4, "6,3": 10}
    return {"hoffman": rep, "ekr": ekr, "ok": ok}


def _spec_maxcut(seed: int) -> dict:
    rep = specgraph.maxcut_report(specgraph.petersen())
    return {**rep, "ok": rep["ok"] and rep["maxcut"] == 12}


def _spec_identities(seed: int) -> dict:
    graphs = [specgraph.petersen(), specgraph.cycle(7), specgraph.k4_minus_edge(), specgraph.hypercube(3)]
    inc = all(specgraph.incidence_identities_check(G)["ok"] for G in graphs)
    comp = specgraph.complement_spectrum_check(specgraph.petersen())["ok"]
    return {"incidence": inc, "complement_spectrum": comp, "ok": inc and comp}


def _spec_schwenk(seed: int) -> dict:
    return specgraph.schwenk_obstruction_check()


def _spec_friendship(seed: int) -> dict:
    r = specgraph.friendship_brute_scan(7)
    return {**r, "ok": r["all_windmills"]}


def _spec_chromatic(seed: int) -> dict:
    P = specgraph.petersen()
    poly = specgraph.chromatic_polynomial(P)
    chi = specgraph.chromatic_number(P)
    return {"chi": chi, "P_of_3": specgraph.poly_value(poly, 3), "ok": chi == 3 and specgraph.poly_value(poly, 3) == 120}


def _spec_consistent(seed: int) -> dict:
    rows = {str(t): specgraph.is_consistent(specgraph.consistent_coloring(t)) for t in range(1, 5)}
    return {"consistent": rows, "ok": all(rows.values())}


def _spec_sensitivity(seed: int) -> dict:
    reps = [specgraph.sensitivity_check(n, samples=5, seed=seed) for n in (2, 3, 4)]
    ident = all(specgraph.sensitivity_check(n, samples=0)["Bn_squared_is_nId"] for n in range(5, 11))
    return {
        "min_max_degree": {str(r["n"]): r["min_max_degree"] for r in reps},
        "identity_to_10": ident,
        "ok": ident and all(r["ok"] for r in reps),
    }


# ---------------------------------------------------------------- ramsey

def _ramsey_r33(seed: int) -> dict:
    return ramsey.verify_r33()


def _ramsey_constructions(seed: int) -> dict:
    cons = [ramsey.construct_naive(n) for n in (3, 4, 5)]
    cons += [ramsey.construct_nagy(n) for n in (4, 5, 6)]
    cons += [ramsey.construct_frankl_wilson(2, n) for n in (3, 4, 5)]
    rows = [ramsey.check_construction(c) for c in cons]
    return {
        "checked": [{"kind": r["kind"], "params": r["params"], "N": r["N"]} for r in rows],
        "ok": all(r["ok"] for r in rows),
    }


def _ramsey_sampler(seed: int) -> dict:
    a = ramsey.probabilistic_lower_sample(4, trials=300, seed=seed)
    b = ramsey.probabilistic_lower_sample(4, trials=300, seed=seed)
    N, bound = ramsey.probabilistic_bound(4)
    exact = 1 - Fraction(2 * math.comb(N, 4), 2 ** math.comb(4, 2))
    return {"report": a, "reproducible": a == b, "ok": a == b and bound == exact}


def _ramsey_recurrence(seed: int) -> dict:
    bad = [
        (m, n)
        for (m, n), v in ramsey.KNOWN_RAMSEY.items()
        if ramsey.ramsey_recurrence_bound(m, n) < v
    ]
    return {"violations": bad, "ok": not bad}


# ---------------------------------------------------------------- geomx

def _rand_points(rng: random.Random, k: int, d: int, lo: int = -6, hi: int = 6) -> geomx.PointConfig:
    return geomx.PointConfig.of([[rng.randint(lo, hi) for _ in range(d)] for _ in range(k)], d)


def _geo_radon(seed: int) -> dict:
    rng = random.Random(seed)
    for _ in range(100):
        d = rng.randint(1, 4)
        P = _rand_points(rng, d + 2, d)
        R = geomx.radon_partition(P)
        R.cert_I.verify(P, R.point)
        R.cert_J.verify(P, R.point)
    return {"instances": 100, "ok": True}


def _geo_tverberg(seed: int) -> dict:
    rng = random.Random(seed)
    r = 3
    for _ in range(10):
        d = rng.randint(1, 2)
        S = _rand_points(rng, (r - 1) * (d + 1) + 1, d)
        T = geomx.tverberg_partition(S, r)
        for part, cert in zip(T.parts, T.certificates):
            cert.verify(S, T.point)
            if not set(cert.indices) <= set(part):
                return {"ok": False, "points": S.to_json()}
    return {"instances": 10, "ok": True}


def _geo_joints_two_distance(seed: int) -> dict:
    joints = {}
    for n in (1, 2, 3):
        lines, _ = geomx.joints_grid(n)
        joints[str(n)] = {"lines": len(lines), "joints": geomx.joints(lines)["joints"]}
    two = {str(n): geomx.two_distance_check(geomx.two_distance_example(n))["is_two_distance"] for n in range(2, 7)}
    ok = all(v["joints"] == int(n) ** 3 and v["lines"] == 3 * int(n) ** 2 for n, v in joints.items()) and all(two.values())
    return {"joints": joints, "two_distance": two, "ok": ok}


def _geo_centerpoint(seed: int) -> dict:
    rng = random.Random(seed)
    grid = geomx.PointConfig.of([[x, y] for x in range(3) for y in range(3)])
    configs = [grid] + [_rand_points(rng, rng.randint(4, 9), 2) for _ in range(5)]
    depths = []
    for X in configs:
        y, info = geomx.centerpoint(X)
        if not info["ok"]:
            return {"ok": False, "points": X.to_json()}
        depths.append(info["depth"])
    return {"configs": len(configs), "depths": depths, "ok": True}


def _geo_helly_colorful(seed: int) -> dict:
    rng = random.Random(seed)
    sets = [
        geomx.PointConfig.of([[0, 0], [4, 0], [0, 4]]),
        geomx.PointConfig.of([[1, 1], [5, 1], [1, -3]]),
        geomx.PointConfig.of([[2, 2], [-2, 2], [2, -2]]),
        geomx.PointConfig.of([[0, 1], [3, 0], [3, 3]]),
    ]
    helly = geomx.helly_verify(sets, 2)
    tri = [[0, 0], [6, 0], [0, 6]]
    classes = [geomx.PointConfig.of([[x + rng.randint(-1, 1), y + rng.randint(-1, 1)] for x, y in tri]) for _ in range(3)]
    res = geomx.colorful_caratheodory(classes, [2, 2])
    return {"helly": helly["ok"], "colorful_choice": list(res.choice), "ok": helly["ok"]}


def _geo_misc(seed: int) -> dict:
    jl = geomx.jl_rank_checks(6, Fraction(1, 4), seed=seed, trials=20)
    cover = geomx.hyperplane_cover_check([([1] * 3, k) for k in range(1, 4)], 3)
    syl = geomx.sylvester_count(geomx.PointConfig.of([[0, 0], [1, 0], [0, 1], [1, 1], [2, 3]]))
    return {"jl": jl["ok"], "hyperplane_cover": cover["ok"], "sylvester": syl["ok"], "ok": jl["ok"] and cover["ok"] and syl["ok"]}


SUITES: dict[str, list[tuple[str, Callable[[int], dict]]]] = {
    "setfam": [
        ("random_families_within_bound", _setfam_random_bounds),
        ("oddtown_brute_equals_m", _setfam_oddtown_brute),
        ("fischer_brute_within_bound", _setfam_fischer_brute),
    ],
    "ffpoly": [
        ("kakeya_min_brute_3_2", _ffpoly_kakeya),
        ("chevalley_warning", _ffpoly_chevalley_warning),
        ("lucas_fermat", _ffpoly_lucas_fermat),
        ("vanishing_polynomial", _ffpoly_vanishing),
    ],
    "nullsatz": [
        ("cn_certificates", _nullsatz_cn),
        ("sumset_bounds", _nullsatz_sumsets),
        ("zero_sum_constants", _nullsatz_zero_sum),
        ("egz_find", _nullsatz_egz),
        ("berge_sauer", _nullsatz_berge_sauer),
        ("kemnitz_congruences", _nullsatz_kemnitz),
    ],
    "specgraph": [
        ("petersen_spectrum", _spec_petersen),
        ("kneser_formula", _spec_kneser_formula),
        ("hoffman_ekr", _spec_hoffman_ekr),
        ("maxcut", _spec_maxcut),
        ("matrix_identities", _spec_identities),
        ("schwenk_obstruction", _spec_schwenk),
        ("friendship_scan", _spec_friendship),
        ("chromatic_petersen", _spec_chromatic),
        ("consistent_colorings", _spec_consistent),
        ("sensitivity", _spec_sensitivity),
    ],
    "ramsey": [
        ("verify_r33", _ramsey_r33),
        ("constructions", _ramsey_constructions),
        ("sampler_reproducible", _ramsey_sampler),
        ("recurrence_vs_known", _ramsey_recurrence),
    ],
    "geomx": [
        ("radon", _geo_radon),
        ("tverberg", _geo_tverberg),
        ("joints_two_distance", _geo_joints_two_distance),
        ("centerpoint", _geo_centerpoint),
        ("helly_colorful", _geo_helly_colorful),
        ("jl_cover_sylvester", _geo_misc),
    ],
}


def run_suite(name: str, seed: int = 0) -> dict:
    """Run one battery (or all of them, in declaration order)."""
    if name == "all":
        parts = {k: run_suite(k, seed) for k in SUITES}
        failures = [f for k, r in parts.items() for f in r["failures"]]
        return {"suites": parts, "failures": failures, "ok": not failures}
    checks = {}
    failures = []
    for label, fn in SUITES[name]:
        try:
            detail = fn(seed)
        except TheoremViolation as exc:
            detail = {"ok": False, "violation": str(exc)}
        checks[label] = detail
        if not detail.get("ok"):
            failures.append(f"{name}.{label}")
    return {"checks": checks, "failures": failures, "ok": not failures}
