"""Command-line front end: ``algcomb <module> <command> [options]``.

Every run prints one JSON report (or writes it to ``--out``)::

    {"command": ..., "version": ..., "seed": ..., "ok": ..., "result": ...}

Exit status is 0 when every check passed, 1 when a mathematical property
failed (the report carries the witness) and 2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction
from typing import Callable

import numpy as np

from . import __version__, exactla, ffpoly, geomx, nullsatz, ramsey, setfam, specgraph
from .errors import GuardExceeded, PreconditionError, TheoremViolation
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- JSON plumbing

def _jsonable(x):
    if isinstance(x, Fraction):
        return exactla.format_rational(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, default=_jsonable, indent=2) + "\n"


def _snap(x: float) -> float | int:
    """Round eigenvalue-like floats for stable output; near-integers become ints."""
    r = round(float(x))
    return r if abs(x - r) < 1e-9 else round(float(x), 9) + 0.0


def load_input(value: str | None, required: bool = True):
    """--in accepts a path or inline JSON. Non-JSON file contents come back
    as raw text (edge lists, colouring strings)."""
    if value is None:
        if required:
            raise UsageError("this command needs --in")
        return None
    text = value
    if not value.lstrip().startswith(("{", "[")):
        if not os.path.exists(value):
            raise UsageError(f"input file not found: {value}")
        with open(value, encoding="utf-8") as fh:
            text = fh.read()
        if not text.lstrip().startswith(("{", "[", '"')):
            return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON input: {exc}") from exc


def _field(obj, key: str):
    if not isinstance(obj, dict) or key not in obj:
        raise UsageError(f"input must be an object with key {key!r}")
    return obj[key]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


# ---------------------------------------------------------------- named graphs

_GRAPH_BUILDERS: dict[str, tuple[int, Callable]] = {
    "petersen": (0, specgraph.petersen),
    "k4-minus-edge": (0, specgraph.k4_minus_edge),
    "complete": (1, specgraph.complete),
    "empty": (1, specgraph.empty_graph),
    "cycle": (1, specgraph.cycle),
    "path": (1, specgraph.path),
    "star": (1, specgraph.star),
    "hypercube": (1, specgraph.hypercube),
    "windmill": (1, specgraph.windmill),
    "kneser": (2, specgraph.kneser),
}


def named_graph(spec: str) -> specgraph.Graph:
    """'petersen', 'cycle:5', 'kneser:5,2' and so on."""
    name, _, params = spec.partition(":")
    if name not in _GRAPH_BUILDERS:
        raise UsageError(f"unknown graph {name!r}; choose from {sorted(_GRAPH_BUILDERS)}")
    arity, build = _GRAPH_BUILDERS[name]
    values = _int_list(params) if params else []
    if len(values) != arity:
        raise UsageError(f"graph {name!r} takes {arity} parameter(s)")
    return build(*values)


def _graph(args, flag: str = "graph", infile: str = "input") -> specgraph.Graph:
    spec = getattr(args, flag, None)
    if spec:
        return named_graph(spec)
    obj = load_input(getattr(args, infile))
    if isinstance(obj, str):
        return specgraph.Graph.from_text(obj)
    return specgraph.Graph.from_json(obj)


def _kind(args) -> setfam.FamilyKind:
    L = tuple(_int_list(args.L)) if args.L else ()
    return setfam.FamilyKind(args.kind, lam=args.lam, L=L, p=args.p, size=args.size)


# ---------------------------------------------------------------- handlers
# Each handler takes (args, guards) and returns a result dict that has "ok".

def h_matrix_rank(args, g):
    M = exactla.RationalMatrix.from_json(load_input(args.input)).tolist()
    if args.p:
        return {"rank": exactla.rank_fp(M, args.p), "field": f"F_{args.p}", "ok": True}
    return {"rank": exactla.rank_rational(M), "field": "Q", "ok": True}


def h_matrix_nullspace(args, g):
    M = exactla.RationalMatrix.from_json(load_input(args.input)).tolist()
    if args.p:
        basis = exactla.nullspace_fp(M, args.p)
    else:
        basis = exactla.nullspace_rational(M)
    return {"basis": basis, "dimension": len(basis), "ok": True}


def h_matrix_det(args, g):
    return {"det": exactla.det_rational(exactla.RationalMatrix.from_json(load_input(args.input)).tolist()), "ok": True}


def h_matrix_spectrum(args, g):
    M = exactla.RationalMatrix.from_json(load_input(args.input)).tolist()
    spec = exactla.sym_eigenvalues(M)
    return {"eigenvalues": [_snap(x) for x in spec.eigenvalues], "ok": True}


def h_setfam_check(args, g):
    F = setfam.SetFamily.from_json(load_input(args.input))
    kind = _kind(args)
    res = setfam.check_family(F, kind, **g)
    out = {"kind": kind.describe(), "members": len(F.masks), "ok": res.ok, "witness": res.witness}
    if res.ok:
        try:
            out["bound"] = setfam.theorem_bound(kind, F.ground)
        except PreconditionError as exc:
            out["bound"] = None
            out["bound_note"] = str(exc)
    return out


def h_setfam_bound(args, g):
    kind = _kind(args)
    return {"kind": kind.describe(), "m": args.m, "bound": setfam.theorem_bound(kind, args.m), "ok": True}


def h_setfam_max(args, g):
    kind = _kind(args)
    size, F = setfam.max_family_brute(args.m, kind, **g)
    bound = setfam.theorem_bound(kind, args.m)
    return {"kind": kind.describe(), "m": args.m, "max_size": size, "family": F.to_json(), "bound": bound, "ok": size <= bound}


def h_ffpoly_roots(args, g):
    f = ffpoly.MultiPoly.from_json(load_input(args.input))
    rep = ffpoly.root_count_report(f, **g)
    return {**{k: v for k, v in vars(rep).items()}, "ok": True}


def h_ffpoly_kakeya(args, g):
    A = ffpoly.PointSetFq.from_json(load_input(args.input))
    ok, missing = ffpoly.is_kakeya(A)
    return {"is_kakeya": ok, "missing_direction": missing, "size": len(A.points), "ok": True}


def h_ffpoly_kakeya_min(args, g):
    size = ffpoly.kakeya_min_brute(args.p, args.n, **g)
    example = ffpoly.kakeya_min_example(args.p, args.n, **g)
    lower = math.comb(args.p + args.n - 1, args.n)
    return {"p": args.p, "n": args.n, "min_size": size, "example": [list(x) for x in example.points],
            "lower_bound": lower, "ok": size >= lower}


def h_ffpoly_cw(args, g):
    obj = load_input(args.input)
    polys = obj["polys"] if isinstance(obj, dict) else obj
    polys = [ffpoly.MultiPoly.from_json(f) for f in polys]
    count = ffpoly.chevalley_warning_count(polys, **g)
    p = polys[0].p
    degsum = sum(f.degree() for f in polys)
    return {"common_zeros": count, "p": p, "degree_sum": degsum, "n": polys[0].n,
            "applies": degsum < polys[0].n, "ok": True}


def _grid_and_poly(obj):
    S = nullsatz.GridSets.from_json(_field(obj, "grid"))
    f = ffpoly.MultiPoly.from_json(_field(obj, "poly"))
    return f, S


def h_cn_certificate(args, g):
    f, S = _grid_and_poly(load_input(args.input))
    return {"certificate": nullsatz.cn_certificate(f, S, **g), "ok": True}


def h_cn_witness(args, g):
    obj = load_input(args.input)
    f, S = _grid_and_poly(obj)
    y = nullsatz.cn_witness(f, S, tuple(_field(obj, "t")))
    return {"point": list(y), "value": ffpoly.poly_eval(f, y), "ok": True}


def h_sumset_check(args, g):
    return nullsatz.sumset_bound_check(args.p, **g)


def h_davenport(args, g):
    moduli = tuple(_int_list(args.moduli))
    val = nullsatz.davenport_g(moduli, **g)
    return {"moduli": list(moduli), "davenport": val, "ok": True}


def h_zero_sum_free(args, g):
    inst = nullsatz.ZeroSumInstance.from_json(load_input(args.input))
    return {"zero_sum_free": nullsatz.is_zero_sum_free(inst.moduli, inst.elements), "ok": True}


def h_egz(args, g):
    obj = load_input(args.input)
    if isinstance(obj, dict):
        inst = nullsatz.ZeroSumInstance.from_json(obj)
        if len(inst.moduli) != 1:
            raise UsageError("egz works in a cyclic group: give a single modulus")
        n, elems = inst.moduli[0], [e[0] for e in inst.elements]
    else:
        n, elems = args.n, [int(x) for x in obj]
    I = nullsatz.egz_find(elems, n)
    return {"indices": I, "values": [elems[i] for i in I], "ok": True}


def h_berge_sauer(args, g):
    if args.random is not None:
        n = args.random
        edges = nullsatz.random_four_regular_plus_edge(n, random.Random(args.seed))
    else:
        obj = load_input(args.input)
        n, edges = int(_field(obj, "n")), _field(obj, "edges")
    res = nullsatz.berge_sauer_find(n, edges, **g)
    return {"n": n, "input_edges": [list(e) for e in edges], **res, "ok": True}


def h_kemnitz(args, g):
    obj = load_input(args.input)
    rows = nullsatz.kemnitz_congruences(_field(obj, "elements"), int(_field(obj, "p")), **g)
    return {"clauses": rows, "ok": all(r["holds"] is not False for r in rows)}


def h_spectrum(args, g):
    G = _graph(args)
    spec = specgraph.spectrum(G)
    return {
        "n": G.n,
        "eigenvalues": [_snap(x) for x in spec.eigenvalues],
        "grouped": [[_snap(v), m] for v, m in spec.grouped()],
        "ok": True,
    }


def h_hoffman(args, g):
    return specgraph.hoffman_report(_graph(args))


def h_maxcut(args, g):
    G = _graph(args)
    return specgraph.maxcut_report(G)


def h_chromatic(args, g):
    G = _graph(args)
    poly = specgraph.chromatic_polynomial(G, **g)
    return {"coefficients": poly, "chromatic_number": specgraph.chromatic_number(G), "ok": True}


def h_isomorphic(args, g):
    G, H = _graph(args), named_graph(args.other)
    iso = specgraph.find_isomorphism(G, H)
    return {"isomorphic": iso is not None, "mapping": iso, "ok": True}


def h_incidence(args, g):
    return specgraph.incidence_identities_check(_graph(args))


def h_friendship(args, g):
    r = specgraph.friendship_brute_scan(args.nmax, **g)
    return {**r, "ok": r["all_windmills"]}


def h_sensitivity(args, g):
    return specgraph.sensitivity_check(args.n, samples=args.samples, seed=args.seed)


def h_schwenk(args, g):
    return specgraph.schwenk_obstruction_check()


def h_verify_r33(args, g):
    return ramsey.verify_r33()


def h_ramsey_check(args, g):
    c = ramsey.TwoColoring.from_json(load_input(args.input))
    res = ramsey.is_ramsey_coloring(c, args.m, args.n, **g)
    return {"N": c.N, "m": args.m, "n": args.n, "is_ramsey": res.ok, "witness": res.witness, "ok": res.ok}


def h_construct(args, g):
    params = {"n": args.n}
    if args.kind == "frankl_wilson":
        params["p"] = args.p if args.p is not None else 2
    con = ramsey.construct(args.kind, **params, **{k: v for k, v in g.items() if k == "max_N"})
    if args.no_check:
        return {**con.to_json(), "ok": True}
    return ramsey.check_construction(con, **{k: v for k, v in g.items() if k == "max_subsets"})


def h_sample(args, g):
    return {**ramsey.probabilistic_lower_sample(args.n, trials=args.trials, seed=args.seed, **g), "ok": True}


def h_ramsey_bound(args, g):
    b = ramsey.ramsey_recurrence_bound(args.m, args.n)
    known = ramsey.KNOWN_RAMSEY.get((min(args.m, args.n), max(args.m, args.n)))
    return {"m": args.m, "n": args.n, "recurrence_bound": b, "known_value": known, "ok": known is None or known <= b}


def _config(obj) -> geomx.PointConfig:
    return geomx.PointConfig.from_json(obj)


def h_radon(args, g):
    P = _config(load_input(args.input))
    return {**geomx.radon_partition(P).to_json(), "ok": True}


def h_hull(args, g):
    obj = load_input(args.input)
    P = _config(_field(obj, "points"))
    cert = geomx.hull_membership(_field(obj, "target"), P)
    if cert is None:
        return {"inside": False, "certificate": None, "ok": True}
    if args.reduce:
        cert = geomx.caratheodory_reduce(cert, P)
    return {"inside": True, "certificate": cert, "ok": True}


def h_helly(args, g):
    obj = load_input(args.input)
    sets = [_config(s) for s in _field(obj, "sets")]
    return geomx.helly_verify(sets, obj.get("d"), **g)


def h_centerpoint(args, g):
    y, info = geomx.centerpoint(_config(load_input(args.input)), **g)
    return {"point": [exactla.format_rational(c) for c in y], **info}


def h_tverberg(args, g):
    S = _config(load_input(args.input))
    return {**geomx.tverberg_partition(S, args.r).to_json(), "ok": True}


def h_colorful(args, g):
    obj = load_input(args.input)
    classes = [_config(c) for c in _field(obj, "classes")]
    res = geomx.colorful_caratheodory(classes, _field(obj, "target"), **g)
    return {**res.to_json(), "ok": True}


def h_sylvester(args, g):
    return geomx.sylvester_count(_config(load_input(args.input)), **g)


def h_joints(args, g):
    if args.grid is not None:
        lines, _ = geomx.joints_grid(args.grid)
    else:
        obj = load_input(args.input)
        lines = [geomx.LineR3.from_json(L) for L in (obj["lines"] if isinstance(obj, dict) else obj)]
    r = geomx.joints(lines, **g)
    return {**r, "ok": True}


def h_two_distance(args, g):
    S = geomx.two_distance_example(args.example) if args.example is not None else _config(load_input(args.input))
    return geomx.two_distance_check(S)


def h_jl_rank(args, g):
    return geomx.jl_rank_checks(args.n, args.eps, seed=args.seed, trials=args.trials, k=args.k)


def h_hyperplane_cover(args, g):
    obj = load_input(args.input)
    H = [(h["normal"], h["offset"]) for h in _field(obj, "hyperplanes")]
    return geomx.hyperplane_cover_check(H, int(_field(obj, "n")), **g)


def h_suite(args, g):
    return run_suite(args.name, seed=args.seed)


# ---------------------------------------------------------------- parser

def _add_in(p):
    p.add_argument("--in", dest="input", help="JSON file, edge-list file or inline JSON")


def _add_kind(p):
    p.add_argument("--kind", required=True, choices=sorted(setfam.KIND_TAGS))
    p.add_argument("--lam", type=int, help="lambda for lambda_fischer / uniform_intersecting")
    p.add_argument("--L", help="comma-separated allowed intersection sizes")
    p.add_argument("--p", type=int, help="prime for L_fischer_modp")
    p.add_argument("--size", type=int, help="uniform member size")


def _add_graph(p):
    p.add_argument("--graph", help="named graph: petersen, kneser:5,2, cycle:7, ...")
    _add_in(p)


# (module, command, help, extra-args, handler, guard names)
COMMANDS: list[tuple] = [
    ("exactla", "rank", "rank over Q or F_p", lambda p: (_add_in(p), p.add_argument("--p", type=int)), h_matrix_rank, ()),
    ("exactla", "nullspace", "exact nullspace basis", lambda p: (_add_in(p), p.add_argument("--p", type=int)), h_matrix_nullspace, ()),
    ("exactla", "det", "exact determinant", _add_in, h_matrix_det, ()),
    ("exactla", "spectrum", "eigenvalues of a symmetric matrix", _add_in, h_matrix_spectrum, ()),
    ("setfam", "check", "check a family against a kind", lambda p: (_add_kind(p), _add_in(p)), h_setfam_check, ("max_members",)),
    ("setfam", "bound", "theorem bound for a kind on [m]", lambda p: (_add_kind(p), p.add_argument("--m", type=int, required=True)), h_setfam_bound, ()),
    ("setfam", "max", "largest family on [m] by exhaustive search", lambda p: (_add_kind(p), p.add_argument("--m", type=int, required=True)), h_setfam_max, ("max_ground",)),
    ("ffpoly", "roots", "count roots over F_p^n", _add_in, h_ffpoly_roots, ("max_points",)),
    ("ffpoly", "kakeya", "test a point set for the Kakeya property", _add_in, h_ffpoly_kakeya, ()),
    ("ffpoly", "kakeya-min", "exhaustive minimum Kakeya set size", lambda p: (p.add_argument("--p", type=int, required=True), p.add_argument("--n", type=int, required=True)), h_ffpoly_kakeya_min, ("max_points",)),
    ("ffpoly", "chevalley-warning", "common zeros of a polynomial system", _add_in, h_ffpoly_cw, ("max_points",)),
    ("nullsatz", "certificate", "quotients h_i for a grid-vanishing polynomial", _add_in, h_cn_certificate, ("max_points",)),
    ("nullsatz", "witness", "non-vanishing grid point from a top coefficient", _add_in, h_cn_witness, ()),
    ("nullsatz", "sumset-check", "exhaustive Cauchy-Davenport / restricted sumset check", lambda p: p.add_argument("--p", type=int, required=True), h_sumset_check, ("max_p",)),
    ("nullsatz", "davenport", "Davenport constant by search", lambda p: p.add_argument("--moduli", required=True), h_davenport, ("max_group",)),
    ("nullsatz", "zero-sum-free", "test a sequence for a non-empty zero-sum subsequence", _add_in, h_zero_sum_free, ()),
    ("nullsatz", "egz", "n elements summing to 0 mod n among 2n-1", lambda p: (_add_in(p), p.add_argument("--n", type=int)), h_egz, ()),
    ("nullsatz", "berge-sauer", "3-regular subgraph of a 4-regular graph plus an edge", lambda p: (_add_in(p), p.add_argument("--random", type=int, metavar="N", help="seeded random instance on N vertices")), h_berge_sauer, ("scan_max_edges",)),
    ("nullsatz", "kemnitz", "Kemnitz congruence clauses", _add_in, h_kemnitz, ("max_size",)),
    ("specgraph", "spectrum", "adjacency spectrum", _add_graph, h_spectrum, ()),
    ("specgraph", "hoffman", "independence number against the Hoffman bound", _add_graph, h_hoffman, ()),
    ("specgraph", "maxcut", "max cut against its spectral bounds", _add_graph, h_maxcut, ()),
    ("specgraph", "chromatic", "chromatic polynomial and number", _add_graph, h_chromatic, ("max_size",)),
    ("specgraph", "isomorphic", "find an isomorphism to a named graph", lambda p: (_add_graph(p), p.add_argument("--other", required=True)), h_isomorphic, ()),
    ("specgraph", "incidence", "incidence-matrix identities", _add_graph, h_incidence, ()),
    ("specgraph", "friendship-scan", "all friendship graphs on <= nmax vertices", lambda p: p.add_argument("--nmax", type=int, default=5), h_friendship, ("max_n",)),
    ("specgraph", "sensitivity", "signed hypercube and induced-degree checks", lambda p: (p.add_argument("--n", type=int, required=True), p.add_argument("--samples", type=int, default=20)), h_sensitivity, ()),
    ("specgraph", "schwenk", "Petersen edge-decomposition obstruction", lambda p: None, h_schwenk, ()),
    ("ramsey", "verify-r33", "R(3,3) = 6 by witness and exhaustion", lambda p: None, h_verify_r33, ()),
    ("ramsey", "check", "is a colouring (m, n)-Ramsey", lambda p: (_add_in(p), p.add_argument("--m", type=int, required=True), p.add_argument("--n", type=int, required=True)), h_ramsey_check, ("max_subsets",)),
    ("ramsey", "construct", "explicit Ramsey colouring", lambda p: (p.add_argument("--kind", required=True, choices=["naive", "nagy", "frankl_wilson"]), p.add_argument("--n", type=int, required=True), p.add_argument("--p", type=int), p.add_argument("--no-check", action="store_true")), h_construct, ("max_N", "max_subsets")),
    ("ramsey", "sample", "random-colouring sampler with the exact analytic bound", lambda p: (p.add_argument("--n", type=int, required=True), p.add_argument("--trials", type=int, default=1000)), h_sample, ("max_n",)),
    ("ramsey", "bound", "recurrence upper bound", lambda p: (p.add_argument("--m", type=int, required=True), p.add_argument("--n", type=int, required=True)), h_ramsey_bound, ()),
    ("geomx", "radon", "Radon partition with certificates", _add_in, h_radon, ()),
    ("geomx", "hull", "convex hull membership certificate", lambda p: (_add_in(p), p.add_argument("--reduce", action="store_true", help="Caratheodory-reduce the support")), h_hull, ()),
    ("geomx", "helly", "Helly verification for convex hulls", _add_in, h_helly, ("max_sets",)),
    ("geomx", "centerpoint", "point of Tukey depth >= n/(d+1)", _add_in, h_centerpoint, ("max_cuts",)),
    ("geomx", "tverberg", "Tverberg partition into r parts", lambda p: (_add_in(p), p.add_argument("--r", type=int, required=True)), h_tverberg, ()),
    ("geomx", "colorful", "colourful Caratheodory choice", _add_in, h_colorful, ("max_dim",)),
    ("geomx", "sylvester", "ordinary-line count", _add_in, h_sylvester, ("max_points",)),
    ("geomx", "joints", "joints of lines in R^3", lambda p: (_add_in(p), p.add_argument("--grid", type=int)), h_joints, ("max_lines",)),
    ("geomx", "two-distance", "two-distance set check", lambda p: (_add_in(p), p.add_argument("--example", type=int)), h_two_distance, ()),
    ("geomx", "jl-rank", "rank inequalities behind dimension reduction", lambda p: (p.add_argument("--n", type=int, required=True), p.add_argument("--eps", default="1/4"), p.add_argument("--trials", type=int, default=100), p.add_argument("--k", type=int, default=3)), h_jl_rank, ()),
    ("geomx", "hyperplane-cover", "hyperplanes covering the cube but not the origin", _add_in, h_hyperplane_cover, ("max_n",)),
]


def _common(p):
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard", action="append", default=[], metavar="NAME=VALUE",
                   help="raise a brute-force size limit")
    p.add_argument("--format", choices=["json", "text"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algcomb",
        description="Exact checkers, constructions and verification suites for algebraic extremal combinatorics.",
        epilog="Exit status: 0 all checks passed, 1 a property failed, 2 bad input or usage.",
    )
    parser.add_argument("--version", action="version", version=f"algcomb {__version__}")
    top = parser.add_subparsers(dest="module", metavar="MODULE", required=True)
    groups: dict[str, argparse._SubParsersAction] = {}
    for module, name, help_, extra, handler, guards in COMMANDS:
        if module not in groups:
            mp = top.add_parser(module, help=f"{module} commands")
            groups[module] = mp.add_subparsers(dest="command", metavar="COMMAND", required=True)
        sp = groups[module].add_parser(name, help=help_)
        extra(sp)
        _common(sp)
        sp.set_defaults(handler=handler, guards=guards, path=f"{module} {name}")
    sp = top.add_parser("spectra", help="adjacency spectrum of a graph")
    _add_graph(sp)
    _common(sp)
    sp.set_defaults(handler=h_spectrum, guards=(), path="spectra")
    sp = top.add_parser("suite", help="run a verification battery")
    sp.add_argument("name", choices=["all", *SUITES])
    _common(sp)
    sp.set_defaults(handler=h_suite, guards=(), path="suite")
    return parser


def parse_guards(items: list[str], allowed: tuple) -> dict[str, int]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--guard expects NAME=VALUE, got {item!r}")
        if name not in allowed:
            raise UsageError(f"unknown guard {name!r} for this command; accepted: {list(allowed) or 'none'}")
        try:
            out[name] = int(value)
        except ValueError as exc:
            raise UsageError(f"guard {name!r} needs an integer value") from exc
    return out


def _text(report: dict) -> str:
    lines = [f"command: {report['command']}", f"ok: {str(report['ok']).lower()}"]
    body = report.get("result") or {}
    if "error" in report:
        lines.append(f"error: {report['error']}")
    for key in sorted(body):
        if key != "ok":
            lines.append(f"{key}: {json.dumps(body[key], sort_keys=True, default=_jsonable)}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    report = {"command": args.path, "version": __version__, "seed": args.seed}
    try:
        guards = parse_guards(args.guard, args.guards)
        result = args.handler(args, guards)
        report["result"] = result
        report["ok"] = bool(result.get("ok", True))
        code = EXIT_OK if report["ok"] else EXIT_FAIL
    except TheoremViolation as exc:
        report.update(ok=False, error=f"property violated: {exc}", error_kind="theorem")
        code = EXIT_FAIL
    except (UsageError, PreconditionError, GuardExceeded, KeyError, TypeError, ValueError) as exc:
        kind = "guard" if isinstance(exc, GuardExceeded) else "input"
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        report.update(ok=False, error=msg, error_kind=kind)
        code = EXIT_USAGE
        if isinstance(exc, UsageError):
            parser.print_usage(sys.stderr)
    text = dumps(report) if args.format == "json" else _text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
