"""Discrete and convex geometry with exact rational certificates.

Points are tuples of Fractions. Convex-geometry routines return certificates
that re-verify by exact re-summation; floats appear only in the JL projection.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, TheoremViolation, check_guard
from .exactla import (
    format_rational,
    lp_feasible,
    nullspace_rational,
    parse_rational,
    rank_rational,
    rank_trace_bound,
    solve_rational,
)

HELLY_MAX_SETS = 12
CENTERPOINT_MAX_D = 3
CENTERPOINT_MAX_POINTS = 40
CENTERPOINT_MAX_CUTS = 2000
COLORFUL_MAX_CLASS = 12
COLORFUL_MAX_DIM = 12
TVERBERG_BRUTE_LIMIT = 10**7
SYLVESTER_MAX_POINTS = 200
JOINTS_MAX_LINES = 300
NEARLY_ORTHOGONAL_MAX = 60
HYPERPLANE_MAX_N = 16

Point = tuple


def _vec(v) -> Point:
    return tuple(parse_rational(x) for x in v)


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _sub(u, v) -> Point:
    return tuple(a - b for a, b in zip(u, v))


def _combo(weights, points) -> Point:
    d = len(points[0])
    return tuple(sum((w * p[k] for w, p in zip(weights, points)), Fraction(0)) for k in range(d))


def _fmt(v) -> list:
    return [format_rational(x) for x in v]


@dataclass(frozen=True)
class PointConfig:
    d: int
    points: tuple

    def __post_init__(self):
        if self.d < 0:
            raise PreconditionError("dimension must be non-negative")
        for p in self.points:
            if len(p) != self.d:
                raise PreconditionError(f"point {p} does not have {self.d} coordinates")

    @classmethod
    def of(cls, points, d: int | None = None) -> "PointConfig":
        pts = tuple(_vec(p) for p in points)
        if d is None:
            if not pts:
                raise PreconditionError("dimension needed for an empty configuration")
            d = len(pts[0])
        return cls(d, pts)

    @classmethod
    def from_json(cls, obj) -> "PointConfig":
        if isinstance(obj, list):
            return cls.of(obj)
        return cls.of(obj["points"], obj.get("d"))

    def to_json(self) -> dict:
        return {"d": self.d, "points": [_fmt(p) for p in self.points]}

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class ConvexCertificate:
    indices: tuple
    weights: tuple

    def point(self, P: PointConfig) -> Point:
        return _combo(self.weights, [P.points[i] for i in self.indices])

    def is_valid(self, P: PointConfig, target) -> bool:
        target = _vec(target)
        return (
            len(self.indices) == len(self.weights) > 0
            and len(set(self.indices)) == len(self.indices)
            and all(0 <= i < len(P) for i in self.indices)
            and all(w >= 0 for w in self.weights)
            and sum(self.weights) == 1
            and self.point(P) == target
        )

    def verify(self, P: PointConfig, target) -> "ConvexCertificate":
        if not self.is_valid(P, target):
            raise TheoremViolation("convex certificate does not re-verify")
        return self

    @property
    def support(self) -> int:
        return sum(1 for w in self.weights if w != 0)

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "weights": _fmt(self.weights)}


def _require_dim(P: PointConfig, target) -> Point:
    target = _vec(target)
    if len(target) != P.d:
        raise PreconditionError(f"target has {len(target)} coordinates, configuration has {P.d}")
    return target


def hull_membership(target, P: PointConfig) -> ConvexCertificate | None:
    """Exact convex-combination certificate for target in conv(P), or None."""
    target = _require_dim(P, target)
    if not len(P):
        return None
    A = [[p[k] for p in P.points] for k in range(P.d)] + [[Fraction(1)] * len(P)]
    x = lp_feasible(A, list(target) + [Fraction(1)])
    if x is None:
        return None
    idx = tuple(i for i, w in enumerate(x) if w != 0)
    return ConvexCertificate(idx, tuple(x[i] for i in idx)).verify(P, target)


def _lifted_dependence(points: Sequence[Point]) -> list[Fraction] | None:
    """beta != 0 with sum beta = 0 and sum beta_i p_i = 0, or None."""
    if not points:
        return None
    d = len(points[0])
    M = [[p[k] for p in points] for k in range(d)] + [[Fraction(1)] * len(points)]
    ns = nullspace_rational(M, len(points))
    return ns[0] if ns else None


def caratheodory_reduce(cert: ConvexCertificate, P: PointConfig) -> ConvexCertificate:
    """Eliminate points along affine dependences until the support is affinely
    independent (so at most d + 1)."""
    target = cert.verify(P, cert.point(P)).point(P)
    idx = [i for i, w in zip(cert.indices, cert.weights) if w != 0]
    alpha = [w for w in cert.weights if w != 0]
    while True:
        beta = _lifted_dependence([P.points[i] for i in idx])
        if beta is None:
            break
        if not any(b > 0 for b in beta):
            beta = [-b for b in beta]
        t0 = min(a / b for a, b in zip(alpha, beta) if b > 0)
        alpha = [a - t0 * b for a, b in zip(alpha, beta)]
        keep = [k for k, a in enumerate(alpha) if a != 0]
        if len(keep) == len(alpha):
            raise TheoremViolation("elimination step removed no point")
        idx = [idx[k] for k in keep]
        alpha = [alpha[k] for k in keep]
    out = ConvexCertificate(tuple(idx), tuple(alpha)).verify(P, target)
    if out.support > P.d + 1:
        raise TheoremViolation("reduced support exceeds d + 1")
    return out


@dataclass(frozen=True)
class RadonPartition:
    I: tuple
    J: tuple
    point: Point
    cert_I: ConvexCertificate
    cert_J: ConvexCertificate

    def to_json(self) -> dict:
        return {
            "I": list(self.I),
            "J": list(self.J),
            "point": _fmt(self.point),
            "cert_I": self.cert_I.to_json(),
            "cert_J": self.cert_J.to_json(),
        }


def radon_partition(P: PointConfig) -> RadonPartition:
    """Split P into I, J with intersecting hulls. Points with zero coefficient
    in the dependence are put in I."""
    if len(P) < P.d + 2:
        raise PreconditionError(f"need at least d + 2 = {P.d + 2} points, got {len(P)}")
    beta = _lifted_dependence(P.points)
    if beta is None:
        raise TheoremViolation("no affine dependence among d + 2 points")
    pos = [i for i, b in enumerate(beta) if b > 0]
    neg = [i for i, b in enumerate(beta) if b < 0]
    zero = [i for i, b in enumerate(beta) if b == 0]
    B = sum(beta[i] for i in pos)
    cert_I = ConvexCertificate(tuple(pos), tuple(beta[i] / B for i in pos))
    cert_J = ConvexCertificate(tuple(neg), tuple(-beta[i] / B for i in neg))
    s = cert_I.point(P)
    cert_I.verify(P, s)
    cert_J.verify(P, s)
    return RadonPartition(tuple(sorted(pos + zero)), tuple(neg), s, cert_I, cert_J)


def _common_point(sets: Sequence[PointConfig]) -> tuple[Point, list[ConvexCertificate]] | None:
    """A point in the intersection of the hulls, with one certificate per set."""
    if not sets:
        return None
    d = sets[0].d
    sizes = [len(S) for S in sets]
    if 0 in sizes:
        return None
    offsets = list(itertools.accumulate([0] + sizes))
    nvar = offsets[-1]
    rows, rhs = [], []
    for s, S in enumerate(sets):
        row = [Fraction(0)] * nvar
        for j in range(sizes[s]):
            row[offsets[s] + j] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    for s in range(1, len(sets)):
        for k in range(d):
            row = [Fraction(0)] * nvar
            for j, p in enumerate(sets[s].points):
                row[offsets[s] + j] += p[k]
            for j, p in enumerate(sets[0].points):
                row[offsets[0] + j] -= p[k]
            rows.append(row)
            rhs.append(Fraction(0))
    x = lp_feasible(rows, rhs)
    if x is None:
        return None
    certs = []
    for s, S in enumerate(sets):
        w = x[offsets[s]:offsets[s + 1]]
        idx = tuple(j for j, v in enumerate(w) if v != 0)
        certs.append(ConvexCertificate(idx, tuple(w[j] for j in idx)))
    point = certs[0].point(sets[0])
    for S, c in zip(sets, certs):
        c.verify(S, point)
    return point, certs


def helly_verify(sets: Sequence[PointConfig], d: int | None = None, max_sets: int = HELLY_MAX_SETS) -> dict:
    check_guard("max_sets", len(sets), max_sets)
    if not sets:
        raise PreconditionError("need at least one set")
    if d is None:
        d = sets[0].d
    if any(S.d != d for S in sets):
        raise PreconditionError("all sets must live in the same dimension")
    k = min(d + 1, len(sets))
    checked = 0
    failing = None
    for sub in itertools.combinations(range(len(sets)), k):
        checked += 1
        if _common_point([sets[i] for i in sub]) is None:
            failing = list(sub)
            break
    report = {"sets": len(sets), "d": d, "subsets_checked": checked, "all_small_intersections_nonempty": failing is None,
              "failing_subset": failing, "global_point": None}
    if failing is None:
        found = _common_point(list(sets))
        if found is None:
            raise TheoremViolation("every d + 1 hulls meet but the whole family does not")
        report["global_point"] = _fmt(found[0])
        report["global_certificates"] = [c.to_json() for c in found[1]]
    report["ok"] = True
    return report


# ---------------------------------------------------------------- centerpoint

def _complement_basis(u: Sequence[Fraction]) -> list[list[Fraction]]:
    return nullspace_rational([list(u)], len(u))


def _independent_rows(A: Sequence[Point]) -> list[Point]:
    basis: list[Point] = []
    for a in A:
        if rank_rational(basis + [a]) > len(basis):
            basis.append(a)
    return basis


def _min_open_side(A: Sequence[Point]) -> tuple[int, list]:
    """min over directions u in general position of #{a : <u, a> > 0}, with a
    lexicographic witness [u0, u1, ...] (each later vector breaks ties of the
    earlier ones). All a must be nonzero."""
    if not A:
        return 0, []
    k = len(A[0])
    W = _independent_rows(A)
    if len(W) < k:
        # only the span of A matters; rewrite in coordinates w.r.t. W
        coords = [tuple(_dot(w, a) for w in W) for a in A]
        count, lex = _min_open_side(coords)
        return count, [_combo(c, W) if c else tuple(Fraction(0) for _ in range(k)) for c in lex]
    if k == 1:
        pos = sum(1 for a in A if a[0] > 0)
        neg = len(A) - pos
        return (pos, [(Fraction(1),)]) if pos <= neg else (neg, [(Fraction(-1),)])
    best = None
    seen = set()
    for sub in itertools.combinations(range(len(A)), k - 1):
        ns = nullspace_rational([A[i] for i in sub], k)
        if len(ns) != 1:
            continue
        for sign in (1, -1):
            u0 = tuple(sign * x for x in ns[0])
            if u0 in seen:
                continue
            seen.add(u0)
            pos = sum(1 for a in A if _dot(u0, a) > 0)
            if best is not None and pos >= best[0]:
                continue
            tied = [a for a in A if _dot(u0, a) == 0]
            basis = _complement_basis(u0)
            sub_count, sub_lex = _min_open_side([tuple(_dot(b, a) for b in basis) for a in tied])
            total = pos + sub_count
            if best is None or total < best[0]:
                best = (total, [u0] + [_combo(c, basis) for c in sub_lex])
    return best


def _realise_direction(lex: list, vectors: Sequence[Point]) -> Point:
    """A rational u with sign<u, v> equal to the lexicographic sign for every v."""
    if not lex:
        return tuple(Fraction(0) for _ in range(len(vectors[0])))
    u = lex[-1]
    for w in reversed(lex[:-1]):
        # u <- w + eps * u with eps small enough to keep every strict sign of w
        bound = [abs(_dot(w, v)) / abs(_dot(u, v)) for v in vectors if _dot(w, v) != 0 and _dot(u, v) != 0]
        eps = min(bound) / 2 if bound else Fraction(1)
        u = tuple(a + eps * b for a, b in zip(w, u))
    return u


def tukey_depth(y, X: PointConfig) -> tuple[int, Point | None]:
    """Minimum number of points of X in a closed halfspace containing y, with a
    rational normal u of a minimising halfspace {z : <u, z - y> >= 0}."""
    y = _require_dim(X, y)
    diffs = [_sub(x, y) for x in X.points]
    at_y = sum(1 for v in diffs if not any(v))
    rest = [v for v in diffs if any(v)]
    if not rest:
        return at_y, None
    count, lex = _min_open_side(rest)
    u = _realise_direction(lex, rest)
    if sum(1 for v in rest if _dot(u, v) > 0) != count or any(_dot(u, v) == 0 for v in rest):
        raise TheoremViolation("direction realisation changed the side counts")
    return count + at_y, u


def centerpoint(X: PointConfig, max_cuts: int = CENTERPOINT_MAX_CUTS) -> tuple[Point, dict]:
    """A point whose every closed halfspace holds >= k = ceil(|X|/(d+1)) points of X.

    The depth-k region is the intersection of conv(T) over the sets T of more
    than |X| - k points cut off by an open halfspace. Start at the centroid;
    while the exact depth is short, the minimising halfspace exposes a new T
    and the next candidate is a point of the intersection of the hulls found
    so far. Each round adds a different T, so the loop is finite."""
    check_guard("max_d", X.d, CENTERPOINT_MAX_D)
    check_guard("max_points", len(X), CENTERPOINT_MAX_POINTS)
    if not len(X):
        raise PreconditionError("empty point set")
    n, d = len(X), X.d
    need = -(-n // (d + 1))
    y = tuple(sum(p[k] for p in X.points) / n for k in range(d))
    hulls = [X]
    for _ in range(max_cuts + 1):
        depth, u = tukey_depth(y, X)
        if depth >= need:
            return y, {
                "alpha": f"1/{d + 1}",
                "required": need,
                "depth": depth,
                "cuts": len(hulls) - 1,
                "ok": True,
            }
        T = tuple(x for x in X.points if _dot(u, _sub(x, y)) < 0)
        hulls.append(PointConfig(d, T))
        found = _common_point(hulls)
        if found is None:
            raise TheoremViolation("hulls of the large halfspace subsets do not meet")
        y = found[0]
    raise TheoremViolation(f"no centerpoint found within {max_cuts} cuts")


# ---------------------------------------------------------------- colourful Caratheodory

def _nearest_in_hull(pts: Sequence[Point], a: Point) -> tuple[Fraction, list[Fraction]]:
    """Squared distance from a to conv(pts) and weights of a nearest point.

    The nearest point is the projection of a onto the affine hull of some
    affinely independent subset with non-negative weights; enumerate them."""
    best = None
    m = len(pts)
    for size in range(1, m + 1):
        for sub in itertools.combinations(range(m), size):
            F = [pts[i] for i in sub]
            base = F[0]
            D = [_sub(f, base) for f in F[1:]]
            if D and rank_rational(D) < len(D):
                continue
            # minimise |base + sum c_j D_j - a|^2: Gram system
            if D:
                G = [[_dot(di, dj) for dj in D] for di in D]
                rhs = [_dot(di, _sub(a, base)) for di in D]
                c = solve_rational(G, rhs)
            else:
                c = []
            w0 = 1 - sum(c, Fraction(0))
            if w0 < 0 or any(x < 0 for x in c):
                continue
            weights = [Fraction(0)] * m
            weights[sub[0]] = w0
            for j, x in zip(sub[1:], c):
                weights[j] = x
            p = _combo(weights, pts)
            dist = _dot(_sub(p, a), _sub(p, a))
            if best is None or dist < best[0]:
                best = (dist, weights)
    return best


@dataclass(frozen=True)
class ColorfulResult:
    choice: tuple  # index into each colour class
    weights: tuple
    swaps: int
    method: str

    def to_json(self) -> dict:
        return {"choice": list(self.choice), "weights": _fmt(self.weights), "swaps": self.swaps, "method": self.method}


def colorful_caratheodory(classes: Sequence[PointConfig], a, max_dim: int = COLORFUL_MAX_DIM) -> ColorfulResult:
    """Pick one point per colour class so that a lies in their hull (d + 1 classes)."""
    if not classes:
        raise PreconditionError("need colour classes")
    d = classes[0].d
    check_guard("max_dim", d, max_dim)
    a = _vec(a)
    if len(classes) != d + 1:
        raise PreconditionError(f"need d + 1 = {d + 1} colour classes, got {len(classes)}")
    for i, M in enumerate(classes):
        if M.d != d:
            raise PreconditionError(f"colour class {i} has dimension {M.d}, expected {d}")
        check_guard("max_class_size", len(M), COLORFUL_MAX_CLASS)
        if hull_membership(a, M) is None:
            raise PreconditionError(f"target is not in the hull of colour class {i}")
    choice = [0] * len(classes)
    swaps = 0
    seen = set()
    while True:
        pts = [M.points[c] for M, c in zip(classes, choice)]
        dist, w = _nearest_in_hull(pts, a)
        if dist == 0:
            result = ColorfulResult(tuple(choice), tuple(w), swaps, "local_search")
            break
        seen.add(tuple(choice))
        p = _combo(w, pts)
        normal = _sub(a, p)
        moved = False
        for i, M in enumerate(classes):
            if w[i] != 0:
                continue
            for j, m in enumerate(M.points):
                if _dot(_sub(m, p), normal) > 0:
                    choice[i] = j
                    swaps += 1
                    moved = True
                    break
            if moved:
                break
        if not moved or tuple(choice) in seen:
            result = _colorful_exhaustive(classes, a)
            break
    pts = [M.points[c] for M, c in zip(classes, result.choice)]
    if _combo(result.weights, pts) != a or sum(result.weights) != 1 or min(result.weights) < 0:
        raise TheoremViolation("colourful certificate does not re-verify")
    return result


def _colorful_exhaustive(classes: Sequence[PointConfig], a: Point) -> ColorfulResult:
    for choice in itertools.product(*[range(len(M)) for M in classes]):
        pts = PointConfig(classes[0].d, tuple(M.points[c] for M, c in zip(classes, choice)))
        cert = hull_membership(a, pts)
        if cert is not None:
            w = [Fraction(0)] * len(choice)
            for i, x in zip(cert.indices, cert.weights):
                w[i] = x
            return ColorfulResult(tuple(choice), tuple(w), 0, "exhaustive")
    raise TheoremViolation("no colourful transversal contains the target")


# ---------------------------------------------------------------- Tverberg

@dataclass(frozen=True)
class TverbergPartition:
    parts: tuple
    point: Point
    certificates: tuple
    method: str

    def to_json(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "point": _fmt(self.point),
            "certificates": [c.to_json() for c in self.certificates],
            "method": self.method,
        }


def _finish_partition(S: PointConfig, parts: list[list[int]], method: str) -> TverbergPartition:
    found = _common_point([PointConfig(S.d, tuple(S.points[j] for j in part)) for part in parts])
    if found is None:
        raise TheoremViolation("partition hulls do not share a point")
    point, local = found
    certs = tuple(
        ConvexCertificate(tuple(part[i] for i in c.indices), c.weights).verify(S, point)
        for part, c in zip(parts, local)
    )
    return TverbergPartition(tuple(tuple(p) for p in parts), point, certs, method)


def tverberg_partition(S: PointConfig, r: int) -> TverbergPartition:
    """r parts with a common hull point, via colourful Caratheodory on the
    lifted classes {(x_j, 1) (x) q_i}, q_1..q_r summing to zero in R^(r-1)."""
    if r < 1:
        raise PreconditionError("r must be >= 1")
    N = (r - 1) * (S.d + 1) + 1
    if len(S) < N:
        raise PreconditionError(f"need at least (r-1)(d+1)+1 = {N} points, got {len(S)}")
    if r == 1:
        return _finish_partition(S, [list(range(len(S)))], "trivial")
    q = [tuple(Fraction(int(i == k)) for k in range(r - 1)) for i in range(r - 1)]
    q.append(tuple(Fraction(-1) for _ in range(r - 1)))
    classes = []
    for j in range(N):
        y = S.points[j] + (Fraction(1),)
        classes.append(PointConfig(len(y) * (r - 1), tuple(tuple(yk * qi for yk in y for qi in qv) for qv in q)))
    origin = tuple(Fraction(0) for _ in range(classes[0].d))
    res = colorful_caratheodory(classes, origin, max_dim=COLORFUL_MAX_DIM)
    parts = [[j for j in range(N) if res.choice[j] == i] for i in range(r)]
    if any(not p for p in parts):
        raise TheoremViolation("lifted transversal left a part empty")
    parts[0].extend(range(N, len(S)))
    return _finish_partition(S, parts, "colorful_caratheodory")


def tverberg_brute(S: PointConfig, r: int, limit: int = TVERBERG_BRUTE_LIMIT) -> TverbergPartition | None:
    """Exhaustive scan over assignments (first point fixed to part 0)."""
    n = len(S)
    check_guard("assignments", r ** max(n - 1, 0), limit)
    for rest in itertools.product(range(r), repeat=n - 1):
        labels = (0,) + rest
        parts = [[j for j in range(n) if labels[j] == i] for i in range(r)]
        if any(not p for p in parts):
            continue
        if _common_point([PointConfig(S.d, tuple(S.points[j] for j in p)) for p in parts]) is not None:
            return _finish_partition(S, parts, "brute")
    return None


# ---------------------------------------------------------------- incidences

def _line_key(p: Point, q: Point) -> tuple:
    """Integer (a, b, c) with a x + b y = c, gcd 1 and a sign convention."""
    a = q[1] - p[1]
    b = p[0] - q[0]
    c = a * p[0] + b * p[1]
    den = math.lcm(a.denominator, b.denominator, c.denominator)
    a, b, c = int(a * den), int(b * den), int(c * den)
    g = math.gcd(math.gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return a, b, c


def sylvester_count(X: PointConfig, max_points: int = SYLVESTER_MAX_POINTS) -> dict:
    if X.d != 2:
        raise PreconditionError("sylvester_count needs planar points")
    check_guard("max_points", len(X), max_points)
    pts = sorted(set(X.points))
    if len(pts) != len(X):
        raise PreconditionError("points must be distinct")
    lines = {_line_key(p, q) for p, q in itertools.combinations(pts, 2)}
    collinear = len(lines) <= 1
    if not collinear and len(lines) < len(pts):
        raise TheoremViolation(f"{len(pts)} non-collinear points span only {len(lines)} lines")
    return {"points": len(pts), "lines": len(lines), "collinear": collinear, "bound_checked": not collinear, "ok": True}


@dataclass(frozen=True)
class LineR3:
    base: Point
    direction: Point

    def __post_init__(self):
        if len(self.base) != 3 or len(self.direction) != 3:
            raise PreconditionError("lines live in R^3")
        if not any(self.direction):
            raise PreconditionError("direction must be nonzero")

    @classmethod
    def of(cls, base, direction) -> "LineR3":
        b, v = _vec(base), _vec(direction)
        if len(v) != 3 or not any(v):
            raise PreconditionError("direction must be a nonzero vector in R^3")
        k = next(i for i, x in enumerate(v) if x != 0)
        v = tuple(x / v[k] for x in v)
        t = b[k]
        return cls(tuple(bi - t * vi for bi, vi in zip(b, v)), v)

    @classmethod
    def from_json(cls, obj) -> "LineR3":
        return cls.of(obj["base"], obj["dir"])

    def to_json(self) -> dict:
        return {"base": _fmt(self.base), "dir": _fmt(self.direction)}


def _intersection(L1: LineR3, L2: LineR3) -> Point | None:
    A = [[L1.direction[k], -L2.direction[k]] for k in range(3)]
    if rank_rational(A) < 2:
        return None
    st = solve_rational(A, [L2.base[k] - L1.base[k] for k in range(3)])
    if st is None:
        return None
    return tuple(L1.base[k] + st[0] * L1.direction[k] for k in range(3))


def joints(lines: Sequence[LineR3], max_lines: int = JOINTS_MAX_LINES) -> dict:
    """Points on >= 3 lines whose directions span R^3."""
    check_guard("max_lines", len(lines), max_lines)
    L = sorted(set(lines), key=lambda l: (l.base, l.direction))
    through: dict[Point, set] = {}
    for i, j in itertools.combinations(range(len(L)), 2):
        p = _intersection(L[i], L[j])
        if p is not None:
            through.setdefault(p, set()).update((i, j))
    found = sorted(p for p, idx in through.items() if len(idx) >= 3 and rank_rational([L[i].direction for i in idx]) == 3)
    N = len(L)
    return {
        "lines": N,
        "joints": len(found),
        "N_pow_3_2": N**1.5,
        "ratio": len(found) / N**1.5 if N else 0.0,
        "points": [_fmt(p) for p in found],
    }


def joints_grid(n: int) -> tuple[list[LineR3], int]:
    """Axis-parallel lines through the grid {0..n-1}^3: 3n^2 lines, n^3 joints."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    lines = []
    for axis in range(3):
        e = [0, 0, 0]
        e[axis] = 1
        others = [k for k in range(3) if k != axis]
        for a, b in itertools.product(range(n), repeat=2):
            base = [0, 0, 0]
            base[others[0]], base[others[1]] = a, b
            lines.append(LineR3.of(base, e))
    return lines, n**3


# ---------------------------------------------------------------- distances, orthogonality

def affine_dimension(X: PointConfig) -> int:
    if not len(X):
        return -1
    return rank_rational([_sub(p, X.points[0]) for p in X.points[1:]]) if len(X) > 1 else 0


def two_distance_check(S: PointConfig) -> dict:
    if len(set(S.points)) != len(S):
        raise PreconditionError("points must be distinct")
    dists = sorted({_dot(_sub(p, q), _sub(p, q)) for p, q in itertools.combinations(S.points, 2)})
    n = affine_dimension(S)
    bound = (n + 1) * (n + 4) // 2
    is_two = len(dists) <= 2
    if is_two and len(S) > bound:
        raise TheoremViolation(f"two-distance set of size {len(S)} exceeds {bound} in dimension {n}")
    return {
        "points": len(S),
        "squared_distances": _fmt(dists),
        "is_two_distance": is_two,
        "affine_dimension": n,
        "bound": bound,
        "ok": True,
    }


def two_distance_example(n: int) -> PointConfig:
    """0/1 vectors in R^(n+1) with exactly two ones."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    pts = []
    for i, j in itertools.combinations(range(n + 1), 2):
        v = [0] * (n + 1)
        v[i] = v[j] = 1
        pts.append(v)
    return PointConfig.of(pts)


def _require_unit(X: PointConfig) -> None:
    for p in X.points:
        if _dot(p, p) != 1:
            raise PreconditionError(f"vector {_fmt(p)} is not of unit length")


def nearly_orthogonal_check(X: PointConfig, max_points: int = NEARLY_ORTHOGONAL_MAX) -> dict:
    """Among every three distinct vectors some two are orthogonal; then |X| <= 2d."""
    check_guard("max_points", len(X), max_points)
    _require_unit(X)
    if len(set(X.points)) != len(X):
        raise PreconditionError("vectors must be distinct")
    bad = None
    for trip in itertools.combinations(range(len(X)), 3):
        if all(_dot(X.points[i], X.points[j]) != 0 for i, j in itertools.combinations(trip, 2)):
            bad = list(trip)
            break
    ok = bad is None
    if ok and len(X) > 2 * X.d:
        raise TheoremViolation(f"nearly orthogonal set of size {len(X)} exceeds 2d = {2 * X.d}")
    return {"nearly_orthogonal": ok, "violating_triple": bad, "size": len(X), "bound": 2 * X.d, "ok": True}


def parseval_check(v, Y: PointConfig) -> dict:
    """sum <v, y>^2 <= |v|^2 for an orthonormal family Y."""
    v = _require_dim(Y, v)
    _require_unit(Y)
    for p, q in itertools.combinations(Y.points, 2):
        if _dot(p, q) != 0:
            raise PreconditionError("family is not orthogonal")
    lhs = sum((_dot(v, y) ** 2 for y in Y.points), Fraction(0))
    rhs = _dot(v, v)
    if lhs > rhs:
        raise TheoremViolation("Parseval inequality fails")
    return {"sum_squares": format_rational(lhs), "norm_squared": format_rational(rhs), "ok": True}


# ---------------------------------------------------------------- Johnson-Lindenstrauss

def _gaussian_like(rng: random.Random) -> float:
    return sum(rng.random() for _ in range(12)) - 6.0


def jl_project(points: Sequence[Sequence[float]], k: int, seed: int = 0, identity: bool = False) -> dict:
    """Project with a k x d matrix of approximately normal entries scaled by
    1/sqrt(k) (identity=True keeps the first k coordinates instead)."""
    P = [[float(x) for x in p] for p in points]
    if not P:
        raise PreconditionError("no points")
    d = len(P[0])
    if any(len(p) != d for p in P):
        raise PreconditionError("points must share a dimension")
    if not 1 <= k <= d:
        raise PreconditionError(f"need 1 <= k <= d = {d}")
    if identity:
        R = [[1.0 if i == j else 0.0 for j in range(d)] for i in range(k)]
    else:
        rng = random.Random(seed)
        R = [[_gaussian_like(rng) / math.sqrt(k) for _ in range(d)] for _ in range(k)]
    Q = [[sum(r[j] * p[j] for j in range(d)) for r in R] for p in P]
    ratios = []
    for i, j in itertools.combinations(range(len(P)), 2):
        before = math.dist(P[i], P[j])
        if before > 0:
            ratios.append(math.dist(Q[i], Q[j]) / before)
    return {
        "k": k,
        "d": d,
        "seed": seed,
        "projected": Q,
        "max_distortion": max(ratios, default=1.0),
        "min_distortion": min(ratios, default=1.0),
        "eps_observed": max((abs(r * r - 1) for r in ratios), default=0.0),
    }


def _random_near_identity(n: int, eps: Fraction, rng: random.Random, den: int = 20) -> list[list[Fraction]]:
    A = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        A[i][j] = A[j][i] = eps * Fraction(rng.randint(-den, den), den)
    return A


def _hadamard_power(A, k: int):
    return [[x**k for x in row] for row in A]


def jl_rank_checks(n: int, eps, seed: int = 0, trials: int = 100, k: int = 3) -> dict:
    """JL_1: rank >= n / (1 + (n-1) eps^2) for unit-diagonal symmetric A with
    |a_ij| <= eps. JL_2: rank(A o...o A, k times) <= C(k + rank A - 1, k)."""
    eps = parse_rational(eps)
    if n < 1 or eps < 0:
        raise PreconditionError("need n >= 1 and eps >= 0")
    rng = random.Random(seed)
    jl1_bound = Fraction(n) / (1 + (n - 1) * eps * eps)
    jl1_min_rank = None
    for _ in range(trials):
        A = _random_near_identity(n, eps, rng)
        rank, trace_bound = rank_trace_bound(A)
        if rank < jl1_bound or trace_bound < jl1_bound:
            raise TheoremViolation(f"JL_1 fails: rank {rank} < {jl1_bound}")
        jl1_min_rank = rank if jl1_min_rank is None else min(jl1_min_rank, rank)
    jl2_rows = []
    for _ in range(trials):
        r = rng.randint(1, max(1, min(3, n)))
        V = [[Fraction(rng.randint(-3, 3)) for _ in range(r)] for _ in range(n)]
        A = [[_dot(V[i], V[j]) for j in range(n)] for i in range(n)]
        rA = rank_rational(A)
        rB = rank_rational(_hadamard_power(A, k))
        bound = math.comb(k + rA - 1, k) if rA else 0
        if rB > bound:
            raise TheoremViolation(f"JL_2 fails: rank {rB} > C({k}+{rA}-1, {k})")
        jl2_rows.append((rA, rB, bound))
    return {
        "n": n,
        "eps": format_rational(eps),
        "trials": trials,
        "jl1_bound": format_rational(jl1_bound),
        "jl1_min_rank": jl1_min_rank,
        "jl2_k": k,
        "jl2_max_rank_ratio": max((rB / b for _, rB, b in jl2_rows if b), default=0.0),
        "ok": True,
    }


# ---------------------------------------------------------------- hyperplane covers

def hyperplane_cover_check(H: Sequence[tuple], n: int, max_n: int = HYPERPLANE_MAX_N) -> dict:
    """Hyperplanes {x : <normal, x> = offset} covering {0,1}^n minus the origin
    and missing the origin need at least n members."""
    check_guard("max_n", n, max_n)
    planes = []
    for normal, offset in H:
        a = _vec(normal)
        if len(a) != n or not any(a):
            raise PreconditionError("each hyperplane needs a nonzero normal with n coordinates")
        planes.append((a, parse_rational(offset)))
    through_origin = [i for i, (_, c) in enumerate(planes) if c == 0]
    uncovered = None
    for x in itertools.product((0, 1), repeat=n):
        if any(x) and not any(_dot(a, x) == c for a, c in planes):
            uncovered = list(x)
            break
    valid = not through_origin and uncovered is None
    if valid and len(planes) < n:
        raise TheoremViolation(f"{len(planes)} hyperplanes cover the punctured cube in dimension {n}")
    return {
        "m": len(planes),
        "n": n,
        "valid_cover": valid,
        "through_origin": through_origin,
        "uncovered_point": uncovered,
        "bound_holds": (len(planes) >= n) if valid else None,
        "ok": True,
    }
