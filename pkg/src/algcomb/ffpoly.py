"""Sparse multivariate polynomials over a prime field F_p.

Root counting, the Kakeya checker/search, and a handful of small
number-theoretic identities (power sums, Lucas, Fermat) live here too.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import PreconditionError, TheoremViolation, check_guard
from .exactla import nullspace_fp, require_prime

NEG_INF = float("-inf")
MAX_BRUTE_POINTS = 10**7
KAKEYA_MAX_POINTS = 12
_CHUNK = 1 << 18


class MultiPoly:
    """Polynomial in ``n`` variables over F_p, stored as {exponent tuple: coeff}."""

    __slots__ = ("p", "n", "_terms")

    def __init__(self, p: int, n: int, terms: Mapping[Sequence[int], int] | None = None):
        require_prime(p)
        if n < 0:
            raise PreconditionError("number of variables must be non-negative")
        self.p = p
        self.n = n
        clean: dict[tuple, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise PreconditionError(f"bad exponent vector {e} for n={n}")
            c = (clean.get(e, 0) + int(c)) % p
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean

    # -- constructors
    @classmethod
    def const(cls, p: int, n: int, c: int) -> "MultiPoly":
        return cls(p, n, {(0,) * n: c})

    @classmethod
    def var(cls, p: int, n: int, i: int) -> "MultiPoly":
        e = [0] * n
        e[i] = 1
        return cls(p, n, {tuple(e): 1})

    @classmethod
    def from_json(cls, obj) -> "MultiPoly":
        p, n = int(obj["p"]), int(obj["n"])
        terms: dict[tuple, int] = {}
        for t in obj.get("terms", []):
            e = tuple(t["e"])
            terms[e] = terms.get(e, 0) + int(t["c"])
        return cls(p, n, terms)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "terms": [{"e": list(e), "c": c} for e, c in self.sorted_terms()],
        }

    # -- views
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in graded-lex order, leading term first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> float:
        """Total degree; ``-inf`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=NEG_INF)

    def degree_in(self, i: int) -> float:
        return max((e[i] for e in self._terms), default=NEG_INF)

    def coeff(self, e: Sequence[int]) -> int:
        return self._terms.get(tuple(e), 0)

    def _check(self, other: "MultiPoly") -> None:
        if (self.p, self.n) != (other.p, other.n):
            raise PreconditionError("polynomials over different fields or arities")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly.const(self.p, self.n, other)
        self._check(other)
        return other

    # -- arithmetic
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, 0) + c
        return MultiPoly(self.p, self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.p, self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        t: dict[tuple, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = (t.get(e, 0) + c1 * c2) % self.p
        return MultiPoly(self.p, self.n, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(self.p, self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.p, self.n, self._terms) == (other.p, other.n, other._terms)

    def __hash__(self):
        return hash((self.p, self.n, tuple(self.sorted_terms())))

    def __repr__(self):
        if not self._terms:
            return f"MultiPoly(p={self.p}, 0)"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return f"MultiPoly(p={self.p}, {' + '.join(parts)})"

    def __call__(self, x):
        return poly_eval(self, x)


@dataclass(frozen=True)
class PointSetFq:
    p: int
    n: int
    points: frozenset

    def __post_init__(self):
        require_prime(self.p)
        for pt in self.points:
            if len(pt) != self.n or any(not 0 <= c < self.p for c in pt):
                raise PreconditionError(f"point {pt} not in F_{self.p}^{self.n}")

    @classmethod
    def of(cls, p: int, n: int, points: Iterable[Sequence[int]]) -> "PointSetFq":
        pts = [tuple(int(c) for c in pt) for pt in points]
        if len(set(pts)) != len(pts):
            raise PreconditionError("duplicate points")
        return cls(p, n, frozenset(pts))

    @classmethod
    def from_json(cls, obj) -> "PointSetFq":
        return cls.of(int(obj["p"]), int(obj["n"]), obj["points"])

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "points": [list(x) for x in sorted(self.points)]}

    def __len__(self):
        return len(self.points)


# ---------------------------------------------------------------- evaluation

def poly_eval(f: MultiPoly, x: Sequence[int]) -> int:
    if len(x) != f.n:
        raise PreconditionError(f"point has {len(x)} coordinates, polynomial has {f.n} variables")
    p = f.p
    total = 0
    for e, c in f._terms.items():
        v = c
        for xi, ei in zip(x, e):
            if ei:
                v = v * pow(int(xi), ei, p) % p
        total += v
    return total % p


def all_points(p: int, n: int) -> Iterator[tuple]:
    return itertools.product(range(p), repeat=n)


def _grid_chunks(p: int, n: int) -> Iterator[np.ndarray]:
    """Yield (k, n) int64 arrays covering F_p^n in lexicographic order."""
    total = p**n
    weights = np.array([p ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        yield (idx[:, None] // weights[None, :]) % p


def _eval_block(f: MultiPoly, X: np.ndarray) -> np.ndarray:
    p = f.p
    out = np.zeros(X.shape[0], dtype=np.int64)
    tables: dict[int, np.ndarray] = {}
    for e, c in f._terms.items():
        v = np.full(X.shape[0], c, dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                if k not in tables:
                    tables[k] = np.array([pow(a, k, p) for a in range(p)], dtype=np.int64)
                v = v * tables[k][X[:, i]] % p
        out = (out + v) % p
    return out


def eval_grid(f: MultiPoly, max_points: int = MAX_BRUTE_POINTS) -> np.ndarray:
    """Values of ``f`` on all of F_p^n (lexicographic order)."""
    check_guard("max_points", f.p**f.n, max_points)
    return np.concatenate([_eval_block(f, X) for X in _grid_chunks(f.p, f.n)]) if f.n else np.array(
        [poly_eval(f, ())], dtype=np.int64
    )


def multilinear_reduce(f: MultiPoly) -> MultiPoly:
    """Clamp every exponent to min(e, 1); agrees with f on {0,1}^n."""
    t: dict[tuple, int] = {}
    for e, c in f._terms.items():
        e2 = tuple(min(k, 1) for k in e)
        t[e2] = t.get(e2, 0) + c
    return MultiPoly(f.p, f.n, t)


@dataclass(frozen=True)
class RootCount:
    count: int
    bound: float | None  # deg(f) * p^(n-1); None for the zero polynomial
    zero_function: bool  # f vanishes on all of F_p^n although it may be nonzero


def root_count_report(f: MultiPoly, max_points: int = MAX_BRUTE_POINTS) -> RootCount:
    vals = eval_grid(f, max_points)
    count = int(np.count_nonzero(vals == 0))
    if f.is_zero():
        return RootCount(count, None, True)
    bound = f.degree() * f.p ** (f.n - 1) if f.n else 0
    if count > bound:
        raise TheoremViolation(f"{count} roots exceed deg*p^(n-1) = {bound}")
    return RootCount(count, bound, count == f.p**f.n)


def count_roots_brute(f: MultiPoly, max_points: int = MAX_BRUTE_POINTS) -> int:
    """Number of zeros of f in F_p^n; checks the degree bound for nonzero f."""
    return root_count_report(f, max_points).count


# ---------------------------------------------------------------- monomials

def monomial_count(d: int, n: int) -> int:
    if d < 0 or n < 0:
        raise PreconditionError("d and n must be non-negative")
    return math.comb(d + n, n)


def monomials_upto(d: int, n: int) -> list[tuple]:
    """Exponent vectors of total degree <= d, graded-lex ascending."""
    out = [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) <= d]
    out.sort(key=lambda e: (sum(e), e))
    return out


def vanishing_poly(points: PointSetFq, max_total_degree: int) -> MultiPoly | None:
    """A nonzero polynomial of degree <= D vanishing on every point, or None
    when the evaluation matrix has full column rank."""
    p, n = points.p, points.n
    monos = monomials_upto(max_total_degree, n)
    pts = sorted(points.points)
    rows = [[math.prod(pow(x, k, p) for x, k in zip(pt, e)) % p for e in monos] for pt in pts]
    kernel = nullspace_fp(rows, p, ncols=len(monos))
    if not kernel:
        return None
    f = MultiPoly(p, n, dict(zip(monos, kernel[0])))
    if f.is_zero() or any(poly_eval(f, pt) for pt in pts):
        raise TheoremViolation("kernel vector does not give a vanishing polynomial")
    return f


# ---------------------------------------------------------------- Kakeya

def projective_directions(p: int, n: int) -> list[tuple]:
    """One nonzero direction per line through the origin (first nonzero coord = 1)."""
    return [v for v in all_points(p, n) if any(v) and next(c for c in v if c) == 1]


def line_points(w: Sequence[int], v: Sequence[int], p: int) -> list[tuple]:
    return [tuple((a + lam * b) % p for a, b in zip(w, v)) for lam in range(p)]


def missing_direction(A: PointSetFq) -> tuple | None:
    p, pts = A.p, A.points
    for v in projective_directions(p, A.n):
        if not any(all(q in pts for q in line_points(w, v, p)) for w in pts):
            return v
    return None


def is_kakeya(A: PointSetFq) -> tuple[bool, tuple | None]:
    """(True, None) if A contains a full line in every direction, else
    (False, first missing projective direction)."""
    v = missing_direction(A)
    return v is None, v


def _kakeya_min_search(p: int, n: int, max_points: int) -> tuple[int, frozenset]:
    require_prime(p)
    check_guard("max_points", p**n, max_points)
    universe = list(all_points(p, n))
    dirs = projective_directions(p, n)
    # every line as a bitmask over the universe, grouped by direction
    index = {pt: i for i, pt in enumerate(universe)}
    lines_by_dir = [
        {sum(1 << index[q] for q in line_points(w, v, p)) for w in universe} for v in dirs
    ]
    for size in range(len(universe) + 1):
        for combo in itertools.combinations(range(len(universe)), size):
            mask = sum(1 << i for i in combo)
            if all(any(L & mask == L for L in lines) for lines in lines_by_dir):
                return size, frozenset(universe[i] for i in combo)
    raise TheoremViolation("the whole space is always Kakeya")


def kakeya_min_brute(p: int, n: int, max_points: int = KAKEYA_MAX_POINTS) -> int:
    """Smallest Kakeya set size in F_p^n by exhaustive subset search."""
    size, example = _kakeya_min_search(p, n, max_points)
    if not is_kakeya(PointSetFq(p, n, example))[0]:
        raise TheoremViolation("search returned a non-Kakeya set")
    bound = math.comb(n + p - 1, n)
    if size < bound:
        raise TheoremViolation(f"Kakeya set of size {size} below C(n+p-1, n) = {bound}")
    return size


def kakeya_min_example(p: int, n: int, max_points: int = KAKEYA_MAX_POINTS) -> PointSetFq:
    return PointSetFq(p, n, _kakeya_min_search(p, n, max_points)[1])


# ---------------------------------------------------------------- number theory

def power_sum(p: int, r: int) -> int:
    require_prime(p)
    if r < 1:
        raise PreconditionError("r must be >= 1")
    s = sum(pow(x, r, p) for x in range(p)) % p
    expected = p - 1 if r % (p - 1) == 0 else 0
    if s != expected:
        raise TheoremViolation(f"sum x^{r} over F_{p} is {s}, expected {expected}")
    return s


def chevalley_warning_count(
    polys: Sequence[MultiPoly],
    p: int | None = None,
    n: int | None = None,
    max_points: int = MAX_BRUTE_POINTS,
) -> int:
    """Number of common zeros; asserts divisibility by p when sum of degrees < n."""
    polys = list(polys)
    if polys:
        p = polys[0].p if p is None else p
        n = polys[0].n if n is None else n
    if p is None or n is None:
        raise PreconditionError("p and n are required for an empty system")
    require_prime(p)
    if any((f.p, f.n) != (p, n) for f in polys):
        raise PreconditionError("mismatched moduli or arities")
    check_guard("max_points", p**n, max_points)
    count = 0
    for X in _grid_chunks(p, n) if n else [np.zeros((1, 0), dtype=np.int64)]:
        ok = np.ones(X.shape[0], dtype=bool)
        for f in polys:
            ok &= _eval_block(f, X) == 0
        count += int(ok.sum())
    degsum = sum(max(f.degree(), 0) for f in polys)
    if degsum < n and count % p:
        raise TheoremViolation(f"{count} common zeros, not divisible by {p}")
    return count


def lucas_binom(a: int, b: int, p: int) -> int:
    """C(a, b) mod p as a product of binomials of base-p digits."""
    require_prime(p)
    if a < 0 or b < 0:
        raise PreconditionError("a, b must be non-negative")
    out = 1
    while a or b:
        da, db = a % p, b % p
        if db > da:
            return 0
        out = out * math.comb(da, db) % p
        a //= p
        b //= p
    return out


def fermat_check(a: int, p: int) -> bool:
    require_prime(p)
    ok = pow(a, p, p) == a % p
    if a % p:
        ok = ok and pow(a, p - 1, p) == 1
    return ok


def random_poly(p: int, n: int, max_deg: int, rng: random.Random, nterms: int = 4) -> MultiPoly:
    """Random polynomial of total degree <= max_deg with up to ``nterms`` terms."""
    monos = monomials_upto(max_deg, n)
    t = {}
    for _ in range(nterms):
        t[rng.choice(monos)] = rng.randrange(p)
    return MultiPoly(p, n, t)
