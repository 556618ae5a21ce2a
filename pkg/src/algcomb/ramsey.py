"""Red/blue colourings of complete graphs and Ramsey checks.

Convention: an (m, n)-Ramsey colouring has no red K_m and no blue K_n.
Bits are stored per pair (i, j), i < j, in row-major order; 1 means blue.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import PreconditionError, TheoremViolation, check_guard
from .exactla import is_prime

RED, BLUE = 0, 1
CLIQUE_SEARCH_LIMIT = 10**7
CONSTRUCT_MAX_N = 2000
SAMPLER_MAX_N = 12


def pair_index(N: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return i * (2 * N - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class TwoColoring:
    N: int
    bits: tuple

    def __post_init__(self):
        if self.N < 0:
            raise PreconditionError("N must be non-negative")
        if len(self.bits) != self.N * (self.N - 1) // 2:
            raise PreconditionError(f"need {self.N * (self.N - 1) // 2} pair colours, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise PreconditionError("colours must be 0 (red) or 1 (blue)")

    @classmethod
    def from_blue_edges(cls, N: int, blue) -> "TwoColoring":
        bits = [RED] * (N * (N - 1) // 2)
        for i, j in blue:
            if i == j or not (0 <= i < N and 0 <= j < N):
                raise PreconditionError(f"bad edge ({i}, {j})")
            bits[pair_index(N, i, j)] = BLUE
        return cls(N, tuple(bits))

    @classmethod
    def from_rule(cls, N: int, blue) -> "TwoColoring":
        return cls(N, tuple(int(bool(blue(i, j))) for i, j in itertools.combinations(range(N), 2)))

    @classmethod
    def from_text(cls, text: str) -> "TwoColoring":
        parts = text.split()
        if len(parts) not in (1, 2):
            raise PreconditionError("expected 'N bitstring'")
        bitstring = parts[1] if len(parts) == 2 else ""
        return cls(int(parts[0]), tuple(int(ch) for ch in bitstring))

    @classmethod
    def from_json(cls, obj) -> "TwoColoring":
        if isinstance(obj, str):
            return cls.from_text(obj)
        if "bits" in obj:
            return cls(int(obj["N"]), tuple(int(ch) for ch in obj["bits"]))
        return cls.from_blue_edges(int(obj["N"]), obj["blue"])

    def to_text(self) -> str:
        return f"{self.N} {''.join(map(str, self.bits))}"

    def to_json(self) -> dict:
        return {"N": self.N, "bits": "".join(map(str, self.bits))}

    def color(self, i: int, j: int) -> int:
        return self.bits[pair_index(self.N, i, j)]

    def swapped(self) -> "TwoColoring":
        return TwoColoring(self.N, tuple(1 - b for b in self.bits))

    def masks(self, colour: int) -> list[int]:
        nb = [0] * self.N
        for (i, j), b in zip(itertools.combinations(range(self.N), 2), self.bits):
            if b == colour:
                nb[i] |= 1 << j
                nb[j] |= 1 << i
        return nb


def find_clique(nb: list[int], k: int) -> list[int] | None:
    """A k-clique in the graph given by neighbour bitmasks, or None."""
    if k <= 0:
        return []

    def grow(chosen: list[int], cand: int) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        while cand and len(chosen) + bin(cand).count("1") >= k:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            found = grow(chosen + [v], cand & nb[v])
            if found:
                return found
        return None

    return grow([], (1 << len(nb)) - 1)


@dataclass(frozen=True)
class RamseyCheck:
    ok: bool
    witness: dict | None

    def to_json(self) -> dict:
        return {"ok": self.ok, "witness": self.witness}


def is_ramsey_coloring(c: TwoColoring, m: int, n: int, max_subsets: int = CLIQUE_SEARCH_LIMIT) -> RamseyCheck:
    """No red K_m and no blue K_n; on failure the witness names the clique."""
    if m < 1 or n < 1:
        raise PreconditionError("clique sizes must be >= 1")
    check_guard("max_subsets", math.comb(c.N, min(max(m, n), c.N)), max_subsets)
    for colour, size, name in ((RED, m, "red"), (BLUE, n, "blue")):
        clique = find_clique(c.masks(colour), size) if size <= c.N else None
        if clique is not None:
            return RamseyCheck(False, {"color": name, "clique": clique})
    return RamseyCheck(True, None)


def pentagon_coloring() -> TwoColoring:
    """K_5 with the 5-cycle red and the complementary pentagram blue."""
    return TwoColoring.from_rule(5, lambda i, j: (j - i) % 5 not in (1, 4))


def verify_r33() -> dict:
    k5 = pentagon_coloring()
    k5_ok = is_ramsey_coloring(k5, 3, 3).ok
    # K_6: 2^15 colourings, 20 triangles, vectorised over colourings
    N = 6
    codes = np.arange(1 << 15, dtype=np.int64)
    has_mono = np.zeros(len(codes), dtype=bool)
    for a, b, c in itertools.combinations(range(N), 3):
        x = (codes >> pair_index(N, a, b)) & 1
        y = (codes >> pair_index(N, a, c)) & 1
        z = (codes >> pair_index(N, b, c)) & 1
        has_mono |= (x == y) & (y == z)
    ramsey_count = int((~has_mono).sum())
    report = {
        "k5_witness": k5.to_json(),
        "k5_valid": k5_ok,
        "k6_colourings": len(codes),
        "k6_ramsey_colourings": ramsey_count,
        "k6_all_fail": ramsey_count == 0,
        "R33": 6 if k5_ok and ramsey_count == 0 else None,
    }
    report["ok"] = report["R33"] == 6
    return report


# ---------------------------------------------------------------- constructions

def colex_subsets(ground: int, k: int) -> list[tuple]:
    """k-subsets of {1..ground} in colex order."""
    return sorted(itertools.combinations(range(1, ground + 1), k), key=lambda s: tuple(reversed(s)))


@dataclass(frozen=True)
class Construction:
    kind: str
    params: dict
    coloring: TwoColoring
    clique_bound: int  # no monochromatic K of this size
    vertices: tuple | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "N": self.coloring.N,
            "no_mono_clique_of_size": self.clique_bound,
            "coloring": self.coloring.to_json(),
        }


def construct_naive(n: int, max_N: int = CONSTRUCT_MAX_N) -> Construction:
    """n - 1 red blocks of size n - 1, blue between blocks."""
    if n < 2:
        raise PreconditionError("n must be >= 2")
    N = (n - 1) ** 2
    check_guard("max_N", N, max_N)
    c = TwoColoring.from_rule(N, lambda i, j: i // (n - 1) != j // (n - 1))
    return Construction("naive", {"n": n}, c, n)


def construct_nagy(n: int, max_N: int = CONSTRUCT_MAX_N) -> Construction:
    """3-subsets of [n-1]; blue when the intersection is odd."""
    if n < 4:
        raise PreconditionError("n must be >= 4 so that [n-1] has 3-subsets")
    V = colex_subsets(n - 1, 3)
    check_guard("max_N", len(V), max_N)
    c = TwoColoring.from_rule(len(V), lambda i, j: len(set(V[i]) & set(V[j])) % 2 == 1)
    return Construction("nagy", {"n": n}, c, n, tuple(V))


def construct_frankl_wilson(p: int, n: int, max_N: int = CONSTRUCT_MAX_N) -> Construction:
    """(p^2-1)-subsets of [n]; blue when |X & Y| is not -1 mod p."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    k = p * p - 1
    if n < k:
        raise PreconditionError(f"n must be >= p^2 - 1 = {k}")
    check_guard("max_N", math.comb(n, k), max_N)
    V = colex_subsets(n, k)
    c = TwoColoring.from_rule(len(V), lambda i, j: len(set(V[i]) & set(V[j])) % p != p - 1)
    return Construction("frankl_wilson", {"p": p, "n": n}, c, math.comb(n, p - 1) + 1, tuple(V))


def construct(kind: str, **params) -> Construction:
    builders = {"naive": construct_naive, "nagy": construct_nagy, "frankl_wilson": construct_frankl_wilson}
    if kind not in builders:
        raise PreconditionError(f"unknown construction {kind!r}; choose from {sorted(builders)}")
    return builders[kind](**params)


def check_construction(con: Construction, max_subsets: int = CLIQUE_SEARCH_LIMIT) -> dict:
    k = con.clique_bound
    res = is_ramsey_coloring(con.coloring, k, k, max_subsets=max_subsets)
    if not res.ok:
        raise TheoremViolation(f"{con.kind} construction has a monochromatic K_{k}: {res.witness}")
    return {**con.to_json(), "ok": True}


# ---------------------------------------------------------------- bounds

def probabilistic_bound(n: int) -> tuple[int, Fraction]:
    """N = floor(2^(n/2)) and 1 - 2 C(N, n) 2^(-C(n, 2))."""
    N = math.isqrt(1 << n)
    return N, 1 - Fraction(2 * math.comb(N, n), 1 << math.comb(n, 2))


def probabilistic_lower_sample(n: int, trials: int = 1000, seed: int = 0, max_n: int = SAMPLER_MAX_N) -> dict:
    """Fraction of uniformly random colourings of K_N that are (n, n)-Ramsey."""
    if n < 2:
        raise PreconditionError("n must be >= 2")
    check_guard("max_n", n, max_n)
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    N, bound = probabilistic_bound(n)
    rng = random.Random(seed)
    npairs = N * (N - 1) // 2
    good = 0
    for _ in range(trials):
        word = rng.getrandbits(npairs) if npairs else 0
        c = TwoColoring(N, tuple((word >> i) & 1 for i in range(npairs)))
        good += is_ramsey_coloring(c, n, n, max_subsets=math.inf).ok
    frac = Fraction(good, trials)
    return {
        "n": n,
        "N": N,
        "trials": trials,
        "seed": seed,
        "ramsey_count": good,
        "fraction": str(frac),
        "fraction_float": float(frac),
        "analytic_bound": str(bound),
        "analytic_bound_float": float(bound),
    }


@lru_cache(maxsize=None)
def _recurrence(m: int, n: int) -> int:
    if m == 1 or n == 1:
        return 1
    if m == 2:
        return n
    if n == 2:
        return m
    return _recurrence(m, n - 1) + _recurrence(m - 1, n)


def ramsey_recurrence_bound(m: int, n: int) -> int:
    """Upper bound on R(m, n) from R(m, n) <= R(m, n-1) + R(m-1, n)."""
    if m < 1 or n < 1:
        raise PreconditionError("m and n must be >= 1")
    b = _recurrence(m, n)
    if b > 2 ** (m + n):
        raise TheoremViolation(f"recurrence bound {b} exceeds 2^(m+n)")
    return b


# Known values used only as external reference points (m <= n).
KNOWN_RAMSEY = {
    (1, 1): 1, (1, 2): 1, (1, 3): 1, (1, 4): 1, (1, 5): 1, (1, 6): 1,
    (2, 2): 2, (2, 3): 3, (2, 4): 4, (2, 5): 5, (2, 6): 6,
    (3, 3): 6, (3, 4): 9, (3, 5): 14, (3, 6): 18,
    (4, 4): 18, (4, 5): 25,
}
