"""Nullstellensatz certificates and witnesses, sumsets, and zero-sum search.

Groups are finite products Z_{n_1} x ... x Z_{n_k}, given by their moduli;
elements are tuples reduced modulo those moduli.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError, TheoremViolation, check_guard
from .exactla import is_prime, require_prime
from .ffpoly import MultiPoly, _eval_block

MAX_GRID_POINTS = 10**6
SUMSET_MAX_P = 11
DAVENPORT_MAX_GROUP = 9
F_CONST_MAX_NODES = 10**6
EGZ_MAX_N = 64
BERGE_SAUER_SCAN_EDGES = 13  # 3^13 ~ 1.6M
KEMNITZ_MAX_SIZE = 20


# ---------------------------------------------------------------- grids

@dataclass(frozen=True)
class GridSets:
    p: int
    sets: tuple

    def __post_init__(self):
        require_prime(self.p)
        for S in self.sets:
            if not S:
                raise PreconditionError("grid sets must be non-empty")
            if len(set(S)) != len(S):
                raise PreconditionError("grid sets must be duplicate-free")
            if any(not 0 <= s < self.p for s in S):
                raise PreconditionError("grid elements must lie in [0, p)")

    @classmethod
    def of(cls, p: int, sets: Iterable[Iterable[int]]) -> "GridSets":
        return cls(p, tuple(tuple(sorted(int(s) % p for s in S)) for S in sets))

    @classmethod
    def from_json(cls, obj) -> "GridSets":
        return cls.of(int(obj["p"]), obj["sets"])

    @property
    def n(self) -> int:
        return len(self.sets)

    def size(self) -> int:
        return prod(len(S) for S in self.sets)

    def divisor(self, i: int) -> MultiPoly:
        """g_i = prod_{s in S_i} (x_i - s)."""
        g = MultiPoly.const(self.p, self.n, 1)
        xi = MultiPoly.var(self.p, self.n, i)
        for s in self.sets[i]:
            g = g * (xi - s)
        return g


@dataclass(frozen=True)
class CnCertificate:
    quotients: tuple  # h_1..h_n
    divisors: tuple  # g_1..g_n

    def to_json(self) -> dict:
        return {
            "quotients": [h.to_json() for h in self.quotients],
            "divisors": [g.to_json() for g in self.divisors],
        }


def _grid_array(S: GridSets) -> np.ndarray:
    if S.n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    cols = np.meshgrid(*[np.array(sorted(s), dtype=np.int64) for s in S.sets], indexing="ij")
    return np.stack([c.ravel() for c in cols], axis=1)


def _check_arity(f: MultiPoly, S: GridSets) -> None:
    if f.p != S.p or f.n != S.n:
        raise PreconditionError("polynomial and grid disagree on p or number of variables")


def grid_nonzero_points(f: MultiPoly, S: GridSets, max_points: int = MAX_GRID_POINTS) -> np.ndarray:
    """Grid points (lexicographic over sorted S_i) where f does not vanish."""
    _check_arity(f, S)
    check_guard("max_points", S.size(), max_points)
    X = _grid_array(S)
    return X[_eval_block(f, X) != 0]


def cn_certificate(f: MultiPoly, S: GridSets, max_points: int = MAX_GRID_POINTS) -> CnCertificate:
    """Write a grid-vanishing f as sum h_i g_i by dividing by g_1, ..., g_n in turn."""
    bad = grid_nonzero_points(f, S, max_points)
    if len(bad):
        raise PreconditionError(f"f does not vanish on the grid: f{tuple(int(c) for c in bad[0])} != 0")
    p, n = f.p, f.n
    gs = [S.divisor(i) for i in range(n)]
    rem = dict(f.terms)
    quots = []
    for i in range(n):
        t = len(S.sets[i])
        # g_i = x_i^t - r_i with deg r_i < t
        tail = {e: -c % p for e, c in gs[i].terms.items() if e[i] < t}
        q: dict[tuple, int] = {}
        while True:
            high = [e for e in rem if e[i] >= t]
            if not high:
                break
            e = max(high, key=lambda e: (e[i], sum(e), e))
            c = rem.pop(e)
            shift = list(e)
            shift[i] -= t
            shift = tuple(shift)
            q[shift] = (q.get(shift, 0) + c) % p
            # x^e = x^shift * g_i + x^shift * r_i
            for te, tc in tail.items():
                ne = tuple(a + b for a, b in zip(shift, te))
                v = (rem.get(ne, 0) + c * tc) % p
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        quots.append(MultiPoly(p, n, q))
    residual = MultiPoly(p, n, rem)
    if len(grid_nonzero_points(residual, S, max_points)):
        raise TheoremViolation("residual does not vanish on the grid")
    if not residual.is_zero():
        raise TheoremViolation("reduced residual vanishes on the grid but is not zero")
    total = MultiPoly(p, n)
    for h, g in zip(quots, gs):
        total = total + h * g
        if not h.is_zero() and h.degree() > f.degree() - g.degree():
            raise TheoremViolation("quotient degree bound violated")
    if total != f:
        raise TheoremViolation("sum h_i g_i differs from f")
    return CnCertificate(tuple(quots), tuple(gs))


def cn_witness(
    f: MultiPoly, S: GridSets, t: Sequence[int], max_points: int = MAX_GRID_POINTS
) -> tuple:
    """First grid point with f != 0, under the second Nullstellensatz hypotheses."""
    _check_arity(f, S)
    t = tuple(int(x) for x in t)
    if len(t) != f.n:
        raise PreconditionError("exponent vector has the wrong length")
    if any(x < 0 for x in t):
        raise PreconditionError("exponents must be non-negative")
    if f.degree() != sum(t):
        raise PreconditionError(f"deg f = {f.degree()} differs from sum t_i = {sum(t)}")
    if any(len(s) <= ti for s, ti in zip(S.sets, t)):
        raise PreconditionError("need |S_i| > t_i for every i")
    if f.coeff(t) == 0:
        raise PreconditionError("coefficient of prod x_i^t_i is zero")
    bad = grid_nonzero_points(f, S, max_points)
    if not len(bad):
        raise TheoremViolation("no grid point with f != 0 despite the hypotheses")
    return tuple(int(c) for c in bad[0])


# ---------------------------------------------------------------- sumsets

def _mask(A: Iterable[int], p: int) -> int:
    m = 0
    for a in A:
        m |= 1 << (int(a) % p)
    return m


def _rot(mask: int, k: int, p: int) -> int:
    full = (1 << p) - 1
    return ((mask << k) | (mask >> (p - k))) & full if k else mask


def _sumset_mask(a: int, b: int, p: int) -> int:
    out = 0
    for x in range(p):
        if a >> x & 1:
            out |= _rot(b, x, p)
    return out


def _restricted_mask(a: int, p: int, b: int | None = None) -> int:
    b = a if b is None else b
    out = 0
    for x in range(p):
        if a >> x & 1:
            for y in range(p):
                if b >> y & 1 and x != y:
                    out |= 1 << ((x + y) % p)
    return out


def sumset(A: Iterable[int], B: Iterable[int] | None, p: int, restricted: bool = False) -> list[int]:
    """A + B in Z_p (B defaults to A); ``restricted`` keeps only sums with a != b."""
    require_prime(p)
    A = list(A)
    B = A if B is None else list(B)
    if not A or not B:
        raise PreconditionError("sumset inputs must be non-empty")
    if restricted:
        m = _restricted_mask(_mask(A, p), p, _mask(B, p))
    else:
        m = _sumset_mask(_mask(A, p), _mask(B, p), p)
    return [x for x in range(p) if m >> x & 1]


def sumset_bound_check(p: int, max_p: int = SUMSET_MAX_P, max_examples: int = 5) -> dict:
    """Exhaustive check of |A+B| >= min(p, |A|+|B|-1) and
    |A^+A| >= min(p, 2|A|-3) over all non-empty A, B in Z_p."""
    require_prime(p)
    check_guard("max_p", p, max_p)
    subsets = range(1, 1 << p)
    size = [bin(x).count("1") for x in range(1 << p)]
    cd_fail, cd_tight, cd_pairs, cd_examples = 0, 0, 0, []
    for a in subsets:
        rots = [_rot(a, x, p) for x in range(p)]
        for b in subsets:
            s = 0
            for x in range(p):
                if b >> x & 1:
                    s |= rots[x]
            cd_pairs += 1
            got, need = size[s], min(p, size[a] + size[b] - 1)
            if got < need:
                cd_fail += 1
            elif got == need:
                cd_tight += 1
                if len(cd_examples) < max_examples:
                    cd_examples.append([_elems(a, p), _elems(b, p)])
    sh_fail, sh_tight, sh_examples = 0, 0, []
    for a in subsets:
        got, need = size[_restricted_mask(a, p)], min(p, 2 * size[a] - 3)
        if got < need:
            sh_fail += 1
        elif got == need:
            sh_tight += 1
            if len(sh_examples) < max_examples:
                sh_examples.append(_elems(a, p))
    report = {
        "p": p,
        "cd_pairs": cd_pairs,
        "cd_failures": cd_fail,
        "cd_tight": cd_tight,
        "cd_tight_examples": cd_examples,
        "sh_sets": (1 << p) - 1,
        "sh_failures": sh_fail,
        "sh_tight": sh_tight,
        "sh_tight_examples": sh_examples,
        "ok": cd_fail == 0 and sh_fail == 0,
    }
    return report


def _elems(mask: int, p: int) -> list[int]:
    return [x for x in range(p) if mask >> x & 1]


# ---------------------------------------------------------------- zero sums

@dataclass(frozen=True)
class ZeroSumInstance:
    moduli: tuple
    elements: tuple

    def __post_init__(self):
        if not self.moduli or any(m < 1 for m in self.moduli):
            raise PreconditionError("moduli must be positive")
        for g in self.elements:
            if len(g) != len(self.moduli) or any(not 0 <= x < m for x, m in zip(g, self.moduli)):
                raise PreconditionError(f"element {g} is not reduced modulo {self.moduli}")

    @classmethod
    def of(cls, moduli: Sequence[int], elements: Iterable) -> "ZeroSumInstance":
        moduli = tuple(int(m) for m in moduli)
        elems = []
        for g in elements:
            g = (g,) if isinstance(g, int) else tuple(g)
            elems.append(tuple(int(x) % m for x, m in zip(g, moduli)) if len(g) == len(moduli) else g)
        return cls(moduli, tuple(elems))

    @classmethod
    def from_json(cls, obj) -> "ZeroSumInstance":
        return cls.of(obj["moduli"], obj["elements"])


class _Group:
    """Z_{n_1} x ... x Z_{n_k} with elements encoded as mixed-radix integers."""

    def __init__(self, moduli: Sequence[int]):
        self.moduli = tuple(int(m) for m in moduli)
        if not self.moduli or any(m < 1 for m in self.moduli):
            raise PreconditionError("moduli must be positive")
        self.order = prod(self.moduli)
        self.elements = list(itertools.product(*[range(m) for m in self.moduli]))
        self.code = {g: i for i, g in enumerate(self.elements)}
        self.add = [
            [self.code[tuple((a + b) % m for a, b, m in zip(g, h, self.moduli))] for h in self.elements]
            for g in self.elements
        ]

    def shift(self, mask: int, x: int) -> int:
        """{s + x : s in mask} as a bitmask."""
        out = 0
        row = self.add[x]
        while mask:
            low = mask & -mask
            out |= 1 << row[low.bit_length() - 1]
            mask ^= low
        return out


def davenport_g(moduli: Sequence[int], max_group: int = DAVENPORT_MAX_GROUP) -> int:
    """Davenport constant by exhaustive search for the longest zero-sum-free
    multiset (extended in non-decreasing element order)."""
    G = _Group(moduli)
    check_guard("max_group", G.order, max_group)
    depth_cap = _olsen_value(G.moduli)
    depth_cap = G.order + 1 if depth_cap is None else depth_cap + 1
    best = 0

    def grow(start: int, sums: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        if length >= depth_cap:
            raise TheoremViolation("zero-sum-free multiset longer than the predicted bound")
        for x in range(max(start, 1), G.order):  # x = 0 is itself a zero sum
            new = sums | G.shift(sums, x) | 1 << x
            if not new & 1:
                grow(x, new, length + 1)

    grow(1, 0, 0)
    g = best + 1
    expected = _olsen_value(G.moduli)
    if expected is not None and g != expected:
        raise TheoremViolation(f"g = {g}, expected {expected}")
    return g


def _olsen_value(moduli: Sequence[int]) -> int | None:
    """k(p-1)+1 for Z_p^k, n for cyclic Z_n; None when no closed form applies here."""
    if len(moduli) == 1:
        return moduli[0]
    p = moduli[0]
    if all(m == p for m in moduli) and is_prime(p):
        return len(moduli) * (p - 1) + 1
    return None


def olsen_lower_bound_example(p: int, k: int) -> list[tuple]:
    """k(p-1) copies of basis vectors: p-1 copies of each e_j."""
    return [tuple(int(i == j) for i in range(k)) for j in range(k) for _ in range(p - 1)]


def is_zero_sum_free(moduli: Sequence[int], elements: Sequence[Sequence[int]]) -> bool:
    G = _Group(moduli)
    sums = 0
    for g in elements:
        x = G.code[tuple(int(a) % m for a, m in zip(g, G.moduli))]
        sums = sums | G.shift(sums, x) | 1 << x
    return not sums & 1


def f_const_brute(moduli: Sequence[int], n: int, max_nodes: int = F_CONST_MAX_NODES) -> int:
    """Smallest s such that every length-s multiset over the group has a
    zero-sum sub-multiset of size exactly n."""
    G = _Group(moduli)
    if n < 1:
        raise PreconditionError("n must be positive")
    cap = G.order * (n - 1) + 1  # beyond this some element repeats n times
    if any(n % m for m in G.moduli):
        raise PreconditionError("n must be a multiple of the exponent of the group, else f is infinite")
    nodes = 0
    best = 0

    def grow(start: int, layers: tuple, length: int) -> None:
        # layers[k] = bitmask of sums of size-k sub-multisets, k = 0..n
        nonlocal best, nodes
        nodes += 1
        check_guard("max_nodes", nodes, max_nodes)
        best = max(best, length)
        if length >= cap:
            raise TheoremViolation("multiset longer than the pigeonhole cap avoids n-zero-sums")
        for x in range(start, G.order):
            new = [layers[0]] + [layers[k] | G.shift(layers[k - 1], x) for k in range(1, n + 1)]
            if not new[n] & 1:
                grow(x, tuple(new), length + 1)

    grow(0, (1,) + (0,) * n, 0)
    return best + 1


def _smallest_prime_factor(n: int) -> int:
    f = 2
    while f * f <= n:
        if n % f == 0:
            return f
        f += 1
    return n


def egz_find(elements: Sequence[int], n: int | None = None) -> list[int]:
    """n indices (0-based, sorted) whose elements sum to 0 mod n, out of 2n-1."""
    elements = [int(x) for x in elements]
    if n is None:
        if len(elements) % 2 == 0:
            raise PreconditionError("need exactly 2n-1 elements")
        n = (len(elements) + 1) // 2
    if n < 1 or len(elements) != 2 * n - 1:
        raise PreconditionError(f"need exactly 2n-1 = {2 * n - 1} elements, got {len(elements)}")
    check_guard("max_n", n, EGZ_MAX_N)
    I = sorted(_egz(elements, n))
    if len(I) != n or sum(elements[i] for i in I) % n:
        raise TheoremViolation("EGZ recursion produced an invalid witness")
    return I


def _egz(a: list[int], n: int) -> list[int]:
    if n == 1:
        return [0]
    m = _smallest_prime_factor(n)
    if m == n:
        for combo in itertools.combinations(range(len(a)), n):
            if sum(a[i] for i in combo) % n == 0:
                return list(combo)
        raise TheoremViolation(f"no zero-sum n-subset for prime n = {n}")
    t = n // m
    pool = list(range(len(a)))
    blocks = []
    for _ in range(2 * t - 1):
        take = pool[: 2 * m - 1]
        sub = _egz([a[i] % m for i in take], m)
        block = [take[j] for j in sub]
        blocks.append(block)
        chosen = set(block)
        pool = [i for i in pool if i not in chosen]
    h = [(sum(a[i] for i in b) // m) % t for b in blocks]
    pick = _egz(h, t)
    return [i for j in pick for i in blocks[j]]


# ---------------------------------------------------------------- Berge-Sauer

def _degree_profile(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def check_berge_sauer_input(n: int, edges: Sequence[tuple[int, int]]) -> None:
    """Require a loopless 4-regular multigraph plus one extra edge."""
    edges = [tuple(e) for e in edges]
    if any(not (0 <= u < n and 0 <= v < n) for u, v in edges):
        raise PreconditionError("edge endpoint out of range")
    if any(u == v for u, v in edges):
        raise PreconditionError("loops are not supported")
    deg = _degree_profile(n, edges)
    fives = [v for v in range(n) if deg[v] == 5]
    if len(fives) != 2 or any(deg[v] not in (4, 5) for v in range(n)):
        raise PreconditionError(
            "need a 4-regular graph plus one edge: exactly two vertices of degree 5, the rest 4"
        )
    if not any({u, v} == set(fives) for u, v in edges):
        raise PreconditionError("the two degree-5 vertices must be joined by the extra edge")


def random_four_regular_plus_edge(n: int, rng: random.Random, max_tries: int = 1000) -> list[tuple[int, int]]:
    """Seeded loopless 4-regular multigraph on n vertices (configuration
    model, loops rejected) plus one extra edge between distinct vertices."""
    if n < 3:
        raise PreconditionError("a loopless 4-regular multigraph needs n >= 3")
    for _ in range(max_tries):
        stubs = [v for v in range(n) for _ in range(4)]
        rng.shuffle(stubs)
        pairs = [tuple(sorted(stubs[i:i + 2])) for i in range(0, len(stubs), 2)]
        if all(u != v for u, v in pairs):
            u, v = sorted(rng.sample(range(n), 2))
            return sorted(pairs) + [(u, v)]
    raise PreconditionError(f"no loopless pairing found in {max_tries} tries")


def berge_sauer_find(n: int, edges: Sequence[tuple[int, int]], scan_max_edges: int = BERGE_SAUER_SCAN_EDGES) -> dict:
    """A non-empty edge set W whose touched vertices all have W-degree 3.

    Small graphs scan all supports of F_3 common zeros of
    f_v = sum_{e at v} x_e^2 (common-zero count checked to be 0 mod 3);
    larger ones run a degree-pruned DFS.
    """
    edges = [tuple(int(x) for x in e) for e in edges]
    check_berge_sauer_input(n, edges)
    if len(edges) <= scan_max_edges:
        W, zeros = _bs_scan(n, edges)
        method = "f3_scan"
    else:
        W, zeros = _bs_dfs(n, edges), None
        method = "dfs"
    if W is None:
        raise TheoremViolation("no 3-regular subgraph found")
    deg = _degree_profile(n, [edges[i] for i in W])
    if not W or any(d not in (0, 3) for d in deg):
        raise TheoremViolation("returned edge set is not 3-regular on its vertices")
    return {
        "edges": W,
        "vertices": [v for v in range(n) if deg[v]],
        "method": method,
        "common_zeros": zeros,
    }


def _bs_scan(n: int, edges: list[tuple[int, int]]):
    # y is a common zero iff every vertex sees a multiple of 3 nonzero y_e;
    # a support W carries 2^|W| such y.
    E = len(edges)
    inc = [0] * n
    for i, (u, v) in enumerate(edges):
        inc[u] |= 1 << i
        inc[v] |= 1 << i
    total, first = 0, None
    for W in range(1 << E):
        if all(bin(W & inc[v]).count("1") % 3 == 0 for v in range(n)):
            total += 1 << bin(W).count("1")
            if first is None and W:
                first = W
    if total % 3:
        raise TheoremViolation(f"{total} common zeros over F_3, not a multiple of 3")
    W = None if first is None else [i for i in range(E) if first >> i & 1]
    return W, total


def _bs_dfs(n: int, edges: list[tuple[int, int]]):
    E = len(edges)
    remaining = _degree_profile(n, edges)
    deg = [0] * n
    chosen: list[int] = []

    def feasible(v: int) -> bool:
        return deg[v] <= 3 and (deg[v] == 0 or deg[v] + remaining[v] >= 3)

    def dfs(i: int):
        if i == E:
            return list(chosen) if chosen and all(d in (0, 3) for d in deg) else None
        u, v = edges[i]
        remaining[u] -= 1
        remaining[v] -= 1
        for take in (True, False):
            if take:
                deg[u] += 1
                deg[v] += 1
                chosen.append(i)
            if feasible(u) and feasible(v):
                r = dfs(i + 1)
                if r is not None:
                    return r
            if take:
                deg[u] -= 1
                deg[v] -= 1
                chosen.pop()
        remaining[u] += 1
        remaining[v] += 1
        return None

    return dfs(0)


# ---------------------------------------------------------------- Kemnitz

def kemnitz_counts(
    J: Sequence[Sequence[int]], x: int, moduli: Sequence[int], max_size: int = KEMNITZ_MAX_SIZE
) -> int:
    """(x|J): number of size-x sub-multisets of J (as index subsets) with zero sum."""
    check_guard("max_size", len(J), max_size)
    return _size_sum_table(J, moduli)[x][0] if 0 <= x <= len(J) else 0


def _size_sum_table(J: Sequence[Sequence[int]], moduli: Sequence[int]) -> list[list[int]]:
    G = _Group(moduli)
    codes = [G.code[tuple(int(a) % m for a, m in zip((g,) if isinstance(g, int) else g, G.moduli))] for g in J]
    table = [[0] * G.order for _ in range(len(J) + 1)]
    table[0][0] = 1
    for used, c in enumerate(codes):
        row = G.add[c]
        for k in range(used + 1, 0, -1):
            prev, cur = table[k - 1], table[k]
            for s in range(G.order):
                if prev[s]:
                    cur[row[s]] += prev[s]
    return table


def kemnitz_congruences(J: Sequence[Sequence[int]], p: int, max_size: int = KEMNITZ_MAX_SIZE) -> list[dict]:
    """Evaluate the six congruence clauses for J in Z_p^2 at its size |J|.

    Each entry says whether the clause applies to |J| and, if so, whether it holds.
    Failures are reported, not raised.
    """
    require_prime(p)
    check_guard("max_size", len(J), max_size)
    t = _size_sum_table(J, (p, p))
    size = len(J)

    def c(x: int) -> int:
        return t[x][0] if 0 <= x <= size else 0

    clauses = [
        ("1", size == 3 * p - 3, 1 - c(p - 1) - c(p) + c(2 * p - 1) + c(2 * p)),
        ("2", size in (3 * p - 2, 3 * p - 1), 1 - c(p) + c(2 * p)),
        ("3", size == 4 * p - 3, 1 - c(p) + c(2 * p) - c(3 * p)),
        ("4", size == 4 * p - 3, c(p - 1) - c(2 * p - 1) + c(3 * p - 1)),
        ("5", size == 4 * p - 3, 3 - 2 * c(p - 1) - 2 * c(p) + c(2 * p - 1) + c(2 * p)),
        ("6", size == 4 * p - 3 and c(p) == 0, c(p - 1) - c(3 * p - 1)),
    ]
    return [
        {"clause": name, "applies": bool(app), "value_mod_p": val % p, "holds": (val % p == 0) if app else None}
        for name, app, val in clauses
    ]
