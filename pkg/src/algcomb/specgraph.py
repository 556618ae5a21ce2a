"""Graphs, their spectra, and the spectral and counting arguments built on them.

Vertices are 0..n-1. Edge lists may contain loops and parallel edges; most
spectral operations require a simple graph and say so.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError, TheoremViolation, check_guard
from .exactla import (
    SPECTRUM_TOL,
    SymSpectrum,
    nullspace_rational,
    rank_rational,
    sym_eigenvalues,
)

INDEPENDENCE_MAX_N = 40
MAXCUT_MAX_N = 24
CHROMATIC_MAX_SIZE = 30
CANONICAL_MAX_N = 8
FRIENDSHIP_MAX_N = 7
SENSITIVITY_SCAN_MAX_N = 4
SENSITIVITY_IDENTITY_MAX_N = 10
SENSITIVITY_SAMPLE_MAX_N = 7
CONSISTENT_MAX_T = 5
KNESER_CHECK_MAX_M = 8


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple  # (u, v) with u <= v, in insertion order

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise PreconditionError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")

    @classmethod
    def of(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(int(n), tuple(tuple(sorted((int(e[0]), int(e[1])))) for e in edges))

    @classmethod
    def from_json(cls, obj) -> "Graph":
        return cls.of(obj["n"], obj["edges"])

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Graph":
        """One "u v" pair per line; '#' starts a comment; n defaults to max label + 1."""
        edges = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise PreconditionError(f"bad edge line {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls.of(n, edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_simple(self) -> bool:
        return all(u != v for u, v in self.edges) and len(set(self.edges)) == len(self.edges)

    def require_simple(self) -> None:
        if not self.is_simple:
            raise PreconditionError("graph must be simple (no loops or parallel edges)")

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def regular_degree(self) -> int | None:
        deg = set(self.degrees())
        return deg.pop() if len(deg) == 1 else (0 if self.n == 0 else None)

    def neighbour_masks(self) -> list[int]:
        nb = [0] * self.n
        for u, v in self.edges:
            if u != v:
                nb[u] |= 1 << v
                nb[v] |= 1 << u
        return nb


# ---------------------------------------------------------------- constructions

def complete(n: int) -> Graph:
    return Graph.of(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph.of(n, [])


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs at least 3 vertices")
    return Graph.of(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.of(n, [(i, i + 1) for i in range(n - 1)])


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return Graph.of(k + 1, [(0, i) for i in range(1, k + 1)])


def k4_minus_edge() -> Graph:
    """K_4 without the edge {0, 3}."""
    return Graph.of(4, [e for e in itertools.combinations(range(4), 2) if e != (0, 3)])


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.of(10, outer + inner + spokes)


def kneser_vertices(m: int, r: int) -> list[tuple]:
    return list(itertools.combinations(range(1, m + 1), r))


def kneser(m: int, r: int) -> Graph:
    """r-subsets of [m] (lexicographic order), adjacent when disjoint."""
    if not m >= r >= 1:
        raise PreconditionError("need m >= r >= 1")
    verts = kneser_vertices(m, r)
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(verts)), 2)
        if not set(verts[i]) & set(verts[j])
    ]
    return Graph.of(len(verts), edges)


def windmill(k: int) -> Graph:
    """Hub 0 joined to k triangles {0, 2i+1, 2i+2}."""
    edges = [(0, v) for v in range(1, 2 * k + 1)] + [(2 * i + 1, 2 * i + 2) for i in range(k)]
    return Graph.of(2 * k + 1, edges)


def hypercube(n: int) -> Graph:
    """Q_n on {0,1}^n encoded as integers; edges join words at Hamming distance 1."""
    N = 1 << n
    return Graph.of(N, [(v, v ^ (1 << b)) for v in range(N) for b in range(n) if v < v ^ (1 << b)])


def complement(G: Graph) -> Graph:
    G.require_simple()
    present = set(G.edges)
    return Graph.of(G.n, [e for e in itertools.combinations(range(G.n), 2) if e not in present])


def line_graph(G: Graph) -> Graph:
    G.require_simple()
    E = G.edges
    return Graph.of(len(E), [(i, j) for i, j in itertools.combinations(range(len(E)), 2) if set(E[i]) & set(E[j])])


def induced_subgraph(G: Graph, keep: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(keep)}
    return Graph.of(len(keep), [(index[u], index[v]) for u, v in G.edges if u in index and v in index])


# ---------------------------------------------------------------- matrices

def adjacency(G: Graph) -> list[list[int]]:
    """Adjacency matrix; parallel edges add up, a loop contributes 1 on the diagonal."""
    A = [[0] * G.n for _ in range(G.n)]
    for u, v in G.edges:
        A[u][v] += 1
        if u != v:
            A[v][u] += 1
    return A


def incidence(G: Graph) -> list[list[int]]:
    """V x E matrix with b[v][e] = 1 when v is an endpoint of e."""
    B = [[0] * G.m for _ in range(G.n)]
    for j, (u, v) in enumerate(G.edges):
        B[u][j] = 1
        B[v][j] = 1
    return B


def _matmul(A, B):
    return (np.array(A, dtype=np.int64).reshape(len(A), -1) @ np.array(B, dtype=np.int64).reshape(len(B), -1)).tolist()


def incidence_identities_check(G: Graph) -> dict:
    """B^T B = A_{L(G)} + 2 Id (edge side) and B B^T = A_G + Deg (vertex side)."""
    G.require_simple()
    B = incidence(G)
    Bt = [list(c) for c in zip(*B)] if G.m else []
    AL = adjacency(line_graph(G))
    edge_side = _matmul(Bt, B) if G.m else []
    edge_ok = edge_side == [[AL[i][j] + 2 * (i == j) for j in range(G.m)] for i in range(G.m)]
    A = adjacency(G)
    deg = G.degrees()
    vertex_side = _matmul(B, Bt) if G.m else [[0] * G.n for _ in range(G.n)]
    vertex_ok = vertex_side == [[A[i][j] + deg[i] * (i == j) for j in range(G.n)] for i in range(G.n)]
    d = G.regular_degree()
    return {
        "edge_side_BtB_eq_AL_plus_2I": edge_ok,
        "vertex_side_BBt_eq_A_plus_Deg": vertex_ok,
        "regular_degree": d,
        "ok": edge_ok and vertex_ok,
    }


# ---------------------------------------------------------------- spectra

def spectrum(G: Graph) -> SymSpectrum:
    return sym_eigenvalues(adjacency(G))


def is_bipartite(G: Graph) -> bool:
    colour = [-1] * G.n
    nb = [[] for _ in range(G.n)]
    for u, v in G.edges:
        nb[u].append(v)
        nb[v].append(u)
    for s in range(G.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in nb[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    stack.append(v)
                elif colour[v] == colour[u]:
                    return False
    return True


def spectrum_is_symmetric(spec: SymSpectrum, tol: float = SPECTRUM_TOL) -> bool:
    ev = spec.eigenvalues
    return all(abs(a + b) <= tol for a, b in zip(ev, reversed(ev)))


def kneser_spectrum_formula(m: int, r: int, check: bool = True) -> list[int]:
    """Eigenvalues (-1)^i C(m-r-i, r-i) with multiplicity C(m,i) - C(m,i-1),
    i = 0..r, sorted descending. Cross-checked numerically for m <= 8."""
    if r < 1 or m < 2 * r:
        raise PreconditionError("need r >= 1 and m >= 2r")
    values = []
    for i in range(r + 1):
        mult = math.comb(m, i) - (math.comb(m, i - 1) if i else 0)
        values += [(-1) ** i * math.comb(m - r - i, r - i)] * mult
    values.sort(reverse=True)
    if len(values) != math.comb(m, r):
        raise TheoremViolation("multiplicities do not add up to the vertex count")
    if check and m <= KNESER_CHECK_MAX_M and not spectrum(kneser(m, r)).matches(values):
        raise TheoremViolation(f"formula disagrees with the numeric spectrum of K({m},{r})")
    return values


def complement_spectrum_check(G: Graph, tol: float = SPECTRUM_TOL) -> dict:
    d = G.regular_degree()
    if d is None:
        raise PreconditionError("graph must be regular")
    G.require_simple()
    lam = spectrum(G).eigenvalues
    predicted = sorted([G.n - d - 1] + [-1 - x for x in lam[1:]], reverse=True)
    actual = spectrum(complement(G))
    return {
        "n": G.n,
        "d": d,
        "predicted": [round(x, 9) + 0.0 for x in predicted],
        "actual": [round(x, 9) + 0.0 for x in actual.eigenvalues],
        "ok": actual.matches(predicted, tol),
    }


# ---------------------------------------------------------------- isomorphism

def find_isomorphism(G: Graph, H: Graph) -> list[int] | None:
    """A vertex map phi with uv in G iff phi(u)phi(v) in H (simple graphs), or None."""
    G.require_simple()
    H.require_simple()
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return None
    gn, hn = G.neighbour_masks(), H.neighbour_masks()
    gdeg, hdeg = G.degrees(), H.degrees()
    order = sorted(range(G.n), key=lambda v: -gdeg[v])
    phi = [-1] * G.n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == G.n:
            return True
        u = order[k]
        for w in range(H.n):
            if used >> w & 1 or hdeg[w] != gdeg[u]:
                continue
            if all((gn[u] >> x & 1) == (hn[w] >> phi[x] & 1) for x in order[:k]):
                phi[u] = w
                used |= 1 << w
                if extend(k + 1):
                    return True
                used &= ~(1 << w)
                phi[u] = -1
        return False

    if not extend(0):
        return None
    mapped = {tuple(sorted((phi[u], phi[v]))) for u, v in G.edges}
    if mapped != set(H.edges):
        raise TheoremViolation("isomorphism search returned an invalid map")
    return phi


def canonical_form(G: Graph) -> tuple:
    """Lexicographically smallest upper-triangle adjacency bitstring over all
    relabellings (simple graphs, n <= 8)."""
    G.require_simple()
    check_guard("max_n", G.n, CANONICAL_MAX_N)
    pairs = list(itertools.combinations(range(G.n), 2))
    E = set(G.edges)
    best = None
    for perm in itertools.permutations(range(G.n)):
        word = tuple(int(tuple(sorted((perm[a], perm[b]))) in E) for a, b in pairs)
        if best is None or word < best:
            best = word
    return (G.n, best)


# ---------------------------------------------------------------- independence, Hoffman

def independence_brute(G: Graph, max_n: int = INDEPENDENCE_MAX_N) -> int:
    """Exact independence number by branch and bound on bitmasks."""
    check_guard("max_n", G.n, max_n)
    nb = G.neighbour_masks()
    loops = 0
    for u, v in G.edges:
        if u == v:
            loops |= 1 << u
    best = 0

    def grow(size: int, cand: int) -> None:
        nonlocal best
        if cand == 0:
            best = max(best, size)
            return
        if size + bin(cand).count("1") <= best:
            return
        v = (cand & -cand).bit_length() - 1
        grow(size + 1, cand & ~nb[v] & ~(1 << v))
        grow(size, cand & ~(1 << v))

    grow(0, ((1 << G.n) - 1) & ~loops)
    return best


def hoffman_bound(G: Graph) -> float:
    """n (-lambda_min) / (d - lambda_min) for a d-regular graph."""
    d = G.regular_degree()
    if d is None:
        raise PreconditionError("Hoffman bound needs a regular graph")
    if d == 0:
        raise PreconditionError("Hoffman bound is undefined for an edgeless graph")
    lam = spectrum(G).min
    return G.n * (-lam) / (d - lam)


def hoffman_report(G: Graph) -> dict:
    bound = hoffman_bound(G)
    alpha = independence_brute(G)
    if alpha > bound + 1e-9:
        raise TheoremViolation(f"alpha = {alpha} exceeds Hoffman bound {bound}")
    return {"alpha": alpha, "hoffman_bound": bound, "ok": True}


def ekr_via_kneser(m: int, r: int, numeric_max_vertices: int = 252) -> Fraction:
    """Hoffman bound of K(m, r) from the exact spectrum formula; equals C(m-1, r-1)."""
    if r < 1 or m < 2 * r:
        raise PreconditionError("need r >= 1 and m >= 2r")
    n = math.comb(m, r)
    d = math.comb(m - r, r)
    lam = min((-1) ** i * math.comb(m - r - i, r - i) for i in range(r + 1))
    bound = Fraction(n * -lam, d - lam)
    if bound != math.comb(m - 1, r - 1):
        raise TheoremViolation(f"Hoffman bound {bound} differs from C({m - 1},{r - 1})")
    if n <= numeric_max_vertices:
        numeric = hoffman_bound(kneser(m, r))
        if abs(numeric - float(bound)) > 1e-6:
            raise TheoremViolation("numeric Hoffman bound disagrees with the exact value")
    return bound


# ---------------------------------------------------------------- max cut

def maxcut_brute(G: Graph, max_n: int = MAXCUT_MAX_N) -> int:
    """Exact max cut over the 2^(n-1) bipartitions (last vertex fixed on side 0)."""
    check_guard("max_n", G.n, max_n)
    if G.n <= 1:
        return 0
    total = 1 << (G.n - 1)
    edges = [(u, v) for u, v in G.edges if u != v]
    best = 0
    chunk = 1 << 20
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cut = np.zeros(masks.shape, dtype=np.int64)
        for u, v in edges:
            cut += ((masks >> u) ^ (masks >> v)) & 1
        best = max(best, int(cut.max()))
    return best


def maxcut_spectral_bound(G: Graph) -> float:
    """|E|/2 - n lambda_min / 4, which is n (d - lambda_min) / 4 for d-regular G."""
    G.require_simple()
    return G.m / 2 - G.n * spectrum(G).min / 4


def maxcut_report(G: Graph) -> dict:
    cut = maxcut_brute(G)
    upper = maxcut_spectral_bound(G)
    lower = G.m / 2
    if not lower <= cut <= upper + 1e-9:
        raise TheoremViolation(f"maxcut {cut} outside [{lower}, {upper}]")
    return {"maxcut": cut, "lower": lower, "upper": upper, "ok": True}


# ---------------------------------------------------------------- Schwenk

def schwenk_obstruction_check() -> dict:
    P = petersen()
    A = adjacency(P)
    spec = spectrum(P)
    dist_to_minus3 = min(abs(x + 3) for x in spec.eigenvalues)
    AI = [[A[i][j] - (i == j) for j in range(10)] for i in range(10)]
    eig1_dim = 10 - rank_rational(AI)
    # any relabelled copy works: the count 5 + 5 > 9 forces a common eigenvector
    perm = [3, 0, 9, 5, 2, 8, 1, 4, 7, 6]
    A2 = [[A[perm[i]][perm[j]] for j in range(10)] for i in range(10)]
    A2I = [[A2[i][j] - (i == j) for j in range(10)] for i in range(10)]
    common = nullspace_rational(AI + A2I, 10)
    ones_orth = all(sum(v) == 0 for v in nullspace_rational(AI, 10))
    v = common[0] if common else None
    third = None
    if v is not None:
        # A3 = J - I - A1 - A2 would give A3 v = -3 v
        Jv = [sum(v)] * 10
        A1v = [sum(A[i][j] * v[j] for j in range(10)) for i in range(10)]
        A2v = [sum(A2[i][j] * v[j] for j in range(10)) for i in range(10)]
        A3v = [Jv[i] - v[i] - A1v[i] - A2v[i] for i in range(10)]
        third = all(A3v[i] == -3 * v[i] for i in range(10))
    report = {
        "min_dist_to_minus3": round(dist_to_minus3, 9),
        "minus3_not_in_spectrum": dist_to_minus3 > SPECTRUM_TOL,
        "eigenvalue1_dimension": eig1_dim,
        "eigenspace_orthogonal_to_ones": ones_orth,
        "dimension_count_excess": 5 + 5 - 9,
        "common_eigenvector_dimension": len(common),
        "forced_minus3_eigenvector": third,
    }
    report["ok"] = (
        report["minus3_not_in_spectrum"]
        and eig1_dim == 5
        and ones_orth
        and len(common) >= 1
        and bool(third)
    )
    return report


# ---------------------------------------------------------------- friendship

def friendship_check(G: Graph) -> bool:
    """Every two distinct vertices have exactly one common neighbour."""
    G.require_simple()
    nb = G.neighbour_masks()
    return all(bin(nb[u] & nb[v]).count("1") == 1 for u, v in itertools.combinations(range(G.n), 2))


def is_windmill(G: Graph) -> bool:
    G.require_simple()
    deg = G.degrees()
    for c in range(G.n):
        if deg[c] != G.n - 1:
            continue
        rest = [e for e in G.edges if c not in e]
        covered = [v for e in rest for v in e]
        if len(covered) == len(set(covered)) == G.n - 1:
            return True
    return G.n == 1


def friendship_brute_scan(nmax: int, max_n: int = FRIENDSHIP_MAX_N) -> dict:
    """Test every labelled simple graph on 1..nmax vertices (vectorised over
    graphs) and confirm each friendship graph is a windmill."""
    check_guard("max_n", nmax, max_n)
    per_n = {}
    non_windmills = []
    scanned = 0
    for n in range(1, nmax + 1):
        pairs = list(itertools.combinations(range(n), 2))
        idx = {p: i for i, p in enumerate(pairs)}
        codes = np.arange(1 << len(pairs), dtype=np.int64)
        scanned += len(codes)
        bit = {p: ((codes >> i) & 1).astype(bool) for p, i in idx.items()}
        ok = np.ones(len(codes), dtype=bool)
        for u, v in pairs:
            common = np.zeros(len(codes), dtype=np.int8)
            for w in range(n):
                if w in (u, v):
                    continue
                common += bit[tuple(sorted((u, w)))] & bit[tuple(sorted((v, w)))]
            ok &= common == 1
        found = np.flatnonzero(ok)
        windmills = 0
        for code in found:
            G = Graph.of(n, [p for p, i in idx.items() if code >> i & 1])
            if not friendship_check(G):
                raise TheoremViolation("vectorised scan disagrees with the literal check")
            if is_windmill(G):
                windmills += 1
            else:
                non_windmills.append(G.to_json())
        per_n[str(n)] = {"friendship_graphs": int(len(found)), "windmills": windmills}
    if non_windmills:
        raise TheoremViolation(f"friendship graph that is not a windmill: {non_windmills[0]}")
    return {"nmax": nmax, "labelled_graphs": scanned, "by_n": per_n, "all_windmills": True}


# ---------------------------------------------------------------- chromatic

def _normalise(n: int, edges) -> tuple[int, tuple] | None:
    """Drop parallel edges; None signals a loop (no stable colouring)."""
    es = set()
    for u, v in edges:
        if u == v:
            return None
        es.add((u, v) if u < v else (v, u))
    return n, tuple(sorted(es))


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _falling(n: int) -> list[int]:
    poly = [1]
    for k in range(n):
        poly = _poly_mul(poly, [-k, 1])
    return poly


def _relabel(n: int, edges) -> tuple[int, tuple]:
    """Sort vertices by (degree, neighbour degrees) to merge equal subproblems."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    pos = {v: i for i, v in enumerate(order)}
    return n, tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in edges))


@lru_cache(maxsize=None)
def _chromatic(n: int, edges: tuple) -> tuple:
    if not edges:
        return tuple([0] * n + [1])
    if len(edges) == n * (n - 1) // 2:
        return tuple(_falling(n))
    # isolated vertices factor out as powers of x
    touched = {v for e in edges for v in e}
    if len(touched) < n:
        k = len(touched)
        index = {v: i for i, v in enumerate(sorted(touched))}
        sub = _chromatic(*_relabel(k, [(index[u], index[v]) for u, v in edges]))
        return tuple([0] * (n - k) + list(sub))
    u, v = edges[-1]
    deleted = _normalise(n, edges[:-1])
    merged = []
    for a, b in edges[:-1]:
        a = u if a == v else a
        b = u if b == v else b
        a = a - 1 if a > v else a
        b = b - 1 if b > v else b
        merged.append((a, b))
    contracted = _normalise(n - 1, merged)
    pd = list(_chromatic(*_relabel(*deleted)))
    pc = list(_chromatic(*_relabel(*contracted))) if contracted else [0]
    return tuple(_poly_sub(pd, pc))


def chromatic_polynomial(G: Graph, max_size: int = CHROMATIC_MAX_SIZE) -> list[int]:
    """Integer coefficients, constant term first, by memoised deletion-contraction."""
    check_guard("max_size", G.n + G.m, max_size)
    norm = _normalise(G.n, G.edges)
    if norm is None:
        return [0]
    return list(_chromatic(*_relabel(*norm)))


def poly_value(coeffs: Sequence[int], x: int) -> int:
    return sum(c * x**i for i, c in enumerate(coeffs))


def chromatic_number(G: Graph) -> int:
    if any(u == v for u, v in G.edges):
        raise PreconditionError("a graph with a loop has no stable colouring")
    P = chromatic_polynomial(G)
    for k in range(G.n + 1):
        if poly_value(P, k) != 0:
            return k
    raise TheoremViolation("chromatic polynomial vanishes at n colours")


def greedy_coloring_bound(G: Graph) -> int:
    """Colours used by first-fit greedy colouring in vertex order (<= Delta + 1)."""
    G.require_simple()
    nb = [[] for _ in range(G.n)]
    for u, v in G.edges:
        nb[u].append(v)
        nb[v].append(u)
    colour = [-1] * G.n
    for v in range(G.n):
        taken = {colour[w] for w in nb[v] if colour[w] >= 0}
        colour[v] = next(c for c in itertools.count() if c not in taken)
    used = max(colour, default=-1) + 1
    if used > G.max_degree() + 1:
        raise TheoremViolation("greedy colouring used more than Delta + 1 colours")
    return used


# ---------------------------------------------------------------- consistent colourings

@dataclass(frozen=True)
class ConsistentColoring:
    N: int
    colors: tuple  # colour of edge (u, v), u < v, in lexicographic pair order

    def __post_init__(self):
        if len(self.colors) != self.N * (self.N - 1) // 2:
            raise PreconditionError("need one colour per edge of K_N")

    def color(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        # index of (u, v) in lexicographic order of pairs
        return self.colors[u * (2 * self.N - u - 1) // 2 + (v - u - 1)]

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))


def consistent_coloring(t: int) -> ConsistentColoring:
    """K_{2^t} on F_2^t with edge vw coloured v - w (XOR)."""
    check_guard("max_t", t, CONSISTENT_MAX_T)
    N = 1 << t
    return ConsistentColoring(N, tuple(u ^ v for u, v in itertools.combinations(range(N), 2)))


def is_consistent(c: ConsistentColoring) -> bool:
    N = c.N
    for v in range(N):
        seen = [c.color(v, w) for w in range(N) if w != v]
        if len(set(seen)) != len(seen):
            return False
    for a, b, x, y in itertools.combinations(range(N), 4):
        cols = [c.color(a, b), c.color(x, y), c.color(a, x), c.color(b, y), c.color(a, y), c.color(b, x)]
        if len(set(cols)) == 6:
            continue
        # three colours, each on one of the three perfect matchings
        if not (cols[0] == cols[1] and cols[2] == cols[3] and cols[4] == cols[5] and len(set(cols)) == 3):
            return False
    return True


# ---------------------------------------------------------------- sensitivity

@dataclass(frozen=True)
class SignedAdjacency:
    matrix: tuple

    def __post_init__(self):
        M = self.matrix
        n = len(M)
        for i in range(n):
            if len(M[i]) != n:
                raise PreconditionError("signed adjacency must be square")
            if M[i][i] != 0:
                raise PreconditionError("diagonal must be zero")
            for j in range(n):
                if M[i][j] not in (-1, 0, 1) or M[i][j] != M[j][i]:
                    raise PreconditionError("entries must be symmetric and in {-1, 0, 1}")

    @classmethod
    def of(cls, rows) -> "SignedAdjacency":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def support(self) -> Graph:
        return Graph.of(self.n, [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.matrix[i][j]])


def _signed_hypercube_array(n: int) -> np.ndarray:
    B = np.array([[0, 1], [1, 0]], dtype=np.int64)
    for _ in range(n - 1):
        I = np.eye(B.shape[0], dtype=np.int64)
        B = np.block([[B, I], [I, -B]])
    return B


def signed_hypercube(n: int) -> SignedAdjacency:
    if n < 1:
        raise PreconditionError("n must be >= 1")
    check_guard("max_n", n, SENSITIVITY_IDENTITY_MAX_N)
    return SignedAdjacency.of(_signed_hypercube_array(n).tolist())


def signed_maxdeg_bound(B: SignedAdjacency) -> dict:
    lam = sym_eigenvalues(B.matrix).max if B.n else 0.0
    delta = B.support().max_degree()
    if delta < lam - SPECTRUM_TOL:
        raise TheoremViolation(f"max degree {delta} below top eigenvalue {lam}")
    return {"lambda_max": lam, "max_degree": delta, "ok": True}


def sensitivity_check(n: int, samples: int = 20, seed: int = 0) -> dict:
    """B_n^2 = n Id exactly; exhaustive min over |W| = 2^(n-1)+1 of the induced
    max degree (n <= 4); the spectral mechanism on sampled W (n <= 7); the
    even-weight independent set."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    check_guard("max_n", n, SENSITIVITY_IDENTITY_MAX_N)
    N = 1 << n
    B = _signed_hypercube_array(n)
    Q = hypercube(n)
    support_ok = (np.abs(B) == np.array(adjacency(Q), dtype=np.int64)).all()
    square_ok = bool(((B @ B) == n * np.eye(N, dtype=np.int64)).all())
    nb = Q.neighbour_masks()
    need = math.ceil(math.sqrt(n) - 1e-12)
    size = (N >> 1) + 1
    report = {
        "n": n,
        "Bn_squared_is_nId": square_ok,
        "Bn_support_is_hypercube": bool(support_ok),
        "W_size": size,
        "required_max_degree": need,
    }
    if n <= SENSITIVITY_SCAN_MAX_N:
        best = None
        count = 0
        for W in itertools.combinations(range(N), size):
            mask = sum(1 << v for v in W)
            delta = max(bin(nb[v] & mask).count("1") for v in W)
            best = delta if best is None else min(best, delta)
            count += 1
        report["W_sets_scanned"] = count
        report["min_max_degree"] = best
        scan_ok = best >= need
    else:
        report["W_sets_scanned"] = 0
        report["min_max_degree"] = None
        scan_ok = True
    rng = np.random.default_rng(seed)
    mech_ok = True
    for _ in range(samples if n <= SENSITIVITY_SAMPLE_MAX_N else 0):
        W = sorted(rng.choice(N, size=size, replace=False).tolist())
        D = B[np.ix_(W, W)]
        lam = sym_eigenvalues(D).max
        delta = max(bin(nb[v] & sum(1 << w for w in W)).count("1") for v in W)
        mech_ok &= lam >= math.sqrt(n) - SPECTRUM_TOL and delta >= lam - SPECTRUM_TOL
    even = [v for v in range(N) if bin(v).count("1") % 2 == 0]
    even_mask = sum(1 << v for v in even)
    even_ok = len(even) == N >> 1 and all(nb[v] & even_mask == 0 for v in even)
    report["spectral_mechanism_on_samples"] = bool(mech_ok)
    report["even_weight_independent"] = even_ok
    report["ok"] = bool(square_ok and support_ok and scan_ok and mech_ok and even_ok)
    return report
