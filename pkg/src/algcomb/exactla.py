"""Exact rational / prime-field linear algebra and a Jacobi symmetric eigensolver.

Rank, nullspace and LP feasibility never fall back to floating point.
Floats only appear in :func:`sym_eigenvalues` and the helpers built on it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import PreconditionError, TheoremViolation

SPECTRUM_TOL = 1e-6
JACOBI_OFF_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def parse_rational(x) -> Fraction:
    """Accept ints, Fractions, ``"num/den"`` strings and integral floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise PreconditionError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"not a rational: {x!r}") from exc
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise PreconditionError(f"not an exact rational: {x!r}")


def format_rational(x: Fraction) -> str | int:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise PreconditionError(f"modulus must be prime, got {p!r}")


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise PreconditionError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        ent = tuple(tuple(parse_rational(x) for x in r) for r in rows)
        ncols = len(ent[0]) if ent else 0
        return cls(len(ent), ncols, ent)

    @classmethod
    def from_json(cls, obj) -> "RationalMatrix":
        # integer shorthand: a bare list of rows
        if isinstance(obj, list):
            return cls.from_rows(obj)
        ent = tuple(tuple(parse_rational(x) for x in r) for r in obj["entries"])
        return cls(int(obj["rows"]), int(obj["cols"]), ent)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(format_rational(x)) for x in r] for r in self.entries],
        }

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class FpMatrix:
    p: int
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        require_prime(self.p)
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise PreconditionError("entries do not match the declared shape")
        if any(not 0 <= x < self.p for r in self.entries for x in r):
            raise PreconditionError("FpMatrix entries must lie in [0, p)")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "FpMatrix":
        require_prime(p)
        ent = tuple(tuple(int(x) % p for x in r) for r in rows)
        return cls(p, len(ent), len(ent[0]) if ent else 0, ent)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_rows(M) -> list[list]:
    if isinstance(M, (RationalMatrix, FpMatrix)):
        return M.tolist()
    if isinstance(M, np.ndarray):
        return M.tolist()
    return [list(r) for r in M]


# ---------------------------------------------------------------- rational

def rref_rational(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    A = [[parse_rational(x) for x in r] for r in _as_rows(M)]
    if not A:
        return A, []
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


def rank_rational(M) -> int:
    rows = _as_rows(M)
    if not rows or not rows[0]:
        return 0
    return len(rref_rational(rows)[1])


def nullspace_rational(M, ncols: int | None = None) -> list[list[Fraction]]:
    """Kernel basis over Q; each vector has its first nonzero coordinate equal to 1."""
    rows = _as_rows(M)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref_rational(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fcol]
        lead = next(x for x in v if x != 0)
        basis.append([x / lead for x in v])
    return basis


def solve_rational(A, b) -> list[Fraction] | None:
    """One solution of ``A x = b`` over Q (free variables set to 0), or None."""
    rows = _as_rows(A)
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b_i] for r, b_i in zip(rows, b)]
    R, pivots = rref_rational(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x


def det_rational(M) -> Fraction:
    A = [[parse_rational(x) for x in r] for r in _as_rows(M)]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * bb for a, bb in zip(A[i], A[c])]
    return det


def matmul_exact(A, B) -> list[list]:
    A, B = _as_rows(A), _as_rows(B)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c)) for c in Bt] for r in A]


def transpose(A) -> list[list]:
    return [list(c) for c in zip(*_as_rows(A))]


# ---------------------------------------------------------------- prime field

def rref_fp(M, p: int) -> tuple[list[list[int]], list[int]]:
    require_prime(p)
    A = [[int(x) % p for x in r] for r in _as_rows(M)]
    if not A:
        return A, []
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


def rank_fp(M, p: int) -> int:
    rows = _as_rows(M)
    if not rows or not rows[0]:
        require_prime(p)
        return 0
    return len(rref_fp(rows, p)[1])


def nullspace_fp(M, p: int | None = None, ncols: int | None = None) -> list[list[int]]:
    """Kernel basis of ``M`` over F_p.

    Every returned vector has its first nonzero coordinate equal to 1, so the
    basis is reproducible for a given matrix.
    """
    if isinstance(M, FpMatrix):
        p = M.p if p is None else p
        ncols = M.cols if ncols is None else ncols
    if p is None:
        raise PreconditionError("modulus p is required")
    require_prime(p)
    rows = _as_rows(M)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref_fp(rows, p)
    basis = []
    for fcol in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fcol] % p
        lead = next(x for x in v if x)
        inv = pow(lead, -1, p)
        basis.append([x * inv % p for x in v])
    return basis


def linear_independent(vectors: Sequence[Sequence], field="Q") -> bool:
    """True iff the vectors are linearly independent over Q (``field="Q"``)
    or over F_p (``field=p``)."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return True
    if len({len(v) for v in vectors}) != 1:
        raise PreconditionError("vectors have mixed lengths")
    if field in ("Q", "rational"):
        return rank_rational(vectors) == len(vectors)
    return rank_fp(vectors, int(field)) == len(vectors)


# ---------------------------------------------------------------- eigen

@dataclass(frozen=True)
class SymSpectrum:
    eigenvalues: tuple
    n: int

    def __post_init__(self):
        if len(self.eigenvalues) != self.n:
            raise PreconditionError("spectrum length differs from dimension")
        if any(a < b for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
            raise PreconditionError("eigenvalues must be sorted descending")

    @property
    def max(self) -> float:
        return self.eigenvalues[0]

    @property
    def min(self) -> float:
        return self.eigenvalues[-1]

    def grouped(self, tol: float = SPECTRUM_TOL) -> list[tuple[float, int]]:
        """(value, multiplicity) pairs; values within ``tol`` count as equal."""
        groups: list[list] = []
        for lam in self.eigenvalues:
            if groups and abs(groups[-1][0] - lam) <= tol:
                groups[-1][1] += 1
            else:
                groups.append([lam, 1])
        return [(round(v, 9) + 0.0, m) for v, m in groups]

    def multiplicity(self, value: float, tol: float = SPECTRUM_TOL) -> int:
        return sum(1 for lam in self.eigenvalues if abs(lam - value) <= tol)

    def matches(self, expected: Sequence[float], tol: float = SPECTRUM_TOL) -> bool:
        exp = sorted((float(x) for x in expected), reverse=True)
        return len(exp) == self.n and all(abs(a - b) <= tol for a, b in zip(self.eigenvalues, exp))


def _to_float_matrix(M) -> np.ndarray:
    if isinstance(M, np.ndarray):
        return M.astype(float)
    return np.array([[float(x) for x in r] for r in _as_rows(M)], dtype=float).reshape(
        len(_as_rows(M)), -1
    )


def jacobi_eigh(M, tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations. Returns (eigenvalues, eigenvectors as columns),
    unsorted."""
    A = _to_float_matrix(M).copy()
    n = A.shape[0]
    if A.shape != (n, n):
        raise PreconditionError("matrix must be square")
    scale = max(1.0, float(np.abs(A).max())) if n else 1.0
    if n and float(np.abs(A - A.T).max()) > tol * scale:
        raise PreconditionError("matrix is not symmetric")
    A = (A + A.T) / 2
    V = np.eye(n)
    fro = max(1.0, float(np.linalg.norm(A)))
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(max(0.0, float(np.sum(A * A) - np.sum(np.diag(A) ** 2))))
        if off <= JACOBI_OFF_TOL * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                V[:, p] = c * vp - s * V[:, q]
                V[:, q] = s * vp + c * V[:, q]
    return np.diag(A).copy(), V


def sym_eigenvalues(M, tol: float = 1e-8) -> SymSpectrum:
    """Spectrum of a symmetric matrix, sorted descending."""
    A = _to_float_matrix(M)
    n = A.shape[0] if A.size else len(_as_rows(M))
    if n == 0:
        return SymSpectrum((), 0)
    w, V = jacobi_eigh(A, tol)
    scale = max(1.0, float(np.abs(A).max()))
    resid = np.linalg.norm(A @ V - V * w, axis=0)
    if float(resid.max()) > tol * scale * n:
        raise TheoremViolation(f"Jacobi residual {resid.max():.3g} above tolerance")
    order = np.argsort(-w, kind="stable")
    vals = tuple(float(x) + 0.0 for x in w[order])
    if abs(sum(vals) - float(np.trace(A))) > 1e-9 * n * scale:
        raise TheoremViolation("eigenvalue sum differs from trace")
    return SymSpectrum(vals, n)


def sym_eigh_sorted(M, tol: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
    w, V = jacobi_eigh(M, tol)
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def interlacing_check(A, keep: Sequence[int], tol: float = SPECTRUM_TOL) -> bool:
    """Whether the principal submatrix on ``keep`` interlaces the spectrum of A:
    lambda_j >= mu_j >= lambda_{j+r} with r = n - |keep|."""
    keep = list(keep)
    if not keep:
        raise PreconditionError("keep must be non-empty")
    rows = _as_rows(A)
    n = len(rows)
    if len(set(keep)) != len(keep) or any(not 0 <= k < n for k in keep):
        raise PreconditionError("keep must be distinct valid indices")
    lam = sym_eigenvalues(rows).eigenvalues
    mu = sym_eigenvalues([[rows[i][j] for j in keep] for i in keep]).eigenvalues
    r = n - len(keep)
    return all(lam[j] + tol >= mu[j] >= lam[j + r] - tol for j in range(len(keep)))


def rank_trace_bound(A) -> tuple[int, Fraction]:
    """Exact rank and the lower bound (tr A)^2 / tr(A^2) for symmetric A."""
    rows = [[parse_rational(x) for x in r] for r in _as_rows(A)]
    if any(rows[i][j] != rows[j][i] for i in range(len(rows)) for j in range(len(rows))):
        raise PreconditionError("matrix must be symmetric")
    tr = sum(rows[i][i] for i in range(len(rows)))
    tr2 = sum(x * x for r in rows for x in r)  # tr(A^2) for symmetric A
    if tr2 == 0:
        raise PreconditionError("tr(A^2) = 0: the zero matrix has no rank-trace bound")
    rank = rank_rational(rows)
    bound = tr * tr / tr2
    if rank < bound:
        raise TheoremViolation(f"rank {rank} below trace bound {bound}")
    return rank, bound


def minmax_spot_check(A, samples: int = 200, seed: int = 0, tol: float = SPECTRUM_TOL) -> dict:
    """Sample random j-dimensional subspaces U and check
    min_{x in U} Rayleigh(x) <= lambda_j, with equality on the top-j eigenvector span."""
    M = _to_float_matrix(A)
    n = M.shape[0]
    w, V = sym_eigh_sorted(M)
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(samples):
        j = int(rng.integers(1, n + 1))
        Q, _ = np.linalg.qr(rng.standard_normal((n, j)))
        m_u = float(np.linalg.eigvalsh(Q.T @ M @ Q).min())
        worst = max(worst, m_u - float(w[j - 1]))
    attained = []
    for j in range(1, n + 1):
        U = V[:, :j]
        attained.append(abs(float(np.linalg.eigvalsh(U.T @ M @ U).min()) - float(w[j - 1])))
    ok = worst <= tol and max(attained) <= tol
    return {"ok": ok, "max_excess": worst, "max_gap_at_eigenspan": max(attained)}


# ---------------------------------------------------------------- binomials

def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k > n or k < 0."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def binom_upper_bound(n: int, k: int) -> float:
    """e^k (n/k)^k, checked against the exact binomial for k >= 1."""
    if k < 0 or n < 0:
        raise PreconditionError("n, k must be non-negative")
    if k == 0:
        return 1.0
    bound = math.e ** k * (n / k) ** k
    if k <= n and binomial(n, k) > bound:
        raise TheoremViolation(f"C({n},{k}) exceeds e^k (n/k)^k")
    return bound


# ---------------------------------------------------------------- exact LP

def lp_feasible(A_eq, b_eq) -> list[Fraction] | None:
    """Find x >= 0 with A_eq x = b_eq in exact arithmetic, or None.

    Phase-one simplex with Bland's rule on a Fraction tableau.
    """
    A = [[parse_rational(x) for x in r] for r in _as_rows(A_eq)]
    b = [parse_rational(x) for x in b_eq]
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # tableau columns: n original, m artificial, rhs
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    # objective row: minimise sum of artificials -> reduced costs
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            obj[j] -= T[i][j]
    for i in range(m):
        obj[n + i] += 1
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded: cannot happen for phase one
            raise TheoremViolation("phase-one LP unbounded")
        r = best[1]
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[r])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * c for a, c in zip(obj, T[r])]
        basis[r] = enter
    if -obj[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[i][width]
    return x


def random_symmetric_int(n: int, rng: random.Random, lo: int = -5, hi: int = 5) -> list[list[int]]:
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = rng.randint(lo, hi)
    return M
