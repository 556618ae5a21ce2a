"""Set families over [m] as bitmasks: property checkers, the linear-algebra
bounds, and exhaustive extremal search for tiny ground sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .errors import PreconditionError, TheoremViolation, check_guard
from .exactla import FpMatrix, RationalMatrix, require_prime

MAX_GROUND = 64
SEPARATED_MAX_MEMBERS = 16
BRUTE_MAX_GROUND = 5

KIND_TAGS = (
    "oddtown",
    "separated",
    "weakly_separated",
    "lambda_fischer",
    "L_fischer_modp",
    "L_fischer_int",
    "uniform_intersecting",
)


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_to_set(mask: int) -> list[int]:
    """1-indexed element list of a bitmask."""
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def set_to_mask(elems: Iterable[int], m: int) -> int:
    mask = 0
    for e in elems:
        if not 1 <= int(e) <= m:
            raise PreconditionError(f"element {e} outside [1, {m}]")
        mask |= 1 << (int(e) - 1)
    return mask


@dataclass(frozen=True)
class SetFamily:
    ground: int
    masks: tuple

    def __post_init__(self):
        if not 0 <= self.ground <= MAX_GROUND:
            raise PreconditionError(f"ground size must be in [0, {MAX_GROUND}]")
        full = (1 << self.ground) - 1
        if any(mk & ~full or mk < 0 for mk in self.masks):
            raise PreconditionError("a member is not a subset of the ground set")
        if len(set(self.masks)) != len(self.masks):
            raise PreconditionError("family members must be distinct")

    @classmethod
    def from_sets(cls, m: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(m, tuple(set_to_mask(s, m) for s in sets))

    @classmethod
    def from_json(cls, obj) -> "SetFamily":
        return cls.from_sets(int(obj["ground"]), obj["sets"])

    def to_json(self) -> dict:
        return {"ground": self.ground, "sets": self.sets()}

    def sets(self) -> list[list[int]]:
        return [mask_to_set(mk) for mk in self.masks]

    def __len__(self):
        return len(self.masks)


@dataclass(frozen=True)
class FamilyKind:
    tag: str
    lam: int | None = None
    L: tuple = field(default=())
    p: int | None = None
    size: int | None = None  # optional uniform member size

    def __post_init__(self):
        if self.tag not in KIND_TAGS:
            raise PreconditionError(f"unknown family kind {self.tag!r}")
        if self.lam is not None and self.lam < 0:
            raise PreconditionError("lambda must be non-negative")
        if self.tag in ("lambda_fischer", "uniform_intersecting") and self.lam is None:
            raise PreconditionError(f"{self.tag} needs lambda")
        if self.tag in ("L_fischer_modp", "L_fischer_int"):
            if not self.L:
                raise PreconditionError("L must be non-empty")
            if len(set(self.L)) != len(self.L):
                raise PreconditionError("L must not repeat elements")
        if self.tag == "L_fischer_modp":
            if self.p is None:
                raise PreconditionError("L_fischer_modp needs a prime p")
            require_prime(self.p)
            if any(not 0 <= x < self.p for x in self.L):
                raise PreconditionError("elements of L must lie in [0, p)")
        if self.size is not None and self.size < 0:
            raise PreconditionError("size must be non-negative")

    @property
    def member_size(self) -> int | None:
        return self.lam if self.tag == "uniform_intersecting" else self.size

    def describe(self) -> dict:
        d = {"tag": self.tag}
        if self.lam is not None:
            d["lambda"] = self.lam
        if self.L:
            d["L"] = list(self.L)
        if self.p is not None:
            d["p"] = self.p
        if self.size is not None:
            d["size"] = self.size
        return d


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: dict | None = None

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------- predicates

def _member_ok(kind: FamilyKind, a: int) -> str | None:
    """Reason string if a single member violates the kind, else None."""
    size = popcount(a)
    want = kind.member_size
    if want is not None and size != want:
        return f"member has size {size}, expected {want}"
    if kind.tag == "oddtown" and size % 2 == 0:
        return "member has even size"
    if kind.tag == "L_fischer_modp" and size % kind.p in kind.L:
        return "member size mod p lies in L"
    if kind.tag == "uniform_intersecting" and a == 0:
        return "empty member cannot intersect itself"
    if kind.tag == "separated" and a == 0:
        return "empty member makes the family dependent"
    return None


def _pair_ok(kind: FamilyKind, a: int, b: int) -> str | None:
    inter = popcount(a & b)
    t = kind.tag
    if t == "oddtown" and inter % 2:
        return "odd intersection"
    if t == "lambda_fischer" and inter != kind.lam:
        return f"intersection size {inter} != {kind.lam}"
    if t == "L_fischer_modp" and inter % kind.p not in kind.L:
        return f"intersection size {inter} mod {kind.p} not in L"
    if t == "L_fischer_int" and inter not in kind.L:
        return f"intersection size {inter} not in L"
    if t == "uniform_intersecting" and inter == 0:
        return "disjoint members"
    return None


def _subfamily_witness(masks: Sequence[int], weak: bool) -> tuple[list[int], list[int]] | None:
    """First (in mask order of I) pair of disjoint non-empty index sets I, J
    with equal unions (and equal intersections when ``weak``)."""
    k = len(masks)
    for imask in range(1, 1 << k):
        idx = [i for i in range(k) if imask >> i & 1]
        U = 0
        K = -1
        for i in idx:
            U |= masks[i]
            K &= masks[i]
        cand = [
            j
            for j in range(k)
            if not imask >> j & 1 and masks[j] & ~U == 0 and (not weak or K & ~masks[j] == 0)
        ]
        if not cand:
            continue
        UJ, KJ = 0, -1
        for j in cand:
            UJ |= masks[j]
            KJ &= masks[j]
        if UJ != U or (weak and KJ != K):
            continue
        # shrink J to an inclusion-minimal witness
        J = list(cand)
        for j in list(J):
            rest = [x for x in J if x != j]
            if not rest:
                continue
            u, c = 0, -1
            for x in rest:
                u |= masks[x]
                c &= masks[x]
            if u == U and (not weak or c == K):
                J = rest
        return idx, J
    return None


def check_family(
    F: SetFamily, kind: FamilyKind, max_members: int = SEPARATED_MAX_MEMBERS
) -> CheckResult:
    """Decide whether F has the defining property of ``kind``.

    On failure the witness names the first offending member, pair of members
    or pair of subfamilies (sets are reported 1-indexed).
    """
    masks = F.masks
    for i, a in enumerate(masks):
        why = _member_ok(kind, a)
        if why:
            return CheckResult(False, {"type": "member", "index": i, "set": mask_to_set(a), "reason": why})
    if kind.tag in ("separated", "weakly_separated"):
        check_guard("max_members", len(masks), max_members)
        w = _subfamily_witness(masks, kind.tag == "weakly_separated")
        if w is None:
            return CheckResult(True)
        I, J = w
        return CheckResult(
            False,
            {
                "type": "subfamilies",
                "I": [mask_to_set(masks[i]) for i in I],
                "J": [mask_to_set(masks[j]) for j in J],
                "reason": "equal unions" + (" and intersections" if kind.tag == "weakly_separated" else ""),
            },
        )
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            why = _pair_ok(kind, masks[i], masks[j])
            if why:
                return CheckResult(
                    False,
                    {
                        "type": "pair",
                        "indices": [i, j],
                        "sets": [mask_to_set(masks[i]), mask_to_set(masks[j])],
                        "reason": why,
                    },
                )
    return CheckResult(True)


# ---------------------------------------------------------------- bounds

def theorem_bound(kind: FamilyKind, m: int) -> int:
    t = kind.tag
    if t in ("oddtown", "separated"):
        return m
    if t == "weakly_separated":
        return m + 1
    if t == "lambda_fischer":
        if kind.lam == 0:
            raise PreconditionError("no bound for 0-Fischer families (disjoint sets)")
        return m
    s = len(kind.L)
    if t == "L_fischer_int":
        if kind.size is None:
            return sum(comb(m, i) for i in range(s + 1))
        if any(not 0 <= x < kind.size for x in kind.L):
            raise PreconditionError("uniform bound needs every element of L below the member size")
        return comb(m, s)
    if t == "L_fischer_modp":
        if kind.size is None:
            return sum(comb(m, i) for i in range(s + 1))
        lam = kind.size
        if lam % kind.p in kind.L:
            raise PreconditionError("uniform mod-p bound needs size mod p outside L")
        # sizes |I| < |L| with lambda - |I| = 0 mod p cannot be used in the proof
        extra = sum(comb(m, i) for i in range(s) if (i - lam) % kind.p == 0)
        return comb(m, s) + extra
    if t == "uniform_intersecting":
        lam = kind.lam
        if lam < 1 or 2 * lam > m:
            raise PreconditionError("intersecting bound needs 1 <= lambda and 2*lambda <= m")
        return comb(m - 1, lam - 1)
    raise PreconditionError(f"unknown kind {t}")


def incidence_matrix(F: SetFamily, field="Q"):
    """|E| x |F| 0/1 matrix with one column per member."""
    rows = [[(mk >> e) & 1 for mk in F.masks] for e in range(F.ground)]
    if field in ("Q", "rational"):
        return RationalMatrix.from_rows(rows) if F.masks else RationalMatrix(F.ground, 0, tuple(() for _ in rows))
    p = int(field)
    require_prime(p)
    return FpMatrix(p, F.ground, len(F.masks), tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------- brute force

def _candidates(kind: FamilyKind, m: int) -> list[int]:
    return [a for a in range(1 << m) if _member_ok(kind, a) is None]


def _max_clique(cands: list[int], kind: FamilyKind) -> list[int]:
    n = len(cands)
    adj = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and _pair_ok(kind, cands[i], cands[j]) is None:
                adj[i] |= 1 << j
    best: list[int] = []

    def grow(chosen: list[int], allowed: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        while allowed:
            if len(chosen) + popcount(allowed) <= len(best):
                return
            v = (allowed & -allowed).bit_length() - 1
            allowed &= ~(1 << v)
            chosen.append(v)
            grow(chosen, allowed & adj[v])
            chosen.pop()

    grow([], (1 << n) - 1)
    return [cands[i] for i in best]


def _extends_separated(fam: list[int], new: int, weak: bool) -> bool:
    """Whether fam + [new] stays (weakly) separated, given fam already is.

    Any new violation has ``new`` in one of the two subfamilies; by symmetry
    put it in I.
    """
    k = len(fam)
    for sub in range(1 << k):
        U, K = new, new
        for i in range(k):
            if sub >> i & 1:
                U |= fam[i]
                K &= fam[i]
        UJ, KJ, any_j = 0, -1, False
        for j in range(k):
            if not sub >> j & 1 and fam[j] & ~U == 0 and (not weak or K & ~fam[j] == 0):
                UJ |= fam[j]
                KJ &= fam[j]
                any_j = True
        if any_j and UJ == U and (not weak or KJ == K):
            return False
    return True


def _max_hereditary(cands: list[int], weak: bool) -> list[int]:
    best: list[int] = []

    def grow(fam: list[int], start: int) -> None:
        nonlocal best
        if len(fam) > len(best):
            best = list(fam)
        for idx in range(start, len(cands)):
            if len(fam) + len(cands) - idx <= len(best):
                return
            if _extends_separated(fam, cands[idx], weak):
                fam.append(cands[idx])
                grow(fam, idx + 1)
                fam.pop()

    grow([], 0)
    return best


def max_family_brute(
    m: int, kind: FamilyKind, max_ground: int = BRUTE_MAX_GROUND
) -> tuple[int, SetFamily]:
    """Largest family on [m] with the kind's property, by exhaustive
    branch-and-bound. Returns (size, one extremal family)."""
    if m < 0:
        raise PreconditionError("m must be non-negative")
    check_guard("max_ground", m, max_ground)
    cands = _candidates(kind, m)
    if kind.tag in ("separated", "weakly_separated"):
        best = _max_hereditary(cands, kind.tag == "weakly_separated")
    else:
        best = _max_clique(cands, kind)
    fam = SetFamily(m, tuple(best))
    if not check_family(fam, kind):
        raise TheoremViolation("brute-force search returned an invalid family")
    try:
        bound = theorem_bound(kind, m)
    except PreconditionError:
        bound = None
    if bound is not None and len(best) > bound:
        raise TheoremViolation(f"family of size {len(best)} beats the bound {bound}")
    return len(best), fam
