"""Kendall tau, inversion and Manhattan distances, and ball sizes.

The inversion distance is the Kendall tau distance between inverses:
it counts the position pairs ``i < j`` whose relative order differs in
the two permutations. Inversion balls in ``S_n`` do not depend on the
centre, so their sizes come from partial sums of the Mahonian numbers.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constraints import satisfies_rows, satisfies_two_neighbor_vector, ConstraintKind
from .errors import DEFAULT_HN_BUDGET_N, BudgetExceeded
from .perm import inverse

__all__ = [
    "BallSpec",
    "count_inversions",
    "kendall_tau",
    "inversion_distance",
    "manhattan",
    "check_sandwich",
    "mahonian",
    "ball_size_inversion",
    "ball_table",
    "fitted_ball_constant",
    "pair_signatures",
    "signature_distances",
    "vector_space_array",
    "ball_members_manhattan",
    "manhattan_ball_extremes",
]


@dataclass(frozen=True)
class BallSpec:
    n: int
    radius: int
    center: tuple[int, ...] | None = None
    space: str = "inversion"  # "inversion", "constrained_manhattan" or "manhattan"
    k: int | None = None

    def __post_init__(self) -> None:
        if self.space not in ("inversion", "constrained_manhattan", "manhattan"):
            raise ValueError(f"unknown space {self.space!r}")
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        limit = self.n * (self.n - 1) // 2 if self.space == "inversion" else self.n * (self.n - 1)
        if self.radius > limit:
            raise ValueError(f"radius {self.radius} exceeds the diameter {limit}")
        if self.space == "constrained_manhattan" and self.k is None:
            raise ValueError("a constrained Manhattan ball needs k")

    def size(self) -> int:
        if self.space == "inversion":
            return ball_size_inversion(self.n, self.radius)
        if self.center is None:
            raise ValueError("Manhattan balls need a centre")
        k = self.k if self.space == "constrained_manhattan" else None
        return ball_members_manhattan(self.center, self.radius, k=k)


def count_inversions(seq: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``seq[i] > seq[j]``, by merge sort."""
    a = list(seq)
    if len(a) < 2:
        return 0
    buf = [0] * len(a)
    total = 0
    width = 1
    n = len(a)
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, out = lo, mid, lo
            while i < mid and j < hi:
                if a[i] <= a[j]:
                    buf[out] = a[i]
                    i += 1
                else:
                    buf[out] = a[j]
                    total += mid - i
                    j += 1
                out += 1
            buf[out : out + mid - i] = a[i:mid]
            out += mid - i
            buf[out : out + hi - j] = a[j:hi]
        a, buf = buf, a
        width *= 2
    return total


def _same_length(x, y) -> None:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")


def kendall_tau(sigma: Sequence[int], pi: Sequence[int]) -> int:
    """Fewest adjacent transpositions turning ``sigma`` into ``pi``."""
    _same_length(sigma, pi)
    where = inverse(sigma)
    return count_inversions([where[v - 1] for v in pi])


def inversion_distance(sigma: Sequence[int], pi: Sequence[int]) -> int:
    _same_length(sigma, pi)
    return kendall_tau(inverse(sigma), inverse(pi))


def manhattan(x: Sequence[int], y: Sequence[int]) -> int:
    _same_length(x, y)
    return sum(abs(a - b) for a, b in zip(x, y))


def check_sandwich(sigma: Sequence[int], pi: Sequence[int]) -> tuple[int, int, bool]:
    """``(d_M, d_I, d_M/2 <= d_I <= d_M)``."""
    dm = manhattan(sigma, pi)
    di = inversion_distance(sigma, pi)
    return dm, di, dm <= 2 * di and di <= dm


@lru_cache(maxsize=None)
def mahonian(n: int) -> tuple[int, ...]:
    """Coefficients of ``prod_{i=1..n} (1 + q + ... + q^(i-1))``.

    Entry ``t`` counts permutations of ``[n]`` with ``t`` inversions.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 1:
        return (1,)
    prev = mahonian(n - 1)
    size = len(prev) + n - 1
    prefix = [0]
    for c in prev:
        prefix.append(prefix[-1] + c)
    # row[t] = sum of prev[t - n + 1 .. t]
    return tuple(
        prefix[min(t, len(prev) - 1) + 1] - prefix[max(0, t - n + 1)] for t in range(size)
    )


def ball_size_inversion(n: int, r: int) -> int:
    """``b_I(n, r)``: permutations within inversion distance ``r`` of any centre."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    row = mahonian(n)
    return sum(row[: min(r, len(row) - 1) + 1])


def ball_table(ns, radii=None) -> list[dict]:
    """Rows ``n, r, b_I, log2_b_I``; ``radii=None`` means every ``0 <= r <= n(n-1)/2``."""
    rows = []
    for n in ns:
        rs = range(n * (n - 1) // 2 + 1) if radii is None else radii
        for r in rs:
            b = ball_size_inversion(n, r)
            rows.append({"n": n, "r": r, "b_I": b, "log2_b_I": math.log2(b)})
    return rows


def fitted_ball_constant(ns, delta: float) -> float:
    """Smallest ``c`` with ``b_I(n, ceil(n^delta)) <= e^(c n)`` over the given ``ns``."""
    worst = 0.0
    for n in ns:
        b = ball_size_inversion(n, math.ceil(n**delta))
        worst = max(worst, math.log(b) / n)
    return worst


def pair_signatures(rows: np.ndarray) -> np.ndarray:
    """One bitmask per row: bit ``(i, j)`` set iff ``row[i] > row[j]`` for ``i < j``.

    The inversion distance between two rows is the popcount of the XOR of
    their signatures. Needs ``n(n-1)/2 <= 64``.
    """
    a = np.asarray(rows)
    n = a.shape[1]
    if n * (n - 1) // 2 > 64:
        raise ValueError(f"signatures need n <= 11, got n={n}")
    sig = np.zeros(a.shape[0], dtype=np.uint64)
    bit = 0
    for i in range(n):
        for j in range(i + 1, n):
            sig |= (a[:, i] > a[:, j]).astype(np.uint64) << np.uint64(bit)
            bit += 1
    return sig


def signature_distances(sig: np.ndarray, others: np.ndarray) -> np.ndarray:
    return np.bitwise_count(np.bitwise_xor(others, sig)).astype(np.int64)


def vector_space_array(n: int, k: int | None = None, *, budget: int | None = None) -> np.ndarray:
    """All of ``H_n`` (or its two-neighbor ``k``-constrained part) as uint8 rows."""
    limit = DEFAULT_HN_BUDGET_N if budget is None else budget
    if n > limit:
        raise BudgetExceeded(f"H_n scan: n={n} exceeds budget n<={limit}")
    total = n**n
    cols = [
        np.repeat(np.tile(np.arange(1, n + 1, dtype=np.uint8), n**j), n ** (n - 1 - j))
        for j in range(n)
    ]
    out = np.stack(cols, axis=1) if total else np.zeros((0, n), dtype=np.uint8)
    if k is not None:
        out = out[satisfies_rows(out, ConstraintKind("two_neighbor", k))]
    return out


def _check_space(x: Sequence[int], k: int | None) -> tuple[int, ...]:
    x = tuple(int(v) for v in x)
    n = len(x)
    if any(not 1 <= v <= n for v in x):
        raise ValueError("centre must lie in H_n")
    if k is not None and not satisfies_two_neighbor_vector(x, k):
        raise ValueError(f"centre violates the two-neighbor {k}-constraint")
    return x


def ball_members_manhattan(
    x: Sequence[int], r: int, *, k: int | None = None, method: str = "dp", budget: int | None = None
) -> int:
    """``|{y in S : d_M(x, y) <= r}|`` with ``S = H_n`` or, given ``k``, its constrained part.

    ``method="dp"`` sweeps positions keeping (last entry, left-gap flag,
    distance so far); ``method="scan"`` tests every vector of ``H_n``.
    """
    x = _check_space(x, k)
    n = len(x)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if method == "scan":
        space = vector_space_array(n, k, budget=budget)
        d = np.abs(space.astype(np.int64) - np.array(x)).sum(axis=1)
        return int(np.count_nonzero(d <= r))
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    r = min(r, n * (n - 1))
    # state: (last value, left gap within k) -> distance histogram
    states: dict[tuple[int, bool], list[int]] = {}
    for v in range(1, n + 1):
        dist = abs(x[0] - v)
        if dist <= r:
            hist = [0] * (r + 1)
            hist[dist] = 1
            states[(v, True)] = hist
    for i in range(1, n):
        nxt: dict[tuple[int, bool], list[int]] = {}
        for (last, flag), hist in states.items():
            for w in range(1, n + 1):
                gap_ok = k is None or abs(w - last) <= k
                if not flag and not gap_ok:
                    continue
                shift = abs(x[i] - w)
                if shift > r:
                    continue
                tgt = nxt.setdefault((w, gap_ok), [0] * (r + 1))
                for t in range(r + 1 - shift):
                    if hist[t]:
                        tgt[t + shift] += hist[t]
        states = nxt
    return sum(sum(h) for h in states.values())


def _canonical_centers(space: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Representatives under reversal and value complement, with orbit sizes.

    Both maps preserve ``H_n``, the two-neighbor constraint and the
    Manhattan distance, so every ball size is constant on an orbit.
    """
    a = space.astype(np.int64)
    weights = (n ** np.arange(n - 1, -1, -1)).astype(np.int64)
    variants = [a, a[:, ::-1], n + 1 - a, (n + 1 - a)[:, ::-1]]
    keys = np.stack([(v - 1) @ weights for v in variants], axis=1)
    canon = keys.min(axis=1)
    reps, counts = np.unique(canon, return_counts=True)
    digits = (reps[:, None] // weights) % n + 1
    return digits.astype(np.uint8), counts


def _profiles(centers: np.ndarray, n: int, k: int | None, R: int) -> np.ndarray:
    """Distance histograms (columns ``0..R``) of every centre against the space."""
    C = centers.shape[0]
    X = centers.astype(np.int64)
    vals = np.arange(1, n + 1)
    f = np.zeros((C, n, 2, R + 1), dtype=np.int64)
    rows = np.arange(C)
    for v in vals:
        s = np.abs(X[:, 0] - v)
        keep = s <= R
        f[rows[keep], v - 1, 1, s[keep]] = 1
    for i in range(1, n):
        g = np.zeros_like(f)
        for w in vals:
            gap_ok = np.ones(n, dtype=bool) if k is None else np.abs(vals - w) <= k
            to_ok = f[:, gap_ok].sum(axis=(1, 2))
            to_bad = f[:, ~gap_ok, 1].sum(axis=1)
            s = np.abs(X[:, i] - w)
            for sv in np.unique(s):
                if sv > R:
                    continue
                sel = s == sv
                g[sel, w - 1, 1, sv:] += to_ok[sel, : R + 1 - sv]
                g[sel, w - 1, 0, sv:] += to_bad[sel, : R + 1 - sv]
        f = g
    return f.sum(axis=(1, 2))


def manhattan_ball_extremes(
    n: int, r: int, *, k: int | None = None, budget: int | None = None, chunk: int = 4096
) -> dict:
    """Smallest and largest Manhattan ball of radius ``r`` over centres in the space.

    Returns ``{"min": size, "argmin": centre, "max": size, "argmax": centre,
    "space_size": |S|}``; ties resolve to the lexicographically first
    canonical centre.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    space = vector_space_array(n, k, budget=budget)
    R = min(r, n * (n - 1))
    reps, _ = _canonical_centers(space, n)
    sizes = np.empty(reps.shape[0], dtype=np.int64)
    for lo in range(0, reps.shape[0], chunk):
        prof = _profiles(reps[lo : lo + chunk], n, k, R)
        sizes[lo : lo + chunk] = prof.sum(axis=1)
    i_min = int(np.argmin(sizes))
    i_max = int(np.argmax(sizes))
    return {
        "min": int(sizes[i_min]),
        "argmin": tuple(int(v) for v in reps[i_min]),
        "max": int(sizes[i_max]),
        "argmax": tuple(int(v) for v in reps[i_max]),
        "space_size": int(space.shape[0]),
    }
