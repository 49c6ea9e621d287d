"""Constrained codes with a minimum inversion distance.

Finite-``n`` tools: a lexicographic greedy code, an all-pairs distance
verifier, the greedy-style and sphere-packing bounds on the largest code
``E(n, k, d)``, and an exact maximum-clique search for small ``n``.
The asymptotic capacity surfaces are closed-form evaluators.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix

from .constraints import ConstraintKind
from .constructions import Code
from .enumeration import count_constrained, enumerate_constrained, upper_bound_A_log
from .errors import DEFAULT_HN_BUDGET_N, BudgetExceeded
from .metrics import (
    ball_size_inversion,
    inversion_distance,
    kendall_tau,
    manhattan_ball_extremes,
    pair_signatures,
    signature_distances,
)
from .perm import Permutation

__all__ = [
    "METRICS",
    "ECCCode",
    "BoundResult",
    "CapacityPoint",
    "greedy_code",
    "verify_min_distance",
    "gv_lower_bound",
    "sphere_packing_bound",
    "gv_manhattan_lower_bound",
    "max_code_size",
    "bounds_table",
    "capacity_two_neighbor",
    "capacity_asym_two_neighbor",
    "capacity_surface_sym",
    "capacity_surface_asym",
    "capacity_table",
]

METRICS = ("inversion", "kendall")
EXACT_MAX_N = 5


@dataclass(frozen=True)
class ECCCode:
    base: Code
    min_distance_claim: int
    metric: str = "inversion"

    def __post_init__(self) -> None:
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.min_distance_claim < 1:
            raise ValueError("minimum distance must be positive")

    def __len__(self) -> int:
        return len(self.base)

    def __iter__(self):
        return iter(self.base)


@dataclass(frozen=True)
class BoundResult:
    value: Fraction
    ball_size: int
    center: tuple[int, ...] | None
    space_size: int


@dataclass(frozen=True)
class CapacityPoint:
    eps1: float
    eps2: float
    value: float


def _distance_fn(metric: str):
    if metric == "inversion":
        return inversion_distance
    if metric == "kendall":
        return kendall_tau
    raise ValueError(f"unknown metric {metric!r}")


def _rows_of(universe) -> np.ndarray:
    if isinstance(universe, Code):
        return universe.array
    if isinstance(universe, np.ndarray):
        return universe
    rows = [tuple(p) for p in universe]
    if not rows:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.array(rows, dtype=np.int64)


def _signatures(rows: np.ndarray, metric: str) -> np.ndarray:
    if metric == "kendall":
        rows = np.argsort(rows, axis=1) + 1
    return pair_signatures(rows)


def greedy_code(universe, d: int, metric: str = "inversion", constraint: ConstraintKind | None = None) -> ECCCode:
    """Scan ``universe`` in order, keeping each word at distance ``>= d`` from all kept ones."""
    _distance_fn(metric)
    if d < 1:
        raise ValueError("d must be positive")
    rows = _rows_of(universe)
    if rows.shape[0] == 0:
        raise ValueError("empty universe")
    n = rows.shape[1]
    if constraint is None and isinstance(universe, Code):
        constraint = universe.constraint
    kept: list[int] = []
    if n * (n - 1) // 2 <= 64:
        sigs = _signatures(rows, metric)
        held = np.empty_like(sigs)
        for i, s in enumerate(sigs):
            cnt = len(kept)
            if cnt == 0 or signature_distances(s, held[:cnt]).min() >= d:
                held[cnt] = s
                kept.append(i)
    else:
        dist = _distance_fn(metric)
        words = [tuple(r) for r in rows.tolist()]
        for i, w in enumerate(words):
            if all(dist(words[j], w) >= d for j in kept):
                kept.append(i)
    base = Code(n, rows[kept], constraint, f"greedy(n={n},d={d},metric={metric})")
    return ECCCode(base, d, metric)


def verify_min_distance(code: ECCCode) -> tuple[bool, tuple[Permutation, Permutation] | None]:
    """Exact all-pairs check; on failure also return a violating pair."""
    rows = code.base.array
    d = code.min_distance_claim
    n = code.base.n
    if rows.shape[0] < 2:
        return True, None
    if n * (n - 1) // 2 <= 64:
        sigs = _signatures(rows, code.metric)
        for i in range(len(sigs) - 1):
            dist = signature_distances(sigs[i], sigs[i + 1 :])
            bad = np.flatnonzero(dist < d)
            if bad.size:
                j = i + 1 + int(bad[0])
                return False, (Permutation._trusted(rows[i].tolist()), Permutation._trusted(rows[j].tolist()))
        return True, None
    dist = _distance_fn(code.metric)
    words = [tuple(r) for r in rows.tolist()]
    for i, a in enumerate(words):
        for b in words[i + 1 :]:
            if dist(a, b) < d:
                return False, (Permutation._trusted(a), Permutation._trusted(b))
    return True, None


def _check_ecc_args(n: int, k: int, d: int) -> None:
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    if d < 1:
        raise ValueError("d must be positive")


def gv_lower_bound(n: int, k: int, d: int, *, kind: str = "two_neighbor", budget: int | None = None) -> Fraction:
    """``|A_{n,k}| / b_I(n, d-1)``: a greedy code is at least this large."""
    _check_ecc_args(n, k, d)
    count = count_constrained(n, ConstraintKind(kind, k), budget=budget)
    return Fraction(count, ball_size_inversion(n, d - 1))


def sphere_packing_bound(n: int, k: int, d: int, *, budget: int | None = None) -> BoundResult:
    """Upper bound ``|A~_{n,k}| / min_x |B_M(A~_{n,k}, x, floor((d-1)/2))|``.

    ``A~_{n,k}`` is the two-neighbor constrained part of ``H_n``; the
    minimising centre is reported.
    """
    _check_ecc_args(n, k, d)
    ext = manhattan_ball_extremes(n, (d - 1) // 2, k=k, budget=budget)
    return BoundResult(Fraction(ext["space_size"], ext["min"]), ext["min"], ext["argmin"], ext["space_size"])


def gv_manhattan_lower_bound(n: int, k: int, d: int, *, budget: int | None = None) -> BoundResult:
    """Lower bound ``|A_{n,k}| / max_x |B_M(A~_{n,k}, x, 2d-1)|``."""
    _check_ecc_args(n, k, d)
    limit = DEFAULT_HN_BUDGET_N if budget is None else budget
    if n > limit:
        raise BudgetExceeded(f"H_n scan: n={n} exceeds budget n<={limit}")
    ext = manhattan_ball_extremes(n, 2 * d - 1, k=k, budget=budget)
    count = count_constrained(n, ConstraintKind("two_neighbor", k))
    return BoundResult(Fraction(count, ext["max"]), ext["max"], ext["argmax"], ext["space_size"])


class _NodeLimit(Exception):
    pass


def _max_clique(adj: list[int], seed: list[int], node_limit: int | None = None) -> list[int]:
    """Branch and bound with greedy colouring bounds over bitset adjacency.

    ``seed`` must be a clique; it is the incumbent to beat. Raises
    ``_NodeLimit`` once more than ``node_limit`` subproblems are opened.
    """
    best = list(seed)
    nodes = 0

    def colour_sort(P: int) -> tuple[list[int], list[int]]:
        order, bounds = [], []
        uncoloured = P
        colour = 0
        while uncoloured:
            colour += 1
            Q = uncoloured
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= ~adj[v] & ~(1 << v)
                uncoloured &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(R: list[int], P: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _NodeLimit
        order, bounds = colour_sort(P)
        for v, b in zip(reversed(order), reversed(bounds)):
            if len(R) + b <= len(best):
                return
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    if adj:
        expand([], (1 << len(adj)) - 1)
    return sorted(best)


def _max_clique_milp(compatible: np.ndarray, radius: int, dist: np.ndarray) -> list[int]:
    """Exact maximum clique as a 0/1 program solved by HiGHS.

    Each pair of incompatible words gets ``x_i + x_j <= 1``; each
    radius-``floor((d-1)/2)`` ball contributes a stronger clique row.
    """
    N = compatible.shape[0]
    rows: set[tuple[int, ...]] = set()
    for v in range(N):
        ball = tuple(int(j) for j in np.flatnonzero(dist[v] <= radius))
        if len(ball) > 1:
            rows.add(ball)
    ii, jj = np.nonzero(np.triu(~compatible, 1))
    rows.update(zip(ii.tolist(), jj.tolist()))
    if not rows:
        return list(range(N))
    r_idx, c_idx = [], []
    for r, members in enumerate(sorted(rows)):
        r_idx.extend([r] * len(members))
        c_idx.extend(members)
    A = csr_matrix((np.ones(len(r_idx)), (r_idx, c_idx)), shape=(len(rows), N))
    res = milp(
        -np.ones(N),
        constraints=LinearConstraint(A, -np.inf, 1),
        integrality=np.ones(N),
        bounds=Bounds(0, 1),
    )
    if res.status != 0:
        raise RuntimeError(f"MILP solver failed: {res.message}")
    return [int(i) for i in np.flatnonzero(res.x > 0.5)]


def max_code_size(
    n: int,
    k: int,
    d: int,
    *,
    kind: str = "two_neighbor",
    metric: str = "inversion",
    max_n: int = EXACT_MAX_N,
    node_limit: int | None = 20_000,
) -> tuple[int, Code]:
    """Exact ``E(n, k, d)`` with one optimal code.

    Runs a colouring branch and bound seeded with the greedy code; if it
    opens more than ``node_limit`` subproblems the same question goes to
    an integer program instead. ``node_limit=None`` never falls back.
    """
    if n > max_n:
        raise BudgetExceeded(f"exact E(n,k,d): n={n} exceeds n<={max_n}")
    _check_ecc_args(n, k, d)
    constraint = ConstraintKind(kind, k)
    rows = np.array(list(enumerate_constrained(n, constraint)), dtype=np.int64)
    sigs = _signatures(rows, metric)
    dist = np.stack([signature_distances(s, sigs) for s in sigs])
    compatible = dist >= d
    np.fill_diagonal(compatible, False)
    # high-degree vertices first; the colouring visits them early
    order = np.argsort(-compatible.sum(axis=1), kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    comp_sorted = compatible[np.ix_(order, order)]
    adj = [sum(1 << int(j) for j in np.flatnonzero(row)) for row in comp_sorted]
    seed: list[int] = []
    for i in range(len(rows)):  # lexicographic greedy, in sorted labels
        v = int(rank[i])
        if all(comp_sorted[v, u] for u in seed):
            seed.append(v)
    try:
        best = [int(order[v]) for v in _max_clique(adj, seed, node_limit)]
    except _NodeLimit:
        best = _max_clique_milp(compatible, (d - 1) // 2, dist)
    best.sort()
    return len(best), Code(n, rows[best], constraint, f"optimal(n={n},k={k},d={d})")


def bounds_table(
    ns: Iterable[int],
    ks=None,
    ds: Iterable[int] = (1, 2, 3),
    *,
    budget: int | None = None,
    hn_budget: int | None = None,
) -> list[dict]:
    """Rows ``n, k, d, log2_upper_A, gv_lower, greedy_size, sphere_packing_upper``."""
    rows = []
    ds = list(ds)
    for n in ns:
        for k in (range(1, n) if ks is None else ks):
            constraint = ConstraintKind("two_neighbor", k)
            universe = Code.from_members(n, enumerate_constrained(n, constraint), constraint)
            for d in ds:
                greedy = greedy_code(universe, d)
                sp = sphere_packing_bound(n, k, d, budget=hn_budget)
                rows.append(
                    {
                        "n": n,
                        "k": k,
                        "d": d,
                        "log2_upper_A": upper_bound_A_log(n, k),
                        "gv_lower": gv_lower_bound(n, k, d, budget=budget),
                        "greedy_size": len(greedy),
                        "sphere_packing_upper": sp.value,
                    }
                )
    return rows


def _check_eps(eps1: float, eps2: float | None = None) -> None:
    if not 0.0 <= eps1 <= 1.0:
        raise ValueError(f"eps1 must lie in [0, 1], got {eps1}")
    if eps2 is not None and not 0.0 <= eps2 <= 2.0:
        raise ValueError(f"eps2 must lie in [0, 2], got {eps2}")


def capacity_two_neighbor(eps: float) -> float:
    """Capacity of the two-neighbor constraint with ``k = ceil(n^eps)``."""
    _check_eps(eps)
    return (1.0 + eps) / 2.0


def capacity_asym_two_neighbor(eps: float) -> float:
    _check_eps(eps)
    return 1.0


def capacity_surface_sym(eps1: float, eps2: float) -> CapacityPoint:
    """Two-neighbor codes with ``k = ceil(n^eps1)`` and minimum distance ``ceil(n^eps2)``."""
    _check_eps(eps1, eps2)
    if eps2 <= 1.0:
        value = 0.5 + eps1 / 2.0
    elif eps2 <= 1.0 + eps1:
        value = 1.5 + eps1 / 2.0 - eps2
    else:
        value = 1.0 - eps2 / 2.0
    return CapacityPoint(eps1, eps2, value)


def capacity_surface_asym(eps1: float, eps2: float) -> CapacityPoint:
    _check_eps(eps1, eps2)
    value = 1.0 if eps2 <= 1.0 else 2.0 - eps2
    return CapacityPoint(eps1, eps2, value)


def capacity_table(eps1_values: Iterable[float], eps2_values: Iterable[float] | None = None) -> list[dict]:
    """Rows ``surface, eps1, eps2, value``.

    Without ``eps2_values`` only the single-constraint capacities are listed
    (``eps2`` left empty); otherwise both distance surfaces on the grid.
    """
    rows = []
    eps1_values = list(eps1_values)
    if eps2_values is None:
        for e in eps1_values:
            rows.append({"surface": "two_neighbor", "eps1": e, "eps2": "", "value": capacity_two_neighbor(e)})
            rows.append({"surface": "asym_two_neighbor", "eps1": e, "eps2": "", "value": capacity_asym_two_neighbor(e)})
        return rows
    eps2_values = list(eps2_values)
    for e1 in eps1_values:
        for e2 in eps2_values:
            rows.append({"surface": "two_neighbor_ecc", "eps1": e1, "eps2": e2, "value": capacity_surface_sym(e1, e2).value})
            rows.append({"surface": "asym_two_neighbor_ecc", "eps1": e1, "eps2": e2, "value": capacity_surface_asym(e1, e2).value})
    return rows
