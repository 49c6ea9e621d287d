"""Neighbour constraints on permutations and on vectors of ``H_n``.

Each predicate has a scalar form working on one sequence and a batched
``*_rows`` form that evaluates every row of a 2-D integer array at once.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

__all__ = [
    "KINDS",
    "ConstraintKind",
    "make_vector",
    "satisfies_single_neighbor",
    "satisfies_two_neighbor",
    "satisfies_asym_two_neighbor",
    "satisfies_two_neighbor_vector",
    "satisfies",
    "satisfies_rows",
]

KINDS = ("single_neighbor", "two_neighbor", "asym_two_neighbor")


@dataclass(frozen=True)
class ConstraintKind:
    kind: str
    k: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown constraint kind {self.kind!r}; expected one of {KINDS}")
        if int(self.k) < 1:
            raise ValueError("k must be at least 1")

    def __call__(self, seq: Sequence[int]) -> bool:
        return satisfies(seq, self)

    def __str__(self) -> str:
        return f"{self.kind}(k={self.k})"


def make_vector(values: Sequence[int]) -> tuple[int, ...]:
    """Validate membership in ``H_n = [n]^n`` and return the vector as a tuple."""
    vals = tuple(int(v) for v in values)
    n = len(vals)
    if n == 0:
        raise ValueError("empty vector")
    for v in vals:
        if not 1 <= v <= n:
            raise ValueError(f"entry {v} outside [1, {n}]")
    return vals


def satisfies_single_neighbor(sigma: Sequence[int], k: int) -> bool:
    return all(abs(a - b) <= k for a, b in zip(sigma, sigma[1:]))


def satisfies_two_neighbor(sigma: Sequence[int], k: int) -> bool:
    s = sigma
    for i in range(1, len(s) - 1):
        if abs(s[i - 1] - s[i]) > k and abs(s[i] - s[i + 1]) > k:
            return False
    return True


def satisfies_asym_two_neighbor(sigma: Sequence[int], k: int) -> bool:
    """At every interior position one neighbour exceeds it by at most ``k``."""
    s = sigma
    for i in range(1, len(s) - 1):
        if s[i - 1] - s[i] > k and s[i + 1] - s[i] > k:
            return False
    return True


def satisfies_two_neighbor_vector(x: Sequence[int], k: int) -> bool:
    # same rule as for permutations; repeated entries are allowed
    return satisfies_two_neighbor(x, k)


_SCALAR = {
    "single_neighbor": satisfies_single_neighbor,
    "two_neighbor": satisfies_two_neighbor,
    "asym_two_neighbor": satisfies_asym_two_neighbor,
}


def satisfies(seq: Sequence[int], constraint: ConstraintKind) -> bool:
    return _SCALAR[constraint.kind](tuple(seq), constraint.k)


def satisfies_rows(rows: np.ndarray, constraint: ConstraintKind) -> np.ndarray:
    """Boolean mask of the rows of ``rows`` (shape ``(N, n)``) meeting ``constraint``."""
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    k = constraint.k
    if a.shape[1] < 2:
        return np.ones(a.shape[0], dtype=bool)
    step = a[:, 1:] - a[:, :-1]  # step[:, j] = s(j+1) - s(j)
    if constraint.kind == "single_neighbor":
        return np.all(np.abs(step) <= k, axis=1)
    if a.shape[1] < 3:
        return np.ones(a.shape[0], dtype=bool)
    if constraint.kind == "two_neighbor":
        ok = np.abs(step) <= k
        return np.all(ok[:, :-1] | ok[:, 1:], axis=1)
    left = -step[:, :-1] <= k  # s(i-1) - s(i) <= k
    right = step[:, 1:] <= k  # s(i+1) - s(i) <= k
    return np.all(left | right, axis=1)
