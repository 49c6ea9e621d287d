"""Explicit constrained codes.

``build_Csym``
    two-neighbor k-constrained code for odd ``k`` and ``(k+1) | n``: every
    codeword is ``rho(gamma_1, ..., gamma_ell)`` with ``rho`` in ``D_{ell,k+1}``
    (entries equal in consecutive pairs) and arbitrary block permutations.
``build_Cr`` / ``build_Casym``
    asymmetric two-neighbor 1-constrained code built from ordered set
    partitions interleaved with pairs of a small ``Csym`` codeword.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .constraints import ConstraintKind, satisfies_rows
from .enumeration import permutation_array
from .perm import MultiPermutation, Permutation

__all__ = [
    "Code",
    "OrderedPartition",
    "multiset_permutations",
    "enumerate_D",
    "csym_array",
    "build_Csym",
    "cardinality_Csym",
    "enumerate_set_partitions",
    "stirling2",
    "cr_word",
    "generate_Cr",
    "build_Cr",
    "build_Casym",
    "lower_bound_Casym",
]


def _as_rows(members, n: int) -> np.ndarray:
    if isinstance(members, np.ndarray):
        arr = members
    else:
        members = list(members)
        arr = np.array(members, dtype=np.int64).reshape(len(members), n)
    arr = np.asarray(arr)
    dtype = np.uint8 if n < 256 else np.uint16
    return arr.astype(dtype, copy=False)


def _sorted_unique_rows(arr: np.ndarray) -> np.ndarray:
    n = arr.shape[1]
    bits = max(1, int(arr.max()).bit_length())
    if bits * n > 63:
        return np.unique(arr, axis=0)
    # one integer key per row; numeric order of keys is lexicographic order of rows
    weights = np.left_shift(np.uint64(1), np.arange(n - 1, -1, -1, dtype=np.uint64) * np.uint64(bits))
    keys = (arr.astype(np.uint64) * weights).sum(axis=1)
    _, idx = np.unique(keys, return_index=True)
    return arr[idx]


def _rows_are_bijections(arr: np.ndarray, n: int) -> bool:
    if n > 63:
        return bool(np.array_equal(np.sort(arr, axis=1), np.broadcast_to(np.arange(1, n + 1), arr.shape)))
    seen = np.bitwise_or.reduce(np.left_shift(np.uint64(1), arr.astype(np.uint64) - np.uint64(1)), axis=1)
    return bool(np.all(seen == np.uint64((1 << n) - 1)))


@dataclass(frozen=True, eq=False)
class Code:
    """A set of permutations of one length with its constraint metadata.

    Members are kept as a 2-D integer array, one codeword per row, sorted
    lexicographically with duplicates removed.
    """

    n: int
    array: np.ndarray
    constraint: ConstraintKind | None = None
    label: str = ""
    _index: frozenset = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        arr = _as_rows(self.array, self.n)
        if arr.ndim != 2 or (arr.size and arr.shape[1] != self.n):
            raise ValueError(f"members must all have length {self.n}")
        if arr.shape[0]:
            arr = _sorted_unique_rows(arr)
            if arr.min() < 1 or arr.max() > self.n or not _rows_are_bijections(arr, self.n):
                raise ValueError("every member must be a permutation of [n]")
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @classmethod
    def from_members(cls, n: int, members: Iterable[Sequence[int]], constraint=None, label="") -> "Code":
        return cls(n, _as_rows(list(members), n).reshape(-1, n), constraint, label)

    def __len__(self) -> int:
        return int(self.array.shape[0])

    def __iter__(self) -> Iterator[Permutation]:
        for row in self.array.tolist():
            yield Permutation._trusted(row)

    @property
    def members(self) -> list[Permutation]:
        return list(self)

    def __contains__(self, sigma) -> bool:
        if self._index is None:
            object.__setattr__(self, "_index", frozenset(map(tuple, self.array.tolist())))
        return tuple(sigma) in self._index

    def check_constraint(self, constraint: ConstraintKind | None = None) -> np.ndarray:
        """Boolean mask of members satisfying ``constraint`` (default: the code's own)."""
        c = constraint or self.constraint
        if c is None:
            raise ValueError("no constraint to check against")
        return satisfies_rows(self.array, c)

    def __repr__(self) -> str:
        return f"Code(n={self.n}, size={len(self)}, constraint={self.constraint}, label={self.label!r})"


@dataclass(frozen=True)
class OrderedPartition:
    parts: tuple[frozenset, ...]

    @property
    def r(self) -> int:
        return len(self.parts)

    def ground(self) -> frozenset:
        return frozenset().union(*self.parts)


def multiset_permutations(items: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Distinct arrangements of a multi-set in lexicographic order."""
    a = sorted(items)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])


def enumerate_D(ell: int, m: int) -> Iterator[MultiPermutation]:
    """Members of ``P_{ell,m}`` whose entries agree on positions ``2j-1, 2j``.

    Doubling every entry of a member of ``P_{ell,m/2}`` gives a bijection, so
    the stream is lexicographic and has ``(ell*m/2)! / ((m/2)!)^ell`` items.
    """
    if m % 2:
        raise ValueError(f"m must be even, got {m}")
    if ell < 1 or m < 2:
        raise ValueError("ell must be positive and m at least 2")
    for half in multiset_permutations(i for i in range(1, ell + 1) for _ in range(m // 2)):
        yield MultiPermutation(ell, m, tuple(v for v in half for _ in (0, 1)))


def _csym_params(n: int, k: int) -> int:
    if k < 1 or k % 2 == 0:
        raise ValueError(f"k must be a positive odd integer, got {k}")
    if n < 1 or n % (k + 1):
        raise ValueError(f"k+1={k + 1} does not divide n={n}")
    return n // (k + 1)


def _block_perms(lo: int, m: int) -> np.ndarray:
    return permutation_array(m) + np.uint8(lo - 1)


def csym_array(n: int, k: int) -> np.ndarray:
    """All codewords of ``Csym(n, k)`` as rows, in generation order (not sorted)."""
    ell = _csym_params(n, k)
    m = k + 1
    blocks = [_block_perms((i - 1) * m + 1, m) for i in range(1, ell + 1)]
    # every combination of block permutations, shape (prod m!, ell, m)
    combos = np.stack(
        [b[idx] for b, idx in zip(blocks, np.meshgrid(*[np.arange(len(b)) for b in blocks], indexing="ij"))],
        axis=-2,
    ).reshape(-1, ell, m)
    out = []
    for rho in enumerate_D(ell, m):
        cols = np.empty((combos.shape[0], n), dtype=np.uint8)
        for j, (i, r) in enumerate(rho.occurrence_index):
            cols[:, j] = combos[:, i - 1, r - 1]
        out.append(cols)
    return np.vstack(out)


def build_Csym(n: int, k: int) -> Code:
    """Two-neighbor ``k``-constrained code of size ``(n/2)! (k+1)!^l / ((k+1)/2)!^l``."""
    return Code(n, csym_array(n, k), ConstraintKind("two_neighbor", k), f"Csym(n={n},k={k})")


def cardinality_Csym(n: int, k: int) -> int:
    ell = _csym_params(n, k)
    return math.factorial(n // 2) * math.factorial(k + 1) ** ell // math.factorial((k + 1) // 2) ** ell


def enumerate_set_partitions(ground: Iterable[int], r: int) -> Iterator[OrderedPartition]:
    """Every sequence of ``r`` disjoint nonempty sets covering ``ground``.

    There are ``r! * S(|ground|, r)`` of them.
    """
    elems = sorted(set(ground))
    g = len(elems)
    if r < 1 or r > g:
        raise ValueError(f"cannot split {g} elements into {r} nonempty parts")
    assign = [0] * g
    sizes = [0] * r

    def rec(i: int, empty: int) -> Iterator[OrderedPartition]:
        if g - i < empty:
            return
        if i == g:
            parts = [set() for _ in range(r)]
            for e, p in zip(elems, assign):
                parts[p].add(e)
            yield OrderedPartition(tuple(frozenset(p) for p in parts))
            return
        for p in range(r):
            assign[i] = p
            sizes[p] += 1
            yield from rec(i + 1, empty - (sizes[p] == 1))
            sizes[p] -= 1

    yield from rec(0, r)


@lru_cache(maxsize=None)
def stirling2(ell: int, r: int) -> int:
    """Stirling number of the second kind ``S(ell, r)``."""
    if r < 0 or ell < 0:
        raise ValueError("arguments must be nonnegative")
    if r > ell:
        raise ValueError(f"S({ell}, {r}) requested with r > ell")
    row = [1]  # S(0, 0)
    for e in range(1, ell + 1):
        nxt = [0] * (e + 1)
        for j in range(1, e + 1):
            nxt[j] = j * (row[j] if j < len(row) else 0) + row[j - 1]
        row = nxt
    return row[r]


def _cr_ground(n: int, r: int) -> range:
    if r < 1 or r > n // 2:
        raise ValueError(f"r must lie in [1, floor(n/2)], got r={r} for n={n}")
    return range(r - 1, n + 1) if r % 2 == 0 else range(r, n + 1)


def cr_word(parts: Sequence[Iterable[int]], pi: Sequence[int]) -> tuple[int, ...]:
    """Interleave ordered runs of ``parts`` with consecutive pairs of ``pi``.

    Parts alternate ascending / descending; one pair of ``pi`` follows every
    descending part except the last.
    """
    word: list[int] = []
    r = len(parts)
    pairs = len(pi) // 2
    for idx, part in enumerate(parts):
        word.extend(sorted(part, reverse=idx % 2 == 1))
        j = idx // 2
        if idx % 2 == 1 and j < pairs:
            word.extend(pi[2 * j : 2 * j + 2])
    if len(word) != sum(len(p) for p in parts) + len(pi) or (r - 1) // 2 != pairs:
        raise ValueError("pi does not match the number of parts")
    return tuple(word)


def _small_csym(size: int) -> list[tuple[int, ...]]:
    if size == 0:
        return [()]
    return [tuple(row) for row in csym_array(size, 1).tolist()]


def generate_Cr(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Every codeword of ``C_r`` once per (partition, pi) representation."""
    ground = _cr_ground(n, r)
    pis = _small_csym(r - 2 if r % 2 == 0 else r - 1)
    for part in enumerate_set_partitions(ground, r):
        for pi in pis:
            yield cr_word(part.parts, pi)


def build_Cr(n: int, r: int, *, with_multiplicity: bool = False):
    """The code ``C_r``; with ``with_multiplicity`` also a Counter of generator hits."""
    hits = Counter(generate_Cr(n, r))
    code = Code.from_members(n, hits, ConstraintKind("asym_two_neighbor", 1), f"Cr(n={n},r={r})")
    return (code, hits) if with_multiplicity else code


def build_Casym(n: int, *, with_multiplicity: bool = False):
    """Union of ``C_r`` over ``1 <= r <= floor(n/2)``; asymmetric 1-constrained.

    The union is empty for ``n = 1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    hits: Counter = Counter()
    for r in range(1, n // 2 + 1):
        hits.update(generate_Cr(n, r))
    code = Code.from_members(n, hits, ConstraintKind("asym_two_neighbor", 1), f"Casym(n={n})")
    return (code, hits) if with_multiplicity else code


def lower_bound_Casym(n: int) -> Fraction:
    """Sum over ``r`` of ``r! S(n - 2q, r) q! / 2`` with ``q = floor((r-1)/2)``."""
    if n < 2:
        raise ValueError("the lower bound is stated for n >= 2")
    total = Fraction(0)
    for r in range(1, n // 2 + 1):
        q = (r - 1) // 2
        total += Fraction(math.factorial(r) * stirling2(n - 2 * q, r) * math.factorial(q), 2)
    return total
