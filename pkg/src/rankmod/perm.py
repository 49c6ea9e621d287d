"""Permutations, balanced multi-permutations and block composition.

All positions and values are 1-based. A :class:`Permutation` is a tuple
holding the one-line notation ``[sigma(1), ..., sigma(n)]`` where
``sigma(i)`` is the rank of cell ``i``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

__all__ = [
    "Permutation",
    "MultiPermutation",
    "BlockPermutation",
    "make_permutation",
    "identity",
    "inverse",
    "compose",
    "decompose",
    "valleys",
    "ordered_run",
    "reverse",
    "complement",
]


class Permutation(tuple):
    """A bijection on ``[n]`` in one-line notation.

    Behaves as an immutable tuple of ints, so permutations hash, compare
    and sort lexicographically. ``sigma(i)`` returns the 1-based image.
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        vals = tuple(int(v) for v in values)
        n = len(vals)
        if n == 0:
            raise ValueError("a permutation needs at least one entry")
        seen = [False] * (n + 1)
        for v in vals:
            if v < 1 or v > n:
                raise ValueError(f"entry {v} out of range [1, {n}]")
            if seen[v]:
                raise ValueError(f"duplicate entry {v}")
            seen[v] = True
        return tuple.__new__(cls, vals)

    @classmethod
    def _trusted(cls, values: Iterable[int]) -> "Permutation":
        # skips validation; only for values already known to be a bijection
        return tuple.__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self):
            raise IndexError(f"position {i} out of range [1, {len(self)}]")
        return tuple.__getitem__(self, i - 1)

    def __repr__(self) -> str:
        return f"Permutation({list(self)})"

    def to_text(self) -> str:
        return " ".join(map(str, self))

    @classmethod
    def from_text(cls, line: str) -> "Permutation":
        """Parse one-line notation separated by spaces and/or commas, brackets optional."""
        return cls(int(tok) for tok in line.strip().strip("[]").replace(",", " ").split())


def make_permutation(values: Iterable[int]) -> Permutation:
    """Validate ``values`` as a bijection on ``[n]`` and wrap it."""
    return Permutation(values)


def identity(n: int) -> Permutation:
    return Permutation._trusted(range(1, n + 1))


def inverse(sigma: Sequence[int]) -> Permutation:
    out = [0] * len(sigma)
    for i, v in enumerate(sigma, start=1):
        out[v - 1] = i
    return Permutation._trusted(out)


def reverse(sigma: Sequence[int]) -> Permutation:
    return Permutation._trusted(reversed(tuple(sigma)))


def complement(sigma: Sequence[int]) -> Permutation:
    n = len(sigma)
    return Permutation._trusted(n + 1 - v for v in sigma)


@dataclass(frozen=True)
class MultiPermutation:
    """An arrangement of the balanced multi-set ``{1^m, ..., ell^m}``.

    ``occurrence_index[j - 1] == (i, r)`` means position ``j`` holds the
    ``r``-th appearance of symbol ``i`` (written ``i_r``).
    """

    ell: int
    m: int
    values: tuple[int, ...]
    occurrence_index: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.ell < 1 or self.m < 1:
            raise ValueError("ell and m must be positive")
        vals = tuple(int(v) for v in self.values)
        if len(vals) != self.ell * self.m:
            raise ValueError(f"expected {self.ell * self.m} entries, got {len(vals)}")
        seen = [0] * (self.ell + 1)
        occ = []
        for v in vals:
            if not 1 <= v <= self.ell:
                raise ValueError(f"symbol {v} out of range [1, {self.ell}]")
            seen[v] += 1
            occ.append((v, seen[v]))
        if any(c != self.m for c in seen[1:]):
            raise ValueError(f"every symbol must appear exactly {self.m} times")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "occurrence_index", tuple(occ))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def position_of(self, i: int, r: int) -> int:
        """1-based position ``j`` with ``rho(j) = i_r``."""
        return self.occurrence_index.index((i, r)) + 1

    def to_text(self) -> str:
        return f"ell={self.ell} m={self.m}\n" + " ".join(map(str, self.values))

    @classmethod
    def from_text(cls, text: str) -> "MultiPermutation":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ValueError("expected a header line and a value line")
        header = dict(tok.split("=", 1) for tok in lines[0].split())
        return cls(int(header["ell"]), int(header["m"]), tuple(int(t) for t in lines[1].split()))


@dataclass(frozen=True)
class BlockPermutation:
    """A permutation of the interval ``[(i-1)m + 1, i*m]`` in one-line notation."""

    block_index: int
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        perm = tuple(int(v) for v in self.perm)
        m = len(perm)
        if self.block_index < 1 or m == 0:
            raise ValueError("block index must be positive and the block nonempty")
        lo = (self.block_index - 1) * m + 1
        if sorted(perm) != list(range(lo, lo + m)):
            raise ValueError(f"block {self.block_index} must permute [{lo}, {lo + m - 1}]")
        object.__setattr__(self, "perm", perm)

    @property
    def m(self) -> int:
        return len(self.perm)

    @property
    def interval(self) -> tuple[int, int]:
        lo = (self.block_index - 1) * self.m + 1
        return lo, lo + self.m - 1


def compose(rho: MultiPermutation, gammas: Sequence[BlockPermutation]) -> Permutation:
    """Build ``alpha = rho(gamma_1, ..., gamma_ell)``.

    ``alpha(j) = gamma_i(r)`` whenever ``rho(j) = i_r``.
    """
    if len(gammas) != rho.ell:
        raise ValueError(f"expected {rho.ell} block permutations, got {len(gammas)}")
    for i, g in enumerate(gammas, start=1):
        if g.block_index != i:
            raise ValueError(f"block {i} given with index {g.block_index}")
        if g.m != rho.m:
            raise ValueError(f"block {i} has length {g.m}, expected {rho.m}")
    return Permutation._trusted(gammas[i - 1].perm[r - 1] for i, r in rho.occurrence_index)


def decompose(sigma: Sequence[int], ell: int, m: int) -> tuple[MultiPermutation, list[BlockPermutation]]:
    """Inverse of :func:`compose`: split ``sigma`` by value blocks of width ``m``."""
    if len(sigma) != ell * m:
        raise ValueError(f"length {len(sigma)} is not ell*m = {ell * m}")
    rho = [(v - 1) // m + 1 for v in sigma]
    blocks: list[list[int]] = [[] for _ in range(ell)]
    for v, i in zip(sigma, rho):
        blocks[i - 1].append(v)
    return (
        MultiPermutation(ell, m, tuple(rho)),
        [BlockPermutation(i, tuple(b)) for i, b in enumerate(blocks, start=1)],
    )


def valleys(sigma: Sequence[int]) -> list[int]:
    """Positions ``i`` in ``[2, n-1]`` strictly below both neighbours."""
    s = tuple(sigma)
    return [i + 1 for i in range(1, len(s) - 1) if s[i - 1] > s[i] < s[i + 1]]


def ordered_run(items: Iterable[int], direction: str = "ascending") -> list[int]:
    """The elements of a set in increasing or decreasing order."""
    vals = set(items)
    if not vals:
        raise ValueError("ordered_run needs a nonempty set")
    if direction not in ("ascending", "descending"):
        raise ValueError(f"unknown direction {direction!r}")
    return sorted(vals, reverse=direction == "descending")
