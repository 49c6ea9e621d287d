import math
from collections import Counter
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest

from rankmod.constraints import ConstraintKind
from rankmod.constructions import (
    Code,
    build_Casym,
    build_Cr,
    build_Csym,
    cardinality_Csym,
    cr_word,
    enumerate_D,
    enumerate_set_partitions,
    lower_bound_Casym,
    multiset_permutations,
    stirling2,
)
from rankmod.perm import valleys

from oracles import asym_ok, stirling_brute, two_neighbor_ok

FEASIBLE = [(n, k) for k in (1, 3, 5, 7, 9) for n in range(k + 1, 11, k + 1)]


def csym_oracle(n, k):
    """Csym by its characterisation: entries 2j-1, 2j come from one value block of width k+1."""
    m = k + 1
    return {
        s for s in permutations(range(1, n + 1))
        if all((s[2 * j] - 1) // m == (s[2 * j + 1] - 1) // m for j in range(n // 2))
    }


def cr_oracle(n, r):
    """C_r straight from the word pattern, partitions by brute-force assignment."""
    ground = list(range(r - 1, n + 1)) if r % 2 == 0 else list(range(r, n + 1))
    npairs = (r - 1) // 2
    pis = sorted(csym_oracle(2 * npairs, 1)) if npairs else [()]
    words = set()
    for f in product(range(r), repeat=len(ground)):
        if len(set(f)) != r:
            continue
        parts = [[g for g, p in zip(ground, f) if p == i] for i in range(r)]
        for pi in pis:
            w = []
            for i, part in enumerate(parts):
                w += sorted(part, reverse=i % 2 == 1)
                if i % 2 == 1 and i // 2 < npairs:
                    w += pi[2 * (i // 2): 2 * (i // 2) + 2]
            words.add(tuple(w))
    return words


class TestD:
    def test_contains_paper_member(self):
        target = (1, 1, 2, 2, 2, 2, 3, 3, 1, 1, 3, 3)
        assert any(rho.values == target for rho in enumerate_D(3, 4))

    def test_small(self):
        assert [r.values for r in enumerate_D(1, 2)] == [(1, 1)]
        assert [r.values for r in enumerate_D(2, 2)] == [(1, 1, 2, 2), (2, 2, 1, 1)]

    @pytest.mark.parametrize("ell, m", [(2, 4), (3, 2), (3, 4), (4, 2), (2, 6)])
    def test_exact_set_and_count(self, ell, m):
        brute = [
            p for p in product(range(1, ell + 1), repeat=ell * m)
            if all(p.count(i) == m for i in range(1, ell + 1))
            and all(p[2 * j] == p[2 * j + 1] for j in range(len(p) // 2))
        ]
        got = [r.values for r in enumerate_D(ell, m)]
        assert got == brute
        h = m // 2
        assert len(got) == math.factorial(ell * h) // math.factorial(h) ** ell

    def test_odd_m_rejected(self):
        with pytest.raises(ValueError):
            list(enumerate_D(2, 3))


def test_multiset_permutations_lexicographic():
    items = [1, 1, 2, 3, 3]
    assert list(multiset_permutations(items)) == sorted(set(permutations(items)))


class TestCsym:
    def test_examples(self):
        c = build_Csym(4, 1)
        assert len(c) == 8 and all(two_neighbor_ok(s, 1) for s in c)
        assert build_Csym(2, 1).members == [(1, 2), (2, 1)]
        assert len(build_Csym(6, 1)) == 48

    def test_cardinality_examples(self):
        assert cardinality_Csym(4, 1) == 8
        assert cardinality_Csym(6, 1) == 48
        assert cardinality_Csym(8, 3) == 3456

    @pytest.mark.parametrize("n, k", [(n, k) for n, k in FEASIBLE if n <= 8])
    def test_matches_characterisation(self, n, k):
        assert set(build_Csym(n, k)) == csym_oracle(n, k)

    @pytest.mark.parametrize("n, k", FEASIBLE)
    def test_size_and_constraint(self, n, k):
        code = build_Csym(n, k)
        assert len(code) == cardinality_Csym(n, k)
        assert code.check_constraint().all()

    @pytest.mark.parametrize("n, k", [(5, 1), (6, 2), (6, 3), (0, 1), (4, 0)])
    def test_infeasible(self, n, k):
        with pytest.raises(ValueError):
            build_Csym(n, k)
        with pytest.raises(ValueError):
            cardinality_Csym(n, k)


class TestPartitionsAndStirling:
    def test_examples(self):
        two = [p.parts for p in enumerate_set_partitions({1, 2}, 2)]
        assert sorted(two, key=lambda ps: sorted(ps[0])) == [(frozenset({1}), frozenset({2})), (frozenset({2}), frozenset({1}))]
        assert len(list(enumerate_set_partitions({1, 2, 3}, 2))) == 6
        assert len(list(enumerate_set_partitions(range(5), 1))) == 1

    @pytest.mark.parametrize("g", range(1, 7))
    def test_counts_and_validity(self, g):
        ground = set(range(10, 10 + g))
        for r in range(1, g + 1):
            parts = list(enumerate_set_partitions(ground, r))
            assert len(parts) == math.factorial(r) * stirling2(g, r)
            assert len({p.parts for p in parts}) == len(parts)
            for p in parts:
                assert p.r == r and p.ground() == ground
                assert all(p.parts) and sum(map(len, p.parts)) == g

    def test_partition_errors(self):
        with pytest.raises(ValueError):
            list(enumerate_set_partitions({1, 2}, 3))
        with pytest.raises(ValueError):
            list(enumerate_set_partitions({1, 2}, 0))

    def test_stirling_values(self):
        assert stirling2(3, 2) == 3
        assert stirling2(4, 2) == 7
        assert stirling2(0, 0) == 1
        assert all(stirling2(ell, 1) == 1 for ell in range(1, 30))
        for ell in range(1, 8):
            for r in range(1, ell + 1):
                assert stirling2(ell, r) == stirling_brute(ell, r)
        with pytest.raises(ValueError):
            stirling2(2, 3)

    def test_stirling_big(self):
        # exact big integers, cross-checked with the explicit alternating sum
        ell, r = 60, 7
        explicit = sum((-1) ** j * math.comb(r, j) * (r - j) ** ell for j in range(r + 1)) // math.factorial(r)
        assert stirling2(ell, r) == explicit


class TestCr:
    def test_worked_example(self):
        parts = [{5, 8, 10}, {6, 12}, {7, 15}, {9, 13}, {11, 14}]
        word = cr_word(parts, [4, 3, 1, 2])
        assert word == (5, 8, 10, 12, 6, 4, 3, 7, 15, 13, 9, 1, 2, 11, 14)
        assert valleys(word) == [7, 12]
        assert asym_ok(word, 1)

    def test_worked_example_is_a_valid_representation(self):
        # C_5 at n=15 has ~3e7 representations, so check the ingredients instead
        parts = [{5, 8, 10}, {6, 12}, {7, 15}, {9, 13}, {11, 14}]
        assert set().union(*parts) == set(range(5, 16))
        assert sum(map(len, parts)) == 11
        assert (4, 3, 1, 2) in build_Csym(4, 1)

    def test_trivial(self):
        assert build_Cr(4, 1).members == [(1, 2, 3, 4)]
        assert (1, 2) in build_Casym(2)

    def test_r_out_of_range(self):
        with pytest.raises(ValueError):
            build_Cr(5, 3)
        with pytest.raises(ValueError):
            build_Cr(5, 0)

    def test_pi_mismatch(self):
        with pytest.raises(ValueError):
            cr_word([{1}, {2}, {3}], [])

    @pytest.mark.parametrize("n", range(2, 8))
    def test_matches_oracle(self, n):
        for r in range(1, n // 2 + 1):
            assert set(build_Cr(n, r)) == cr_oracle(n, r)

    @pytest.mark.parametrize("n", range(2, 10))
    def test_valleys_multiplicity_disjointness(self, n):
        by_m: dict[int, set] = {}
        hits_by_m: dict[int, Counter] = {}
        for r in range(1, n // 2 + 1):
            code, hits = build_Cr(n, r, with_multiplicity=True)
            m = (r - 1) // 2
            assert all(len(valleys(s)) == m for s in code)
            by_m.setdefault(m, set()).update(map(tuple, code.array.tolist()))
            hits_by_m.setdefault(m, Counter()).update(hits)
        for m, hits in hits_by_m.items():
            assert max(hits.values()) <= 2 ** (m + 1)
        groups = list(by_m.values())
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                assert not groups[i] & groups[j]


class TestCasym:
    def test_n4(self):
        code = build_Casym(4)
        assert all(asym_ok(s, 1) for s in code)
        assert len(code) >= math.ceil(lower_bound_Casym(4))

    def test_n1_empty(self):
        assert len(build_Casym(1)) == 0

    def test_lower_bound_examples(self):
        assert lower_bound_Casym(4) == Fraction(15, 2)
        assert lower_bound_Casym(2) == Fraction(1, 2)
        with pytest.raises(ValueError):
            lower_bound_Casym(1)

    @pytest.mark.parametrize("n", range(2, 10))
    def test_constraint_and_bound(self, n):
        code = build_Casym(n)
        assert code.check_constraint(ConstraintKind("asym_two_neighbor", 1)).all()
        assert len(code) >= lower_bound_Casym(n)


class TestCode:
    def test_sorted_unique(self):
        c = Code.from_members(3, [(3, 2, 1), (1, 2, 3), (3, 2, 1)])
        assert c.members == [(1, 2, 3), (3, 2, 1)]
        assert (3, 2, 1) in c and (2, 1, 3) not in c
        assert not c.array.flags.writeable

    @pytest.mark.parametrize("bad", [[(1, 1, 2)], [(1, 2)], [(0, 1, 2)], [(1, 2, 4)]])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            Code.from_members(3, bad)

    def test_empty(self):
        c = Code.from_members(4, [])
        assert len(c) == 0 and c.members == []

    def test_check_constraint_needs_one(self):
        with pytest.raises(ValueError):
            Code.from_members(2, [(1, 2)]).check_constraint()

    def test_large_n_fallback_path(self):
        rng = np.random.default_rng(0)
        rows = [rng.permutation(20) + 1 for _ in range(5)]
        c = Code.from_members(20, rows + rows)
        assert len(c) == 5
        assert c.members == sorted(tuple(int(v) for v in r) for r in rows)
