"""Acceptance criteria, each at its stated scale and time limit.

Every criterion prints exactly one PASS/FAIL line (collected in the pytest
terminal summary, or printed directly when this file is run as a script).
"""

import math
import random
import sys
import time
from fractions import Fraction
from itertools import permutations
from pathlib import Path

import numpy as np

from rankmod.cli import main as cli_main
from rankmod.constraints import ConstraintKind, satisfies_rows
from rankmod.constructions import (
    build_Casym,
    build_Cr,
    build_Csym,
    cardinality_Csym,
    csym_array,
    lower_bound_Casym,
)
from rankmod.ecc import (
    ECCCode,
    capacity_asym_two_neighbor,
    capacity_surface_asym,
    capacity_surface_sym,
    capacity_two_neighbor,
    greedy_code,
    gv_lower_bound,
    gv_manhattan_lower_bound,
    max_code_size,
    sphere_packing_bound,
    verify_min_distance,
)
from rankmod.enumeration import count_constrained, upper_bound_A_log
from rankmod.metrics import ball_size_inversion, check_sandwich, kendall_tau
from rankmod.perm import valleys

sys.path.insert(0, str(Path(__file__).parent))
from acceptance_log import record  # noqa: E402
from oracles import bfs_distances, inversion_census  # noqa: E402

TWO = "two_neighbor"
ASYM = "asym_two_neighbor"


def _run(cid, limit, check):
    """Run ``check() -> (ok, detail)``; fail on a false verdict or a blown time limit."""
    t0 = time.perf_counter()
    try:
        ok, detail = check()
    except AssertionError as exc:
        ok, detail = False, f"assertion: {exc}"
    elapsed = time.perf_counter() - t0
    if limit is not None and elapsed > limit:
        ok, detail = False, f"{detail}; exceeded time limit"
    line = record(cid, ok, elapsed, limit, detail)
    if __name__ == "__main__":
        print(line, flush=True)
    assert ok, line


# 1. Construction 1 -------------------------------------------------------


def check_csym():
    cases = [(n, k) for k in range(1, 10, 2) for n in range(k + 1, 11, k + 1)]
    for n, k in cases:
        raw = csym_array(n, k)
        formula = cardinality_Csym(n, k)
        code = build_Csym(n, k)
        if raw.shape[0] != formula or len(code) != formula:
            return False, f"(n={n},k={k}) generated {raw.shape[0]} / distinct {len(code)} vs formula {formula}"
        if not satisfies_rows(raw, ConstraintKind(TWO, k)).all():
            return False, f"(n={n},k={k}) has a codeword violating the two-neighbor constraint"
    spot = (cardinality_Csym(4, 1), cardinality_Csym(6, 1), cardinality_Csym(8, 3))
    if spot != (8, 48, 3456):
        return False, f"spot values {spot}"
    return True, f"{len(cases)} feasible (n,k), sizes equal the closed form, all codewords constrained"


def test_criterion_1_construction_one():
    _run("1", 10, check_csym)


# 2. Upper bound on |A_{n,k}| --------------------------------------------------


def check_upper_bound():
    worst = -math.inf
    pairs = 0
    for n in range(2, 11):
        for k in range(1, n):
            a = count_constrained(n, ConstraintKind(TWO, k))
            slack = math.log2(a) - upper_bound_A_log(n, k)
            worst = max(worst, slack)
            pairs += 1
            if slack > 0:
                return False, f"(n={n},k={k}): log2|A|={math.log2(a):.3f} above bound {upper_bound_A_log(n, k):.3f}"
    return True, f"{pairs} (n,k) with n<=10, largest log2|A| - bound = {worst:.2f}"


def test_criterion_2_upper_bound():
    _run("2", 300, check_upper_bound)


# 3. Construction 2 -------------------------------------------------------


def check_casym():
    asym1 = ConstraintKind(ASYM, 1)
    details = []
    for n in range(2, 10):
        union = build_Casym(n)
        if not satisfies_rows(union.array, asym1).all():
            return False, f"n={n}: a member violates the asymmetric 1-constraint"
        hits_by_m = {}
        for r in range(1, n // 2 + 1):
            code, hits = build_Cr(n, r, with_multiplicity=True)
            m = (r - 1) // 2
            bad = [s for s in code if len(valleys(s)) != m]
            if bad:
                return False, f"n={n},r={r}: {bad[0]} has {len(valleys(bad[0]))} valleys, expected {m}"
            agg = hits_by_m.setdefault(m, {})
            for w, c in hits.items():
                agg[w] = agg.get(w, 0) + c
        for m, agg in hits_by_m.items():
            top = max(agg.values())
            if top > 2 ** (m + 1):
                return False, f"n={n}, m={m}: a codeword has {top} representations > 2^(m+1)"
        lb = lower_bound_Casym(n)
        if len(union) < lb:
            return False, f"n={n}: |Casym|={len(union)} below bound {lb}"
        details.append(f"{len(union)}>={float(lb):g}")
    if lower_bound_Casym(4) != Fraction(15, 2):
        return False, "n=4 bound is not 7.5"
    return True, "n=2..9 constraint, valleys, multiplicity ok; sizes vs bound " + " ".join(details)


def test_criterion_3_construction_two():
    _run("3", 120, check_casym)


# 4. Containment sandwich -------------------------------------------------


def check_sandwich_counts():
    for kind, expected in ((TWO, 18), (ASYM, 20)):
        c = ConstraintKind(kind, 1)
        f, b = count_constrained(4, c, method="filter"), count_constrained(4, c, method="backtrack")
        if not f == b == expected:
            return False, f"|{kind} n=4,k=1|: filter {f}, backtracking {b}, expected {expected}"
    for n in range(2, 11):
        second = "backtrack" if n <= 9 else "dp"
        for k in range(1, n):
            counts = {}
            for kind in (TWO, ASYM):
                c = ConstraintKind(kind, k)
                f = count_constrained(n, c, method="filter")
                g = count_constrained(n, c, method=second)
                if f != g:
                    return False, f"(n={n},k={k},{kind}) filter {f} != {second} {g}"
                counts[kind] = f
            lo = cardinality_Csym(n, k) if k % 2 and n % (k + 1) == 0 else 0
            if not lo <= counts[TWO] <= counts[ASYM] <= math.factorial(n):
                return False, f"(n={n},k={k}) chain broken: {lo}, {counts[TWO]}, {counts[ASYM]}, {math.factorial(n)}"
    return True, "|A_4,1|=18, |B_4,1|=20 by filter and backtracking; Csym <= A <= B <= n! for n<=10 (two routes each)"


def test_criterion_4_containment():
    _run("4", None, check_sandwich_counts)


# 5. Metric suite ---------------------------------------------------------


def _relabel(s, p):
    pos = {v: i + 1 for i, v in enumerate(s)}
    return tuple(pos[v] for v in p)


def _numpy_inversion_distance(S, P):
    """Discordant position pairs, computed independently of the merge counter."""
    n = S.shape[1]
    i, j = np.triu_indices(n, 1)
    return np.sum((S[:, i] - S[:, j]) * (P[:, i] - P[:, j]) < 0, axis=1)


def check_metrics():
    for n in range(1, 6):
        dist = bfs_distances(n)
        perms = list(permutations(range(1, n + 1)))
        for s in perms:
            for p in perms:
                if kendall_tau(s, p) != dist[_relabel(s, p)]:
                    return False, f"kendall {s} {p} disagrees with BFS"
                if not check_sandwich(s, p)[2]:
                    return False, f"sandwich fails for {s}, {p}"
    rng = np.random.default_rng(2024)
    S = np.argsort(rng.random((100_000, 20)), axis=1) + 1
    P = np.argsort(rng.random((100_000, 20)), axis=1) + 1
    lib = np.array([check_sandwich(s, p)[:2] for s, p in zip(S.tolist(), P.tolist())])
    dm, di = lib[:, 0], lib[:, 1]
    if not np.array_equal(di, _numpy_inversion_distance(S, P)):
        return False, "library d_I disagrees with the pairwise recomputation at n=20"
    if not np.array_equal(dm, np.abs(S - P).sum(axis=1)):
        return False, "library d_M disagrees at n=20"
    if not (np.all(dm <= 2 * di) and np.all(di <= dm)):
        return False, "sandwich violated on a random n=20 pair"
    for n in range(1, 7):
        census = inversion_census(n)
        for r in range(len(census)):
            if ball_size_inversion(n, r) != sum(census[: r + 1]):
                return False, f"b_I({n},{r}) mismatch"
    return True, "Kendall = BFS for n<=5; sandwich exhaustive n<=5 and 1e5 pairs at n=20; b_I = census n<=6"


def test_criterion_5_metrics():
    _run("5", 60, check_metrics)


# 6. ECC suite ------------------------------------------------------------


def check_ecc():
    from rankmod.constructions import Code
    from rankmod.enumeration import enumerate_constrained

    greedy_cases = 0
    for n in range(2, 8):
        for k in range(1, n):
            c = ConstraintKind(TWO, k)
            universe = Code.from_members(n, enumerate_constrained(n, c), c)
            for d in range(1, 7):
                g = greedy_code(universe, d)
                if len(g) < gv_lower_bound(n, k, d):
                    return False, f"greedy (n={n},k={k},d={d}) size {len(g)} below |A|/b_I"
                if not verify_min_distance(g)[0]:
                    return False, f"greedy (n={n},k={k},d={d}) fails verification"
                greedy_cases += 1
    exact_cases = 0
    for n in range(3, 6):
        for k in range(1, n):
            for d in range(1, n * (n - 1) // 2 + 1):
                e, code = max_code_size(n, k, d)
                if not verify_min_distance(ECCCode(code, d))[0]:
                    return False, f"optimal code (n={n},k={k},d={d}) fails verification"
                lo = gv_manhattan_lower_bound(n, k, d).value
                hi = sphere_packing_bound(n, k, d).value
                if not lo <= e <= hi:
                    return False, f"E({n},{k},{d})={e} outside [{float(lo):.3f}, {float(hi):.3f}]"
                exact_cases += 1
    return True, f"{greedy_cases} greedy codes meet |A|/b_I and verify; {exact_cases} exact E(n,k,d), n<=5, within bounds"


def test_criterion_6_ecc():
    _run("6", 600, check_ecc)


# 7. Capacity surfaces ------------------------------------------------------


def _grid(lo, hi, count=100):
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def check_capacity():
    tol = 4 * sys.float_info.epsilon
    worst = 0.0

    def close(got, want):
        nonlocal worst
        worst = max(worst, abs(got - want))
        return abs(got - want) <= tol

    for e in _grid(0.0, 1.0):
        if not close(capacity_two_neighbor(e), (1 + e) / 2):
            return False, f"single-constraint capacity at eps={e}"
        if capacity_asym_two_neighbor(e) != 1.0:
            return False, f"asymmetric capacity at eps={e}"
    rng = random.Random(7)
    sym_cases = {
        "eps2<=1": (lambda e1: rng.uniform(0, 1), lambda e1, e2: 0.5 + e1 / 2),
        "1<eps2<=1+eps1": (lambda e1: rng.uniform(1, 1 + e1), lambda e1, e2: 1.5 + e1 / 2 - e2),
        "eps2>1+eps1": (lambda e1: rng.uniform(1 + e1, 2), lambda e1, e2: 1 - e2 / 2),
    }
    for name, (draw, formula) in sym_cases.items():
        for e1 in _grid(0.0, 1.0):
            e2 = draw(e1)
            if not close(capacity_surface_sym(e1, e2).value, formula(e1, e2)):
                return False, f"symmetric surface, case {name}, at ({e1}, {e2})"
    asym_cases = {
        "eps2<=1": (lambda: rng.uniform(0, 1), lambda e2: 1.0),
        "eps2>1": (lambda: rng.uniform(1, 2), lambda e2: 2 - e2),
    }
    for name, (draw, formula) in asym_cases.items():
        for e1 in _grid(0.0, 1.0):
            e2 = draw()
            if not close(capacity_surface_asym(e1, e2).value, formula(e2)):
                return False, f"asymmetric surface, case {name}, at ({e1}, {e2})"
    seam = 0.0
    h = 1e-13
    for e1 in _grid(0.0, 1.0):
        for e2 in (1.0, 1.0 + e1):
            for f in (capacity_surface_sym, capacity_surface_asym):
                vals = [f(e1, min(max(e2 + s, 0.0), 2.0)).value for s in (-h, 0.0, h)]
                seam = max(seam, max(vals) - min(vals))
        # the two formulas meeting at each seam agree exactly up to rounding
        seam = max(seam, abs((0.5 + e1 / 2) - (1.5 + e1 / 2 - 1.0)))
        seam = max(seam, abs((1.5 + e1 / 2 - (1 + e1)) - (1 - (1 + e1) / 2)))
    if seam > 1e-12:
        return False, f"seam jump {seam:.2e}"
    return True, f"all cases at 100 points each, max error {worst:.1e}; seam jump {seam:.1e}"


def test_criterion_7_capacity():
    _run("7", None, check_capacity)


# 8. Determinism ----------------------------------------------------------

CLI_RUNS = [
    ["count", "--n", "2..8", "--kind", "two_neighbor"],
    ["count", "--n", "4..7", "--kind", "asym_two_neighbor", "--method", "backtrack"],
    ["construct", "csym", "--n", "6", "--k", "1"],
    ["construct", "casym", "--n", "7"],
    ["construct", "cr", "--n", "8", "--r", "3"],
    ["construct", "greedy", "--n", "6", "--k", "2", "--d", "3"],
    ["bounds", "--n", "4..5", "--d", "1..3"],
    ["capacity", "--eps1", "0:1:11"],
    ["capacity", "--eps1", "0:1:11", "--eps2", "0:2:21"],
    ["balls", "--n", "1..7"],
    ["distance", "--sigma", "4 7 5 3 1 2 6", "--pi", "7 6 5 4 3 2 1"],
    ["distance", "--n", "20", "--samples", "2000"],
]


def check_determinism(workdir: Path):
    code_file = workdir / "casym.txt"
    assert cli_main(["construct", "casym", "--n", "6", "--out", str(code_file)]) == 0
    runs = CLI_RUNS + [["verify", str(code_file)], ["verify", str(code_file), "--d", "2"]]
    checked = 0
    for argv in runs:
        formats = ("csv",) if argv[0] in ("construct", "verify") else ("csv", "json")
        for fmt in formats:
            blobs = []
            for rep in range(2):
                out = workdir / f"{checked}-{rep}.{fmt}"
                status = cli_main(argv + ["--format", fmt, "--seed", "11", "--out", str(out)])
                blobs.append((status, out.read_bytes()))
            if blobs[0] != blobs[1] or not blobs[0][1]:
                return False, f"{' '.join(argv)} ({fmt}) differs between runs"
            checked += 1
    return True, f"{checked} command/format combinations byte-identical across reruns"


def test_criterion_8_determinism(tmp_path, capsys):
    _run("8", None, lambda: check_determinism(tmp_path))
    capsys.readouterr()


if __name__ == "__main__":
    import tempfile

    checks = [
        ("1", 10, check_csym),
        ("2", 300, check_upper_bound),
        ("3", 120, check_casym),
        ("4", None, check_sandwich_counts),
        ("5", 60, check_metrics),
        ("6", 600, check_ecc),
        ("7", None, check_capacity),
    ]
    failed = 0
    for cid, limit, fn in checks:
        try:
            _run(cid, limit, fn)
        except AssertionError:
            failed += 1
    with tempfile.TemporaryDirectory() as tmp:
        try:
            _run("8", None, lambda: check_determinism(Path(tmp)))
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
