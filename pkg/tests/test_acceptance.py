"""Acceptance criteria, one test each. All comparisons are exact integers.

Run directly for a one-line-per-criterion summary:

    python tests/test_acceptance.py
"""

from functools import lru_cache

import numpy as np
import pytest

from threshold_sds.closed_form import Family, FamilyKind
from threshold_sds.engine import ThresholdSds, sds_step
from threshold_sds.graphs import max_degree
from threshold_sds.phase_space import build, monotonicity_violation
from threshold_sds.verify import (
    scan_orders,
    update_orders,
    verify_circle,
    verify_complete,
    verify_fixed_points_only,
    verify_line,
    verify_star,
    verify_table1,
)

SEED = 7
ALL = tuple(Family)


@lru_cache(maxsize=None)
def complete_report():
    return verify_complete(range(3, 11), orders_per_case=5, seed=SEED)


@lru_cache(maxsize=None)
def star_report():
    return verify_star(range(1, 13), orders_per_case=10, seed=SEED)


@lru_cache(maxsize=None)
def circle_report():
    return verify_circle(range(3, 13), orders_per_case=10, seed=SEED)


@lru_cache(maxsize=None)
def line_report():
    return verify_line(range(2, 13), orders_per_case=10, seed=SEED)


@lru_cache(maxsize=None)
def periodicity_report():
    return verify_fixed_points_only(ALL, range(1, 13), orders_per_case=20, seed=SEED, degenerate_nmax=10)


def _cases(report, claims):
    return [c for c in report.cases if c.claim in claims]


def _verdict(cases):
    bad = [c for c in cases if not c.passed]
    detail = f"{len(cases) - len(bad)}/{len(cases)} cases"
    if bad:
        c = bad[0]
        detail += f"; first failure {c.params} {c.claim}: predicted {c.predicted}, measured {c.measured}, {c.counterexample}"
    return not bad and bool(cases), detail


def criterion_1():
    """K_n: two components, depth <= 1, fixed points {0, 1}, order-independent successor table."""
    claims = {"component_count", "max_depth_le_1", "fixed_points", "successor_order_independent", "shapes_star_or_isolated"}
    return _verdict(_cases(complete_report(), claims))


def criterion_2():
    """K_n basin sizes against both closed forms; spot value n=4, k=2 -> (4, 10)."""
    cases = _cases(complete_report(), {"basin_zero_size", "basin_one_size", "basin_one_tail_identity"})
    ok, detail = _verdict(cases)
    spot = {c.claim: c.measured for c in cases if c.params["n"] == 4 and c.params["k"] == 2}
    spot_ok = (spot.get("basin_zero_size"), spot.get("basin_one_size")) == (4, 10)
    return ok and spot_ok, detail + f"; spot n=4,k=2 -> ({spot.get('basin_zero_size')}, {spot.get('basin_one_size')})"


def criterion_3():
    """Star_n, k=2: exactly 2**n_arms fixed points, n_arms 1..12, 10 orders."""
    cases = _cases(star_report(), {"fixed_point_count"})
    ok, detail = _verdict(cases)
    return ok and len(cases) == 12, detail


def criterion_4():
    """Star_n component shapes for k=1, k=2 (idempotent), 2 < k <= n_arms+1."""
    claims = {
        "fixed_points",
        "isolated_zero_plus_tree_at_ones",
        "max_depth_le_2",
        "idempotent",
        "single_component_rooted_at_zero",
        "update_rules_1_to_4",
    }
    return _verdict(_cases(star_report(), claims))


def criterion_5():
    """F o F = F at k=2 for all four families, n <= 12, 20 orders."""
    checked = bad = 0
    first = None
    for f in ALL:
        for n in range(1, 13):
            try:
                fam = FamilyKind(f, n)
            except ValueError:
                continue
            g = fam.graph()
            for order in update_orders(fam, 2, 20, SEED):
                succ = build(ThresholdSds(g, 2, order)).successor
                checked += 1
                if not np.array_equal(succ[succ], succ):
                    bad += 1
                    first = first or (str(fam), order)
    return bad == 0, f"{checked - bad}/{checked} phase spaces idempotent" + (f"; first failure {first}" if first else "")


def criterion_6():
    """Circle extremal order reaches floor(n/2) for n 3..12; exhaustive scan n 3..7 never exceeds it."""
    ok, detail = _verdict(_cases(circle_report(), {"extremal_order_transient", "extremal_order_max_depth"}))
    scans = []
    for n in range(3, 8):
        for k in (1, 3):
            res = scan_orders(FamilyKind(Family.CIRCLE, n), k)
            scans.append((n, k, res.max_depth, n // 2))
    scan_ok = all(m == p for *_, m, p in scans)
    bad = [s for s in scans if s[2] != s[3]]
    return ok and scan_ok, detail + f"; {len(scans) - len(bad)}/{len(scans)} scans at floor(n/2)" + (f"; off {bad}" if bad else "")


def criterion_7():
    """Line: k=1 identity order gives n-1 (n 2..12), k=3 center-out gives ceil(n/2) (n 3..12); scans n <= 7."""
    cases = _cases(line_report(), {"extremal_order_transient"})
    ok, detail = _verdict(cases)
    expected = {(n, 1) for n in range(2, 13)} | {(n, 3) for n in range(3, 13)}
    covered = {(c.params["n"], c.params["k"]) for c in cases} == expected
    scans = []
    for n in range(2, 8):
        for k in (1, 3):
            if k == 3 and n < 3:
                continue
            want = n - 1 if k == 1 else -(-n // 2)
            scans.append((n, k, scan_orders(FamilyKind(Family.LINE, n), k).max_depth, want))
    bad = [s for s in scans if s[2] != s[3]]
    return ok and covered and not bad, detail + f"; {len(scans) - len(bad)}/{len(scans)} scans at bound" + (f"; off {bad}" if bad else "")


def criterion_8():
    """Tabulated maximal GOE-to-fixed-point path lengths, n in {6, 7}, k 1..4, exhaustive over orders."""
    report = verify_table1([6, 7], ks=(1, 2, 3, 4), seed=SEED)
    exhaustive = all(c.note.startswith("exhaustive") for c in report.cases)
    ok, detail = _verdict(report.cases)
    return ok and exhaustive and len(report.cases) == 32, detail + "\n" + report.table


def criterion_9():
    """Only fixed points are periodic: all families, n <= 12, all admissible k, 20 orders."""
    return _verdict(_cases(periodicity_report(), {"longest_cycle"}))


def criterion_10():
    """k=0 sends everything to all-ones and k=max_degree+2 to all-zeros in one step, n <= 10."""
    return _verdict(_cases(periodicity_report(), {"one_step_collapse"}))


def criterion_11():
    """The SDS map preserves the bitwise order: exhaustive n <= 10, random pairs n <= 14."""
    rng = np.random.default_rng(SEED)
    exhaustive = sampled = 0
    for f in ALL:
        for n in range(1, 15):
            try:
                fam = FamilyKind(f, n)
            except ValueError:
                continue
            g = fam.graph()
            for k in range(0, max_degree(g) + 3):
                order = tuple(int(v) for v in rng.permutation(g.n_vertices))
                sds = ThresholdSds(g, k, order)
                if n <= 10:
                    bad = monotonicity_violation(build(sds))
                    if bad is not None:
                        return False, f"{fam} k={k} order={order}: F({bad[0]}) not below F({bad[1]})"
                    exhaustive += 1
                else:
                    for _ in range(50):
                        a = int(rng.integers(0, 2**g.n_vertices))
                        b = a | int(rng.integers(0, 2**g.n_vertices))
                        if sds_step(sds, a) & ~sds_step(sds, b):
                            return False, f"{fam} k={k} order={order}: pair ({a}, {b})"
                        sampled += 1
    return True, f"{exhaustive} maps checked exhaustively, {sampled} random pairs"


def criterion_12():
    """Circ_n, k in {1, 3}: every predicate state has in-degree 0, n <= 12, 10 orders."""
    return _verdict(_cases(circle_report(), {"goe_predicate_implies_in_degree_0"}))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    ok, detail = criterion()
    number = criterion.__name__.split("_")[1]
    print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {criterion.__doc__.splitlines()[0]} ({detail})")
    assert ok, detail


if __name__ == "__main__":
    for crit in CRITERIA:
        ok, detail = crit()
        number = crit.__name__.split("_")[1]
        print(f"[criterion {number:>2}] {'PASS' if ok else 'FAIL'}  {crit.__doc__.splitlines()[0]}  ({detail.splitlines()[0]})")
