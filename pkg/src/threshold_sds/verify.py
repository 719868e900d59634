"""Check structural claims about threshold SDS phase spaces by exhaustive computation.

Every suite returns a :class:`VerificationReport`. A case passes iff its
predicted and measured values are equal; bound-style claims are encoded as
booleans. Failing cases keep the first counterexample seen (order and state),
so they can be replayed.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from .closed_form import (
    Family,
    MIN_SIZE,
    FamilyKind,
    circ_goe_predicate,
    extremal_order_circle,
    extremal_order_line,
    kn_basin_one_size,
    kn_basin_one_tail,
    kn_basin_zero_size,
    predicted_max_depth,
    star2_fixed_point_count,
    table1_entry,
)
from .engine import (
    CapExceededError,
    ThresholdSds,
    all_ones,
    bitstring,
    identity_order,
    random_order,
    transient_length,
)
from .graphs import max_degree
from .phase_space import (
    DEFAULT_CAP,
    PhaseSpace,
    Shape,
    basin,
    build,
    component_profile,
    components,
    fixed_points,
    max_depth,
    periodic_cycles,
)

DEFAULT_SEED = 7
SCAN_BUDGET = 7
TABLE_SCAN_BUDGET = 8

_FAMILY_CODE = {Family.COMPLETE: 0, Family.STAR: 1, Family.CIRCLE: 2, Family.LINE: 3}


class ScanBudgetError(CapExceededError):
    """Exhaustive order scan requested beyond the factorial budget."""


@dataclass
class CaseResult:
    params: dict[str, Any]
    claim: str
    predicted: Any
    measured: Any = None
    passed: bool = True
    counterexample: dict[str, Any] | None = None
    note: str = ""

    def observe(self, measured: Any, **witness: Any) -> bool:
        """Record one measurement; the first mismatch freezes the case as failed."""
        if not self.passed:
            return False
        self.measured = measured
        if measured != self.predicted:
            self.passed = False
            self.counterexample = {k: _jsonable(v) for k, v in witness.items()}
        return self.passed


@dataclass
class VerificationReport:
    suite: str
    seed: int
    cases: list[CaseResult] = field(default_factory=list)
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)
    table: str = ""

    def case(self, params: dict[str, Any], claim: str, predicted: Any, note: str = "") -> CaseResult:
        c = CaseResult(dict(params), claim, predicted, note=note)
        self.cases.append(c)
        return c

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def sort(self) -> None:
        self.cases.sort(key=lambda c: (sorted(c.params.items(), key=str).__repr__(), c.claim))

    def merge(self, other: "VerificationReport") -> None:
        self.cases.extend(other.cases)
        self.notes.extend(other.notes)
        self.wall_time += other.wall_time
        if other.table:
            self.table = (self.table + "\n" + other.table).strip("\n")

    def summary(self) -> str:
        return f"{self.suite}: {len(self.cases) - len(self.failures)}/{len(self.cases)} cases passed in {self.wall_time:.2f}s"

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["cases"] = [{k: _jsonable(v) for k, v in asdict(c).items()} for c in self.cases]
        d["passed"] = len(self.cases) - len(self.failures)
        d["failed"] = len(self.failures)
        return d


def _jsonable(v: Any) -> Any:
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def case_rng(seed: int, family: FamilyKind, k: int) -> np.random.Generator:
    """Generator keyed on (seed, family, size, k) so every case replays on its own."""
    return np.random.default_rng([seed, _FAMILY_CODE[family.family], family.n, k])


def update_orders(family: FamilyKind, k: int, orders_per_case: int, seed: int) -> list[tuple[int, ...]]:
    """Identity followed by ``orders_per_case`` seeded random orders."""
    n = family.n_vertices
    rng = case_rng(seed, family, k)
    return [identity_order(n)] + [random_order(n, rng) for _ in range(orders_per_case)]


def _sizes(n_range: Iterable[int], family: Family) -> list[int]:
    return [n for n in n_range if n >= MIN_SIZE[family]]


def _phase_spaces(
    family: FamilyKind, k: int, orders_per_case: int, seed: int, cap: int = DEFAULT_CAP
) -> Iterator[tuple[tuple[int, ...], ThresholdSds, PhaseSpace]]:
    g = family.graph()
    for order in update_orders(family, k, orders_per_case, seed):
        sds = ThresholdSds(g, k, order)
        yield order, sds, build(sds, cap)


def _params(family: FamilyKind, k: int) -> dict[str, Any]:
    return {"family": family.family.value, "n": family.n, "k": k}


def _first_non_idempotent(ps: PhaseSpace) -> int | None:
    bad = np.flatnonzero(ps.successor[ps.successor] != ps.successor)
    return int(bad[0]) if bad.size else None


def _bits(state: int | None, n: int) -> str | None:
    return None if state is None else bitstring(state, n)


def _deepest_state(ps: PhaseSpace) -> int:
    return int(np.argmax(ps.depth))


def verify_complete(
    n_range: Iterable[int], orders_per_case: int = 5, seed: int = DEFAULT_SEED
) -> VerificationReport:
    """Two star-shaped components at all-zeros and all-ones, closed-form basins, order independence."""
    report = VerificationReport("complete", seed)
    t0 = time.perf_counter()
    for n in _sizes(n_range, Family.COMPLETE):
        fam = FamilyKind(Family.COMPLETE, n)
        ones = all_ones(n)
        for k in range(1, n + 1):
            p = _params(fam, k)
            n_comp = report.case(p, "component_count", 2)
            shapes = report.case(p, "shapes_star_or_isolated", True)
            depth = report.case(p, "max_depth_le_1", True)
            fps = report.case(p, "fixed_points", [0, ones])
            b0 = report.case(p, "basin_zero_size", kn_basin_zero_size(n, k))
            b1 = report.case(p, "basin_one_size", kn_basin_one_size(n, k))
            tail = report.case(p, "basin_one_tail_identity", kn_basin_one_tail(n, k))
            same_map = report.case(p, "successor_order_independent", True)
            same_profile = report.case(p, "profile_order_independent", True)
            ref_succ = ref_profile = None
            for order, _, ps in _phase_spaces(fam, k, orders_per_case, seed):
                comps = components(ps)
                n_comp.observe(len(comps), order=order)
                shapes.observe(
                    all(c.shape in (Shape.STAR_SHAPED, Shape.ISOLATED_FIXED_POINT) for c in comps), order=order
                )
                depth.observe(max_depth(ps) <= 1, order=order, state=bitstring(_deepest_state(ps), n))
                fps.observe(fixed_points(ps), order=order)
                b0.observe(len(basin(ps, 0)), order=order)
                b1.observe(len(basin(ps, ones)), order=order)
                tail.observe(len(basin(ps, ones)), order=order)
                profile = component_profile(ps)
                if ref_succ is None:
                    ref_succ, ref_profile = ps.successor, profile
                diff = np.flatnonzero(ps.successor != ref_succ)
                same_map.observe(
                    diff.size == 0, order=order, state=bitstring(int(diff[0]), n) if diff.size else None
                )
                same_profile.observe(profile == ref_profile, order=order)
    report.wall_time = time.perf_counter() - t0
    report.sort()
    return report


def _star_rules_hold(sds: ThresholdSds, state: int) -> str | None:
    """Walk one system update on a 2-threshold star; name the first violated rule."""
    x = state
    center_mask = 1
    for v in sds.order:
        xc = x & center_mask
        if v == 0:
            arm_ones = (x >> 1).bit_count()
            new = int(arm_ones + xc >= sds.k)
            if not xc and new and arm_ones < 2:
                return "rule3"
            if xc and new and arm_ones < 1:
                return "rule4"
        else:
            new = int(((x >> v) & 1) + xc >= sds.k)
            if not xc and new:
                return "rule1"
            if xc and new != (x >> v) & 1:
                return "rule2"
        x = (x & ~(1 << v)) | (new << v)
    return None


def _sample_states(n: int, rng: np.random.Generator, limit: int = 256) -> list[int]:
    size = 1 << n
    if size <= limit:
        return list(range(size))
    return [int(s) for s in rng.integers(0, size, limit)]


def verify_star(n_range: Iterable[int], orders_per_case: int = 10, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Star_n claims for k=1, k=2 (with update rules), and 2 < k <= n+1; ``n_range`` counts arms."""
    report = VerificationReport("star", seed)
    t0 = time.perf_counter()
    for n in _sizes(n_range, Family.STAR):
        fam = FamilyKind(Family.STAR, n)
        nv = n + 1
        ones = all_ones(nv)
        for k in range(1, n + 2):
            p = _params(fam, k)
            if k == 1:
                fps = report.case(p, "fixed_points", [0, ones])
                comps_ok = report.case(p, "isolated_zero_plus_tree_at_ones", True)
                depth = report.case(p, "max_depth_le_2", True)
            elif k == 2:
                idem = report.case(p, "idempotent", True)
                nfix = report.case(p, "fixed_point_count", star2_fixed_point_count(n))
                rules = report.case(p, "update_rules_1_to_4", None)
            else:
                fps = report.case(p, "fixed_points", [0])
                comps_ok = report.case(p, "single_component_rooted_at_zero", True)
                depth = report.case(p, "max_depth_le_2", True)
            rng = np.random.default_rng([seed, 99, n, k])
            for order, sds, ps in _phase_spaces(fam, k, orders_per_case, seed):
                if k == 2:
                    bad = _first_non_idempotent(ps)
                    idem.observe(bad is None, order=order, state=_bits(bad, nv))
                    nfix.observe(len(fixed_points(ps)), order=order)
                    for s in _sample_states(nv, rng):
                        broken = _star_rules_hold(sds, s)
                        if broken:
                            rules.observe(broken, order=order, state=bitstring(s, nv))
                            break
                    else:
                        rules.observe(None)
                    continue
                comps = components(ps)
                fps.observe(fixed_points(ps), order=order)
                depth.observe(max_depth(ps) <= 2, order=order, state=bitstring(_deepest_state(ps), nv))
                if k == 1:
                    shape = len(comps) == 2 and comps[0].root == 0 and comps[0].member_count == 1
                    shape = shape and comps[1].root == ones and len(comps[1].cycle) == 1
                else:
                    shape = len(comps) == 1 and comps[0].root == 0 and len(comps[0].cycle) == 1
                comps_ok.observe(shape, order=order)
    report.wall_time = time.perf_counter() - t0
    report.sort()
    return report


def _goe_direction(ps: PhaseSpace, n: int, k: int) -> tuple[bool, int | None, int]:
    """(every predicate state is a GOE, first violator, GOEs the predicate misses)."""
    indeg = ps.in_degree
    first = None
    missed = 0
    for s in range(ps.size):
        pred = circ_goe_predicate(n, k, s)
        if pred and indeg[s] != 0 and first is None:
            first = s
        if not pred and indeg[s] == 0:
            missed += 1
    return first is None, first, missed


def verify_circle(n_range: Iterable[int], orders_per_case: int = 10, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Circ_n: k=1 and k=3 dual tree structure with GOE characterization and extremal depth; k=2 idempotence."""
    report = VerificationReport("circle", seed)
    t0 = time.perf_counter()
    for n in _sizes(n_range, Family.CIRCLE):
        fam = FamilyKind(Family.CIRCLE, n)
        ones = all_ones(n)
        g = fam.graph()
        for k in (1, 2, 3):
            p = _params(fam, k)
            if k == 2:
                idem = report.case(p, "idempotent", True)
                for order, _, ps in _phase_spaces(fam, k, orders_per_case, seed):
                    bad = _first_non_idempotent(ps)
                    idem.observe(bad is None, order=order, state=_bits(bad, n))
                continue
            isolated, root = (0, ones) if k == 1 else (ones, 0)
            structure = report.case(p, "isolated_fixed_point_plus_tree", True)
            goe = report.case(p, "goe_predicate_implies_in_degree_0", True)
            bound = report.case(p, "tested_orders_depth_le_floor_n_2", True)
            missed_total = n_orders = 0
            for order, _, ps in _phase_spaces(fam, k, orders_per_case, seed):
                comps = components(ps)
                by_root = {c.root: c for c in comps}
                ok = (
                    len(comps) == 2
                    and isolated in by_root
                    and by_root[isolated].member_count == 1
                    and root in by_root
                    and len(by_root[root].cycle) == 1
                )
                structure.observe(ok, order=order)
                holds, first, missed = _goe_direction(ps, n, k)
                missed_total += missed
                n_orders += 1
                goe.observe(holds, order=order, state=_bits(first, n))
                bound.observe(max_depth(ps) <= n // 2, order=order, state=bitstring(_deepest_state(ps), n))
            if missed_total:
                report.notes.append(
                    f"circ n={n} k={k}: {missed_total} GOE states outside the predicate over {n_orders} orders"
                    " (converse not claimed)"
                )
            order = extremal_order_circle(n, 0)
            start = 1 if k == 1 else ones ^ 1
            sds = ThresholdSds(g, k, order)
            report.case(p, "extremal_order_transient", n // 2).observe(
                transient_length(sds, start), order=order, state=bitstring(start, n)
            )
            report.case(p, "extremal_order_max_depth", n // 2).observe(max_depth(build(sds)), order=order)
    report.wall_time = time.perf_counter() - t0
    report.sort()
    return report


def verify_line(n_range: Iterable[int], orders_per_case: int = 10, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Line_n: k=1 depth n-1, k=2 idempotence, k=3 single tree with depth ceil(n/2)."""
    report = VerificationReport("line", seed)
    t0 = time.perf_counter()
    for n in _sizes(n_range, Family.LINE):
        fam = FamilyKind(Family.LINE, n)
        ones = all_ones(n)
        g = fam.graph()
        for k in (1, 2, 3):
            if k == 3 and n < 3:
                continue  # k=3 exceeds max_degree+1 on Line_2
            p = _params(fam, k)
            if k == 2:
                idem = report.case(p, "idempotent", True)
                for order, _, ps in _phase_spaces(fam, k, orders_per_case, seed):
                    bad = _first_non_idempotent(ps)
                    idem.observe(bad is None, order=order, state=_bits(bad, n))
                continue
            limit = n - 1 if k == 1 else -(-n // 2)
            structure = report.case(p, "component_structure", True)
            bound = report.case(p, "tested_orders_depth_le_bound", True)
            for order, _, ps in _phase_spaces(fam, k, orders_per_case, seed):
                comps = components(ps)
                if k == 1:
                    ok = len(comps) == 2 and comps[0].root == 0 and comps[0].member_count == 1
                    ok = ok and comps[1].root == ones and len(comps[1].cycle) == 1
                else:
                    ok = len(comps) == 1 and comps[0].root == 0 and len(comps[0].cycle) == 1
                structure.observe(ok, order=order)
                bound.observe(max_depth(ps) <= limit, order=order, state=bitstring(_deepest_state(ps), n))
            order, start = extremal_order_line(n, k)
            sds = ThresholdSds(g, k, order)
            report.case(p, "extremal_order_transient", limit).observe(
                transient_length(sds, start), order=order, state=bitstring(start, n)
            )
    report.wall_time = time.perf_counter() - t0
    report.sort()
    return report


@dataclass(frozen=True)
class ScanResult:
    family: FamilyKind
    k: int
    max_depth: int
    witness: tuple[int, ...]
    witness_state: int
    orders_scanned: int


def scan_orders(family: FamilyKind, k: int, budget: int = SCAN_BUDGET) -> ScanResult:
    """Maximum transient length over every update order of the family's graph."""
    nv = family.n_vertices
    if nv > budget:
        raise ScanBudgetError(
            f"{family} has {nv} vertices ({math.factorial(nv)} orders); scan budget is {budget} vertices"
        )
    g = family.graph()
    best, witness, state, count = -1, identity_order(nv), 0, 0
    for order in itertools.permutations(range(nv)):
        ps = build(ThresholdSds(g, k, order))
        d = max_depth(ps)
        count += 1
        if d > best:
            best, witness, state = d, order, _deepest_state(ps)
    return ScanResult(family, k, best, witness, state, count)


def sampled_max_depth(family: FamilyKind, k: int, n_orders: int, seed: int) -> tuple[int, tuple[int, ...], int]:
    """Lower bound on the maximum depth from constructed and seeded random orders."""
    g = family.graph()
    orders = update_orders(family, k, n_orders, seed)
    if family.family is Family.CIRCLE:
        orders.append(extremal_order_circle(family.n, 0))
    elif family.family is Family.LINE and k in (1, 3):
        orders.append(extremal_order_line(family.n, k)[0])
    best, witness, state = -1, orders[0], 0
    for order in orders:
        ps = build(ThresholdSds(g, k, order))
        d = max_depth(ps)
        if d > best:
            best, witness, state = d, order, _deepest_state(ps)
    return best, witness, state


TABLE_FAMILIES = (Family.COMPLETE, Family.CIRCLE, Family.LINE, Family.STAR)


def verify_table1(
    n_range: Iterable[int],
    ks: Sequence[int] = (1, 2, 3, 4),
    budget: int = TABLE_SCAN_BUDGET,
    sampled_orders: int = 50,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Measured maximal transient over update orders beside the tabulated values."""
    report = VerificationReport("table1", seed)
    t0 = time.perf_counter()
    blocks = []
    for n in n_range:
        cells: dict[tuple[int, Family], str] = {}
        for f in TABLE_FAMILIES:
            try:
                fam = FamilyKind(f, n)
            except ValueError:
                continue
            for k in ks:
                expected = table1_entry(fam, k)
                collapse = predicted_max_depth(fam, k) is None
                if fam.n_vertices <= budget:
                    res = scan_orders(fam, k, budget)
                    measured, witness, state, mode = res.max_depth, res.witness, res.witness_state, "exhaustive"
                else:
                    measured, witness, state = sampled_max_depth(fam, k, sampled_orders, seed)
                    mode = "lower-bound"
                note = mode + (", one-step collapse regime (k > max_degree+1)" if collapse else "")
                c = report.case(_params(fam, k), "max_goe_to_fixed_point_path", expected, note=note)
                c.observe(measured, order=witness, state=bitstring(state, fam.n_vertices))
                mark = "ok" if c.passed else "FAIL"
                cells[k, f] = f"{measured}/{expected} {mark}{'*' if collapse else ''}"
        blocks.append(_render_table(n, ks, cells))
    report.table = "\n\n".join(blocks)
    report.notes.append("cells read measured/tabulated; * marks the one-step collapse regime")
    report.wall_time = time.perf_counter() - t0
    report.sort()
    return report


def _render_table(n: int, ks: Sequence[int], cells: dict[tuple[int, Family], str]) -> str:
    header = [f"n={n}"] + [f.value for f in TABLE_FAMILIES]
    rows = [header] + [[f"k={k}"] + [cells.get((k, f), "-") for f in TABLE_FAMILIES] for k in ks]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows)


def verify_fixed_points_only(
    families: Iterable[Family],
    n_range: Iterable[int],
    orders_per_case: int = 20,
    seed: int = DEFAULT_SEED,
    degenerate_nmax: int | None = None,
) -> VerificationReport:
    """No periodic cycles longer than one for 1 <= k <= max_degree+1; one-step collapse at k=0 and k=max_degree+2.

    ``degenerate_nmax`` limits the collapse checks to family sizes up to that value.
    """
    report = VerificationReport("fixed_points_only", seed)
    t0 = time.perf_counter()
    for f in families:
        f = Family(f)
        for n in _sizes(n_range, f):
            fam = FamilyKind(f, n)
            g = fam.graph()
            nv = fam.n_vertices
            delta = max_degree(g)
            for k in range(1, delta + 2):
                c = report.case(_params(fam, k), "longest_cycle", 1)
                for order, _, ps in _phase_spaces(fam, k, orders_per_case, seed):
                    longest = max(len(cyc) for cyc in periodic_cycles(ps))
                    c.observe(longest, order=order)
            if degenerate_nmax is not None and n > degenerate_nmax:
                continue
            for k, target in ((0, all_ones(nv)), (delta + 2, 0)):
                c = report.case(_params(fam, k), "one_step_collapse", True)
                for order, _, ps in _phase_spaces(fam, k, orders_per_case, seed):
                    bad = np.flatnonzero(ps.successor != target)
                    c.observe(bad.size == 0, order=order, state=_bits(int(bad[0]) if bad.size else None, nv))
    report.wall_time = time.perf_counter() - t0
    report.sort()
    return report


SUITES = ("complete", "star", "circle", "line", "table1", "fixed_points")


def run_suites(
    suites: Iterable[str], nmax: int, orders_per_case: int, seed: int, nmin: int = 1
) -> VerificationReport:
    """Run the named suites over sizes ``nmin..nmax`` and merge the reports."""
    suites = list(suites)
    if "all" in suites:
        suites = list(SUITES)
    sizes = range(nmin, nmax + 1)
    merged = VerificationReport("+".join(suites), seed)
    for s in suites:
        if s == "complete":
            r = verify_complete(sizes, orders_per_case, seed)
        elif s == "star":
            r = verify_star(sizes, orders_per_case, seed)
        elif s in ("circle", "circ"):
            r = verify_circle(sizes, orders_per_case, seed)
        elif s == "line":
            r = verify_line(sizes, orders_per_case, seed)
        elif s == "table1":
            r = verify_table1(range(max(nmin, 3), nmax + 1), seed=seed)
        elif s == "fixed_points":
            r = verify_fixed_points_only(TABLE_FAMILIES, sizes, orders_per_case, seed)
        else:
            raise ValueError(f"unknown suite {s!r}; choose from {', '.join(SUITES)} or 'all'")
        merged.merge(r)
    return merged
