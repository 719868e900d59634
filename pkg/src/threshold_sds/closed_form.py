"""Closed-form predictions for the four base-graph families and extremal update orders."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

from .graphs import BaseGraph, circle_graph, complete_graph, line_graph, max_degree, star_graph


class Family(str, enum.Enum):
    COMPLETE = "complete"
    STAR = "star"
    CIRCLE = "circ"
    LINE = "line"

    @classmethod
    def parse(cls, name: str) -> "Family":
        aliases = {"k": cls.COMPLETE, "kn": cls.COMPLETE, "circle": cls.CIRCLE, "path": cls.LINE}
        key = name.strip().lower()
        if key in aliases:
            return aliases[key]
        return cls(key)


_CONSTRUCTORS = {
    Family.COMPLETE: complete_graph,
    Family.STAR: star_graph,
    Family.CIRCLE: circle_graph,
    Family.LINE: line_graph,
}

MIN_SIZE = {Family.COMPLETE: 1, Family.STAR: 1, Family.CIRCLE: 3, Family.LINE: 2}


@dataclass(frozen=True)
class FamilyKind:
    """A graph family plus its size: vertices, or arms for stars."""

    family: Family
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n < MIN_SIZE[self.family]:
            raise ValueError(f"{self.family.value} needs size >= {MIN_SIZE[self.family]}, got {self.n}")

    def graph(self) -> BaseGraph:
        return _CONSTRUCTORS[self.family](self.n)

    @property
    def n_vertices(self) -> int:
        return self.n + 1 if self.family is Family.STAR else self.n

    @property
    def max_degree(self) -> int:
        return max_degree(self.graph())

    def __str__(self) -> str:
        return f"{self.family.value}({self.n})"


def _check_kn(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


def kn_basin_zero_size(n: int, k: int) -> int:
    """Basin of the all-zeros state in K_n: states with 1..k-1 ones."""
    _check_kn(n, k)
    return sum(comb(n, i) for i in range(1, k))


def kn_basin_one_size(n: int, k: int) -> int:
    """Basin of the all-ones state in K_n, fixed points excluded."""
    _check_kn(n, k)
    return 2**n - kn_basin_zero_size(n, k) - 2


def kn_basin_one_tail(n: int, k: int) -> int:
    """Same count written as the states with k..n-1 ones."""
    _check_kn(n, k)
    return sum(comb(n, i) for i in range(k, n))


def star2_fixed_point_count(n_arms: int) -> int:
    if n_arms < 1:
        raise ValueError("n_arms must be >= 1")
    return 2**n_arms


def table1_entry(family: FamilyKind, k: int) -> int:
    """Literal maximal GOE-to-fixed-point path length from the summary table."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = family.n
    f = family.family
    if f is Family.COMPLETE or k == 2 or k > 3:
        return 1
    if f is Family.CIRCLE:
        return n // 2
    if f is Family.LINE:
        return n - 1 if k == 1 else -(-n // 2)
    return 2


def predicted_max_depth(family: FamilyKind, k: int) -> int | None:
    """Predicted maximal transient length, or None outside 1 <= k <= max_degree + 1."""
    if k < 1 or k > family.max_degree + 1:
        return None
    return table1_entry(family, k)


def _alternate(center: int, lo: int, hi: int, wrap: int | None) -> tuple[int, ...]:
    # center, center-1, center+1, center-2, center+2, ... without repeats
    seen: list[int] = [center]
    d = 1
    while len(seen) < (wrap if wrap is not None else hi - lo + 1):
        for v in (center - d, center + d):
            if wrap is not None:
                v %= wrap
            elif not lo <= v <= hi:
                continue
            if v not in seen:
                seen.append(v)
        d += 1
    return tuple(seen)


def extremal_order_circle(n: int, i: int = 0) -> tuple[int, ...]:
    """Update order starting opposite vertex ``i`` and alternating back towards it.

    With a single 1 at ``i`` (k=1), or a single 0 at ``i`` (k=3), the active
    block grows by one vertex per side each step, for floor(n/2) steps.
    """
    if n < 3:
        raise ValueError("circle needs n >= 3")
    if not 0 <= i < n:
        raise IndexError(f"vertex {i} out of range")
    return _alternate((i + n // 2) % n, 0, n - 1, wrap=n)


def extremal_order_line(n: int, k: int) -> tuple[tuple[int, ...], int]:
    """Order and starting state realising the longest transient on a line.

    k=1: identity order from the state with a single 1 at the last vertex.
    k=3: center-out order from the all-ones state.
    """
    if n < 2:
        raise ValueError("line needs n >= 2")
    if k == 1:
        return tuple(range(n)), 1 << (n - 1)
    if k == 3:
        return _alternate((n - 1) // 2, 0, n - 1, wrap=None), (1 << n) - 1
    raise ValueError(f"extremal line order defined for k in {{1, 3}}, got {k}")


def _rotl(state: int, n: int) -> int:
    return ((state << 1) | (state >> (n - 1))) & ((1 << n) - 1)


def circ_goe_predicate(n: int, k: int, state: int) -> bool:
    """Sufficient Garden-of-Eden condition on Circ_n.

    k=1: at least one 1 and no two cyclically adjacent 1s.
    k=3: the same condition on the complemented state.
    """
    full = (1 << n) - 1
    if not 0 <= state <= full:
        raise ValueError(f"state {state} out of range for n={n}")
    if k == 3:
        state ^= full
    elif k != 1:
        raise ValueError(f"GOE predicate defined for k in {{1, 3}}, got {k}")
    return state != 0 and state & _rotl(state, n) == 0
