"""Exhaustive phase spaces of SDS maps and their functional-graph structure."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .engine import CapExceededError, NotFixedPointError, ThresholdSds, bitstring, sds_map_array

DEFAULT_CAP = 24


class NotATreeError(ValueError):
    """Depth was requested for a component whose periodic part is not a fixed point."""


class Shape(str, enum.Enum):
    ISOLATED_FIXED_POINT = "IsolatedFixedPoint"
    STAR_SHAPED = "StarShaped"
    ROOTED_TREE = "RootedTree"
    CYCLE_COMPONENT = "CycleComponent"


@dataclass(frozen=True)
class ComponentReport:
    root: int  # smallest periodic state, used as the component key
    member_count: int
    cycle: tuple[int, ...]
    depth: int
    goe_count: int

    @property
    def shape(self) -> Shape:
        if len(self.cycle) >= 2:
            return Shape.CYCLE_COMPONENT
        if self.depth == 0:
            return Shape.ISOLATED_FIXED_POINT
        if self.depth == 1:
            return Shape.STAR_SHAPED
        return Shape.ROOTED_TREE

    def profile(self) -> tuple:
        return (self.member_count, self.depth, self.shape.value, len(self.cycle))


class PhaseSpace:
    """Successor table over all ``2**n`` states, with lazily derived structure.

    Instances are treated as immutable; the arrays are marked read-only.
    """

    def __init__(self, n: int, successor: np.ndarray):
        successor = np.asarray(successor, dtype=np.int64)
        if successor.shape != (1 << n,):
            raise ValueError(f"successor table must have length 2**{n}")
        if successor.size and (successor.min() < 0 or successor.max() >= successor.size):
            raise ValueError("successor entries out of range")
        successor.setflags(write=False)
        self.n = n
        self.successor = successor

    @property
    def size(self) -> int:
        return self.successor.size

    @cached_property
    def in_degree(self) -> np.ndarray:
        deg = np.bincount(self.successor, minlength=self.size)
        deg.setflags(write=False)
        return deg

    @cached_property
    def _structure(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Peel in-degree-0 layers, then label depth and root from the cycles outward.

        Returns ``(periodic_mask, depth, root)``; ``root`` is the smallest state of
        the cycle each state drains into.
        """
        succ = self.successor
        indeg = np.bincount(succ, minlength=self.size)
        alive = np.ones(self.size, dtype=bool)
        layers = []
        frontier = np.flatnonzero(indeg == 0)
        while frontier.size:
            layers.append(frontier)
            alive[frontier] = False
            targets = succ[frontier]
            np.subtract.at(indeg, targets, 1)
            targets = np.unique(targets)
            frontier = targets[(indeg[targets] == 0) & alive[targets]]

        periodic = alive
        root = np.arange(self.size, dtype=np.int64)
        if np.any(succ[periodic] != np.flatnonzero(periodic)):
            # cycles longer than one: pointer jumping finds the minimum state of each cycle
            jump = succ.copy()
            for _ in range(max(1, int(self.size).bit_length())):
                root = np.minimum(root, root[jump])
                jump = jump[jump]
        depth = np.zeros(self.size, dtype=np.int64)
        for layer in reversed(layers):
            depth[layer] = depth[succ[layer]] + 1
            root[layer] = root[succ[layer]]
        for arr in (periodic, depth, root):
            arr.setflags(write=False)
        return periodic, depth, root

    @property
    def periodic_mask(self) -> np.ndarray:
        return self._structure[0]

    @property
    def depth(self) -> np.ndarray:
        """Distance of every state to its periodic cycle."""
        return self._structure[1]

    @property
    def root(self) -> np.ndarray:
        return self._structure[2]

    def bits(self, state: int) -> str:
        return bitstring(int(state), self.n)


def build(sds: ThresholdSds, cap: int = DEFAULT_CAP) -> PhaseSpace:
    """Tabulate the SDS map over every state."""
    if sds.n > cap:
        raise CapExceededError(f"n={sds.n} exceeds the phase-space cap of {cap} vertices")
    states = np.arange(1 << sds.n, dtype=np.uint32)
    return PhaseSpace(sds.n, sds_map_array(sds, states))


def fixed_points(ps: PhaseSpace) -> list[int]:
    return np.flatnonzero(ps.successor == np.arange(ps.size)).tolist()


def periodic_cycles(ps: PhaseSpace) -> list[tuple[int, ...]]:
    """Every cycle once, each starting at its smallest state, sorted by that state."""
    cycles = []
    for r in np.flatnonzero(ps.periodic_mask & (ps.root == np.arange(ps.size))):
        cyc = [int(r)]
        x = int(ps.successor[r])
        while x != r:
            cyc.append(x)
            x = int(ps.successor[x])
        cycles.append(tuple(cyc))
    return cycles


def goe_states(ps: PhaseSpace) -> list[int]:
    return np.flatnonzero(ps.in_degree == 0).tolist()


def predecessors(ps: PhaseSpace, y: int) -> list[int]:
    if not 0 <= y < ps.size:
        raise IndexError(f"state {y} out of range for n={ps.n}")
    return np.flatnonzero(ps.successor == y).tolist()


def is_idempotent(ps: PhaseSpace) -> bool:
    """True when F(F(x)) == F(x) for every state."""
    return bool(np.array_equal(ps.successor[ps.successor], ps.successor))


def monotonicity_violation(ps: PhaseSpace) -> tuple[int, int] | None:
    """First pair ``a <= b`` (bitwise) with ``F(a)`` not below ``F(b)``, or None.

    Checking covering pairs ``(s, s | bit)`` suffices: the order is generated by them.
    """
    succ = ps.successor
    states = np.arange(ps.size, dtype=np.int64)
    for i in range(ps.n):
        lo = states[(states >> i) & 1 == 0]
        hi = lo | (1 << i)
        bad = np.flatnonzero(succ[lo] & ~succ[hi])
        if bad.size:
            return int(lo[bad[0]]), int(hi[bad[0]])
    return None


def components(ps: PhaseSpace) -> list[ComponentReport]:
    """Weakly connected components, ordered by their root state."""
    root, depth = ps.root, ps.depth
    roots, counts = np.unique(root, return_counts=True)
    index = np.searchsorted(roots, root)
    depths = np.zeros(roots.size, dtype=np.int64)
    np.maximum.at(depths, index, depth)
    goes = np.bincount(index[ps.in_degree == 0], minlength=roots.size)
    cycles = {c[0]: c for c in periodic_cycles(ps)}
    return [
        ComponentReport(int(r), int(c), cycles[int(r)], int(d), int(g))
        for r, c, d, g in zip(roots, counts, depths, goes)
    ]


def component_profile(ps: PhaseSpace) -> list[tuple]:
    """Sorted multiset of component (size, depth, shape, cycle length)."""
    return sorted(c.profile() for c in components(ps))


def component_depth(ps: PhaseSpace, component: ComponentReport) -> int:
    """Longest transient in a component whose periodic part is a fixed point."""
    if len(component.cycle) != 1:
        raise NotATreeError(f"component rooted at {component.root} has a cycle of length {len(component.cycle)}")
    return int(ps.depth[ps.root == component.root].max())


def max_depth(ps: PhaseSpace) -> int:
    """Longest transient over the whole phase space."""
    return int(ps.depth.max())


def basin(ps: PhaseSpace, p: int) -> set[int]:
    """States other than the fixed point ``p`` whose orbit ends at ``p``."""
    if not 0 <= p < ps.size:
        raise IndexError(f"state {p} out of range for n={ps.n}")
    if ps.successor[p] != p:
        raise NotFixedPointError(f"state {ps.bits(p)} is not a fixed point")
    members = np.flatnonzero(ps.root == p)
    return set(members[members != p].tolist())


def to_dot(ps: PhaseSpace, name: str = "phase_space") -> str:
    """GraphViz source: one node per state labelled by its bit string, one edge per transition.

    Garden-of-Eden nodes carry ``goe=true`` and fixed points ``fixed=true``.
    """
    indeg = ps.in_degree
    lines = [f'digraph "{name}" {{', "\tnode [shape=box, fontname=monospace];"]
    for s in range(ps.size):
        attrs = [f'label="{ps.bits(s)}"']
        if indeg[s] == 0:
            attrs.append("goe=true")
            attrs.append("style=dashed")
        if ps.successor[s] == s:
            attrs.append("fixed=true")
            attrs.append("peripheries=2")
        lines.append(f"\ts{s} [{', '.join(attrs)}];")
    for s, t in enumerate(ps.successor.tolist()):
        lines.append(f"\ts{s} -> s{t};")
    lines.append("}")
    return "\n".join(lines) + "\n"
