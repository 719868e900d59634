"""Binary k-threshold sequential dynamical systems.

A system state over ``n`` vertices is an ``int`` in ``[0, 2**n)``; bit ``i``
holds the state of vertex ``i``. The update order is stored as the application
sequence: ``order[0]`` is updated first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import BaseGraph, closed_neighborhood, max_degree

MAX_STEP_VERTICES = 30


class CapExceededError(RuntimeError):
    """An iteration or size limit was hit."""


class NotFixedPointError(ValueError):
    """A state expected to be (or reach) a fixed point does not."""


def state_from_bits(bits: Sequence[int]) -> int:
    """Encode a 0/1 tuple (vertex 0 first) as a state index."""
    s = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bit {i} is {b!r}, expected 0 or 1")
        s |= b << i
    return s


def state_to_bits(state: int, n: int) -> tuple[int, ...]:
    if not 0 <= state < (1 << n):
        raise ValueError(f"state {state} out of range for n={n}")
    return tuple((state >> i) & 1 for i in range(n))


def bitstring(state: int, n: int) -> str:
    """Render a state with vertex 0 leftmost, e.g. ``'1100'``."""
    return "".join(str(b) for b in state_to_bits(state, n))


def all_ones(n: int) -> int:
    return (1 << n) - 1


def threshold_eval(k: int, neighborhood_states: Sequence[int]) -> int:
    """k-simple threshold: 1 iff the number of ones is at least ``k``."""
    return int(sum(neighborhood_states) >= k)


def validate_order(order: Sequence[int], n: int) -> tuple[int, ...]:
    order = tuple(int(v) for v in order)
    if len(order) != n or sorted(order) != list(range(n)):
        raise ValueError(f"update order {order} is not a permutation of 0..{n - 1}")
    return order


def identity_order(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def random_order(n: int, rng: np.random.Generator) -> tuple[int, ...]:
    return tuple(int(v) for v in rng.permutation(n))


@dataclass(frozen=True)
class ThresholdSds:
    """The triple (graph, threshold k, update order)."""

    graph: BaseGraph
    k: int
    order: tuple[int, ...]

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("threshold k must be >= 0")
        object.__setattr__(self, "order", validate_order(self.order, self.graph.n_vertices))

    @classmethod
    def with_identity(cls, graph: BaseGraph, k: int) -> "ThresholdSds":
        return cls(graph, k, identity_order(graph.n_vertices))

    @property
    def n(self) -> int:
        return self.graph.n_vertices

    @property
    def out_of_regime(self) -> bool:
        """True for k = 0 or k > max_degree + 1, where the dynamics collapse in one step."""
        return self.k == 0 or self.k > max_degree(self.graph) + 1

    def masks(self) -> list[int]:
        """Closed-neighborhood bit masks in update order."""
        return [sum(1 << u for u in closed_neighborhood(self.graph, v)) for v in self.order]


def _check_width(sds: ThresholdSds) -> None:
    if sds.n > MAX_STEP_VERTICES:
        raise CapExceededError(f"n={sds.n} exceeds the single-step cap of {MAX_STEP_VERTICES}")


def local_update(sds: ThresholdSds, state: int, v: int) -> int:
    """Apply the Y-local function of vertex ``v``."""
    _check_width(sds)
    nbhd = closed_neighborhood(sds.graph, v)
    bit = threshold_eval(sds.k, [(state >> u) & 1 for u in nbhd])
    return (state & ~(1 << v)) | (bit << v)


def sds_step(sds: ThresholdSds, state: int) -> int:
    """One application of the SDS map: local updates folded in ``sds.order``."""
    _check_width(sds)
    k = sds.k
    for v, mask in zip(sds.order, sds.masks()):
        if (state & mask).bit_count() >= k:
            state |= 1 << v
        else:
            state &= ~(1 << v)
    return state


def sds_map_array(sds: ThresholdSds, states: np.ndarray) -> np.ndarray:
    """Vectorized ``sds_step`` over an array of state indices."""
    _check_width(sds)
    x = np.array(states, dtype=np.uint32, copy=True)
    for v, mask in zip(sds.order, sds.masks()):
        on = np.bitwise_count(x & np.uint32(mask)) >= sds.k
        bit = np.uint32(1 << v)
        x &= ~bit
        x |= on.astype(np.uint32) << np.uint32(v)
    return x


def forward_orbit(sds: ThresholdSds, start: int, cap: int | None = None) -> tuple[list[int], list[int]]:
    """Iterate until a state recurs. Returns ``(transient, cycle)``."""
    if cap is None:
        cap = 1 << sds.n
    if cap < 1:
        raise ValueError("cap must be >= 1")
    seen: dict[int, int] = {}
    path: list[int] = []
    x = start
    while x not in seen:
        if len(path) >= cap:
            raise CapExceededError(f"no recurrence within {cap} steps from state {start}")
        seen[x] = len(path)
        path.append(x)
        x = sds_step(sds, x)
    i = seen[x]
    return path[:i], path[i:]


def transient_length(sds: ThresholdSds, start: int) -> int:
    """Smallest r with F^r(start) == F^(r+1)(start)."""
    transient, cycle = forward_orbit(sds, start)
    if len(cycle) != 1:
        raise NotFixedPointError(f"orbit of {start} ends in a cycle of length {len(cycle)}")
    return len(transient)
