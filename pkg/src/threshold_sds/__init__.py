"""Phase-space analysis of binary k-threshold sequential dynamical systems."""

__version__ = "0.1.0"

from .engine import (
    CapExceededError,
    NotFixedPointError,
    ThresholdSds,
    bitstring,
    forward_orbit,
    local_update,
    sds_step,
    state_from_bits,
    state_to_bits,
    threshold_eval,
    transient_length,
)
from .graphs import (
    BaseGraph,
    GraphError,
    circle_graph,
    closed_neighborhood,
    complete_graph,
    line_graph,
    max_degree,
    star_graph,
)
from .phase_space import PhaseSpace, build, components, fixed_points, goe_states

__all__ = [
    "BaseGraph",
    "CapExceededError",
    "GraphError",
    "NotFixedPointError",
    "PhaseSpace",
    "ThresholdSds",
    "bitstring",
    "build",
    "circle_graph",
    "closed_neighborhood",
    "complete_graph",
    "components",
    "fixed_points",
    "forward_orbit",
    "goe_states",
    "line_graph",
    "local_update",
    "max_degree",
    "sds_step",
    "star_graph",
    "state_from_bits",
    "state_to_bits",
    "threshold_eval",
    "transient_length",
]
