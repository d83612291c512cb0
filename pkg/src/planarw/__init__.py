"""planarw: an engine for the planar W-calculus.

Diagrams built from black spiders, binary white weights, cups/caps and
the fermionic swap; exact oracle semantics; polynomial-time evaluation of
scalars via the FKT algorithm; normalization to reduced WGS-X form and
polynomial-time semantic equality; matchgate verification and synthesis.
"""

from .config import Config, default_config
from .terms import (
    DiagramError,
    TermDiagram,
    black,
    bra0,
    bra1,
    build_generator,
    cap,
    compose,
    cup,
    fswap,
    fswap_decomposition,
    identity,
    ket0,
    ket1,
    map_form,
    scalar,
    state_form,
    tensor,
    white,
    x_gate,
)
from .oracle import BitWord, Tensor, interpret, interpret_state, coefficient, scalar_brute
from .graphform import GraphForm, WeightedPlaneGraph, to_graph_form, to_plane_graph
from .opgraph import OpenPlaneGraph, graph_from_term

__all__ = [
    "Config",
    "default_config",
    "DiagramError",
    "TermDiagram",
    "black",
    "white",
    "cup",
    "cap",
    "fswap",
    "identity",
    "scalar",
    "x_gate",
    "ket0",
    "ket1",
    "bra0",
    "bra1",
    "build_generator",
    "tensor",
    "compose",
    "state_form",
    "map_form",
    "fswap_decomposition",
    "BitWord",
    "Tensor",
    "interpret",
    "interpret_state",
    "coefficient",
    "scalar_brute",
    "GraphForm",
    "WeightedPlaneGraph",
    "to_graph_form",
    "to_plane_graph",
    "OpenPlaneGraph",
    "graph_from_term",
]
