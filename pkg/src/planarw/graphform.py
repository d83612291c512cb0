"""Black-only weighted graph forms of diagrams.

``to_graph_form`` flattens a term to black vertices with weighted edges:
white nodes fold into edge weights and every fermionic swap expands into
a planar six-vertex gadget (an hourglass with one -1 edge), so the
matching sum needs no sign bookkeeping.  ``to_plane_graph`` additionally
keeps the rotation system induced by the term's grid layout, which is
what the FKT backend consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._splice import End, Splicer
from .terms import Comp, DiagramError, Gen, Tens, TermDiagram, state_form


@dataclass
class GraphForm:
    """Abstract weighted graph of a diagram (state-form boundary ports)."""

    vertices: list[int]
    edges: list[tuple[int, int, complex]]
    legs: list[tuple[int, int, complex]]  # (vertex, port, weight)
    wires: list[tuple[int, int, complex]]  # (port, port, weight)
    loops: list[complex]
    scalar: complex
    ports: list[int]

    def merged_edges(self) -> list[tuple[int, int, complex]]:
        """Parallel edges merged by weight sum, self-loops dropped."""
        acc: dict[tuple[int, int], complex] = {}
        for (u, v, w) in self.edges:
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            acc[key] = acc.get(key, 0.0) + w
        return [(u, v, w) for (u, v), w in sorted(acc.items())]


@dataclass
class WeightedPlaneGraph:
    """Plane multigraph: vertices 1..n, weighted edges, CCW rotations.

    ``rotation[v]`` lists half-edges ``(edge_id, side)`` counterclockwise;
    ``endpoints[eid][side]`` is the vertex the half-edge is attached to.
    ``outer`` designates the outer face by a directed half-edge.
    """

    n: int
    endpoints: dict[int, tuple[int, int]]
    weights: dict[int, complex]
    rotation: dict[int, list[tuple[int, int]]]
    outer: tuple[int, int] | None = None
    scalar: complex = 1.0
    loops: list[complex] = field(default_factory=list)

    def edge_ids(self) -> list[int]:
        return sorted(self.endpoints)

    def check_rotation(self) -> None:
        """The rotation system must be a permutation of half-edges."""
        seen = set()
        for v, rots in self.rotation.items():
            for (eid, side) in rots:
                if eid not in self.endpoints:
                    raise ValueError(f"rotation at {v} names unknown edge {eid}")
                if self.endpoints[eid][side] != v:
                    raise ValueError(f"half-edge ({eid},{side}) not incident to {v}")
                if (eid, side) in seen:
                    raise ValueError(f"half-edge ({eid},{side}) listed twice")
                seen.add((eid, side))
        for eid, (u, v) in self.endpoints.items():
            if (eid, 0) not in seen or (eid, 1) not in seen:
                raise ValueError(f"edge {eid} missing from rotation system")


# ---------------------------------------------------------------------------
# term sweep

# CCW port layouts of the fswap gadget vertices (see fswap_decomposition).
# Entries are symbolic edge names; "in1"/"in2"/"out1"/"out2" are the ports.
_GADGET_EDGES = [
    ("AB", "A", "B", 1.0),
    ("AM", "A", "M", 1.0),
    ("BN", "B", "N", 1.0),
    ("MN", "M", "N", -1.0),
    ("MD", "M", "D", 1.0),
    ("NC", "N", "C", 1.0),
    ("DC", "D", "C", 1.0),
]
_GADGET_ROT = {
    "A": ["in1", "AB", "AM"],
    "B": ["in2", "BN", "AB"],
    "M": ["AM", "MN", "MD"],
    "N": ["MN", "BN", "NC"],
    "D": ["MD", "DC", "out1"],
    "C": ["NC", "out2", "DC"],
}


class _GraphBuilder:
    """Shared sweep state for graph-form construction."""

    def __init__(self, expand_fswap: bool = True):
        self.splicer = Splicer()
        self.scalar: complex = 1.0
        self.next_vertex = 1
        self.rotations: dict[int, list[object]] = {}  # vertex -> slot terminals
        self.extra: list[tuple[object, object, complex]] = []
        self.expand_fswap = expand_fswap

    def new_vertex(self, n_slots: int) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        self.rotations[v] = [None] * n_slots
        return v

    def process(self, d: TermDiagram, stubs: list[End]) -> list[End]:
        if isinstance(d, Tens):
            k = d.left.n_inputs
            return self.process(d.left, stubs[:k]) + self.process(d.right, stubs[k:])
        if isinstance(d, Comp):
            return self.process(d.then, self.process(d.first, stubs))
        return self.gen(d, stubs)

    def gen(self, g: Gen, stubs: list[End]) -> list[End]:
        sp = self.splicer
        if g.kind == "id":
            return stubs
        if g.kind == "scalar":
            self.scalar *= g.param
            return []
        if g.kind == "white":
            sp.scale(stubs[0], g.param)
            return stubs
        if g.kind == "cup":
            sp.join(stubs[0], stubs[1])
            return []
        if g.kind == "cap":
            e0, e1 = sp.fresh_cap()
            return [e0, e1]
        if g.kind == "black":
            n, m = g.n_inputs, g.n_outputs
            v = self.new_vertex(n + m)
            # CCW around the box: inputs left-to-right, outputs right-to-left
            for i, s in enumerate(stubs):
                sp.attach(s, (v, i))
            out = []
            for j in range(m):
                out.append(sp.fresh_from((v, n + m - 1 - j)))
            return out
        if g.kind == "fswap":
            return self._fswap(stubs)
        raise DiagramError(f"unexpected generator {g.kind!r}")

    def _fswap(self, stubs: list[End]) -> list[End]:
        sp = self.splicer
        vid = {name: self.new_vertex(3) for name in "ABMNDC"}
        slot = {
            (name, sym): k
            for name, rots in _GADGET_ROT.items()
            for k, sym in enumerate(rots)
        }
        for (sym, a, b, w) in _GADGET_EDGES:
            self.extra.append(
                ((vid[a], slot[(a, sym)]), (vid[b], slot[(b, sym)]), w)
            )
        sp.attach(stubs[0], (vid["A"], slot[("A", "in1")]))
        sp.attach(stubs[1], (vid["B"], slot[("B", "in2")]))
        out1 = sp.fresh_from((vid["D"], slot[("D", "out1")]))
        out2 = sp.fresh_from((vid["C"], slot[("C", "out2")]))
        return [out1, out2]


def to_graph_form(d: TermDiagram) -> GraphForm:
    """Reduce a term to its black-only weighted graph (state-form ports)."""
    s = state_form(d)
    b = _GraphBuilder()
    stubs = b.process(s, [])
    for k, stub in enumerate(stubs):
        b.splicer.attach(stub, ("port", k))

    edges, legs, wires = [], [], []
    for (ta, tb, w) in b.splicer.finished() + b.extra:
        a_port = isinstance(ta, tuple) and ta[0] == "port"
        b_port = isinstance(tb, tuple) and tb[0] == "port"
        if a_port and b_port:
            wires.append((ta[1], tb[1], w))
        elif a_port:
            legs.append((tb[0], ta[1], w))
        elif b_port:
            legs.append((ta[0], tb[1], w))
        else:
            edges.append((ta[0], tb[0], w))
    return GraphForm(
        vertices=list(range(1, b.next_vertex)),
        edges=edges,
        legs=legs,
        wires=wires,
        loops=list(b.splicer.loop_weights),
        scalar=b.scalar,
        ports=list(range(len(stubs))),
    )


def to_plane_graph(d: TermDiagram) -> WeightedPlaneGraph:
    """Embedded weighted graph of a scalar diagram (rotations from layout)."""
    if d.n_inputs != 0 or d.n_outputs != 0:
        raise DiagramError("to_plane_graph expects a scalar (0 -> 0) diagram")
    b = _GraphBuilder()
    leftover = b.process(d, [])
    assert not leftover

    endpoints: dict[int, tuple[int, int]] = {}
    weights: dict[int, complex] = {}
    slot_halfedge: dict[tuple[int, int], tuple[int, int]] = {}
    eid = 0
    for (ta, tb, w) in b.splicer.finished() + b.extra:
        eid += 1
        endpoints[eid] = (ta[0], tb[0])
        weights[eid] = w
        slot_halfedge[ta] = (eid, 0)
        slot_halfedge[tb] = (eid, 1)

    rotation = {}
    for v in range(1, b.next_vertex):
        rotation[v] = [slot_halfedge[(v, k)] for k in range(len(b.rotations[v]))]

    g = WeightedPlaneGraph(
        n=b.next_vertex - 1,
        endpoints=endpoints,
        weights=weights,
        rotation=rotation,
        outer=None,
        scalar=b.scalar,
        loops=list(b.splicer.loop_weights),
    )
    g.check_rotation()
    if endpoints:
        g.outer = (min(endpoints), 0)
    return g
