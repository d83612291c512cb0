"""Open plane graphs: the rewrite engine's substrate.

A diagram converts to a graph of black nodes joined by weighted wires,
with white and fswap generators either kept as explicit nodes (the
*faithful* form, used for DOT export and the white/fswap rewrite rules)
or absorbed (the *linear* form the core rewrite rules run on).

Linear form semantics.  Black nodes and boundary ports are *sites* with
a total order (``order``).  A state coefficient is a signed weighted
matching sum: every black site must be covered by exactly one active
wire, a port's wire is active exactly when its output bit is 1, and a
matching picks up -1 for every interleaved pair of active wires (arcs
drawn over the site line cross iff their endpoints interleave).  This is
the Pfaffian sign convention; crossings of the original diagram land in
it when fswaps are absorbed as transpositions of the open wire stubs,
and flexsymmetry of black nodes makes the forgotten rotation data
irrelevant.  Graphs with explicit white/fswap nodes are evaluated by
plain tensor-network contraction instead (every crossing is an explicit
fswap node, so no implicit signs exist).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from ._splice import End, Splicer
from .config import Config, DEFAULT
from .oracle import Tensor
from .terms import Comp, DiagramError, Gen, Tens, TermDiagram

# wire end tokens: ("b", node) for black, ("n", node, port) for white/fswap,
# ("out", k) for boundary ports
BLACK = "black"
WHITE = "white"
FSWAP = "fswap"


@dataclass
class Node:
    kind: str
    param: complex = 0.0


@dataclass
class Wire:
    ends: list
    weight: complex = 1.0


class OpenPlaneGraph:
    """Mutable graph of black/white/fswap nodes with weighted wires."""

    def __init__(self):
        self.nodes: dict[int, Node] = {}
        self.wires: dict[int, Wire] = {}
        self.scalar: complex = 1.0
        self.n_ports: int = 0
        self.order: list[tuple] = []  # site tokens ("b", nid) / ("out", k)
        self.locked: set[int] = set()  # blacks exempt from binary collapse
        self._next_node = 1
        self._next_wire = 1

    # -- construction -------------------------------------------------

    def add_node(self, kind: str, param: complex = 0.0) -> int:
        nid = self._next_node
        self._next_node += 1
        self.nodes[nid] = Node(kind, param)
        return nid

    def add_wire(self, end_a, end_b, weight: complex = 1.0) -> int:
        wid = self._next_wire
        self._next_wire += 1
        self.wires[wid] = Wire([end_a, end_b], weight)
        return wid

    def copy(self) -> "OpenPlaneGraph":
        g = OpenPlaneGraph()
        g.nodes = {k: Node(n.kind, n.param) for k, n in self.nodes.items()}
        g.wires = {k: Wire(list(w.ends), w.weight) for k, w in self.wires.items()}
        g.scalar = self.scalar
        g.n_ports = self.n_ports
        g.order = list(self.order)
        g.locked = set(self.locked)
        g._next_node = self._next_node
        g._next_wire = self._next_wire
        return g

    # -- queries ------------------------------------------------------

    def is_linear(self) -> bool:
        return all(n.kind == BLACK for n in self.nodes.values())

    def blacks(self) -> list[int]:
        return sorted(k for k, n in self.nodes.items() if n.kind == BLACK)

    def wires_at_black(self, nid: int) -> list[int]:
        out = []
        for wid in sorted(self.wires):
            for end in self.wires[wid].ends:
                if end == ("b", nid):
                    out.append(wid)
        return out

    def degree(self, nid: int) -> int:
        return len(self.wires_at_black(nid))

    def wires_between(self, a, b) -> list[int]:
        out = []
        for wid in sorted(self.wires):
            ends = self.wires[wid].ends
            if (ends[0] == a and ends[1] == b) or (ends[0] == b and ends[1] == a):
                out.append(wid)
        return out

    def port_wire(self, k: int) -> Optional[int]:
        for wid in sorted(self.wires):
            if ("out", k) in self.wires[wid].ends:
                return wid
        return None

    def neighbour_end(self, wid: int, this_end) -> object:
        w = self.wires[wid]
        return w.ends[1] if w.ends[0] == this_end else w.ends[0]

    def site_pos(self, site) -> int:
        return self.order.index(site)

    def remove_black(self, nid: int) -> None:
        for wid in self.wires_at_black(nid):
            self.wires.pop(wid, None)
        del self.nodes[nid]
        self.order.remove(("b", nid))
        self.locked.discard(nid)

    # -- semantics ----------------------------------------------------

    def to_tensor(self, cfg: Config = DEFAULT) -> Tensor:
        if self.n_ports > cfg.width_cap:
            raise DiagramError("graph too wide for dense evaluation")
        if self.is_linear():
            return _line_tensor(self)
        return _contract_tensor(self)

    # -- export ---------------------------------------------------------

    def to_dot(self) -> str:
        lines = ["graph pw {", "  rankdir=BT;"]
        for nid in sorted(self.nodes):
            n = self.nodes[nid]
            if n.kind == BLACK:
                lines.append(
                    f'  n{nid} [shape=circle style=filled fillcolor=black '
                    f'label="" width=0.15 fixedsize=true];'
                )
            elif n.kind == WHITE:
                lines.append(f'  n{nid} [shape=circle label="{_fmt_c(n.param)}"];')
            else:
                lines.append(f'  n{nid} [shape=diamond label="f"];')
        for k in range(self.n_ports):
            lines.append(f'  p{k} [shape=plaintext label="{k + 1}"];')
        for wid in sorted(self.wires):
            w = self.wires[wid]
            names = []
            for end in w.ends:
                if end[0] == "out":
                    names.append(f"p{end[1]}")
                else:
                    names.append(f"n{end[1]}")
            label = "" if w.weight == 1.0 else f' [label="{_fmt_c(w.weight)}"]'
            lines.append(f"  {names[0]} -- {names[1]}{label};")
        lines.append("}")
        return "\n".join(lines)


def _fmt_c(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:g}"
    if c.real == 0:
        return f"{c.imag:g}i"
    sign = "+" if c.imag >= 0 else "-"
    return f"{c.real:g}{sign}{abs(c.imag):g}i"


# ---------------------------------------------------------------------------
# conversion from terms


class _GraphSweep:
    def __init__(self, absorb: bool):
        self.g = OpenPlaneGraph()
        self.sp = Splicer()
        self.absorb = absorb
        self.created: list[int] = []
        self.trace: list[tuple[str, str]] = []

    def run(self, d: TermDiagram) -> OpenPlaneGraph:
        if d.n_inputs != 0:
            raise DiagramError("graph conversion expects a state; bend inputs first")
        stubs = self._process(d, [])
        g = self.g
        g.n_ports = len(stubs)
        for k, s in enumerate(stubs):
            self.sp.attach(s, ("out", k))
        for (ta, tb, w) in self.sp.finished():
            g.add_wire(ta, tb, w)
        for w in self.sp.loop_weights:
            g.scalar *= 1.0 + w
            self.trace.append(("W-loop", "closed loop"))
        g.order = [("b", n) for n in reversed(self.created)] + [
            ("out", k) for k in range(g.n_ports)
        ]
        return g

    def _process(self, d: TermDiagram, stubs: list[End]) -> list[End]:
        if isinstance(d, Tens):
            k = d.left.n_inputs
            return self._process(d.left, stubs[:k]) + self._process(d.right, stubs[k:])
        if isinstance(d, Comp):
            return self._process(d.then, self._process(d.first, stubs))
        return self._gen(d, stubs)

    def _gen(self, gen: Gen, stubs: list[End]) -> list[End]:
        g, sp = self.g, self.sp
        if gen.kind == "id":
            return stubs
        if gen.kind == "scalar":
            g.scalar *= gen.param
            return []
        if gen.kind == "cup":
            sp.join(stubs[0], stubs[1])
            return []
        if gen.kind == "cap":
            return list(sp.fresh_cap())
        if gen.kind == "white":
            if self.absorb:
                sp.scale(stubs[0], gen.param)
                name = "Z-binary" if abs(gen.param - 1.0) < 1e-15 else "phase-fusion"
                self.trace.append((name, "white absorbed into wire weight"))
                return stubs
            nid = g.add_node(WHITE, gen.param)
            sp.attach(stubs[0], ("n", nid, 0))
            return [sp.fresh_from(("n", nid, 1))]
        if gen.kind == "black":
            nid = g.add_node(BLACK)
            self.created.append(nid)
            for s in stubs:
                sp.attach(s, ("b", nid))
            return [sp.fresh_from(("b", nid)) for _ in range(gen.n_outputs)]
        if gen.kind == "fswap":
            if self.absorb:
                self.trace.append(("fswap-push", "crossing absorbed into site order"))
                return [stubs[1], stubs[0]]
            nid = g.add_node(FSWAP)
            sp.attach(stubs[0], ("n", nid, 0))
            sp.attach(stubs[1], ("n", nid, 1))
            return [sp.fresh_from(("n", nid, 2)), sp.fresh_from(("n", nid, 3))]
        raise DiagramError(f"unexpected generator {gen.kind!r}")


def graph_from_term(d: TermDiagram, absorb: bool = False) -> OpenPlaneGraph:
    """Convert a state term to an open plane graph.

    With ``absorb=True`` white weights fold onto wires and fswaps become
    transpositions of the open stubs, yielding the linear form.
    """
    return _GraphSweep(absorb).run(d)


# ---------------------------------------------------------------------------
# linear-form evaluation (signed matching sum, all coefficients in one sweep)


def _line_tensor(g: OpenPlaneGraph, max_states: int = 1 << 22) -> Tensor:
    arcs = []  # (pos_a, pos_b, weight, id) with pos_a <= pos_b
    pos = {site: i for i, site in enumerate(g.order)}
    per_site_arcs: dict[int, list[int]] = {i: [] for i in range(len(g.order))}
    for wid in sorted(g.wires):
        w = g.wires[wid]
        pa, pb = pos[w.ends[0]], pos[w.ends[1]]
        if pa == pb:
            continue  # self-loop: never active
        a, b = min(pa, pb), max(pa, pb)
        idx = len(arcs)
        arcs.append((a, b, w.weight))
        per_site_arcs[a].append(idx)
        per_site_arcs[b].append(idx)

    n = g.n_ports
    result = np.zeros(2**n, dtype=complex)
    # state: (tuple of (arc_idx, bit) for open arcs in opening order,
    #         tuple of decided port bits)  -> amplitude
    states: dict[tuple, complex] = {((), ()): 1.0}
    for site_pos, site in enumerate(g.order):
        opening = [i for i in per_site_arcs[site_pos] if arcs[i][0] == site_pos]
        closing = [i for i in per_site_arcs[site_pos] if arcs[i][1] == site_pos]
        is_port = site[0] == "out"
        new_states: dict[tuple, complex] = {}
        for (open_arcs, port_bits), amp in states.items():
            open_idx = {a: k for k, (a, _) in enumerate(open_arcs)}
            closing_bits = [open_arcs[open_idx[i]][1] for i in closing]
            base_active = sum(closing_bits)
            # sign: each closing active arc crosses open active arcs that
            # opened after it (still open once the closers are removed)
            remaining = [ab for ab in open_arcs if ab[0] not in closing]
            sign = 1.0
            for i in closing:
                k = open_idx[i]
                if open_arcs[k][1]:
                    later_active = sum(
                        1
                        for (a2, b2) in open_arcs[k + 1 :]
                        if b2 and a2 not in closing
                    )
                    sign *= (-1.0) ** later_active
            # crossings between two closing arcs: both end here; the one
            # that opened first is crossed by later-opened active closers
            act_order = [open_idx[i] for i in closing if open_arcs[open_idx[i]][1]]
            act_order.sort()
            sign *= (-1.0) ** (len(act_order) * (len(act_order) - 1) // 2)

            if is_port:
                choices: Iterable[tuple[list[int], int]]
                if closing:
                    bit = closing_bits[0]
                    choices = [([], bit)]
                elif opening:
                    choices = [([0], 0), ([1], 1)]
                else:
                    choices = [([], 0)]
                for open_bits, bit in choices:
                    amp2 = amp * sign
                    if amp2 == 0:
                        continue
                    extended = tuple(remaining) + tuple(
                        (opening[j], open_bits[j]) for j in range(len(opening))
                    )
                    for j, ob in enumerate(open_bits):
                        if ob:
                            amp2 *= arcs[opening[j]][2]
                    key = (extended, port_bits + (bit,))
                    new_states[key] = new_states.get(key, 0.0) + amp2
            else:
                # black site: exactly one incident arc active
                for open_bits in itertools.product((0, 1), repeat=len(opening)):
                    if base_active + sum(open_bits) != 1:
                        continue
                    amp2 = amp * sign
                    for j, ob in enumerate(open_bits):
                        if ob:
                            amp2 *= arcs[opening[j]][2]
                    if amp2 == 0:
                        continue
                    extended = tuple(remaining) + tuple(
                        (opening[j], open_bits[j]) for j in range(len(opening))
                    )
                    key = (extended, port_bits)
                    new_states[key] = new_states.get(key, 0.0) + amp2
        states = new_states
        if len(states) > max_states:
            raise DiagramError("graph too entangled for the sweep evaluator")

    for (open_arcs, port_bits), amp in states.items():
        assert not open_arcs
        idx = 0
        for b in port_bits:
            idx = (idx << 1) | b
        result[idx] += amp
    return Tensor(n, result * g.scalar)


# ---------------------------------------------------------------------------
# explicit tensor-network contraction (faithful graphs)

_FSWAP_T = np.zeros((2, 2, 2, 2), dtype=complex)
for _a in (0, 1):
    for _b in (0, 1):
        _FSWAP_T[_a, _b, _b, _a] = (-1.0) ** (_a * _b)


def _contract_tensor(g: OpenPlaneGraph) -> Tensor:
    """Plain tensor-network contraction with explicit white/fswap nodes.

    Every wire contributes a diag(1, weight) link factor; node factors
    carry one axis per attached wire end.  Matching axis labels contract;
    axes whose wire end sits on a boundary port stay open.
    """
    factors: list[tuple[np.ndarray, list]] = []
    open_label_of_port: dict[int, tuple] = {}

    for wid in sorted(g.wires):
        w = g.wires[wid]
        link = np.array([[1.0, 0.0], [0.0, w.weight]], dtype=complex)
        factors.append((link, [("e", wid, 0), ("e", wid, 1)]))
        for side, end in enumerate(w.ends):
            if end[0] == "out":
                open_label_of_port[end[1]] = ("e", wid, side)

    # node factors: axis label ("e", wid, side) pairs with the link factor
    for nid in sorted(g.nodes):
        node = g.nodes[nid]
        if node.kind == BLACK:
            axes = []
            for wid in sorted(g.wires):
                for side, end in enumerate(g.wires[wid].ends):
                    if end == ("b", nid):
                        axes.append(("e", wid, side))
            k = len(axes)
            t = np.zeros((2,) * k, dtype=complex) if k else np.zeros((), dtype=complex)
            if k:
                for i in range(k):
                    idx = [0] * k
                    idx[i] = 1
                    t[tuple(idx)] = 1.0
            factors.append((t, axes))
        elif node.kind == WHITE:
            t = np.array([[1.0, 0.0], [0.0, node.param]], dtype=complex)
            factors.append((t, [_node_axis(g, nid, 0), _node_axis(g, nid, 1)]))
        else:  # fswap with axes (in1, in2, out1, out2)
            factors.append((_FSWAP_T.copy(), [_node_axis(g, nid, p) for p in range(4)]))

    open_labels = set(open_label_of_port.values())

    def find_pair():
        seen: dict = {}
        for i, (_, axes) in enumerate(factors):
            for ax, label in enumerate(axes):
                if label in open_labels:
                    continue
                if label in seen and seen[label] != (i, ax):
                    return seen[label], (i, ax)
                seen[label] = (i, ax)
        return None

    while True:
        pair = find_pair()
        if pair is None:
            break
        (i, ax_i), (j, ax_j) = pair
        if i == j:
            t, axes = factors[i]
            t = np.trace(t, axis1=ax_i, axis2=ax_j)
            axes = [a for k2, a in enumerate(axes) if k2 not in (ax_i, ax_j)]
            factors[i] = (t, axes)
        else:
            ti, axes_i = factors[i]
            tj, axes_j = factors[j]
            t = np.tensordot(ti, tj, axes=([ax_i], [ax_j]))
            axes = [a for k2, a in enumerate(axes_i) if k2 != ax_i] + [
                a for k2, a in enumerate(axes_j) if k2 != ax_j
            ]
            keep, drop = max(i, j), min(i, j)
            factors[keep] = (t, axes)
            del factors[drop]

    total = np.ones((), dtype=complex)
    labels: list = []
    for t, axes in factors:
        total = np.tensordot(total, t, axes=0)
        labels += axes
    perm = []
    for k in range(g.n_ports):
        if k not in open_label_of_port:
            raise DiagramError(f"boundary port {k} is not attached")
        perm.append(labels.index(open_label_of_port[k]))
    if sorted(perm) != list(range(len(labels))):
        raise DiagramError("contraction left unmatched axes")
    total = np.transpose(total, perm) if labels else total
    amp = total.reshape(-1) if g.n_ports else np.array([complex(total)])
    return Tensor(g.n_ports, amp * g.scalar)


def _node_axis(g: OpenPlaneGraph, nid: int, port: int):
    for wid in sorted(g.wires):
        w = g.wires[wid]
        for side, end in enumerate(w.ends):
            if end == ("n", nid, port):
                return ("e", wid, side)
    raise DiagramError(f"node {nid} port {port} is unattached")
