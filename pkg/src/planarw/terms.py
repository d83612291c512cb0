"""Diagram terms of the planar W-calculus.

A diagram is a tree whose leaves are generators and whose internal nodes
are ``tensor`` (side by side) and ``compose`` (first ``f`` then ``g``,
read bottom-up).  Generators:

* ``identity(k)`` -- k parallel wires
* ``black(n, m)`` -- black spider, n inputs / m outputs, any arity
* ``white(r)``    -- binary white node, diag(1, r)
* ``cup``         -- 2 -> 0 bent wire
* ``cap``         -- 0 -> 2 bent wire
* ``fswap``       -- fermionic swap, |x,y> -> (-1)^{xy} |y,x>
* ``scalar(c)``   -- 0 -> 0 floating factor

The plain symmetric swap is deliberately absent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


class DiagramError(ValueError):
    """Raised on malformed constructions (arity mismatch, bad parameters)."""


GENERATOR_KINDS = frozenset(
    {"id", "black", "white", "cup", "cap", "fswap", "scalar"}
)


def _check_finite(c: complex, what: str) -> complex:
    c = complex(c)
    if not (abs(c.real) < float("inf") and abs(c.imag) < float("inf")):
        raise DiagramError(f"{what} must be finite, got {c!r}")
    if c != c:  # NaN
        raise DiagramError(f"{what} must not be NaN")
    return c


@dataclass(frozen=True)
class Gen:
    kind: str
    n_inputs: int
    n_outputs: int
    param: complex = 0.0
    arity_in: int = 0
    arity_out: int = 0


@dataclass(frozen=True)
class Tens:
    left: "TermDiagram"
    right: "TermDiagram"
    n_inputs: int
    n_outputs: int


@dataclass(frozen=True)
class Comp:
    first: "TermDiagram"
    then: "TermDiagram"
    n_inputs: int
    n_outputs: int


TermDiagram = Union[Gen, Tens, Comp]


# ---------------------------------------------------------------------------
# generator constructors


def identity(k: int = 1) -> Gen:
    if k < 0:
        raise DiagramError("identity arity must be >= 0")
    return Gen("id", k, k, arity_in=k, arity_out=k)


def black(n: int, m: int) -> Gen:
    if n < 0 or m < 0:
        raise DiagramError("black arities must be >= 0")
    return Gen("black", n, m, arity_in=n, arity_out=m)


def white(r: complex) -> Gen:
    return Gen("white", 1, 1, param=_check_finite(r, "white weight"))


def cup() -> Gen:
    return Gen("cup", 2, 0)


def cap() -> Gen:
    return Gen("cap", 0, 2)


def fswap() -> Gen:
    return Gen("fswap", 2, 2)


def scalar(c: complex) -> Gen:
    return Gen("scalar", 0, 0, param=_check_finite(c, "scalar"))


def x_gate() -> Gen:
    """The NOT gate: a binary black node."""
    return black(1, 1)


def ket1() -> Gen:
    return black(0, 1)


def bra1() -> Gen:
    return black(1, 0)


def ket0() -> TermDiagram:
    return compose(ket1(), x_gate())


def bra0() -> TermDiagram:
    return compose(x_gate(), bra1())


def build_generator(kind: str, *params) -> TermDiagram:
    """Construct a generator leaf by name (used by the parser and CLI)."""
    table = {
        "id": identity,
        "black": black,
        "white": white,
        "cup": cup,
        "cap": cap,
        "fswap": fswap,
        "scalar": scalar,
        "x": x_gate,
        "ket0": ket0,
        "ket1": ket1,
        "bra1": bra1,
        "bra0": bra0,
    }
    if kind not in table:
        raise DiagramError(f"unknown generator kind {kind!r}")
    return table[kind](*params)


# ---------------------------------------------------------------------------
# combinators


def tensor(d1: TermDiagram, d2: TermDiagram, *rest: TermDiagram) -> TermDiagram:
    d = Tens(d1, d2, d1.n_inputs + d2.n_inputs, d1.n_outputs + d2.n_outputs)
    for r in rest:
        d = Tens(d, r, d.n_inputs + r.n_inputs, d.n_outputs + r.n_outputs)
    return d


def compose(d1: TermDiagram, d2: TermDiagram, *rest: TermDiagram) -> TermDiagram:
    if d1.n_outputs != d2.n_inputs:
        raise DiagramError(
            f"compose arity mismatch: first has {d1.n_outputs} outputs, "
            f"second expects {d2.n_inputs} inputs"
        )
    d: TermDiagram = Comp(d1, d2, d1.n_inputs, d2.n_outputs)
    for r in rest:
        d = compose(d, r)
    return d


def generators(d: TermDiagram) -> Iterator[Gen]:
    """Yield generator leaves in layout order (left-to-right, bottom-up)."""
    stack = [d]
    while stack:
        t = stack.pop()
        if isinstance(t, Gen):
            yield t
        elif isinstance(t, Tens):
            stack.append(t.right)
            stack.append(t.left)
        else:
            stack.append(t.then)
            stack.append(t.first)


def generator_count(d: TermDiagram) -> int:
    return sum(1 for _ in generators(d))


# ---------------------------------------------------------------------------
# process-state duality


def _nested_caps(n: int) -> TermDiagram:
    """0 -> 2n state pairing wire i with wire 2n+1-i (nested caps)."""
    if n == 0:
        return identity(0)
    d: TermDiagram = cap()
    for k in range(1, n):
        d = compose(d, tensor(identity(k), cap(), identity(k)))
    return d


def _nested_cups(n: int) -> TermDiagram:
    """2n -> 0 map pairing wire i with wire 2n+1-i (nested cups)."""
    if n == 0:
        return identity(0)
    d: TermDiagram = cup()
    for k in range(1, n):
        d = compose(tensor(identity(k), cup(), identity(k)), d)
    return d


def state_form(d: TermDiagram) -> TermDiagram:
    """Bend all inputs with caps: an n->m map becomes a 0->(n+m) state.

    State wire order is (inputs reversed) then outputs.
    """
    n = d.n_inputs
    if n == 0:
        return d
    return compose(_nested_caps(n), tensor(identity(n), d))


def map_form(s: TermDiagram, n_inputs: int) -> TermDiagram:
    """Inverse of :func:`state_form`: recover an n->m map from its state."""
    n = n_inputs
    if s.n_inputs != 0:
        raise DiagramError("map_form expects a state (0 inputs)")
    if s.n_outputs < n:
        raise DiagramError("state has fewer wires than requested inputs")
    if n == 0:
        return s
    return compose(tensor(identity(n), s), tensor(_nested_cups(n), identity(s.n_outputs - n)))


# ---------------------------------------------------------------------------
# the fermionic swap as plain black/white/cup syntax


def fswap_decomposition() -> TermDiagram:
    """The fswap written with black spiders, one white(-1) and two cups.

    An hourglass of six ternary black nodes; semantically equal to the
    ``fswap`` generator (checked in the test suite).
    """
    row1 = tensor(black(1, 2), black(1, 2))
    row2 = tensor(identity(1), cup(), identity(1))
    row3 = tensor(black(1, 2), black(1, 2))
    row4 = tensor(identity(1), white(-1), identity(2))
    row5 = tensor(identity(1), cup(), identity(1))
    row6 = tensor(black(1, 2), identity(1))
    row7 = tensor(identity(1), black(2, 1))
    return compose(row1, row2, row3, row4, row5, row6, row7)


# ---------------------------------------------------------------------------
# grid normal form (used by the printer)


def rowize(d: TermDiagram) -> list[list[Gen]]:
    """Flatten a term into grid rows (top-to-bottom, generators left-to-right).

    Tensors of composites are rectangularized with identity padding at the
    bottom, using the interchange law ``(f;g) @ h = (f @ h) ; (g @ id)``.
    """
    if isinstance(d, Gen):
        return [[d]]
    if isinstance(d, Comp):
        return rowize(d.first) + rowize(d.then)
    rows_l = rowize(d.left)
    rows_r = rowize(d.right)
    h = max(len(rows_l), len(rows_r))
    out_l = d.left.n_outputs
    out_r = d.right.n_outputs
    while len(rows_l) < h:
        rows_l.append([identity(out_l)] if out_l else [])
        # identity(0) rows would be empty; keep a placeholder only if needed
    while len(rows_r) < h:
        rows_r.append([identity(out_r)] if out_r else [])
    merged = []
    for i in range(h):
        row = rows_l[i] + rows_r[i]
        if not row:
            row = [identity(0)]
        merged.append(row)
    return merged


def from_rows(rows: list[list[Gen]]) -> TermDiagram:
    """Rebuild a term from grid rows (right-nested tensors, composed in order)."""
    terms = []
    for row in rows:
        if not row:
            term: TermDiagram = identity(0)
        else:
            term = row[-1]
            for g in reversed(row[:-1]):
                term = tensor(g, term)
        terms.append(term)
    d = terms[0]
    for t in terms[1:]:
        d = compose(d, t)
    return d


def grid_normal_form(d: TermDiagram) -> TermDiagram:
    return from_rows(rowize(d))
