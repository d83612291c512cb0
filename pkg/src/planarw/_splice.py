"""Developing-wire splicing used by the term-to-graph sweeps.

A term is processed row by row keeping a left-to-right list of open wire
ends.  Cups and caps splice and create wires; generators attach ends to
node terminals.  A terminal is any hashable token chosen by the caller.
"""

from __future__ import annotations

from typing import Any, Optional


class End:
    """One open end of a developing wire."""

    __slots__ = ("wire", "side")

    def __init__(self, wire: "DevWire", side: int):
        self.wire = wire
        self.side = side


class DevWire:
    __slots__ = ("slots", "weight", "alive", "uid", "twist")

    _next_uid = 0

    def __init__(self):
        self.slots: list[Any] = [None, None]  # End | terminal token
        self.weight: complex = 1.0
        self.alive = True
        self.twist = 0  # self-crossing parity (odd = one fswap kink)
        DevWire._next_uid += 1
        self.uid = DevWire._next_uid

    def other(self, side: int):
        return self.slots[1 - side]


class Splicer:
    def __init__(self):
        self.wires: list[DevWire] = []
        self.loop_weights: list[complex] = []
        self._pair_cross: dict[frozenset, int] = {}

    def fresh_from(self, terminal) -> End:
        """New wire anchored at ``terminal``; returns its open end."""
        w = DevWire()
        w.slots[0] = terminal
        end = End(w, 1)
        w.slots[1] = end
        self.wires.append(w)
        return end

    def fresh_cap(self) -> tuple[End, End]:
        """New wire with both ends open (a cap)."""
        w = DevWire()
        e0, e1 = End(w, 0), End(w, 1)
        w.slots[0] = e0
        w.slots[1] = e1
        self.wires.append(w)
        return e0, e1

    def attach(self, end: End, terminal) -> None:
        end.wire.slots[end.side] = terminal

    def scale(self, end: End, factor: complex) -> None:
        end.wire.weight *= factor

    def cross(self, a: End, b: End) -> None:
        """Record one crossing (fermionic swap) between two strands.

        A strand pair that later merges into one wire keeps the crossing
        as a self-twist; a twisted wire carries an extra -1 when active.
        Crossings between strands that stay distinct need no record: the
        final interleaving of their endpoints encodes the sign.
        """
        if a.wire is b.wire:
            a.wire.twist ^= 1
            return
        key = frozenset((a.wire.uid, b.wire.uid))
        self._pair_cross[key] = self._pair_cross.get(key, 0) ^ 1

    def join(self, a: End, b: End) -> Optional[complex]:
        """Connect two open ends (a cup).

        Returns the loop weight if this closes a pure wire loop, else None.
        """
        if a.wire is b.wire:
            a.wire.alive = False
            w = a.wire.weight * (-1.0) ** a.wire.twist
            self.loop_weights.append(w)
            return w
        keep, kill = a.wire, b.wire
        keep.weight *= kill.weight
        keep.twist ^= kill.twist
        key = frozenset((keep.uid, kill.uid))
        keep.twist ^= self._pair_cross.pop(key, 0)
        for other_key in [k for k in self._pair_cross if kill.uid in k]:
            parity = self._pair_cross.pop(other_key)
            (z,) = other_key - {kill.uid}
            merged_key = frozenset((keep.uid, z))
            if merged_key == frozenset((keep.uid,)):
                keep.twist ^= parity
            else:
                self._pair_cross[merged_key] = (
                    self._pair_cross.get(merged_key, 0) ^ parity
                )
        moved = kill.other(b.side)
        keep.slots[a.side] = moved
        if isinstance(moved, End):
            moved.wire = keep
            moved.side = a.side
        kill.alive = False
        return None

    def finished(self) -> list[tuple[Any, Any, complex]]:
        """All closed wires as (terminal_a, terminal_b, weight)."""
        out = []
        for w in self.wires:
            if not w.alive:
                continue
            if isinstance(w.slots[0], End) or isinstance(w.slots[1], End):
                raise RuntimeError("sweep finished with an unattached wire end")
            out.append((w.slots[0], w.slots[1], w.weight * (-1.0) ** w.twist))
        return out
