"""Reference semantics: dense tensors, bitstring algebra, matching sums.

Everything here is exponential but exact; it is the measuring instrument
against which the polynomial-time paths are checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import Config, DEFAULT
from .terms import Comp, DiagramError, Gen, Tens, TermDiagram, state_form


class WidthCapError(DiagramError):
    """Diagram too wide for dense interpretation."""


# ---------------------------------------------------------------------------
# bit words


@dataclass(frozen=True)
class BitWord:
    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0/1")

    @staticmethod
    def of(*bits: int) -> "BitWord":
        return BitWord(tuple(bits))

    @staticmethod
    def from_int(value: int, length: int) -> "BitWord":
        return BitWord(tuple((value >> (length - 1 - i)) & 1 for i in range(length)))

    @staticmethod
    def from_str(s: str) -> "BitWord":
        return BitWord(tuple(int(c) for c in s))

    @staticmethod
    def unit(p: int, n: int) -> "BitWord":
        """e_p: the length-n word with a single 1 in (1-based) position p."""
        if not 1 <= p <= n:
            raise ValueError("unit position out of range")
        return BitWord(tuple(1 if i == p - 1 else 0 for i in range(n)))

    @staticmethod
    def zeros(n: int) -> "BitWord":
        return BitWord((0,) * n)

    def __len__(self) -> int:
        return len(self.bits)

    def __xor__(self, other: "BitWord") -> "BitWord":
        if len(self) != len(other):
            raise ValueError("xor of words of different lengths")
        return BitWord(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def concat(self, other: "BitWord") -> "BitWord":
        return BitWord(self.bits + other.bits)

    @property
    def weight(self) -> int:
        return sum(self.bits)

    @property
    def parity(self) -> int:
        return self.weight & 1

    def diff_positions(self, other: "BitWord") -> list[int]:
        """1-based positions where the two words differ, ascending."""
        return [i + 1 for i, (a, b) in enumerate(zip(self.bits, other.bits)) if a != b]

    def to_int(self) -> int:
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


# ---------------------------------------------------------------------------
# dense tensors


@dataclass(frozen=True)
class Tensor:
    """Dense state over bitstrings; index bit 1 is most significant."""

    wires: int
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (2**self.wires,):
            raise ValueError(f"expected {2**self.wires} amplitudes, got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("non-finite amplitude")
        object.__setattr__(self, "amplitudes", a)

    def __getitem__(self, word) -> complex:
        if isinstance(word, BitWord):
            return complex(self.amplitudes[word.to_int()])
        return complex(self.amplitudes[word])

    def as_matrix(self, n_inputs: int, n_outputs: int) -> np.ndarray:
        """Reshape the state back to a 2^m x 2^n matrix.

        The state convention is (inputs reversed) . (outputs); undoing it
        needs a bit reversal on the input block.
        """
        if n_inputs + n_outputs != self.wires:
            raise ValueError("wire split does not match tensor width")
        a = self.amplitudes.reshape(2**n_inputs, 2**n_outputs)
        rev = _bit_reversal_permutation(n_inputs)
        return np.ascontiguousarray(a[rev, :].T)

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.amplitudes))) if self.amplitudes.size else 0.0

    def allclose(self, other: "Tensor", cfg: Config = DEFAULT) -> bool:
        if self.wires != other.wires:
            return False
        scale = max(self.norm_inf(), other.norm_inf(), 1.0)
        return bool(
            np.all(
                np.abs(self.amplitudes - other.amplitudes)
                <= max(cfg.eps_abs, cfg.eps_rel * scale)
            )
        )


def _bit_reversal_permutation(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    rev = np.zeros_like(idx)
    for _ in range(n):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def tensor_from_matrix(mat: np.ndarray, n_inputs: int, n_outputs: int) -> Tensor:
    """State-form tensor of a 2^m x 2^n matrix (reversed inputs then outputs)."""
    rev = _bit_reversal_permutation(n_inputs)
    a = mat.T[rev, :].reshape(-1)
    return Tensor(n_inputs + n_outputs, a)


# ---------------------------------------------------------------------------
# generator matrices and inductive interpretation


def _black_matrix(n: int, m: int) -> np.ndarray:
    mat = np.zeros((2**m, 2**n), dtype=complex)
    for u in range(2**m):
        wu = bin(u).count("1")
        if wu > 1:
            continue
        for v in range(2**n):
            if wu + bin(v).count("1") == 1:
                mat[u, v] = 1.0
    return mat


_FSWAP = np.zeros((4, 4), dtype=complex)
for _x in (0, 1):
    for _y in (0, 1):
        _FSWAP[(_y << 1) | _x, (_x << 1) | _y] = (-1.0) ** (_x * _y)


def generator_matrix(g: Gen) -> np.ndarray:
    if g.kind == "id":
        return np.eye(2**g.n_inputs, dtype=complex)
    if g.kind == "black":
        return _black_matrix(g.n_inputs, g.n_outputs)
    if g.kind == "white":
        return np.array([[1.0, 0.0], [0.0, g.param]], dtype=complex)
    if g.kind == "cup":
        return np.array([[1.0, 0.0, 0.0, 1.0]], dtype=complex)
    if g.kind == "cap":
        return np.array([[1.0], [0.0], [0.0], [1.0]], dtype=complex)
    if g.kind == "fswap":
        return _FSWAP.copy()
    if g.kind == "scalar":
        return np.array([[g.param]], dtype=complex)
    raise DiagramError(f"unknown generator {g.kind!r}")


def interpret_matrix(d: TermDiagram, cfg: Config = DEFAULT) -> np.ndarray:
    """The 2^m x 2^n matrix of a diagram, built inductively."""
    if d.n_inputs + d.n_outputs > cfg.width_cap:
        raise WidthCapError(
            f"diagram touches {d.n_inputs + d.n_outputs} wires, cap is {cfg.width_cap}"
        )
    if isinstance(d, Gen):
        return generator_matrix(d)
    if isinstance(d, Tens):
        return np.kron(interpret_matrix(d.left, cfg), interpret_matrix(d.right, cfg))
    if isinstance(d, Comp):
        return interpret_matrix(d.then, cfg) @ interpret_matrix(d.first, cfg)
    raise TypeError(f"not a diagram: {d!r}")


def interpret(d: TermDiagram, cfg: Config = DEFAULT) -> Tensor:
    """State-form tensor of a diagram (use ``.as_matrix`` for the map view)."""
    mat = interpret_matrix(d, cfg)
    return tensor_from_matrix(mat, d.n_inputs, d.n_outputs)


def interpret_state(d: TermDiagram, cfg: Config = DEFAULT) -> Tensor:
    """Tensor of ``state_form(d)`` (identical to :func:`interpret` by design)."""
    return interpret(state_form(d), cfg)


# ---------------------------------------------------------------------------
# matching-sum semantics on black-only graph forms


def coefficient(g, alpha: BitWord | Sequence[int], cfg: Config = DEFAULT) -> complex:
    """Weighted matching sum of a :class:`~planarw.graphform.GraphForm`.

    Sums over subsets of internal edges such that every black vertex is
    covered exactly once, counting boundary legs with bit 1 as external
    covers.  Pass-through wires force equal bits; closed loops contribute
    ``1 + w`` each.
    """
    bits = alpha.bits if isinstance(alpha, BitWord) else tuple(alpha)
    if len(bits) != len(g.ports):
        raise ValueError(f"expected {len(g.ports)} bits, got {len(bits)}")

    total = complex(g.scalar)
    for w in g.loops:
        total *= 1.0 + w
    if total == 0:
        return 0.0

    # pass-through wires: bits must agree, weight applies on 1
    for (p, q, w) in g.wires:
        if bits[p] != bits[q]:
            return 0.0
        if bits[p] == 1:
            total *= w
            if total == 0:
                return 0.0

    # external cover count per vertex from 1-bits on legs
    demand = {v: 1 for v in g.vertices}
    for (v, p, w) in g.legs:
        if bits[p] == 1:
            demand[v] -= 1
            total *= w
    if any(d < 0 for d in demand.values()):
        return 0.0

    edges = list(g.edges)
    return total * _match_sum(edges, demand)


def _match_sum(edges: list[tuple[int, int, complex]], demand: dict[int, int]) -> complex:
    """Recursive branch on the lowest-indexed uncovered vertex."""
    open_vertices = sorted(v for v, d in demand.items() if d == 1)
    if not open_vertices:
        return 1.0
    v = open_vertices[0]
    total = 0.0 + 0.0j
    for i, (a, b, w) in enumerate(edges):
        if a == v or b == v:
            other = b if a == v else a
            if other == v:
                continue  # self-loop can never be matched
            if demand[other] != 1:
                continue
            demand[v] = 0
            demand[other] = 0
            total += w * _match_sum(edges[i + 1 :] + edges[:i], demand)
            demand[v] = 1
            demand[other] = 1
    return total


def scalar_brute(g, cfg: Config = DEFAULT) -> complex:
    """Total weighted perfect-matching count of a closed graph form."""
    if g.ports:
        raise ValueError("scalar_brute expects a graph with no boundary ports")
    return coefficient(g, BitWord(()), cfg)
