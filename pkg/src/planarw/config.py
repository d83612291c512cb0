"""Numeric tolerances and size caps shared across the engine."""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    """Tolerance and resource knobs.

    ``eps_rel``/``eps_abs`` govern every zero test and equality of
    amplitudes and weights.  A weight ``w`` counts as zero when
    ``abs(w) <= eps_abs`` or it is below ``eps_rel`` relative to the
    scale it is compared against.
    """

    eps_rel: float = 1e-9
    eps_abs: float = 1e-12
    width_cap: int = 20
    mgi_wire_cap: int = 14

    def is_zero(self, value: complex, scale: float = 1.0) -> bool:
        return abs(value) <= max(self.eps_abs, self.eps_rel * max(scale, 1.0))

    def close(self, a: complex, b: complex) -> bool:
        scale = max(abs(a), abs(b))
        return abs(a - b) <= max(self.eps_abs, self.eps_rel * max(scale, 1.0))


def default_config() -> Config:
    """Config with ``PW_EPSILON`` (if set) overriding the relative epsilon."""
    env = os.environ.get("PW_EPSILON")
    if env is None:
        return Config()
    return Config(eps_rel=float(env))


DEFAULT = Config()
