"""Quantized disc-area spectra.

The disc area operator S = pi*(x1^2 + x2^2) on a plane with [x1, x2] =
i*f(t) has equally spaced levels

    s_n(t) = 2*pi*f(t) * (n + 1/2),   n = 0, 1, 2, ...

so the level spacing (area quantum) is 2*pi*f(t).  The constant-theta
plane is the canonical reference: s_n = 2*pi*theta*(n + 1/2).  Levels
inherit the sign of f; interpretation of a negative quantum is left to
the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .deformation import DeformationModel, eval_f
from .errors import DomainError

_SPACING_RTOL = 1e-12


@dataclass(frozen=True)
class SpectrumTable:
    """Area levels at a fixed time: s_n = quantum * (n + 1/2)."""

    time: float
    quantum: float  # level spacing, 2*pi*f(time); signed
    levels: tuple[tuple[int, float], ...]

    def check_spacing(self, rtol: float = _SPACING_RTOL) -> float:
        """Largest relative spacing error; raises if it exceeds ``rtol``."""
        worst = 0.0
        scale = max(abs(self.quantum), 1e-300)
        for (_, lo), (_, hi) in zip(self.levels, self.levels[1:]):
            worst = max(worst, abs((hi - lo) - self.quantum) / scale)
        if worst > rtol:
            raise AssertionError(f"level spacing off by {worst:.3e} relative")
        return worst


def level(model: DeformationModel, t: float, n: int) -> float:
    """n-th area level 2*pi*f(t)*(n + 1/2)."""
    if n < 0:
        raise DomainError(f"level index must be >= 0, got {n}")
    return 2.0 * math.pi * eval_f(model, t) * (n + 0.5)


def spectrum(model: DeformationModel, t: float, n_max: int) -> SpectrumTable:
    """Levels n = 0..n_max of the area operator at time t."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    quantum = 2.0 * math.pi * eval_f(model, t)
    table = SpectrumTable(
        time=float(t),
        quantum=quantum,
        levels=tuple((n, quantum * (n + 0.5)) for n in range(n_max + 1)),
    )
    table.check_spacing()
    return table


def canonical_spectrum(theta: float, n_max: int) -> SpectrumTable:
    """Time-independent spectrum of the constant-theta plane: 2*pi*theta*(n+1/2)."""
    if not theta > 0:
        raise DomainError(f"theta must be strictly positive, got {theta}")
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    quantum = 2.0 * math.pi * theta
    table = SpectrumTable(
        time=0.0,
        quantum=quantum,
        levels=tuple((n, quantum * (n + 0.5)) for n in range(n_max + 1)),
    )
    table.check_spacing()
    return table
