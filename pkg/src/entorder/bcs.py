"""BCS pair states, gap/amplitude relation, momentum-space entanglement and energy.

A model is a list of pair representatives ``alpha > 0``; each carries the
amplitudes ``(u, v)`` shared by the time-reversed partners ``alpha`` and
``-alpha``, optionally the mean-field triple ``(Delta, epsilon, mu)`` and the
diagonal kinetic element ``T_aa``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .tensor import ATOL_SPECTRAL, ATOL_STRUCTURAL


class DegenerateGapError(ValueError):
    """``Delta = 0`` with ``epsilon = mu``: the quasiparticle energy vanishes."""


@dataclass(frozen=True)
class PairAmplitudes:
    u: float
    v: float

    def __post_init__(self):
        if self.u < 0 or self.v < 0:
            raise ValueError("pair amplitudes must be nonnegative")
        if abs(self.u * self.u + self.v * self.v - 1.0) > ATOL_STRUCTURAL:
            raise ValueError(f"u^2 + v^2 must equal 1, got {self.u**2 + self.v**2!r}")

    @classmethod
    def normalized(cls, u: float, v: float) -> "PairAmplitudes":
        """Rescale a (u, v) pair onto the unit circle."""
        norm = math.hypot(u, v)
        if norm == 0:
            raise ValueError("cannot normalize a zero pair")
        return cls(u / norm, v / norm)


@dataclass(frozen=True)
class GapTriple:
    delta: float
    epsilon: float
    mu: float

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("gap delta must be nonnegative")

    @property
    def xi(self) -> float:
        return self.epsilon - self.mu

    @property
    def quasiparticle_energy(self) -> float:
        return math.hypot(self.xi, self.delta)


@dataclass(frozen=True)
class InteractionRow:
    """Direct matrix elements <ab|V|ab> and partner occupations v_b^2."""

    matrix_elements: tuple[float, ...] = ()
    occupations: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.matrix_elements) != len(self.occupations):
            raise ValueError("matrix_elements and occupations must have equal length")
        if any(not 0.0 <= o <= 1.0 for o in self.occupations):
            raise ValueError("occupations must lie in [0, 1]")


@dataclass(frozen=True)
class BcsMode:
    label: str
    amplitudes: PairAmplitudes | None = None
    gap: GapTriple | None = None
    t_diag: float = 0.0

    def __post_init__(self):
        if self.amplitudes is None and self.gap is None:
            raise ValueError(f"mode {self.label!r} needs amplitudes or a gap triple")
        if self.amplitudes is not None and self.gap is not None:
            e = self.gap.quasiparticle_energy
            ratio = self.gap.delta / e if e > 0 else float("nan")
            if not abs(gap_ratio_from_uv(self.amplitudes) - ratio) <= ATOL_SPECTRAL:
                raise ValueError(f"mode {self.label!r}: amplitudes inconsistent with gap triple")

    def pair(self) -> PairAmplitudes:
        if self.amplitudes is not None:
            return self.amplitudes
        return uv_from_gap(self.gap)


@dataclass(frozen=True)
class BcsModel:
    modes: tuple[BcsMode, ...] = field(default_factory=tuple)

    def __post_init__(self):
        labels = [m.label for m in self.modes]
        if len(set(labels)) != len(labels):
            raise ValueError("mode labels must be unique")
        object.__setattr__(self, "modes", tuple(sorted(self.modes, key=lambda m: m.label)))


def uv_from_gap(g: GapTriple) -> PairAmplitudes:
    """Amplitudes satisfying 2uv = Delta/E with v -> 0 far above the Fermi level.

    The larger amplitude comes from the square root and the smaller one from
    the product relation, which avoids cancellation when |xi| >> Delta.
    """
    e = g.quasiparticle_energy
    if e == 0.0:
        raise DegenerateGapError("delta = 0 and epsilon = mu: quasiparticle energy is zero")
    # ratios first: stays exact for subnormal delta
    ratio = g.delta / e
    if g.xi >= 0:
        u = math.sqrt(0.5 * (1.0 + g.xi / e))
        v = ratio / (2.0 * u)
    else:
        v = math.sqrt(0.5 * (1.0 - g.xi / e))
        u = ratio / (2.0 * v)
    return PairAmplitudes(u, v)


def gap_ratio_from_uv(p: PairAmplitudes) -> float:
    return 2.0 * p.u * p.v


def pair_state_vector(p: PairAmplitudes) -> np.ndarray:
    """u|00> + v|11> over the occupations of (alpha, -alpha)."""
    return np.array([p.u, 0.0, 0.0, p.v], dtype=complex)


def _mode_ratio(mode: BcsMode) -> float:
    if mode.gap is not None:
        return mode.gap.delta / mode.gap.quasiparticle_energy if mode.gap.quasiparticle_energy else 0.0
    return gap_ratio_from_uv(mode.amplitudes)


def bcs_log_negativity_total(model: BcsModel | Sequence[BcsMode]) -> float:
    """Log-negativity between all alpha and all -alpha electrons, in bits.

    Additive over pairs: sum of log2(1 + 2 u v) = log2(1 + Delta/E).
    """
    modes = model.modes if isinstance(model, BcsModel) else BcsModel(tuple(model)).modes
    for m in modes:
        if m.gap is not None and m.amplitudes is None:
            uv_from_gap(m.gap)  # rejects degenerate triples
    return math.fsum(math.log2(1.0 + _mode_ratio(m)) for m in modes)


def pair_energy_epsilon(t_diag: float, row: InteractionRow) -> float:
    """Cooper-pair energy T_aa + sum_b <ab|V|ab> v_b^2."""
    return math.fsum([t_diag] + [vm * occ for vm, occ in zip(row.matrix_elements, row.occupations)])


def _energy_terms(model: BcsModel) -> tuple[list[float], list[float]]:
    hf, cond = [], []
    for m in model.modes:
        if m.gap is None:
            raise ValueError(f"mode {m.label!r} has no gap triple; energy needs epsilon, mu and delta")
        e = m.gap.quasiparticle_energy
        if e == 0.0:
            raise DegenerateGapError(f"mode {m.label!r}: quasiparticle energy is zero")
        v2 = m.pair().v ** 2
        # both alpha and -alpha contribute 1/2 (T + eps) v^2
        hf.append((m.t_diag + m.gap.epsilon) * v2)
        cond.append(0.5 * m.gap.delta**2 / e)
    return hf, cond


def hartree_fock_energy(model: BcsModel) -> float:
    hf, _ = _energy_terms(model)
    return math.fsum(hf)


def bcs_ground_state_energy(model: BcsModel) -> float:
    """Hartree-Fock term minus the condensation term sum Delta^2 / (2E)."""
    hf, cond = _energy_terms(model)
    return math.fsum(hf) - math.fsum(cond)
