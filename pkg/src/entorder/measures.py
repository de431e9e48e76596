"""Entanglement quantifiers shared by the three models.

All logarithms are base 2, so values are in bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize

from .tensor import (
    check_density_matrix,
    check_dimension,
    hermitian_eigenvalues,
    partial_transpose,
)

#: Partial-transpose eigenvalues in [-NEG_CLIP, 0) count as zero.
NEG_CLIP = 1e-12
#: Largest state dimension accepted by the nearest-product-state search.
MAX_GME_DIMENSION = 2**12

DEFAULT_SEED = 20050301


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_iterations: int = 500
    convergence_tol: float = 1e-10
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.restarts < 1 or self.max_iterations < 1 or not self.convergence_tol > 0:
            raise ValueError("optimizer settings must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


class ProductOverlap(NamedTuple):
    """Best squared overlap with a product state and the maximizer."""

    overlap: float
    factors: tuple[np.ndarray, ...]
    converged: bool
    iterations: int


def _domain(x: float, name: str) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")
    return x


def negativity(rho: np.ndarray, dims: Sequence[int]) -> float:
    """Sum of |negative eigenvalues| of the partial transpose over subsystem B."""
    rho = check_density_matrix(rho)
    evals = hermitian_eigenvalues(partial_transpose(rho, dims, 1))
    neg = evals[evals < -NEG_CLIP]
    # math.fsum of an empty list is 0.0, and negating it would give -0.0
    return -math.fsum(neg) if neg.size else 0.0


def log_negativity(rho: np.ndarray, dims: Sequence[int]) -> float:
    return math.log2(1.0 + 2.0 * negativity(rho, dims))


def pure_negativity_from_schmidt(coefficients: Sequence[float]) -> float:
    """Negativity of a pure state given its Schmidt coefficients: ((sum l)^2 - 1)/2."""
    s = math.fsum(float(c) for c in coefficients)
    return max((s * s - 1.0) / 2.0, 0.0)


def _xlog2x(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log2(x)


def binary_entropy(x: float) -> float:
    """Shannon entropy of a biased coin, in bits.

    Evaluated from the larger outcome probability so that
    ``binary_entropy(x) == binary_entropy(1 - x)`` holds bit for bit.
    """
    x = _domain(x, "x")
    big = max(x, 1.0 - x)
    small = 1.0 - big  # exact: big >= 1/2
    return -(_xlog2x(small) + _xlog2x(big))


def eof_from_concurrence(concurrence: float) -> float:
    """Wootters' entanglement of formation as a function of the concurrence."""
    c = _domain(concurrence, "concurrence")
    return binary_entropy((1.0 + math.sqrt(1.0 - c * c)) / 2.0)


def _random_factors(rng: np.random.Generator, restarts: int, dims: Sequence[int]) -> list[np.ndarray]:
    factors = []
    for d in dims:
        f = rng.standard_normal((restarts, d)) + 1j * rng.standard_normal((restarts, d))
        factors.append(f / np.linalg.norm(f, axis=1, keepdims=True))
    return factors


def _environment(psi: np.ndarray, factors: list[np.ndarray], site: int) -> np.ndarray:
    """Contract ``psi`` with conj(factor) on every subsystem except ``site``.

    ``psi`` has shape ``(R, d_0, ..., d_{n-1})``; the result has shape ``(R, d_site)``.
    """
    t = psi
    # contract from the last subsystem down so axis positions stay valid
    for j in range(len(factors) - 1, -1, -1):
        if j == site:
            continue
        t = np.einsum("r...a,ra->r...", np.moveaxis(t, j + 1, -1), factors[j].conj())
    return t


def nearest_product_overlap(
    psi: np.ndarray, dims: Sequence[int], cfg: OptimizerConfig | None = None
) -> ProductOverlap:
    """Maximize |<phi_1 ... phi_n|psi>|^2 over product states.

    Alternating best responses: with every factor but one fixed, the optimal
    free factor is the normalized partial inner product, and the overlap
    after the update is its squared norm. Each sweep is therefore monotone.
    All restarts run together as a batch and the best one is returned.
    """
    cfg = cfg or OptimizerConfig()
    dims = tuple(int(d) for d in dims)
    psi = np.asarray(psi, dtype=complex).ravel()
    total = int(np.prod(dims))
    check_dimension(total, MAX_GME_DIMENSION)
    if psi.size != total:
        raise ValueError(f"vector of length {psi.size} does not match dims {dims}")
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-10:
        raise ValueError("state must be normalized")

    rng = np.random.default_rng(cfg.seed)
    factors = _random_factors(rng, cfg.restarts, dims)
    batch = np.broadcast_to(psi.reshape(dims), (cfg.restarts,) + dims)

    previous = np.full(cfg.restarts, -np.inf)
    converged = False
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        for site in range(len(dims)):
            env = _environment(batch, factors, site)
            norms = np.linalg.norm(env, axis=1)
            safe = np.where(norms > 0, norms, 1.0)[:, None]
            factors[site] = np.where(norms[:, None] > 0, env / safe, factors[site])
        overlap = norms**2
        if np.all(np.abs(overlap - previous) <= cfg.convergence_tol):
            converged = True
            break
        previous = overlap

    best = int(np.argmax(overlap))
    value = min(float(overlap[best]), 1.0)
    return ProductOverlap(value, tuple(f[best].copy() for f in factors), converged, iterations)


def geometric_measure(psi: np.ndarray, dims: Sequence[int], cfg: OptimizerConfig | None = None) -> float:
    """-log2 of the maximal squared overlap with a product state."""
    res = nearest_product_overlap(psi, dims, cfg)
    return max(-math.log2(res.overlap), 0.0)


_PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2)


def _su2(angles: np.ndarray) -> np.ndarray:
    theta, phi, chi = angles
    a = math.cos(theta) * np.exp(1j * phi)
    b = math.sin(theta) * np.exp(1j * chi)
    return np.array([[a, b], [-b.conjugate(), a.conjugate()]])


def _max_entangled(angles: np.ndarray) -> np.ndarray:
    return np.kron(_su2(angles), np.eye(2)) @ _PSI_PLUS


def fully_entangled_fraction(rho: np.ndarray, restarts: int = 16, seed: int = DEFAULT_SEED) -> float:
    """Largest fidelity of a two-qubit state with a maximally entangled state.

    Every maximally entangled two-qubit state is ``(U x I)|psi+>`` up to a
    phase, so the search runs over SU(2) Euler angles with seeded restarts.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit density matrix, got shape {rho.shape}")
    rho = check_density_matrix(rho)

    def cost(angles):
        phi = _max_entangled(angles)
        return -np.vdot(phi, rho @ phi).real

    rng = np.random.default_rng(seed)
    best = -np.inf
    for _ in range(restarts):
        x0 = rng.uniform(0, 2 * np.pi, size=3)
        res = minimize(cost, x0, method="BFGS", options={"gtol": 1e-12})
        best = max(best, -res.fun)
    return float(min(best, 1.0))


def teleportation_fidelity(fef: float) -> float:
    """Optimal average qubit teleportation fidelity (2F + 1)/3."""
    return (2.0 * _domain(fef, "fully entangled fraction") + 1.0) / 3.0


__all__ = [
    "OptimizerConfig",
    "ProductOverlap",
    "negativity",
    "log_negativity",
    "pure_negativity_from_schmidt",
    "binary_entropy",
    "eof_from_concurrence",
    "nearest_product_overlap",
    "geometric_measure",
    "fully_entangled_fraction",
    "teleportation_fidelity",
]
