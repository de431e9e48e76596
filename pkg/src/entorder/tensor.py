"""Dense linear algebra on small composite Hilbert spaces.

States are 1-d complex arrays, operators 2-d square arrays. Composite
indices are row-major: subsystem 0 varies slowest, so ``kron(A, B)`` places
``A`` on subsystem 0. Every other module relies on this convention.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

#: Tolerance for structural identities (normalization, Hermiticity, traces).
ATOL_STRUCTURAL = 1e-12
#: Tolerance for eigenvalue/singular-value comparisons.
ATOL_SPECTRAL = 1e-10
#: PSD slack allowed on density-matrix eigenvalues.
ATOL_PSD = 1e-10
#: Largest Hilbert-space dimension handled densely.
MAX_DIMENSION = 2**14


class ShapeError(ValueError):
    """Subsystem dimensions do not match the array they annotate."""


class DimensionCapError(ValueError):
    """Requested Hilbert space is larger than ``MAX_DIMENSION``."""


def check_dimension(dim: int, cap: int = MAX_DIMENSION) -> None:
    if dim > cap:
        raise DimensionCapError(f"Hilbert-space dimension {dim} exceeds cap {cap}")


def _dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ShapeError(f"subsystem dimensions must be positive, got {dims}")
    return dims


def _square(rho: np.ndarray, dim: int) -> np.ndarray:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape != (dim, dim):
        raise ShapeError(f"expected a {dim}x{dim} matrix, got shape {rho.shape}")
    return rho


def kron(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor slowest-varying."""
    out = np.ones((1, 1) if np.ndim(ops[0]) == 2 else (1,), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def basis_vector(dim: int, index: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[index] = 1.0
    return e


def projector(psi: np.ndarray) -> np.ndarray:
    """Density matrix |psi><psi|."""
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def is_normalized(psi: np.ndarray, atol: float = ATOL_STRUCTURAL) -> bool:
    return abs(np.vdot(psi, psi).real - 1.0) <= atol


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduce ``rho`` onto the subsystems listed in ``keep``.

    Kept subsystems appear in their original order regardless of the order
    of ``keep``.

    Examples
    --------
    >>> bell = projector(np.array([0, 1, 1, 0]) / np.sqrt(2))
    >>> np.allclose(partial_trace(bell, (2, 2), [0]), np.eye(2) / 2)
    True
    """
    dims = _dims(dims)
    n = len(dims)
    total = int(np.prod(dims))
    rho = _square(rho, total)
    keep = sorted(set(int(i) for i in keep))
    if any(i < 0 or i >= n for i in keep):
        raise IndexError(f"keep indices {keep} out of range for {n} subsystems")

    t = rho.reshape(dims + dims)
    # einsum labels: row index i, column index n+i; traced ones share a label.
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out_labels = keep + [i + n for i in keep]
    reduced = np.einsum(t, row + col, out_labels)
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    return reduced.reshape(d_keep, d_keep)


def reduced_state(psi: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace of |psi><psi| without forming the full density matrix.

    Same result and ordering as ``partial_trace(projector(psi), dims, keep)``.
    """
    dims = _dims(dims)
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != int(np.prod(dims)):
        raise ShapeError(f"vector of length {psi.size} does not match dims {dims}")
    keep = sorted(set(int(i) for i in keep))
    if any(i < 0 or i >= len(dims) for i in keep):
        raise IndexError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    rest = [i for i in range(len(dims)) if i not in keep]
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    mat = psi.reshape(dims).transpose(keep + rest).reshape(d_keep, -1)
    return mat @ mat.conj().T


def partial_transpose(rho: np.ndarray, dims: Sequence[int], which: int | str = 1) -> np.ndarray:
    """Transpose the ``which`` factor of a bipartite operator.

    ``which`` is ``0``/``"A"`` for the first factor or ``1``/``"B"`` for the
    second.
    """
    if len(dims) != 2:
        raise ShapeError(f"partial_transpose needs a bipartite shape, got {tuple(dims)}")
    d_a, d_b = _dims(dims)
    rho = _square(rho, d_a * d_b)
    which = {"A": 0, "B": 1, "a": 0, "b": 1}.get(which, which)
    if which not in (0, 1):
        raise ValueError(f"which must be 0/'A' or 1/'B', got {which!r}")
    t = rho.reshape(d_a, d_b, d_a, d_b)
    if which == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(d_a * d_b, d_a * d_b)


def permute_subsystems(psi: np.ndarray, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of a state vector.

    The new subsystem ``j`` is the old subsystem ``order[j]``.
    """
    dims = _dims(dims)
    psi = np.asarray(psi)
    if psi.size != int(np.prod(dims)):
        raise ShapeError(f"vector of length {psi.size} does not match dims {dims}")
    if sorted(order) != list(range(len(dims))):
        raise ValueError(f"order {order} is not a permutation of {len(dims)} subsystems")
    return psi.reshape(dims).transpose(order).ravel()


def hermitian_eigenvalues(m: np.ndarray, atol: float = ATOL_SPECTRAL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    Raises ``ValueError`` when ``m`` departs from Hermiticity by more than
    ``atol`` in any entry.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.conj().T)) > atol:
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigvalsh(m)


def schmidt_decompose(psi: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Schmidt coefficients of a bipartite pure state, descending."""
    d_a, d_b = _dims(dims)
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != d_a * d_b:
        raise ShapeError(f"vector of length {psi.size} does not match dims {(d_a, d_b)}")
    return np.linalg.svd(psi.reshape(d_a, d_b), compute_uv=False)


def check_density_matrix(rho: np.ndarray, atol: float = ATOL_SPECTRAL) -> np.ndarray:
    """Validate ``rho`` as a density matrix and return it as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {rho.shape}")
    if abs(np.trace(rho).real - 1.0) > atol:
        raise ValueError(f"density matrix must have unit trace, got {np.trace(rho).real!r}")
    evals = hermitian_eigenvalues(rho, atol)
    if evals[0] < -ATOL_PSD:
        raise ValueError(f"density matrix is not positive semidefinite (min eigenvalue {evals[0]:.3e})")
    return rho
