"""Bose-Hubbard limit states: the deep superfluid and the Mott product state.

The superfluid lives in the fixed-N occupation basis (compositions of N into
M parts, colexicographic order). The Mott state is a product of local Fock
vectors and lives in the tensor-product space of those local registers.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .measures import negativity
from .tensor import check_dimension, kron, permute_subsystems, projector

#: Largest fixed-N occupation basis built explicitly.
MAX_BASIS = 10**6
#: Series tails are dropped once terms fall below this.
SERIES_TOL = 1e-16
#: Binomials switch to log-gamma above this N.
EXACT_BINOMIAL_MAX_N = 30
#: Below this binomial variance the CLT estimates are flagged.
CLT_MIN_VARIANCE = 10.0


class LowConfidenceWarning(UserWarning):
    """A Gaussian approximation was used outside its regime."""


@dataclass(frozen=True)
class SuperfluidSpec:
    N: int
    M: int

    def __post_init__(self):
        if self.N < 1 or self.M < 1:
            raise ValueError(f"need N >= 1 atoms and M >= 1 sites, got N={self.N}, M={self.M}")

    @property
    def p(self) -> float:
        return 1.0 / self.M


@dataclass(frozen=True)
class MottSpec:
    """Product of local Fock-space vectors, one per site."""

    local_states: tuple[np.ndarray, ...] = field(default_factory=tuple)

    def __post_init__(self):
        states = tuple(np.asarray(s, dtype=complex).ravel() for s in self.local_states)
        if not states:
            raise ValueError("need at least one site")
        for s in states:
            if abs(np.vdot(s, s).real - 1.0) > 1e-12:
                raise ValueError("local Mott states must be normalized")
        object.__setattr__(self, "local_states", states)

    @classmethod
    def filling(cls, M: int, atoms_per_site: int = 1, cutoff: int | None = None) -> "MottSpec":
        """Number state |n> on every site; local register dimension ``cutoff + 1``."""
        cutoff = atoms_per_site if cutoff is None else cutoff
        local = np.zeros(cutoff + 1, dtype=complex)
        local[atoms_per_site] = 1.0
        return cls(tuple(local.copy() for _ in range(M)))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.size for s in self.local_states)


def occupation_basis(N: int, M: int) -> list[tuple[int, ...]]:
    """All occupations (n_1..n_M) summing to N, colexicographic order."""
    count = math.comb(N + M - 1, M - 1)
    if count > MAX_BASIS:
        raise ValueError(f"occupation basis of size {count} exceeds cap {MAX_BASIS}")
    out = []
    # stars and bars: bar positions among N + M - 1 slots
    for bars in combinations(range(N + M - 1), M - 1):
        edges = (-1,) + bars + (N + M - 1,)
        out.append(tuple(edges[i + 1] - edges[i] - 1 for i in range(M)))
    out.sort(key=lambda occ: occ[::-1])
    return out


def _log_multinomial(N: int, occ: Sequence[int]) -> float:
    return math.lgamma(N + 1) - math.fsum(math.lgamma(n + 1) for n in occ)


def superfluid_state_vector(s: SuperfluidSpec) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Amplitudes sqrt(N!/prod n_i!) M^(-N/2) and the basis they refer to."""
    basis = occupation_basis(s.N, s.M)
    log_norm = -0.5 * s.N * math.log(s.M)
    psi = np.array([math.exp(0.5 * _log_multinomial(s.N, occ) + log_norm) for occ in basis], dtype=complex)
    return psi, basis


def site_bipartition(psi: np.ndarray, basis: Sequence[tuple[int, ...]], site: int) -> np.ndarray:
    """Coefficient matrix of a fixed-N state for the split site vs rest.

    Rows index the occupation of ``site`` (0..N); columns index the
    occupations of the remaining sites, in first-appearance order.
    """
    N = sum(basis[0])
    rest_index: dict[tuple[int, ...], int] = {}
    entries = []
    for amp, occ in zip(psi, basis):
        rest = occ[:site] + occ[site + 1:]
        col = rest_index.setdefault(rest, len(rest_index))
        entries.append((occ[site], col, amp))
    mat = np.zeros((N + 1, len(rest_index)), dtype=complex)
    for row, col, amp in entries:
        mat[row, col] = amp
    return mat


def mott_state_vector(m: MottSpec) -> np.ndarray:
    check_dimension(int(np.prod(m.dims)))
    return kron(*m.local_states)


def single_site_negativity(psi: np.ndarray, dims: Sequence[int], site: int) -> float:
    """Negativity of a tensor-product state across site vs all other sites."""
    order = [site] + [j for j in range(len(dims)) if j != site]
    moved = permute_subsystems(psi, dims, order)
    d_site = dims[site]
    return negativity(projector(moved), (d_site, moved.size // d_site))


def _binomial_pmf(N: int, p: float) -> np.ndarray:
    k = np.arange(N + 1)
    if p == 1.0:
        return (k == N).astype(float)
    if N <= EXACT_BINOMIAL_MAX_N:
        return np.array([math.comb(N, j) * p**j * (1 - p) ** (N - j) for j in range(N + 1)])
    log_pmf = gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1) + k * math.log(p) + (N - k) * math.log1p(-p)
    pmf = np.exp(log_pmf)
    # gammaln rounding is shared by all terms; renormalizing removes it
    return pmf / math.fsum(pmf)


def superfluid_schmidt(s: SuperfluidSpec) -> np.ndarray:
    """Closed-form Schmidt coefficients sqrt(binom(N,k) p^k (1-p)^(N-k)), descending."""
    lam = np.sqrt(_binomial_pmf(s.N, s.p))
    if s.M == 1:
        lam = lam[lam > 0]
    return np.sort(lam)[::-1]


def superfluid_negativity_exact(s: SuperfluidSpec) -> float:
    """One-site-vs-rest negativity ((sum_k sqrt(pmf_k))^2 - 1)/2."""
    total = math.fsum(np.sqrt(_binomial_pmf(s.N, s.p)))
    return max((total * total - 1.0) / 2.0, 0.0)


def superfluid_negativity_clt(s: SuperfluidSpec, variant: str = "corrected") -> float:
    """Gaussian (large-N) estimate of the one-site negativity.

    ``variant="paper"`` is the published ((8 N p (1-p))^(1/2) - 1)/2.
    ``variant="corrected"`` carries the decaying Gaussian and its pi factor
    through the integral: sqrt(2 pi N p (1-p)) - 1/2.
    """
    var = s.N * s.p * (1 - s.p)
    if var <= 0:
        raise ValueError("CLT estimate needs 0 < p < 1 (M >= 2)")
    if var < CLT_MIN_VARIANCE:
        warnings.warn(
            f"binomial variance N p (1-p) = {var:.3g} is small; CLT estimate is low-confidence",
            LowConfidenceWarning,
            stacklevel=2,
        )
    if variant == "paper":
        return (math.sqrt(8 * var) - 1.0) / 2.0
    if variant == "corrected":
        return math.sqrt(2 * math.pi * var) - 0.5
    raise ValueError(f"unknown variant {variant!r}; use 'paper' or 'corrected'")


def clt_is_reliable(s: SuperfluidSpec) -> bool:
    return s.N * s.p * (1 - s.p) >= CLT_MIN_VARIANCE


def superfluid_negativity_poisson_limit(lam: float) -> float:
    """Negativity in the N, M -> infinity limit at fixed lam = N/M.

    The binomial pmf becomes Poisson(lam); the square-root series is summed
    until terms past the peak drop below ``SERIES_TOL``.
    """
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam!r}")
    if lam == 0:
        return 0.0
    terms = []
    k = 0
    while True:
        t = math.exp(0.5 * (-lam + k * math.log(lam) - math.lgamma(k + 1)))
        terms.append(t)
        if k > lam and t < SERIES_TOL:
            break
        k += 1
    total = math.fsum(terms)
    return max((total * total - 1.0) / 2.0, 0.0)


def bh_odlro_correlator(
    s: SuperfluidSpec, i: int = 0, j: int = 1, method: str = "closed", exact: bool = False
) -> float | Fraction:
    """Hopping correlator <a_i^dag a_j> of the superfluid, i != j.

    ``method="closed"`` returns N/M. ``method="explicit"`` sums the matrix
    elements over the occupation basis; with ``exact=True`` each element is
    formed in rational arithmetic (squared amplitudes are multinomial / M^N
    and the square root of each product is taken exactly).
    """
    if s.M < 2:
        raise ValueError("the hopping correlator needs M >= 2 sites")
    if i == j or not (0 <= i < s.M and 0 <= j < s.M):
        raise ValueError(f"need two distinct sites in range, got i={i}, j={j}")
    if method == "closed":
        q = Fraction(s.N, s.M)
        return q if exact else float(q)
    if method != "explicit":
        raise ValueError(f"unknown method {method!r}; use 'closed' or 'explicit'")
    psi, basis = superfluid_state_vector(s)
    index = {occ: n for n, occ in enumerate(basis)}
    total: float | Fraction = Fraction(0) if exact else 0.0
    scale = Fraction(1, s.M**s.N)
    for n, occ in enumerate(basis):
        if occ[j] == 0:
            continue
        target = list(occ)
        target[i] += 1
        target[j] -= 1
        target = tuple(target)
        factor = (occ[i] + 1) * occ[j]
        if exact:
            w_src = _multinomial(s.N, occ) * scale
            w_dst = _multinomial(s.N, target) * scale
            total += _exact_sqrt(w_src * w_dst * factor)
        else:
            total += (psi[index[target]].conjugate() * psi[n]).real * math.sqrt(factor)
    return total


def _multinomial(N: int, occ: Sequence[int]) -> int:
    out = math.factorial(N)
    for n in occ:
        out //= math.factorial(n)
    return out


def _exact_sqrt(q: Fraction) -> Fraction:
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise ArithmeticError(f"{q} is not a perfect rational square")
    return Fraction(num, den)


def bh_annihilation_expectation(s: SuperfluidSpec, site: int = 0) -> complex:
    """<psi_SF| a_site |psi_SF> evaluated in the truncated local-Fock tensor space."""
    d = s.N + 1
    check_dimension(d**s.M)
    psi, basis = superfluid_state_vector(s)
    full = np.zeros(d**s.M, dtype=complex)
    for amp, occ in zip(psi, basis):
        full[np.ravel_multi_index(occ, (d,) * s.M)] = amp
    a = np.diag(np.sqrt(np.arange(1, d)), k=1)
    t = np.moveaxis(np.tensordot(a, full.reshape((d,) * s.M), axes=([1], [site])), 0, site)
    return complex(np.vdot(full, t.ravel()))


def bh_order_parameter_r(s: SuperfluidSpec) -> float:
    """Thermodynamic superfluid order parameter sqrt(N/M)."""
    return math.sqrt(s.N / s.M)
