"""Oracle-equivalence and property checks behind ``entorder verify``.

Each check returns a nonnegative measured error; it passes when the error
is at most the tolerance of its group. Exact checks use tolerance 0 and
report the number (or size) of violations.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable

import numpy as np

from . import bcs, bh, eta, measures, tensor

TOLERANCES = {
    "structural": 1e-12,
    "spectral": 1e-10,
    "additivity": 1e-9,
    "rdm": 1e-12,
    "gme": 1e-6,
    "identity": 1e-12,
    "exact": 0.0,
    "asymptote": 0.01,
    "density": 1e-4,
    "clt": 0.01,
    "poisson": 0.02,
}


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    tol_group: str
    fn: Callable[[int], float]


_REGISTRY: list[Check] = []


def check(suite: str, tol_group: str):
    def wrap(fn):
        _REGISTRY.append(Check(fn.__name__, suite, tol_group, fn))
        return fn
    return wrap


def _random_density(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _random_state(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def _random_pair(rng):
    theta = rng.uniform(0, np.pi / 2)
    return bcs.PairAmplitudes(math.cos(theta), math.sin(theta))


# -- tensor core -----------------------------------------------------------

@check("tensor", "structural")
def ptrace_of_kron(seed):
    rng = np.random.default_rng(seed)
    err = 0.0
    for da, db in [(2, 2), (2, 3), (3, 4)]:
        rho, sigma = _random_density(rng, da), _random_density(rng, db)
        red = tensor.partial_trace(tensor.kron(rho, sigma), (da, db), [0])
        err = max(err, np.max(np.abs(red - rho)))
    return float(err)


@check("tensor", "exact")
def partial_transpose_involution(seed):
    rng = np.random.default_rng(seed)
    rho = _random_density(rng, 6)
    twice = tensor.partial_transpose(tensor.partial_transpose(rho, (2, 3)), (2, 3))
    return float(np.count_nonzero(twice != rho))


@check("tensor", "structural")
def partial_transpose_trace(seed):
    rng = np.random.default_rng(seed)
    rho = _random_density(rng, 12)
    return float(abs(np.trace(tensor.partial_transpose(rho, (3, 4))) - np.trace(rho)))


@check("tensor", "spectral")
def pure_state_pt_spectrum(seed):
    rng = np.random.default_rng(seed)
    err = 0.0
    for da, db in [(2, 2), (2, 3), (3, 3), (4, 5), (6, 6)]:
        psi = _random_state(rng, da * db)
        lam = tensor.schmidt_decompose(psi, (da, db))
        err = max(err, abs(math.fsum(lam**2) - 1))
        expected = [l * l for l in lam]
        expected += [s * lam[i] * lam[j] for i, j in combinations(range(len(lam)), 2) for s in (1, -1)]
        expected += [0.0] * (da * db - len(expected))
        got = tensor.hermitian_eigenvalues(tensor.partial_transpose(tensor.projector(psi), (da, db)))
        err = max(err, np.max(np.abs(np.sort(expected) - got)))
    return float(err)


# -- measures --------------------------------------------------------------

@check("measures", "spectral")
def pair_negativity_equals_uv(seed):
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(200):
        p = _random_pair(rng)
        rho = tensor.projector(bcs.pair_state_vector(p))
        err = max(err, abs(measures.negativity(rho, (2, 2)) - p.u * p.v))
    return err


@check("measures", "additivity")
def log_negativity_additivity(seed):
    rng = np.random.default_rng(seed)
    pairs = [tensor.projector(bcs.pair_state_vector(_random_pair(rng))) for _ in range(3)]
    err = 0.0
    for m in (2, 3):
        joint = tensor.kron(*pairs[:m])
        # regroup (a1 b1 a2 b2 ...) into (a1 a2 ... | b1 b2 ...)
        order = [2 * i for i in range(m)] + [2 * i + 1 for i in range(m)]
        dims = (2,) * (2 * m)
        t = joint.reshape(dims + dims).transpose(order + [o + 2 * m for o in order])
        joint = t.reshape(4**m, 4**m)
        parts = math.fsum(measures.log_negativity(r, (2, 2)) for r in pairs[:m])
        err = max(err, abs(measures.log_negativity(joint, (2**m, 2**m)) - parts))
    return err


@check("measures", "additivity")
def schmidt_negativity_vs_pt(seed):
    rng = np.random.default_rng(seed)
    err = 0.0
    for da in range(2, 7):
        for db in range(2, 7):
            psi = _random_state(rng, da * db)
            via_schmidt = measures.pure_negativity_from_schmidt(tensor.schmidt_decompose(psi, (da, db)))
            err = max(err, abs(via_schmidt - measures.negativity(tensor.projector(psi), (da, db))))
    return err


@check("measures", "exact")
def binary_entropy_symmetry(seed):
    xs = np.random.default_rng(seed).uniform(0, 1, 500)
    return float(sum(measures.binary_entropy(x) != measures.binary_entropy(1 - x) for x in xs))


@check("measures", "gme")
def gme_permutation_invariance(seed):
    cfg = measures.OptimizerConfig(seed=seed)
    err = 0.0
    for n, k in [(3, 1), (4, 2)]:
        psi = eta.dicke_state_vector(eta.DickeSpec(n, k))
        ref = measures.geometric_measure(psi, (2,) * n, cfg)
        for perm in list(permutations(range(n)))[1:6]:
            moved = tensor.permute_subsystems(psi, (2,) * n, perm)
            err = max(err, abs(measures.geometric_measure(moved, (2,) * n, cfg) - ref))
    return err


@check("measures", "spectral")
def fef_matches_magic_basis(seed):
    """Optimizer FEF against the largest eigenvalue of Re(rho) in the magic basis."""
    magic = np.array([[1, 0, 0, 1], [1j, 0, 0, -1j], [0, 1j, 1j, 0], [0, 1, -1, 0]]).T / math.sqrt(2)
    rng = np.random.default_rng(seed)
    states = [_random_density(rng, 4) for _ in range(4)]
    states += [eta.eta_two_site_rdm(eta.DickeSpec(4, 2)).matrix(), eta.eta_two_site_rdm(eta.DickeSpec(4, 1)).matrix()]
    err = 0.0
    for rho in states:
        closed = np.linalg.eigvalsh((magic.conj().T @ rho @ magic).real)[-1]
        err = max(err, abs(measures.fully_entangled_fraction(rho, seed=seed) - closed))
    return float(err)


# -- BCS -------------------------------------------------------------------

@check("bcs", "additivity")
def bcs_total_vs_pair_oracle(seed):
    rng = np.random.default_rng(seed)
    err = 0.0
    for size in range(1, 7):
        modes = []
        for i in range(size):
            if rng.uniform() < 0.5:
                modes.append(bcs.BcsMode(f"m{i}", amplitudes=_random_pair(rng)))
            else:
                gap = bcs.GapTriple(rng.uniform(0, 5), rng.uniform(-5, 5), rng.uniform(-1, 1))
                modes.append(bcs.BcsMode(f"m{i}", gap=gap))
        oracle = math.fsum(
            measures.log_negativity(tensor.projector(bcs.pair_state_vector(m.pair())), (2, 2)) for m in modes
        )
        err = max(err, abs(bcs.bcs_log_negativity_total(bcs.BcsModel(tuple(modes))) - oracle))
    return err


@check("bcs", "spectral")
def gap_round_trip(seed):
    err = 0.0
    for delta in np.linspace(0.0, 5.0, 10):
        for xi in np.linspace(-5.0, 5.0, 10):
            if delta == 0 and xi == 0:
                continue
            g = bcs.GapTriple(delta, xi, 0.0)
            ratio = delta / math.hypot(xi, delta)
            err = max(err, abs(bcs.gap_ratio_from_uv(bcs.uv_from_gap(g)) - ratio))
    return err


@check("bcs", "exact")
def bcs_monotone_in_gap(seed):
    violations = 0
    deltas = np.linspace(0.01, 10, 60)
    # at xi = 0 every positive gap gives Delta/E = 1, so only xi != 0 is strict
    for xi in (-2.0, -0.5, 0.7, 3.0):
        prev = -1.0
        for delta in deltas:
            val = bcs.bcs_log_negativity_total([bcs.BcsMode("a", gap=bcs.GapTriple(delta, xi, 0.0))])
            violations += val <= prev
            prev = val
    flat = {bcs.bcs_log_negativity_total([bcs.BcsMode("a", gap=bcs.GapTriple(d, 0.0, 0.0))]) for d in deltas}
    return float(violations + (flat != {1.0}))


@check("bcs", "exact")
def hartree_fock_limit_is_separable(seed):
    modes = [bcs.BcsMode(f"m{i}", amplitudes=bcs.PairAmplitudes(float(i % 2), float(1 - i % 2))) for i in range(6)]
    return abs(bcs.bcs_log_negativity_total(bcs.BcsModel(tuple(modes))))


# -- eta pairing -----------------------------------------------------------

@check("eta", "rdm")
def eta_rdm_vs_partial_trace(seed):
    err = 0.0
    for n in range(2, 13):
        for k in range(1, n + 1):
            s = eta.DickeSpec(n, k)
            psi = eta.dicke_state_vector(s)
            closed = eta.eta_two_site_rdm(s).matrix()
            for i, j in combinations(range(n), 2):
                red = tensor.reduced_state(psi, (2,) * n, [i, j])
                err = max(err, np.max(np.abs(red - closed)))
    return float(err)


@check("eta", "exact")
def eta_weight_is_twice_correlator(seed):
    bad = 0
    for n in range(2, 13):
        for k in range(0, n + 1):
            s = eta.DickeSpec(n, k)
            bad += eta.alpha_order_parameter(s, exact=True) != 2 * eta.odlro_pair_correlator(s, exact=True)
    return float(bad)


@check("eta", "gme")
def gme_closed_form_vs_optimizer(seed):
    cfg = measures.OptimizerConfig(seed=seed)
    err = 0.0
    for n in range(1, 9):
        for k in range(1, n + 1):
            s = eta.DickeSpec(n, k)
            num = measures.geometric_measure(eta.dicke_state_vector(s), (2,) * n, cfg)
            err = max(err, abs(num - eta.gme_dicke_closed_form(s)))
    return err


@check("eta", "exact")
def alpha_converges_to_filling_law(seed):
    bad = 0
    for r in (0.1, 0.25, 0.5, 0.73):
        for n in (10, 100, 1000, 10**4, 10**5):
            gap = abs(eta.alpha_order_parameter(eta.DickeSpec(n, math.floor(r * n))) - eta.alpha_from_r(r))
            bad += gap > 2 / n
    return float(bad)


@check("eta", "identity")
def de_paper_equals_eof(seed):
    return max(
        abs(eta.de_from_alpha_paper(a) - measures.eof_from_concurrence(math.sqrt(a)))
        for a in np.linspace(0, 1, 101)
    )


@check("eta", "exact")
def gme_particle_hole_symmetry(seed):
    bad = 0
    for n in (1, 2, 5, 17, 100, 12345):
        for k in range(0, n + 1, max(1, n // 20)):
            bad += eta.gme_dicke_closed_form(eta.DickeSpec(n, k)) != eta.gme_dicke_closed_form(eta.DickeSpec(n, n - k))
    return float(bad)


@check("eta", "asymptote")
def gme_follows_log_asymptote(seed):
    rows = eta.dicke_asymptotics_report(0.5, [10**2, 10**3, 10**4, 10**5])
    gaps = [abs(r["lrg_minus_log_asymptote"]) for r in rows]
    if any(b >= a for a, b in zip(gaps, gaps[1:])):
        return math.inf
    return gaps[-1]


@check("eta", "density")
def gme_density_vanishes(seed):
    rows = eta.dicke_asymptotics_report(0.5, [10**5, 10**6, 10**7])
    return max(r["lrg_per_site"] for r in rows)


# -- Bose-Hubbard ----------------------------------------------------------

def _bh_small():
    for N in range(1, 6):
        for M in range(1, 5):
            yield bh.SuperfluidSpec(N, M)


@check("bh", "spectral")
def bh_negativity_vs_pt_oracle(seed):
    err = 0.0
    for s in _bh_small():
        psi, basis = bh.superfluid_state_vector(s)
        closed = bh.superfluid_negativity_exact(s)
        for site in range(s.M):
            mat = bh.site_bipartition(psi, basis, site)
            oracle = measures.negativity(tensor.projector(mat.ravel()), mat.shape)
            err = max(err, abs(closed - oracle))
    return err


@check("bh", "spectral")
def bh_schmidt_vs_svd(seed):
    err = 0.0
    for s in _bh_small():
        psi, basis = bh.superfluid_state_vector(s)
        closed = bh.superfluid_schmidt(s)
        for site in range(s.M):
            mat = bh.site_bipartition(psi, basis, site)
            svd = tensor.schmidt_decompose(mat.ravel(), mat.shape)
            m = max(len(svd), len(closed))
            a = np.pad(closed, (0, m - len(closed)))
            b = np.pad(svd, (0, m - len(svd)))
            err = max(err, np.max(np.abs(a - b)))
    return float(err)


@check("bh", "structural")
def bh_two_paths_of_negativity(seed):
    err = 0.0
    for N in range(1, 60):
        for M in range(1, 7):
            s = bh.SuperfluidSpec(N, M)
            err = max(err, abs(measures.pure_negativity_from_schmidt(bh.superfluid_schmidt(s))
                               - bh.superfluid_negativity_exact(s)))
    return err


@check("bh", "structural")
def mott_has_no_negativity(seed):
    rng = np.random.default_rng(seed)
    specs = [bh.MottSpec.filling(3), bh.MottSpec.filling(4, 2, cutoff=2)]
    local = _random_state(rng, 3)
    specs.append(bh.MottSpec((local,) + bh.MottSpec.filling(2, 1, cutoff=2).local_states))
    err = 0.0
    for m in specs:
        psi = bh.mott_state_vector(m)
        for site in range(len(m.dims)):
            err = max(err, bh.single_site_negativity(psi, m.dims, site))
    return err


@check("bh", "exact")
def bh_correlator_is_filling(seed):
    bad = 0
    for s in _bh_small():
        if s.M < 2:
            continue
        for i, j in permutations(range(s.M), 2):
            bad += bh.bh_odlro_correlator(s, i, j, method="explicit", exact=True) != Fraction(s.N, s.M)
    return float(bad)


@check("bh", "structural")
def bh_annihilation_vanishes(seed):
    return max(abs(bh.bh_annihilation_expectation(s, m)) for s in _bh_small() for m in range(s.M))


@check("bh", "clt")
def clt_corrected_accuracy(seed):
    errs = []
    for N in (10**2, 10**3, 10**4):
        s = bh.SuperfluidSpec(N, 2)
        exact = bh.superfluid_negativity_exact(s)
        errs.append(abs(bh.superfluid_negativity_clt(s, "corrected") - exact) / exact)
    if any(b >= a for a, b in zip(errs, errs[1:])):
        return math.inf
    return errs[-1]


@check("bh", "poisson")
def exact_approaches_poisson(seed):
    exact = bh.superfluid_negativity_exact(bh.SuperfluidSpec(1024, 1024))
    limit = bh.superfluid_negativity_poisson_limit(1.0)
    return abs(exact - limit) / limit


@check("bh", "exact")
def bh_negativity_monotone_in_atoms(seed):
    bad = 0
    for M in (2, 3, 4, 8):
        vals = [bh.superfluid_negativity_exact(bh.SuperfluidSpec(N, M)) for N in range(1, 51)]
        bad += sum(b <= a for a, b in zip(vals, vals[1:]))
    return float(bad)


SUITES = ("tensor", "measures", "bcs", "eta", "bh")


def registry() -> list[Check]:
    return list(_REGISTRY)


def run_checks(suite: str = "all", tol_overrides: dict | None = None, seed: int = measures.DEFAULT_SEED) -> list[dict]:
    """Run the selected checks; one result dict per check, registry order."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    tols = dict(TOLERANCES)
    for key, value in (tol_overrides or {}).items():
        if key not in tols:
            raise KeyError(f"unknown tolerance group {key!r}; known: {', '.join(sorted(tols))}")
        tols[key] = float(value)
    results = []
    for c in _REGISTRY:
        if suite != "all" and c.suite != suite:
            continue
        start = time.perf_counter()
        error = float(c.fn(seed))
        results.append({
            "name": c.name,
            "suite": c.suite,
            "tol_group": c.tol_group,
            "error": error,
            "tol": tols[c.tol_group],
            "passed": bool(error <= tols[c.tol_group]),
            "seconds": time.perf_counter() - start,
        })
    return results
