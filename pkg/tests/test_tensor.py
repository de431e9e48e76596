import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entorder.tensor import (
    ATOL_SPECTRAL,
    ATOL_STRUCTURAL,
    DimensionCapError,
    ShapeError,
    basis_vector,
    check_dimension,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
    permute_subsystems,
    projector,
    reduced_state,
    schmidt_decompose,
)

BELL = np.array([0, 1, 1, 0]) / np.sqrt(2)


def random_density(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_state(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def test_kron_examples():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(kron(basis_vector(2, 0), basis_vector(2, 1)), basis_vector(4, 1))
    assert kron(np.ones((2, 3)), np.ones((5, 7))).shape == (10, 21)


def test_kron_index_convention():
    a = np.arange(4).reshape(2, 2)
    b = np.arange(9).reshape(3, 3) + 10
    k = kron(a, b)
    # row = iA * rows_B + iB
    assert k[1 * 3 + 2, 0 * 3 + 1] == a[1, 0] * b[2, 1]


def test_partial_trace_examples():
    np.testing.assert_allclose(partial_trace(projector(BELL), (2, 2), [0]), np.eye(2) / 2, atol=ATOL_STRUCTURAL)
    prod = projector(kron(basis_vector(2, 0), basis_vector(2, 1)))
    np.testing.assert_allclose(partial_trace(prod, (2, 2), [0]), np.diag([1, 0]), atol=ATOL_STRUCTURAL)


def test_partial_trace_dicke_4_2_brute_force():
    # explicit 16-dim Dicke(4,2): six weight-2 strings, amplitude 1/sqrt(6)
    psi = np.zeros(16)
    for x in range(16):
        if bin(x).count("1") == 2:
            psi[x] = 1 / np.sqrt(6)
    sigma = partial_trace(projector(psi), (2,) * 4, [0, 1])
    # <11|sigma|11>: strings starting with "11" -> only 1100
    assert sigma[3, 3] == pytest.approx(1 / 6, abs=1e-12)


def test_partial_trace_keeps_original_order():
    rng = np.random.default_rng(1)
    a, b, c = random_density(rng, 2), random_density(rng, 3), random_density(rng, 2)
    rho = kron(a, b, c)
    np.testing.assert_allclose(partial_trace(rho, (2, 3, 2), [2, 0]), kron(a, c), atol=1e-12)


def test_partial_trace_bad_index():
    with pytest.raises(IndexError):
        partial_trace(np.eye(4) / 4, (2, 2), [2])


def test_reduced_state_matches_partial_trace():
    rng = np.random.default_rng(2)
    psi = random_state(rng, 2 * 3 * 4)
    for keep in ([0], [1], [2], [0, 2], [1, 2]):
        np.testing.assert_allclose(
            reduced_state(psi, (2, 3, 4), keep), partial_trace(projector(psi), (2, 3, 4), keep), atol=1e-13
        )


def test_partial_transpose_examples():
    prod = projector(kron(random_state(np.random.default_rng(3), 2), random_state(np.random.default_rng(4), 3)))
    assert hermitian_eigenvalues(partial_transpose(prod, (2, 3)))[0] >= -1e-12
    np.testing.assert_allclose(
        hermitian_eigenvalues(partial_transpose(projector(BELL), (2, 2))), [-0.5, 0.5, 0.5, 0.5], atol=1e-12
    )
    psi = np.array([0.6, 0, 0, 0.8])
    assert hermitian_eigenvalues(partial_transpose(projector(psi), (2, 2)))[0] == pytest.approx(-0.48, abs=1e-12)


def test_partial_transpose_on_a_equals_conjugated_on_b():
    rho = random_density(np.random.default_rng(5), 6)
    ta = partial_transpose(rho, (2, 3), "A")
    tb = partial_transpose(rho, (2, 3), "B")
    np.testing.assert_allclose(ta, tb.T, atol=1e-15)


def test_partial_transpose_shape_mismatch():
    with pytest.raises(ShapeError):
        partial_transpose(np.eye(6) / 6, (2, 2))
    with pytest.raises(ShapeError):
        partial_transpose(np.eye(8) / 8, (2, 2, 2))


def test_hermitian_eigenvalues_examples():
    np.testing.assert_allclose(hermitian_eigenvalues(np.eye(2)), [1, 1])
    np.testing.assert_allclose(hermitian_eigenvalues(np.diag([1.0, -1.0])), [-1, 1])
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


def test_schmidt_examples():
    np.testing.assert_allclose(schmidt_decompose(BELL, (2, 2)), [2**-0.5] * 2, atol=1e-12)
    np.testing.assert_allclose(schmidt_decompose(basis_vector(4, 0), (2, 2)), [1, 0], atol=1e-12)
    # (|20> + |02>)/2 + |11>/sqrt2 written as a 3x3 matrix over site-1 occupation x site-2 occupation
    psi = np.zeros((3, 3))
    psi[2, 0] = psi[0, 2] = 0.5
    psi[1, 1] = 2**-0.5
    np.testing.assert_allclose(schmidt_decompose(psi.ravel(), (3, 3)), [2**-0.5, 0.5, 0.5], atol=1e-12)
    with pytest.raises(ShapeError):
        schmidt_decompose(BELL, (2, 3))


def test_permute_subsystems():
    a, b = basis_vector(2, 1), basis_vector(3, 2)
    np.testing.assert_array_equal(permute_subsystems(kron(a, b), (2, 3), [1, 0]), kron(b, a))


def test_dimension_cap():
    check_dimension(2**14)
    with pytest.raises(DimensionCapError):
        check_dimension(2**14 + 1)


dims_pair = st.tuples(st.integers(2, 5), st.integers(2, 5))


@settings(max_examples=40, deadline=None)
@given(dims_pair, st.integers(0, 2**32 - 1))
def test_trace_out_second_factor_of_kron(dims, seed):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density(rng, dims[0]), random_density(rng, dims[1])
    np.testing.assert_allclose(partial_trace(kron(rho, sigma), dims, [0]), rho, atol=ATOL_STRUCTURAL)


@settings(max_examples=40, deadline=None)
@given(dims_pair, st.integers(0, 2**32 - 1), st.sampled_from([0, 1]))
def test_partial_transpose_involution_and_trace(dims, seed, which):
    rho = random_density(np.random.default_rng(seed), dims[0] * dims[1])
    pt = partial_transpose(rho, dims, which)
    np.testing.assert_array_equal(partial_transpose(pt, dims, which), rho)
    assert abs(np.trace(pt) - np.trace(rho)) <= ATOL_STRUCTURAL
    np.testing.assert_allclose(pt, pt.conj().T, atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(1, 6), st.integers(1, 6)), st.integers(0, 2**32 - 1))
def test_schmidt_squares_sum_to_one(dims, seed):
    lam = schmidt_decompose(random_state(np.random.default_rng(seed), dims[0] * dims[1]), dims)
    assert abs(np.sum(lam**2) - 1) <= ATOL_SPECTRAL
    assert np.all(np.diff(lam) <= 0)


@settings(max_examples=30, deadline=None)
@given(st.tuples(st.integers(2, 6), st.integers(2, 6)), st.integers(0, 2**32 - 1))
def test_pure_state_pt_spectrum_from_schmidt(dims, seed):
    da, db = dims
    psi = random_state(np.random.default_rng(seed), da * db)
    lam = schmidt_decompose(psi, dims)
    expected = [l * l for l in lam]
    expected += [s * lam[i] * lam[j] for i, j in itertools.combinations(range(len(lam)), 2) for s in (1, -1)]
    expected += [0.0] * (da * db - len(expected))
    got = hermitian_eigenvalues(partial_transpose(projector(psi), dims))
    np.testing.assert_allclose(got, np.sort(expected), atol=1e-9)
