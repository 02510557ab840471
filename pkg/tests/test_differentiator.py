"""Trace vectors, compressions, and the differentiator equivalence."""

import numpy as np
import pytest

from critspec import (
    MonicPolynomial,
    charpoly,
    compression,
    derivative_monic,
    dft_matrix,
    hadamard_similarity,
    interlaces,
    is_differentiator,
    is_trace_vector,
    pairing_residual,
    principal_submatrix,
    spectrum,
    unit_vector,
)


def _flat_vector(n, rng=None):
    """Unit vector with |z_i| = 1/sqrt(n), random phases if rng given."""
    if rng is None:
        phases = np.zeros(n)
    else:
        phases = rng.uniform(0, 2 * np.pi, n)
    return np.exp(1j * phases) / np.sqrt(n)


class TestUnitVector:
    def test_normalizes(self):
        v = unit_vector(np.array([3.0, 4.0]))
        assert np.linalg.norm(v) == pytest.approx(1.0)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            unit_vector(np.zeros(3))


class TestTraceVector:
    def test_flat_vector_on_diagonal(self):
        rng = np.random.default_rng(51)
        for n in (2, 3, 5, 8):
            D = np.diag(rng.normal(size=n))
            assert is_trace_vector(D, _flat_vector(n, rng))

    def test_standard_basis_vector_fails_on_generic_diagonal(self):
        D = np.diag([1.0, 2.0, 3.0])
        e1 = np.array([1.0, 0.0, 0.0])
        assert not is_trace_vector(D, e1)

    def test_flatness_is_necessary_on_rank_one_projectors(self):
        # z is a trace vector of every e_j e_j* only when |z_j|**2 = 1/n
        # for all j; a non-flat z must fail for some j.
        rng = np.random.default_rng(52)
        n = 5
        z = unit_vector(rng.normal(size=n) + 1j * rng.normal(size=n))
        flat = _flat_vector(n, rng)
        results_z = []
        for j in range(n):
            P = np.zeros((n, n))
            P[j, j] = 1.0
            results_z.append(is_trace_vector(P, z))
            assert is_trace_vector(P, flat)
        assert not all(results_z)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            is_trace_vector(np.eye(3), np.array([1.0, 0.0]))

    def test_power_zero_always_matches(self):
        # k = 0 compares 1 with n/n; any unit vector passes that step,
        # so a 1x1 matrix makes everything a trace vector.
        assert is_trace_vector(np.array([[2.0]]), np.array([1.0]))


class TestCompression:
    def test_shape(self):
        rng = np.random.default_rng(53)
        A = rng.normal(size=(5, 5))
        B = compression(A, _flat_vector(5))
        assert B.shape == (4, 4)

    def test_basis_orthonormality_through_norms(self):
        # Compression by any unit z preserves the Frobenius norm bound.
        rng = np.random.default_rng(54)
        A = rng.normal(size=(6, 6))
        z = unit_vector(rng.normal(size=6))
        B = compression(A, z)
        assert np.linalg.norm(B) <= np.linalg.norm(A) + 1e-12

    def test_order_one_rejected(self):
        with pytest.raises(ValueError):
            compression(np.array([[1.0]]), np.array([1.0]))


class TestDifferentiator:
    def test_flat_vector_differentiates_diagonal(self):
        rng = np.random.default_rng(55)
        for n in (2, 3, 6):
            lam = rng.normal(size=n)
            D = np.diag(lam)
            z = _flat_vector(n, rng)
            assert is_differentiator(D, z)
            B = compression(D, z)
            from critspec import critical_points

            assert pairing_residual(spectrum(B), critical_points(list(lam)), 1e-7) < 1e-7

    def test_agreement_with_trace_vector_random_pairs(self):
        rng = np.random.default_rng(56)
        for _ in range(60):
            n = int(rng.integers(2, 9))
            A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            z = unit_vector(rng.normal(size=n) + 1j * rng.normal(size=n))
            assert is_differentiator(A, z) == is_trace_vector(A, z)

    def test_agreement_on_structured_true_cases(self):
        rng = np.random.default_rng(57)
        for _ in range(20):
            n = int(rng.integers(2, 8))
            D = np.diag(rng.normal(size=n) + 1j * rng.normal(size=n))
            z = _flat_vector(n, rng)
            assert is_trace_vector(D, z)
            assert is_differentiator(D, z)

    def test_hadamard_rows_differentiate(self):
        # Rows of H/sqrt(n) are flat, so conjugating a diagonal by H
        # makes every standard basis vector a differentiator.
        rng = np.random.default_rng(58)
        n = 5
        lam = list(rng.normal(size=n))
        A = hadamard_similarity(lam, dft_matrix(n))
        for j in range(n):
            e = np.zeros(n)
            e[j] = 1.0
            assert is_trace_vector(A, e)
            assert is_differentiator(A, e)

    def test_interlacing_replication_for_symmetric_case(self):
        # For a real list, the Hadamard conjugation is Hermitian, and
        # every principal submatrix spectrum interlaces the list.
        rng = np.random.default_rng(59)
        n = 6
        lam = sorted(rng.uniform(-2, 2, n), reverse=True)
        A = hadamard_similarity(lam, dft_matrix(n))
        assert float(np.max(np.abs(A - A.conj().T))) < 1e-10
        for i in range(1, n + 1):
            sub = principal_submatrix(A, i)
            mu = spectrum(sub)
            assert interlaces(lam, mu, tol=1e-7)

    def test_compression_charpoly_is_derivative(self):
        rng = np.random.default_rng(60)
        n = 7
        D = np.diag(rng.normal(size=n))
        z = _flat_vector(n, rng)
        B = compression(D, z)
        got = charpoly(B)
        want = derivative_monic(charpoly(D))
        assert max(abs(a - b) for a, b in zip(got.coeffs, want.coeffs)) < 1e-9
