"""Unit tests for the dense linear algebra helpers and the Jacobi eigensolver."""

import numpy as np
import pytest

from hydrogen_entanglement.config import EigenSolverConfig
from hydrogen_entanglement.linalg import (
    adjoint,
    as_complex_matrix,
    complete_basis,
    eig_options,
    hermitian_eig,
    kron,
    matmul,
    svd_via_gram,
    trace,
)
from hydrogen_entanglement.utils.errors import NumericalFailure, ValidationError


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (x + x.conj().T)


class TestMatrixValidation:
    """Tests for input validation and basic algebra."""

    def test_rejects_one_dimensional_input(self):
        """Test that a vector is not accepted as a matrix."""
        with pytest.raises(ValidationError) as exc_info:
            as_complex_matrix([1.0, 2.0])
        assert exc_info.value.details["invariant"] == "two_dimensional"

    def test_rejects_nan_entries(self):
        """Test that NaN entries are reported as non-finite."""
        with pytest.raises(ValidationError) as exc_info:
            as_complex_matrix([[1.0, np.nan], [0.0, 1.0]])
        assert exc_info.value.details["invariant"] == "finite_entries"

    def test_matmul_checks_inner_dimensions(self):
        """Test that a 2x3 times 2x3 product is rejected."""
        with pytest.raises(ValidationError) as exc_info:
            matmul(np.ones((2, 3)), np.ones((2, 3)))
        assert exc_info.value.details["invariant"] == "inner_dimensions"

    def test_matmul_matches_numpy(self, rng):
        """Test that matmul agrees with the @ operator."""
        a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        b = rng.standard_normal((4, 2))
        np.testing.assert_allclose(matmul(a, b), a @ b, atol=1e-14)

    def test_adjoint_is_conjugate_transpose(self):
        """Test that adjoint conjugates and transposes."""
        a = np.array([[1.0, 2.0j], [3.0, 4.0 - 1.0j]])
        np.testing.assert_array_equal(adjoint(a), np.array([[1.0, 3.0], [-2.0j, 4.0 + 1.0j]]))

    def test_trace_requires_square(self):
        """Test that the trace of a rectangular matrix is rejected."""
        with pytest.raises(ValidationError):
            trace(np.ones((2, 3)))
        assert trace(np.diag([1.0, 2.0j])) == 1.0 + 2.0j

    def test_kron_ordering(self):
        """Test that kron uses the i * dim_v + j product index."""
        product = kron(np.diag([1.0, 2.0]), np.ones((3, 3)))
        assert product.shape == (6, 6)
        assert product[4, 5] == 2.0
        assert product[1, 4] == 0.0


class TestHermitianEig:
    """Tests for the Jacobi eigensolver and its canonical output."""

    @pytest.fixture
    def matrix(self, rng):
        """Random 8x8 Hermitian matrix."""
        return random_hermitian(rng, 8)

    def test_diagonal_input(self):
        """Test that diag(3, 1, 2) gives descending values and permuted unit vectors."""
        result = hermitian_eig(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_array_equal(result.eigenvalues, [3.0, 2.0, 1.0])
        expected = np.eye(3)[:, [0, 2, 1]]
        np.testing.assert_allclose(result.eigenvectors, expected, atol=0.0)

    def test_pauli_x(self):
        """Test that sigma_x has eigenvalues (1, -1) with canonical phases."""
        result = hermitian_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(result.eigenvalues, [1.0, -1.0], atol=1e-14)
        np.testing.assert_allclose(
            result.eigenvectors[:, 0], np.array([1.0, 1.0]) / np.sqrt(2.0), atol=1e-12
        )
        np.testing.assert_allclose(
            result.eigenvectors[:, 1], np.array([1.0, -1.0]) / np.sqrt(2.0), atol=1e-12
        )

    def test_random_matrix_reconstruction(self, matrix):
        """Test trace, reconstruction and unitarity on a random 8x8 matrix."""
        result = hermitian_eig(matrix)
        u = result.eigenvectors
        assert abs(result.eigenvalues.sum() - np.trace(matrix).real) <= 1e-12
        assert np.linalg.norm(result.reconstruct() - matrix) <= 1e-10
        np.testing.assert_allclose(u.conj().T @ u, np.eye(8), atol=1e-12)
        assert np.all(np.diff(result.eigenvalues) <= 0)

    def test_phase_convention(self, matrix):
        """Test that each vector's largest component is real and positive."""
        u = hermitian_eig(matrix).eigenvectors
        for col in u.T:
            pivot = col[np.argmax(np.abs(col))]
            assert pivot.imag == 0.0
            assert pivot.real > 0.0

    def test_bit_identical_reruns(self, matrix):
        """Test that repeating the decomposition gives identical bits."""
        first = hermitian_eig(matrix)
        second = hermitian_eig(matrix.copy())
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.eigenvectors, second.eigenvectors)

    def test_degenerate_cluster_ordering(self):
        """Test that the identity keeps the standard basis in index order."""
        result = hermitian_eig(np.eye(3))
        np.testing.assert_array_equal(result.eigenvalues, [1.0, 1.0, 1.0])
        np.testing.assert_array_equal(result.eigenvectors, np.eye(3))

    def test_matches_numpy_eigvalsh(self, rng):
        """Test that the spectrum agrees with LAPACK on a 20x20 matrix."""
        a = random_hermitian(rng, 20)
        ours = hermitian_eig(a, method="jacobi").eigenvalues
        np.testing.assert_allclose(ours, np.linalg.eigvalsh(a)[::-1], atol=1e-11)

    @pytest.mark.parametrize("n", [2, 3, 6, 8, 10, 14, 16, 18, 25, 38])
    def test_converges_across_sizes_and_seeds(self, n):
        """Test reconstruction and spectrum on random matrices of many sizes and seeds."""
        for seed in range(10):
            a = random_hermitian(np.random.default_rng(seed), n)
            result = hermitian_eig(a, method="jacobi")
            assert np.all(np.isfinite(result.eigenvectors))
            assert np.linalg.norm(result.reconstruct() - a) <= 1e-10 * np.linalg.norm(a)
            np.testing.assert_allclose(
                result.eigenvalues, np.linalg.eigvalsh(a)[::-1], atol=1e-11 * np.linalg.norm(a)
            )

    def test_already_diagonal_unequal_entries(self):
        """Test that diag(0.9, 0.1) returns at once without rotating."""
        result = hermitian_eig(np.diag([0.9, 0.1]), method="jacobi")
        assert result.sweeps == 0
        np.testing.assert_array_equal(result.eigenvalues, [0.9, 0.1])

    def test_tiny_off_diagonal_entries(self):
        """Test that off-diagonal entries far below round-off do not derail the sweep."""
        a = np.array([[0.9, 1e-300 + 1e-300j], [1e-300 - 1e-300j, 0.1]])
        result = hermitian_eig(a, method="jacobi")
        assert np.all(np.isfinite(result.eigenvectors))
        np.testing.assert_allclose(result.eigenvalues, [0.9, 0.1], atol=1e-15)

    def test_rank_deficient_gram_matrix(self, rng):
        """Test a 12x12 Gram matrix of rank 3, whose zero block stays at round-off."""
        d = rng.standard_normal((12, 3)) + 1j * rng.standard_normal((12, 3))
        gram = d @ d.conj().T
        result = hermitian_eig(gram, method="jacobi")
        assert np.linalg.norm(result.reconstruct() - gram) <= 1e-10 * np.linalg.norm(gram)
        np.testing.assert_allclose(result.eigenvalues[3:], 0.0, atol=1e-12 * np.linalg.norm(gram))

    def test_lapack_method_is_canonicalized(self, matrix):
        """Test that the LAPACK path returns the same canonical vectors."""
        jacobi = hermitian_eig(matrix, method="jacobi")
        lapack = hermitian_eig(matrix, method="lapack")
        assert lapack.sweeps == 0
        np.testing.assert_allclose(lapack.eigenvalues, jacobi.eigenvalues, atol=1e-12)
        np.testing.assert_allclose(lapack.eigenvectors, jacobi.eigenvectors, atol=1e-9)

    def test_odd_dimension(self, rng):
        """Test that odd sizes use the padded round-robin schedule."""
        a = random_hermitian(rng, 7)
        result = hermitian_eig(a)
        assert np.linalg.norm(result.reconstruct() - a) <= 1e-10

    def test_rejects_non_hermitian(self):
        """Test that a matrix outside the Hermiticity tolerance is rejected."""
        with pytest.raises(ValidationError) as exc_info:
            hermitian_eig(np.array([[1.0, 1.0], [0.0, 1.0]]))
        assert exc_info.value.details["invariant"] == "hermitian"

    def test_rejects_non_square(self):
        """Test that a rectangular matrix is rejected."""
        with pytest.raises(ValidationError) as exc_info:
            hermitian_eig(np.ones((2, 3)))
        assert exc_info.value.details["invariant"] == "square"

    def test_sweep_cap_raises_numerical_failure(self, rng):
        """Test that a single permitted sweep is not enough for a dense matrix."""
        with pytest.raises(NumericalFailure) as exc_info:
            hermitian_eig(random_hermitian(rng, 10), method="jacobi", max_sweeps=1)
        assert exc_info.value.exit_code == 3
        assert exc_info.value.details["invariant"] == "eigensolver_convergence"

    def test_result_arrays_are_read_only(self, matrix):
        """Test that callers cannot mutate a cached decomposition."""
        result = hermitian_eig(matrix)
        with pytest.raises(ValueError):
            result.eigenvalues[0] = 0.0

    def test_eig_options_from_config(self):
        """Test that solver settings are forwarded as keyword arguments."""
        assert eig_options(None) == {}
        options = eig_options(EigenSolverConfig(method="jacobi", max_sweeps=7))
        assert options["method"] == "jacobi"
        assert options["max_sweeps"] == 7


class TestSvdViaGram:
    """Tests for singular values built from the Gram matrix."""

    def test_bell_coefficients(self):
        """Test that diag(1/sqrt2, 1/sqrt2) has two equal singular values."""
        _, sigma, _ = svd_via_gram(np.diag([1.0, 1.0]) / np.sqrt(2.0))
        np.testing.assert_allclose(sigma, [1 / np.sqrt(2.0)] * 2, atol=1e-14)

    def test_rank_one_outer_product(self):
        """Test that an outer product has one non-zero singular value."""
        u = np.array([1.0, 2.0, 2.0]) / 3.0
        v = np.array([1.0, 1.0j, -1.0, 1.0]) / 2.0
        _, sigma, v_basis = svd_via_gram(np.outer(u, v))
        np.testing.assert_allclose(sigma, [1.0, 0.0, 0.0], atol=1e-10)
        np.testing.assert_allclose(v_basis.conj().T @ v_basis, np.eye(4), atol=1e-12)

    @pytest.mark.parametrize("shape", [(4, 6), (6, 4), (5, 5)])
    def test_reconstruction(self, rng, shape):
        """Test that U diag(sigma) V^dagger reproduces the input."""
        d = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        u, sigma, v = svd_via_gram(d)
        r = min(shape)
        rebuilt = (u[:, :r] * sigma) @ v[:, :r].conj().T
        assert np.linalg.norm(rebuilt - d) <= 1e-9 * np.linalg.norm(d)
        np.testing.assert_allclose(sigma, np.linalg.svd(d, compute_uv=False), rtol=1e-10)

    def test_sub_tolerance_singular_value_with_phase(self):
        """Test that a complex singular direction below tol is paired with its own vector."""
        d = np.diag([np.sqrt(1 - 1e-15), 1j * np.sqrt(1e-15)])
        u, sigma, v = svd_via_gram(d)
        rebuilt = (u * sigma) @ v.conj().T
        assert np.linalg.norm(rebuilt - d) <= 1e-12
        np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    def test_transpose_has_same_singular_values(self, rng):
        """Test that d and d^T share singular values."""
        d = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
        _, sigma, _ = svd_via_gram(d)
        _, sigma_t, _ = svd_via_gram(d.T)
        np.testing.assert_allclose(sigma, sigma_t, atol=1e-12)


class TestCompleteBasis:
    """Tests for Gram-Schmidt basis completion."""

    def test_extends_single_column(self):
        """Test that one column in C^3 is extended to a unitary."""
        seed = (np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)).reshape(3, 1).astype(complex)
        basis = complete_basis(seed, 3)
        np.testing.assert_allclose(basis[:, 0], seed[:, 0])
        np.testing.assert_allclose(basis.conj().T @ basis, np.eye(3), atol=1e-14)

    def test_empty_start(self):
        """Test that an empty start yields the standard basis."""
        basis = complete_basis(np.zeros((4, 0), dtype=complex), 4)
        np.testing.assert_allclose(basis, np.eye(4))
